// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Benchmarks for quantum layout synthesis whose minimum SWAP count is known
//! by construction.
//!
//! The crate generates circuits that need exactly `n` SWAPs on a coupling
//! graph, checks every instance's optimality certificate, solves small
//! instances exactly, and scores third-party routing results against the
//! known optimum.

pub mod arch;
pub mod backbone;
pub mod bundle;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod eval;
pub mod generator;
pub mod graph;
pub mod isogen;
pub mod mapping;
pub mod oracle;
pub mod qasm;
pub mod replay;
pub mod rng;
pub mod subiso;
pub mod verify;

pub use error::{Error, Result};
