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

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid coupling graph: {0}")]
    InvalidCoupling(String),
    #[error("unknown architecture `{0}`")]
    UnknownArchitecture(String),
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("invalid mapping: {0}")]
    InvalidMapping(String),
    #[error("physical pair ({0}, {1}) is not an edge of the coupling graph")]
    NotAnEdge(usize, usize),
    #[error("coupling graph `{0}` is complete; no SWAP can create a new neighbor")]
    CompleteGraph(String),
    #[error("section graph is disconnected ({components} components)")]
    DisconnectedSection { components: usize },
    #[error("{0}")]
    Precondition(String),
    #[error(
        "generated backbone has {backbone} two-qubit gates, larger than the budget of {budget}"
    )]
    BackboneTooLarge { backbone: usize, budget: usize },
    #[error("gate budget {budget} is below the current circuit size {current}")]
    BudgetBelowSize { budget: usize, current: usize },
    #[error("qasm parse error at line {line}: {message}")]
    Qasm { line: usize, message: String },
    #[error("bundle error in {path}: {message}")]
    Bundle { path: PathBuf, message: String },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json error in {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn json(path: impl Into<PathBuf>, source: serde_json::Error) -> Self {
        Error::Json {
            path: path.into(),
            source,
        }
    }
}
