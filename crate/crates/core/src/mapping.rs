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

use crate::error::{Error, Result};
use crate::graph::{CouplingGraph, UndirectedGraph};

/// Bijection from program qubits to physical qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mapping {
    phys: Vec<usize>,
    prog: Vec<usize>,
}

impl Mapping {
    /// `assignment[q]` is the physical home of program qubit `q`.
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        let n = assignment.len();
        let mut prog = vec![usize::MAX; n];
        for (q, &p) in assignment.iter().enumerate() {
            if p >= n {
                return Err(Error::InvalidMapping(format!(
                    "program qubit {q} mapped to {p}, out of range"
                )));
            }
            if prog[p] != usize::MAX {
                return Err(Error::InvalidMapping(format!(
                    "physical qubit {p} assigned twice"
                )));
            }
            prog[p] = q;
        }
        Ok(Mapping {
            phys: assignment,
            prog,
        })
    }

    pub fn identity(n: usize) -> Self {
        Mapping {
            phys: (0..n).collect(),
            prog: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.phys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phys.is_empty()
    }

    /// `f(q)`.
    pub fn physical(&self, q: usize) -> usize {
        self.phys[q]
    }

    /// `f⁻¹(p)`.
    pub fn program(&self, p: usize) -> usize {
        self.prog[p]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.phys
    }

    /// Whether program pair `(a, b)` sits on a coupler.
    pub fn is_executable(&self, coupling: &CouplingGraph, a: usize, b: usize) -> bool {
        coupling.has_edge(self.phys[a], self.phys[b])
    }

    /// Exchanges the occupants of physical qubits `p1` and `p2`, without an
    /// adjacency check.
    pub(crate) fn swap_physical(&mut self, p1: usize, p2: usize) {
        let (a, b) = (self.prog[p1], self.prog[p2]);
        self.prog.swap(p1, p2);
        self.phys[a] = p2;
        self.phys[b] = p1;
    }
}

/// Mapping after a SWAP on the coupler `(p1, p2)`.
pub fn apply_swap(
    coupling: &CouplingGraph,
    mapping: &Mapping,
    edge: (usize, usize),
) -> Result<Mapping> {
    let (p1, p2) = edge;
    if !coupling.has_edge(p1, p2) {
        return Err(Error::NotAnEdge(p1, p2));
    }
    let mut out = mapping.clone();
    out.swap_physical(p1, p2);
    Ok(out)
}
