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

//! Undirected graphs over qubit indices: hardware coupling graphs and
//! circuit interaction graphs.

use std::collections::VecDeque;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// Read-only view of a simple undirected graph on vertices `0..num_vertices()`.
pub trait UndirectedGraph {
    fn num_vertices(&self) -> usize;
    /// Sorted, duplicate-free neighbor list.
    fn neighbors(&self, v: usize) -> &[usize];

    fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.num_vertices() && self.neighbors(u).binary_search(&v).is_ok()
    }

    fn num_edges(&self) -> usize {
        (0..self.num_vertices())
            .map(|v| self.degree(v))
            .sum::<usize>()
            / 2
    }
}

fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

fn adjacency(num_vertices: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); num_vertices];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Hardware connectivity: which physical qubit pairs support a two-qubit gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingGraph {
    name: String,
    num_qubits: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// On-disk form of a coupling graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CouplingFile {
    pub name: String,
    pub num_qubits: usize,
    pub edges: Vec<[usize; 2]>,
}

impl CouplingGraph {
    /// Builds a coupling graph, rejecting self-loops, duplicate edges,
    /// out-of-range indices and disconnected graphs.
    pub fn new(
        name: impl Into<String>,
        num_qubits: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let name = name.into();
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= num_qubits || v >= num_qubits {
                return Err(Error::InvalidCoupling(format!(
                    "edge ({u}, {v}) out of range for {num_qubits} qubits"
                )));
            }
            if u == v {
                return Err(Error::InvalidCoupling(format!("self-loop on qubit {u}")));
            }
            list.push(normalize(u, v));
        }
        let before = list.len();
        list.sort_unstable();
        list.dedup();
        if list.len() != before {
            return Err(Error::InvalidCoupling("duplicate edge".into()));
        }
        if num_qubits == 0 {
            return Err(Error::InvalidCoupling("no qubits".into()));
        }
        let adj = adjacency(num_qubits, &list);
        let graph = CouplingGraph {
            name,
            num_qubits,
            edges: list,
            adj,
        };
        if !graph.is_connected() {
            return Err(Error::InvalidCoupling(format!(
                "`{}` is not connected",
                graph.name
            )));
        }
        Ok(graph)
    }

    pub fn from_file_data(data: CouplingFile) -> Result<Self> {
        for e in &data.edges {
            if e[0] >= e[1] {
                return Err(Error::InvalidCoupling(format!(
                    "edge [{}, {}] must satisfy u < v",
                    e[0], e[1]
                )));
            }
        }
        CouplingGraph::new(
            data.name,
            data.num_qubits,
            data.edges.iter().map(|e| (e[0], e[1])),
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let data: CouplingFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidCoupling(format!("malformed coupling file: {e}")))?;
        Self::from_file_data(data)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_file_data(&self) -> CouplingFile {
        CouplingFile {
            name: self.name.clone(),
            num_qubits: self.num_qubits,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file_data()).expect("coupling graph serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn max_degree(&self) -> usize {
        (0..self.num_qubits)
            .map(|p| self.degree(p))
            .max()
            .unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.num_qubits;
        self.edges.len() == n * (n - 1) / 2
    }

    fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.num_qubits];
        let mut queue = VecDeque::from([source]);
        dist[source] = Some(0);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// All-pairs hop distances, row-major `num_qubits * num_qubits`.
    pub fn distance_matrix(&self) -> Vec<usize> {
        let n = self.num_qubits;
        let mut out = vec![0; n * n];
        for s in 0..n {
            for (t, d) in self.bfs_distances(s).into_iter().enumerate() {
                out[s * n + t] = d.expect("coupling graph is connected");
            }
        }
        out
    }
}

impl UndirectedGraph for CouplingGraph {
    fn num_vertices(&self) -> usize {
        self.num_qubits
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

/// Which program-qubit pairs interact somewhere in a gate collection.
/// Multiplicity is collapsed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionGraph {
    num_qubits: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl InteractionGraph {
    pub fn from_pairs(num_qubits: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<_> = pairs.into_iter().map(|(u, v)| normalize(u, v)).collect();
        edges.sort_unstable();
        edges.dedup();
        let adj = adjacency(num_qubits, &edges);
        InteractionGraph {
            num_qubits,
            edges,
            adj,
        }
    }

    pub fn from_circuit(circuit: &Circuit) -> Self {
        Self::from_pairs(
            circuit.num_qubits(),
            circuit.gates().iter().map(|g| (g.q0, g.q1)),
        )
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }
}

impl UndirectedGraph for InteractionGraph {
    fn num_vertices(&self) -> usize {
        self.num_qubits
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

/// Interaction graph of a circuit.
pub fn build_interaction_graph(circuit: &Circuit) -> InteractionGraph {
    InteractionGraph::from_circuit(circuit)
}
