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

//! Two-qubit gate sequences and their dependency DAG.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Cx,
    Swap,
}

/// A two-qubit gate occurrence. Its label is its index in the owning circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub q0: usize,
    pub q1: usize,
}

impl Gate {
    pub fn cx(q0: usize, q1: usize) -> Self {
        Gate {
            kind: GateKind::Cx,
            q0,
            q1,
        }
    }

    pub fn swap(q0: usize, q1: usize) -> Self {
        Gate {
            kind: GateKind::Swap,
            q0,
            q1,
        }
    }

    pub fn is_swap(&self) -> bool {
        self.kind == GateKind::Swap
    }

    /// Unordered qubit pair, smaller index first.
    pub fn pair(&self) -> (usize, usize) {
        if self.q0 <= self.q1 {
            (self.q0, self.q1)
        } else {
            (self.q1, self.q0)
        }
    }

    pub fn touches(&self, q: usize) -> bool {
        self.q0 == q || self.q1 == q
    }

    pub fn shares_qubit(&self, other: &Gate) -> bool {
        self.touches(other.q0) || self.touches(other.q1)
    }
}

/// An ordered sequence of two-qubit gates over `num_qubits` qubits.
///
/// Benchmark circuits index program qubits and contain only CX gates; answer
/// and transpiled circuits index physical qubits and may contain SWAPs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        for (i, g) in gates.iter().enumerate() {
            if g.q0 == g.q1 {
                return Err(Error::InvalidCircuit(format!(
                    "gate {i} acts twice on qubit {}",
                    g.q0
                )));
            }
            if g.q0 >= num_qubits || g.q1 >= num_qubits {
                return Err(Error::InvalidCircuit(format!(
                    "gate {i} on ({}, {}) out of range for {num_qubits} qubits",
                    g.q0, g.q1
                )));
            }
        }
        Ok(Circuit { num_qubits, gates })
    }

    /// CX-only circuit from `(control, target)` pairs.
    pub fn from_pairs(
        num_qubits: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Self::new(
            num_qubits,
            pairs.into_iter().map(|(a, b)| Gate::cx(a, b)).collect(),
        )
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn swap_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_swap()).count()
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.len() - self.swap_count()
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates[range].to_vec(),
        }
    }
}

/// Dense bit set sized at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| wi * 64 + b)
        })
    }
}

/// Gate dependency DAG: an edge `g -> h` when `h` is the next gate after `g`
/// on one of `g`'s qubits. Node ids are gate indices.
#[derive(Clone, Debug)]
pub struct DependencyDag {
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl DependencyDag {
    pub fn num_nodes(&self) -> usize {
        self.succ.len()
    }

    pub fn successors(&self, g: usize) -> &[usize] {
        &self.succ[g]
    }

    pub fn predecessors(&self, g: usize) -> &[usize] {
        &self.pred[g]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(g, s)| s.iter().map(move |&h| (g, h)))
    }

    /// `Prev(g)`: every gate with a directed path to `g`.
    pub fn prev(&self, g: usize) -> BitSet {
        let mut seen = BitSet::new(self.num_nodes());
        let mut stack = self.pred[g].clone();
        while let Some(h) = stack.pop() {
            if !seen.contains(h) {
                seen.insert(h);
                stack.extend(&self.pred[h]);
            }
        }
        seen
    }

    /// Descendant sets for every node. Gate order is a topological order,
    /// so one reverse sweep suffices.
    pub fn descendants(&self) -> Vec<BitSet> {
        let n = self.num_nodes();
        let mut out = vec![BitSet::new(n); n];
        for g in (0..n).rev() {
            let mut acc = BitSet::new(n);
            for &h in &self.succ[g] {
                acc.insert(h);
                acc.union_with(&out[h]);
            }
            out[g] = acc;
        }
        out
    }
}

pub fn build_dependency_dag(circuit: &Circuit) -> DependencyDag {
    let n = circuit.len();
    let mut last: Vec<Option<usize>> = vec![None; circuit.num_qubits()];
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    for (i, g) in circuit.gates().iter().enumerate() {
        let mut parents: Vec<usize> = [last[g.q0], last[g.q1]].into_iter().flatten().collect();
        parents.dedup();
        for p in parents {
            succ[p].push(i);
            pred[i].push(p);
        }
        last[g.q0] = Some(i);
        last[g.q1] = Some(i);
    }
    DependencyDag { succ, pred }
}
