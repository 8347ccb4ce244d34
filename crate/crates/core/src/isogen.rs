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

//! Forcing-SWAP selection and construction of a section's non-embeddable
//! interaction graph.
//!
//! The anchor `p` is the swap endpoint that is not adjacent to the target
//! `p''`. The section saturates the anchor and every physical qubit of degree
//! strictly greater than `deg(p)`, then adds the special gate between the
//! anchor's occupant and the target's occupant. After the swap the anchor's
//! occupant sits next to the target, so the special gate becomes executable.

use rand::Rng;

use crate::circuit::Gate;
use crate::error::{Error, Result};
use crate::graph::{CouplingGraph, UndirectedGraph};
use crate::mapping::Mapping;

/// A forcing SWAP on the coupler `(anchor, partner)` which gives the anchor's
/// occupant the new neighbor `target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwapChoice {
    pub anchor: usize,
    pub partner: usize,
    pub target: usize,
}

impl SwapChoice {
    pub fn edge(&self) -> (usize, usize) {
        (self.anchor, self.partner)
    }
}

/// Edge list `S`, special gate and the swap they force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionGraph {
    /// Program-qubit pairs, every one executable under the section's mapping.
    pub edges: Vec<(usize, usize)>,
    /// Not executable under the section's mapping; executable after the swap.
    pub special: Gate,
    /// Program qubit `f⁻¹(p)`.
    pub anchor: usize,
    /// Physical coupler `(p, partner)` the swap acts on.
    pub swap_edge: (usize, usize),
    /// Physical qubit `p''`.
    pub target_physical: usize,
}

impl SectionGraph {
    pub fn pairs_with_special(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges
            .iter()
            .copied()
            .chain(std::iter::once((self.special.q0, self.special.q1)))
    }
}

/// Every `(edge, anchor, target)` triple where the swap gives the anchor a
/// genuinely new neighbor. Depends only on the topology.
pub fn swap_candidates(coupling: &CouplingGraph) -> Vec<SwapChoice> {
    let mut out = Vec::new();
    for &(u, v) in coupling.edges() {
        for (anchor, partner) in [(u, v), (v, u)] {
            for &target in coupling.neighbors(partner) {
                if target != anchor && !coupling.has_edge(anchor, target) {
                    out.push(SwapChoice {
                        anchor,
                        partner,
                        target,
                    });
                }
            }
        }
    }
    out
}

/// Uniform choice over [`swap_candidates`].
pub fn select_swap_edge<R: Rng + ?Sized>(
    coupling: &CouplingGraph,
    _mapping: &Mapping,
    rng: &mut R,
) -> Result<SwapChoice> {
    let candidates = swap_candidates(coupling);
    if candidates.is_empty() {
        return Err(Error::CompleteGraph(coupling.name().to_string()));
    }
    Ok(candidates[rng.random_range(0..candidates.len())])
}

pub fn build_section_graph(
    coupling: &CouplingGraph,
    mapping: &Mapping,
    choice: SwapChoice,
) -> Result<SectionGraph> {
    let SwapChoice {
        anchor: p,
        partner,
        target,
    } = choice;
    if mapping.len() != coupling.num_qubits() {
        return Err(Error::Precondition(format!(
            "mapping covers {} qubits, coupling graph has {}",
            mapping.len(),
            coupling.num_qubits()
        )));
    }
    if !coupling.has_edge(p, partner)
        || !coupling.has_edge(partner, target)
        || target == p
        || coupling.has_edge(p, target)
    {
        return Err(Error::Precondition(format!(
            "swap ({p}, {partner}) does not give {p} the new neighbor {target}"
        )));
    }
    let d = coupling.degree(p);
    let anchor = mapping.program(p);
    let edges = coupling
        .edges()
        .iter()
        .filter(|&&(a, b)| a == p || b == p || coupling.degree(a).max(coupling.degree(b)) > d)
        .map(|&(a, b)| {
            if b == p {
                (mapping.program(b), mapping.program(a))
            } else {
                (mapping.program(a), mapping.program(b))
            }
        })
        .collect();
    Ok(SectionGraph {
        edges,
        special: Gate::cx(anchor, mapping.program(target)),
        anchor,
        swap_edge: (p, partner),
        target_physical: target,
    })
}
