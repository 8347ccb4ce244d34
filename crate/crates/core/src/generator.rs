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

//! Assembling sections into a benchmark circuit plus its optimal answer, and
//! padding with redundant gates.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::backbone::{connect_section, order_section, Ordering};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::graph::CouplingGraph;
use crate::isogen::{build_section_graph, select_swap_edge};
use crate::mapping::{apply_swap, Mapping};
use crate::rng::attempt_rng;

pub const GENERATOR_VERSION: &str = concat!("qubikos ", env!("CARGO_PKG_VERSION"));

/// A SWAP in the answer circuit: its index in the answer and its coupler.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScheduledSwap {
    pub answer_index: usize,
    pub edge: (usize, usize),
}

/// A benchmark circuit together with an answer that uses exactly
/// `optimal_swaps` SWAPs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchmarkInstance {
    /// Architecture name, resolvable with [`crate::arch::make_architecture`].
    pub arch: String,
    /// Program-qubit CX circuit.
    pub circuit: Circuit,
    /// Physical-qubit circuit with SWAPs, executable from `initial_mapping`.
    pub answer: Circuit,
    pub initial_mapping: Mapping,
    pub swap_schedule: Vec<ScheduledSwap>,
    pub optimal_swaps: usize,
    pub seed: u64,
    /// `[start, end)` gate ranges of each section in `circuit`. The last gate
    /// of a section is its special gate. Gates after the last section form an
    /// unconstrained tail.
    pub section_boundaries: Vec<(usize, usize)>,
    pub generator_version: String,
}

impl BenchmarkInstance {
    /// Mappings `f_0 ..= f_n` in force between consecutive SWAPs.
    pub fn mappings(&self, coupling: &CouplingGraph) -> Result<Vec<Mapping>> {
        let mut out = vec![self.initial_mapping.clone()];
        for s in &self.swap_schedule {
            let next = apply_swap(coupling, out.last().unwrap(), s.edge)?;
            out.push(next);
        }
        Ok(out)
    }

    /// Index of each section's special gate in `circuit`.
    pub fn special_gates(&self) -> Vec<usize> {
        self.section_boundaries
            .iter()
            .map(|&(_, e)| e - 1)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub ordering: Ordering,
    /// Independent backbone draws tried before giving up on the gate budget.
    pub max_attempts: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            ordering: Ordering::Compact,
            max_attempts: 512,
        }
    }
}

/// `generate_with` under the default configuration.
pub fn generate(
    coupling: &CouplingGraph,
    swaps: usize,
    gates: usize,
    seed: u64,
) -> Result<BenchmarkInstance> {
    generate_with(coupling, swaps, gates, seed, GeneratorConfig::default())
}

/// Builds an instance needing exactly `swaps` SWAPs with `gates` two-qubit
/// gates. Pure in `(coupling, swaps, gates, seed, config)`.
///
/// Backbones are drawn from the streams `attempt_rng(seed, 0)`, `(seed, 1)`,
/// ... and the first one that fits in `gates` is padded with the same stream.
pub fn generate_with(
    coupling: &CouplingGraph,
    swaps: usize,
    gates: usize,
    seed: u64,
    config: GeneratorConfig,
) -> Result<BenchmarkInstance> {
    let mut smallest = usize::MAX;
    for attempt in 0..config.max_attempts.max(1) {
        let mut rng = attempt_rng(seed, attempt);
        let backbone = build_backbone(coupling, swaps, seed, &mut rng, config.ordering)?;
        let size = backbone.circuit.len();
        if size <= gates {
            return pad_instance(coupling, &backbone, gates, &mut rng);
        }
        smallest = smallest.min(size);
    }
    Err(Error::BackboneTooLarge {
        backbone: smallest,
        budget: gates,
    })
}

/// One backbone draw: random initial mapping, then one section per SWAP.
pub fn build_backbone<R: Rng + ?Sized>(
    coupling: &CouplingGraph,
    swaps: usize,
    seed: u64,
    rng: &mut R,
    ordering: Ordering,
) -> Result<BenchmarkInstance> {
    let n = coupling.num_qubits();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let initial = Mapping::new(perm)?;
    let mut current = initial.clone();
    let mut gates: Vec<Gate> = Vec::new();
    let mut bounds = Vec::new();
    let mut edges = Vec::new();
    let mut prior: Option<Gate> = None;
    for _ in 0..swaps {
        let choice = select_swap_edge(coupling, &current, rng)?;
        let section = build_section_graph(coupling, &current, choice)?;
        let section = connect_section(coupling, &current, &section, prior)?;
        let seq = order_section(&section, prior, rng, ordering)?;
        let start = gates.len();
        gates.extend(seq);
        bounds.push((start, gates.len()));
        edges.push(choice.edge());
        prior = Some(section.special);
        current = apply_swap(coupling, &current, choice.edge())?;
    }
    let circuit = Circuit::new(n, gates)?;
    assemble(coupling, circuit, initial, bounds, edges, seed)
}

/// Builds the answer circuit: each section under the mapping in force, with
/// its SWAP directly before its special gate.
fn assemble(
    coupling: &CouplingGraph,
    circuit: Circuit,
    initial: Mapping,
    bounds: Vec<(usize, usize)>,
    edges: Vec<(usize, usize)>,
    seed: u64,
) -> Result<BenchmarkInstance> {
    let mut mappings = vec![initial.clone()];
    for &e in &edges {
        mappings.push(apply_swap(coupling, mappings.last().unwrap(), e)?);
    }
    let phys = |m: &Mapping, g: &Gate| Gate::cx(m.physical(g.q0), m.physical(g.q1));
    let mut answer = Vec::with_capacity(circuit.len() + edges.len());
    let mut schedule = Vec::new();
    let mut section = 0;
    for (i, g) in circuit.gates().iter().enumerate() {
        if section < bounds.len() && i == bounds[section].1 - 1 {
            schedule.push(ScheduledSwap {
                answer_index: answer.len(),
                edge: edges[section],
            });
            answer.push(Gate::swap(edges[section].0, edges[section].1));
            section += 1;
        }
        answer.push(phys(&mappings[section], g));
    }
    Ok(BenchmarkInstance {
        arch: coupling.name().to_string(),
        answer: Circuit::new(coupling.num_qubits(), answer)?,
        circuit,
        initial_mapping: initial,
        optimal_swaps: edges.len(),
        swap_schedule: schedule,
        seed,
        section_boundaries: bounds,
        generator_version: GENERATOR_VERSION.to_string(),
    })
}

/// Inserts redundant CX gates until the circuit holds `budget` gates.
///
/// A gate inserted in region `j` (section `j`, or the tail when `j` equals
/// the section count) acts on a pair adjacent under `f_j` and is mirrored
/// into the answer under `f_j`. Inside a section it is placed between two
/// gates of that section (or the preceding special gate) sharing one of its
/// qubits, so it stays chained after the prior special gate and before the
/// current one; inside the first section only the second link is needed.
pub fn pad_instance<R: Rng + ?Sized>(
    coupling: &CouplingGraph,
    instance: &BenchmarkInstance,
    budget: usize,
    rng: &mut R,
) -> Result<BenchmarkInstance> {
    let current = instance.circuit.len();
    if budget < current {
        return Err(Error::BudgetBelowSize { budget, current });
    }
    let mappings = instance.mappings(coupling)?;
    let n_sections = instance.section_boundaries.len();
    let mut gates = instance.circuit.gates().to_vec();
    let mut bounds = instance.section_boundaries.clone();
    let edges = coupling.edges();
    while gates.len() < budget {
        let region = rng.random_range(0..=n_sections);
        let (a, b) = edges[rng.random_range(0..edges.len())];
        let m = &mappings[region];
        let (qa, qb) = if rng.random_bool(0.5) {
            (m.program(a), m.program(b))
        } else {
            (m.program(b), m.program(a))
        };
        let range = if region == n_sections {
            let lo = bounds.last().map_or(0, |&(_, e)| e);
            Some((lo, gates.len()))
        } else {
            let (start, end) = bounds[region];
            let scan_from = if region == 0 { start } else { start - 1 };
            let touching: Vec<usize> = (scan_from..end)
                .filter(|&i| gates[i].touches(qa) || gates[i].touches(qb))
                .collect();
            match (touching.first(), touching.last()) {
                (Some(_), Some(&last)) if region == 0 => Some((start, last)),
                (Some(&first), Some(&last)) if first < last => Some((first + 1, last)),
                _ => None,
            }
        };
        let Some((lo, hi)) = range else { continue };
        let x = rng.random_range(lo..=hi);
        gates.insert(x, Gate::cx(qa, qb));
        for (j, bound) in bounds.iter_mut().enumerate() {
            if j == region {
                bound.1 += 1;
            } else if j > region {
                bound.0 += 1;
                bound.1 += 1;
            }
        }
    }
    let circuit = Circuit::new(instance.circuit.num_qubits(), gates)?;
    let edges: Vec<_> = instance.swap_schedule.iter().map(|s| s.edge).collect();
    let mut out = assemble(
        coupling,
        circuit,
        instance.initial_mapping.clone(),
        bounds,
        edges,
        instance.seed,
    )?;
    out.arch = instance.arch.clone();
    Ok(out)
}
