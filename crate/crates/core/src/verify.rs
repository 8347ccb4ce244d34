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

//! Structural checks on a benchmark instance and mutation operators used to
//! exercise them.

use std::fmt;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::Serialize;

use crate::circuit::{build_dependency_dag, Circuit, Gate};
use crate::generator::BenchmarkInstance;
use crate::graph::{CouplingGraph, InteractionGraph};
use crate::mapping::Mapping;
use crate::replay::replay;
use crate::subiso::{embeds, Embedding};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    ShapeMismatch,
    GateNotOnCoupler,
    SwapNotOnCoupler,
    OutOfOrder,
    MissingGates,
    SwapCountMismatch,
    ScheduleMismatch,
    BadBoundaries,
    SectionEmbeddable,
    SectionMinusSpecialNotEmbeddable,
    NotSerialized,
    DecomposedSwap,
    ToolFailed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub severity: Severity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub section: Option<usize>,
    pub message: String,
}

impl Violation {
    pub fn new(kind: ViolationKind, message: impl Into<String>) -> Self {
        Violation {
            kind,
            severity: Severity::Error,
            gate: None,
            section: None,
            message: message.into(),
        }
    }

    pub fn warning(kind: ViolationKind, message: impl Into<String>) -> Self {
        Violation {
            severity: Severity::Warning,
            ..Violation::new(kind, message)
        }
    }

    pub fn at_gate(mut self, gate: usize) -> Self {
        self.gate = Some(gate);
        self
    }

    pub fn in_section(mut self, section: usize) -> Self {
        self.section = Some(section);
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)?;
        if let Some(s) = self.section {
            write!(f, " [section {s}]")?;
        }
        if let Some(g) = self.gate {
            write!(f, " [gate {g}]")?;
        }
        write!(f, ": {}", self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn new(check: &'static str, violations: Vec<Violation>) -> Self {
        CheckReport {
            check,
            passed: violations.iter().all(|v| v.severity != Severity::Error),
            violations,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub arch: String,
    pub seed: u64,
    pub optimal_swaps: usize,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the three checks.
pub fn verify_instance(
    coupling: &CouplingGraph,
    instance: &BenchmarkInstance,
) -> VerificationReport {
    let checks = vec![
        check_answer_validity(coupling, instance),
        check_section_hardness(coupling, instance),
        check_serialization(instance),
    ];
    VerificationReport {
        arch: instance.arch.clone(),
        seed: instance.seed,
        optimal_swaps: instance.optimal_swaps,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// The answer executes the circuit from the initial mapping with exactly
/// `optimal_swaps` SWAPs, located where the schedule says.
pub fn check_answer_validity(
    coupling: &CouplingGraph,
    instance: &BenchmarkInstance,
) -> CheckReport {
    let run = replay(
        coupling,
        &instance.circuit,
        &instance.answer,
        &instance.initial_mapping,
    );
    let mut violations = run.violations;
    if run.swaps != instance.optimal_swaps {
        violations.push(Violation::new(
            ViolationKind::SwapCountMismatch,
            format!(
                "answer has {} SWAPs, instance claims {}",
                run.swaps, instance.optimal_swaps
            ),
        ));
    }
    if instance.swap_schedule.len() != instance.optimal_swaps {
        violations.push(Violation::new(
            ViolationKind::ScheduleMismatch,
            format!(
                "schedule lists {} SWAPs, instance claims {}",
                instance.swap_schedule.len(),
                instance.optimal_swaps
            ),
        ));
    }
    for s in &instance.swap_schedule {
        let ok = instance
            .answer
            .gates()
            .get(s.answer_index)
            .is_some_and(|g| {
                g.is_swap() && (g.pair() == s.edge || g.pair() == (s.edge.1, s.edge.0))
            });
        if !ok {
            violations.push(
                Violation::new(
                    ViolationKind::ScheduleMismatch,
                    format!(
                        "no SWAP on ({}, {}) at this answer index",
                        s.edge.0, s.edge.1
                    ),
                )
                .at_gate(s.answer_index),
            );
        }
    }
    CheckReport::new("answer_validity", violations)
}

fn boundary_violations(instance: &BenchmarkInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut prev_end = 0;
    for (j, &(s, e)) in instance.section_boundaries.iter().enumerate() {
        if s != prev_end || e <= s || e > instance.circuit.len() {
            out.push(
                Violation::new(
                    ViolationKind::BadBoundaries,
                    format!("section range [{s}, {e}) does not continue from {prev_end} inside the circuit"),
                )
                .in_section(j),
            );
        }
        prev_end = e;
    }
    if instance.section_boundaries.len() != instance.optimal_swaps {
        out.push(Violation::new(
            ViolationKind::BadBoundaries,
            format!(
                "{} sections for {} SWAPs",
                instance.section_boundaries.len(),
                instance.optimal_swaps
            ),
        ));
    }
    out
}

/// Section mappings replayed from the schedule, or `None` if a scheduled
/// SWAP is not a coupler.
fn section_mappings(
    coupling: &CouplingGraph,
    instance: &BenchmarkInstance,
) -> Option<Vec<Mapping>> {
    instance.mappings(coupling).ok()
}

fn embeds_under(mapping: &Mapping, pattern: &InteractionGraph, coupling: &CouplingGraph) -> bool {
    let witness = Embedding {
        assignment: (0..pattern.num_qubits())
            .map(|q| mapping.physical(q))
            .collect(),
    };
    witness.is_valid(pattern, coupling)
}

/// Each section's interaction graph does not embed in the device, and does
/// once its special (last) gate is removed.
pub fn check_section_hardness(
    coupling: &CouplingGraph,
    instance: &BenchmarkInstance,
) -> CheckReport {
    let mut violations = boundary_violations(instance);
    if !violations.is_empty() {
        return CheckReport::new("section_hardness", violations);
    }
    let mappings = section_mappings(coupling, instance);
    let gates = instance.circuit.gates();
    let n = instance.circuit.num_qubits();
    for (j, &(s, e)) in instance.section_boundaries.iter().enumerate() {
        let section = &gates[s..e];
        let full = InteractionGraph::from_pairs(n, section.iter().map(Gate::pair));
        let rest =
            InteractionGraph::from_pairs(n, section[..section.len() - 1].iter().map(Gate::pair));
        if embeds(&full, coupling) {
            violations.push(
                Violation::new(
                    ViolationKind::SectionEmbeddable,
                    "section embeds into the device",
                )
                .in_section(j)
                .at_gate(e - 1),
            );
        }
        // The mapping in force is a ready witness; search only without it.
        let witnessed = mappings
            .as_ref()
            .is_some_and(|m| m[j].len() >= n && embeds_under(&m[j], &rest, coupling));
        if !witnessed && !embeds(&rest, coupling) {
            violations.push(
                Violation::new(
                    ViolationKind::SectionMinusSpecialNotEmbeddable,
                    "section without its last gate does not embed into the device",
                )
                .in_section(j)
                .at_gate(e - 1),
            );
        }
    }
    CheckReport::new("section_hardness", violations)
}

/// Every gate of a section precedes every gate of the next one in the
/// dependency DAG.
pub fn check_serialization(instance: &BenchmarkInstance) -> CheckReport {
    let mut violations = boundary_violations(instance);
    if !violations.is_empty() {
        return CheckReport::new("serialization", violations);
    }
    let desc = build_dependency_dag(&instance.circuit).descendants();
    for (j, w) in instance.section_boundaries.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let late =
            (a.0..a.1).find_map(|x| (b.0..b.1).find(|&y| !desc[x].contains(y)).map(|y| (x, y)));
        if let Some((x, y)) = late {
            violations.push(
                Violation::new(
                    ViolationKind::NotSerialized,
                    format!(
                        "gate {x} of section {j} does not precede gate {y} of section {}",
                        j + 1
                    ),
                )
                .in_section(j + 1)
                .at_gate(y),
            );
        }
    }
    CheckReport::new("serialization", violations)
}

/// Ways of corrupting an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Delete one SWAP from the answer.
    DropSwap,
    /// Exchange two adjacent circuit gates that share a qubit.
    TransposeDependent,
    /// Delete a special gate from circuit and answer, shrinking its section.
    RemoveSpecial,
    /// Replace one qubit of one circuit gate by another qubit.
    RelabelQubit,
}

impl Mutation {
    pub const ALL: [Mutation; 4] = [
        Mutation::DropSwap,
        Mutation::TransposeDependent,
        Mutation::RemoveSpecial,
        Mutation::RelabelQubit,
    ];
}

/// Applies `mutation`, or returns `None` if the instance offers no site for
/// it (no SWAPs, no dependent neighbours).
pub fn mutate<R: Rng + ?Sized>(
    instance: &BenchmarkInstance,
    mutation: Mutation,
    rng: &mut R,
) -> Option<BenchmarkInstance> {
    let mut out = instance.clone();
    let n = instance.circuit.num_qubits();
    match mutation {
        Mutation::DropSwap => {
            let s = instance.swap_schedule.choose(rng)?;
            let mut gates = instance.answer.gates().to_vec();
            gates.remove(s.answer_index);
            out.answer = Circuit::new(instance.answer.num_qubits(), gates).ok()?;
        }
        Mutation::TransposeDependent => {
            let gates = instance.circuit.gates();
            let sites: Vec<usize> = (0..gates.len().saturating_sub(1))
                .filter(|&i| {
                    let (x, y) = (&gates[i], &gates[i + 1]);
                    x.shares_qubit(y) && sorted(x.pair()) != sorted(y.pair())
                })
                .collect();
            let &i = sites.choose(rng)?;
            let mut gates = gates.to_vec();
            gates.swap(i, i + 1);
            out.circuit = Circuit::new(n, gates).ok()?;
        }
        Mutation::RemoveSpecial => {
            let j = rng.random_range(0..instance.section_boundaries.len().max(1));
            let &(_, end) = instance.section_boundaries.get(j)?;
            let special = end - 1;
            let mut gates = instance.circuit.gates().to_vec();
            gates.remove(special);
            out.circuit = Circuit::new(n, gates).ok()?;
            // The special gate sits right after the section's SWAP.
            let at = instance.swap_schedule[j].answer_index + 1;
            let mut answer = instance.answer.gates().to_vec();
            answer.remove(at);
            out.answer = Circuit::new(instance.answer.num_qubits(), answer).ok()?;
            for (k, b) in out.section_boundaries.iter_mut().enumerate() {
                if k > j {
                    b.0 -= 1;
                }
                if k >= j {
                    b.1 -= 1;
                }
            }
            for s in out.swap_schedule.iter_mut().skip(j + 1) {
                s.answer_index -= 1;
            }
        }
        Mutation::RelabelQubit => {
            if n < 3 || instance.circuit.is_empty() {
                return None;
            }
            let i = rng.random_range(0..instance.circuit.len());
            let mut gates = instance.circuit.gates().to_vec();
            let g = gates[i];
            let fresh = loop {
                let c = rng.random_range(0..n);
                if !g.touches(c) {
                    break c;
                }
            };
            gates[i] = if rng.random_bool(0.5) {
                Gate::cx(fresh, g.q1)
            } else {
                Gate::cx(g.q0, fresh)
            };
            out.circuit = Circuit::new(n, gates).ok()?;
        }
    }
    Some(out)
}

fn sorted((a, b): (usize, usize)) -> (usize, usize) {
    (a.min(b), a.max(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arch::{grid, make_architecture};
    use crate::generator::generate;
    use crate::rng::attempt_rng;

    #[test]
    fn generated_instances_pass() {
        for (arch, n, gates) in [("grid-3x3", 3, 30), ("line-5", 2, 20), ("aspen4", 5, 300)] {
            let g = make_architecture(arch).unwrap();
            for seed in 0..5 {
                let inst = generate(&g, n, gates, seed).unwrap();
                let report = verify_instance(&g, &inst);
                assert!(report.passed, "{arch} seed {seed}: {}", report.to_json());
            }
        }
    }

    #[test]
    fn every_mutation_is_flagged() {
        let g = grid(3, 3).unwrap();
        let mut rng = attempt_rng(5, 5);
        for seed in 0..10 {
            let inst = generate(&g, 3, 30, seed).unwrap();
            for m in Mutation::ALL {
                let bad = mutate(&inst, m, &mut rng).expect("site exists");
                assert!(!verify_instance(&g, &bad).passed, "{m:?} seed {seed}");
            }
        }
    }

    #[test]
    fn wrong_claimed_count_is_flagged() {
        let g = grid(3, 3).unwrap();
        let mut inst = generate(&g, 2, 30, 1).unwrap();
        inst.optimal_swaps = 3;
        let r = check_answer_validity(&g, &inst);
        assert!(!r.passed);
        assert!(r
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::SwapCountMismatch));
    }

    #[test]
    fn boundaries_must_tile_prefix() {
        let g = grid(3, 3).unwrap();
        let mut inst = generate(&g, 2, 30, 1).unwrap();
        inst.section_boundaries[1].0 += 1;
        assert!(!check_serialization(&inst).passed);
        assert!(!check_section_hardness(&g, &inst).passed);
    }

    #[test]
    fn report_json_shape() {
        let g = grid(3, 3).unwrap();
        let mut inst = generate(&g, 1, 20, 2).unwrap();
        inst.optimal_swaps = 0;
        let v: serde_json::Value =
            serde_json::from_str(&verify_instance(&g, &inst).to_json()).unwrap();
        assert_eq!(v["passed"], false);
        let first = &v["checks"][0]["violations"][0];
        assert_eq!(first["kind"], "swap_count_mismatch");
        assert_eq!(first["severity"], "error");
    }
}
