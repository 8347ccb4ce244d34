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

//! Replaying a physical circuit against the program circuit it claims to
//! execute.

use crate::circuit::{Circuit, GateKind};
use crate::graph::{CouplingGraph, UndirectedGraph};
use crate::mapping::Mapping;
use crate::verify::{Violation, ViolationKind};

/// Result of a replay. `violations` is empty iff the answer is a valid
/// execution of the circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub swaps: usize,
    pub final_mapping: Mapping,
    pub violations: Vec<Violation>,
}

impl Replay {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Executes `answer` from `initial`. Every non-SWAP gate must sit on a
/// coupler and, mapped back to program qubits, be the next pending gate on
/// both of its qubits. Replay stops at the first out-of-order gate.
pub fn replay(
    coupling: &CouplingGraph,
    circuit: &Circuit,
    answer: &Circuit,
    initial: &Mapping,
) -> Replay {
    let n = coupling.num_qubits();
    let mut violations = Vec::new();
    let mut mapping = initial.clone();
    let shape_error = if initial.len() != n {
        Some(format!(
            "initial mapping has {} entries, device has {n} qubits",
            initial.len()
        ))
    } else if answer.num_qubits() > n {
        Some(format!(
            "answer uses {} qubits, device has {n}",
            answer.num_qubits()
        ))
    } else if circuit.num_qubits() > n {
        Some(format!(
            "circuit uses {} qubits, device has {n}",
            circuit.num_qubits()
        ))
    } else {
        None
    };
    if let Some(message) = shape_error {
        violations.push(Violation::new(ViolationKind::ShapeMismatch, message));
        return Replay {
            swaps: answer.swap_count(),
            final_mapping: mapping,
            violations,
        };
    }

    let mut queues: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, g) in circuit.gates().iter().enumerate() {
        queues[g.q0].push(i);
        queues[g.q1].push(i);
    }
    let mut front = vec![0usize; n];
    let next = |front: &[usize], q: usize| queues[q].get(front[q]).copied();
    let mut swaps = 0;
    let mut executed = 0;
    for (i, g) in answer.gates().iter().enumerate() {
        if !coupling.has_edge(g.q0, g.q1) {
            let kind = match g.kind {
                GateKind::Swap => ViolationKind::SwapNotOnCoupler,
                GateKind::Cx => ViolationKind::GateNotOnCoupler,
            };
            violations.push(
                Violation::new(kind, format!("({}, {}) is not a coupler", g.q0, g.q1)).at_gate(i),
            );
            if g.is_swap() {
                continue;
            }
        }
        if g.is_swap() {
            mapping.swap_physical(g.q0, g.q1);
            swaps += 1;
            continue;
        }
        let (a, b) = (mapping.program(g.q0), mapping.program(g.q1));
        match (next(&front, a), next(&front, b)) {
            (Some(x), Some(y)) if x == y => {
                front[a] += 1;
                front[b] += 1;
                executed += 1;
            }
            _ => {
                violations.push(
                    Violation::new(
                        ViolationKind::OutOfOrder,
                        format!(
                            "physical gate on ({}, {}) acts on program qubits ({a}, {b}), which is not the next pending gate on both",
                            g.q0, g.q1
                        ),
                    )
                    .at_gate(i),
                );
                return Replay {
                    swaps: answer.swap_count(),
                    final_mapping: mapping,
                    violations,
                };
            }
        }
    }
    if executed < circuit.len() {
        let first = (0..n).filter_map(|q| next(&front, q)).min().unwrap_or(0);
        violations.push(
            Violation::new(
                ViolationKind::MissingGates,
                format!(
                    "{} of {} circuit gates never executed",
                    circuit.len() - executed,
                    circuit.len()
                ),
            )
            .at_gate(first),
        );
    }
    Replay {
        swaps,
        final_mapping: mapping,
        violations,
    }
}

/// Indices where three consecutive CX gates on one coupler alternate
/// direction, the usual decomposition of a SWAP.
pub fn decomposed_swaps(answer: &Circuit) -> Vec<usize> {
    let gates = answer.gates();
    let mut out = Vec::new();
    let mut i = 0;
    while i + 2 < gates.len() {
        let (x, y, z) = (&gates[i], &gates[i + 1], &gates[i + 2]);
        let cx = |g: &crate::circuit::Gate| g.kind == GateKind::Cx;
        if cx(x) && cx(y) && cx(z) && x.q0 == y.q1 && x.q1 == y.q0 && x == z {
            out.push(i);
            i += 3;
        } else {
            i += 1;
        }
    }
    out
}
