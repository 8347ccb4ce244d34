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

//! Exact minimum-SWAP solvers for small circuits.

mod brute;
mod exact;

pub use brute::brute_force_min_swaps;
pub use exact::exact_min_swaps;

use std::time::Duration;

use crate::circuit::Circuit;
use crate::mapping::Mapping;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Search nodes expanded before giving up.
    pub max_states: u64,
    pub time_limit: Duration,
    /// Execute every executable front gate before branching. Turning this
    /// off branches on individual executions too, which is slower but makes
    /// no dominance assumption.
    pub greedy_closure: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_states: 10_000_000,
            time_limit: Duration::from_secs(60),
            greedy_closure: true,
        }
    }
}

/// An optimal solution: where each program qubit starts and the physical
/// circuit realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub initial_mapping: Mapping,
    pub answer: Circuit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Optimal {
        swaps: usize,
        witness: Witness,
    },
    /// No solution with at most `budget` SWAPs.
    ExceedsBudget {
        budget: usize,
    },
    /// Search stopped early. At least `lower_bound` SWAPs are needed.
    ResourcesExhausted {
        lower_bound: usize,
        states: u64,
    },
}

impl OracleOutcome {
    pub fn swaps(&self) -> Option<usize> {
        match self {
            OracleOutcome::Optimal { swaps, .. } => Some(*swaps),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arch::{grid, line};
    use crate::circuit::Gate;
    use crate::replay::replay;
    use rand::{Rng, SeedableRng};

    fn exact(
        c: &crate::graph::CouplingGraph,
        gates: &[(usize, usize)],
        budget: usize,
    ) -> Option<usize> {
        let circ = Circuit::from_pairs(c.num_qubits(), gates.iter().copied()).unwrap();
        exact_min_swaps(c, &circ, budget, OracleConfig::default())
            .unwrap()
            .swaps()
    }

    #[test]
    fn triangle_on_line_needs_one() {
        let l4 = line(4).unwrap();
        assert_eq!(exact(&l4, &[(0, 1), (1, 2), (2, 0)], 3), Some(1));
    }

    #[test]
    fn embeddable_needs_none() {
        let g = grid(3, 3).unwrap();
        assert_eq!(
            exact(&g, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)], 3),
            Some(0)
        );
        assert_eq!(exact(&g, &[], 3), Some(0));
        assert_eq!(exact(&line(3).unwrap(), &[(0, 2)], 0), Some(0));
    }

    #[test]
    fn star_beyond_degree() {
        // Degree-4 star on a line: each extra neighbor costs a SWAP.
        let l5 = line(5).unwrap();
        assert_eq!(exact(&l5, &[(0, 1), (0, 2), (0, 3), (0, 4)], 4), Some(2));
        assert_eq!(exact(&l5, &[(0, 1), (0, 2), (0, 3), (0, 4)], 1), None);
    }

    #[test]
    fn caps_stop_search() {
        let l5 = line(5).unwrap();
        let circ = Circuit::from_pairs(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let cfg = OracleConfig {
            max_states: 1,
            ..OracleConfig::default()
        };
        assert!(matches!(
            exact_min_swaps(&l5, &circ, 4, cfg).unwrap(),
            OracleOutcome::ResourcesExhausted { .. }
        ));
    }

    #[test]
    fn rejects_oversized_or_routed_input() {
        let l3 = line(3).unwrap();
        let big = Circuit::from_pairs(4, [(0, 3)]).unwrap();
        assert!(exact_min_swaps(&l3, &big, 1, OracleConfig::default()).is_err());
        let routed = Circuit::new(3, vec![Gate::swap(0, 1)]).unwrap();
        assert!(exact_min_swaps(&l3, &routed, 1, OracleConfig::default()).is_err());
    }

    fn random_circuit(rng: &mut impl Rng, n: usize, k: usize, m: usize) -> Circuit {
        let pairs: Vec<(usize, usize)> = (0..m)
            .map(|_| {
                let a = rng.random_range(0..k);
                let b = (a + rng.random_range(1..k)) % k;
                (a, b)
            })
            .collect();
        Circuit::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn agrees_with_brute_force_and_without_closure() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (i, c) in [line(4).unwrap(), line(5).unwrap(), grid(2, 3).unwrap()]
            .iter()
            .cycle()
            .take(45)
            .enumerate()
        {
            let circ = random_circuit(&mut rng, c.num_qubits(), 4.min(c.num_qubits()), 1 + i % 12);
            let e = exact_min_swaps(c, &circ, 3, OracleConfig::default()).unwrap();
            let b = brute_force_min_swaps(c, &circ, 3).unwrap();
            let slow = OracleConfig {
                greedy_closure: false,
                ..OracleConfig::default()
            };
            let nc = exact_min_swaps(c, &circ, 3, slow).unwrap();
            assert_eq!(e.swaps(), b, "{circ:?}");
            assert_eq!(nc.swaps(), b, "{circ:?}");
            if let OracleOutcome::Optimal { swaps, witness } = e {
                let r = replay(c, &circ, &witness.answer, &witness.initial_mapping);
                assert!(r.is_valid(), "{:?}", r.violations);
                assert_eq!(r.swaps, swaps);
            }
        }
    }

    #[test]
    fn appending_gates_never_lowers_the_count() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = grid(2, 3).unwrap();
        for _ in 0..10 {
            let circ = random_circuit(&mut rng, 6, 6, 14);
            let mut last = 0;
            for m in 0..=circ.len() {
                let prefix = circ.slice(0..m);
                let k = exact_min_swaps(&g, &prefix, 4, OracleConfig::default())
                    .unwrap()
                    .swaps()
                    .unwrap();
                assert!(k >= last);
                last = k;
            }
        }
    }

    #[test]
    fn brute_force_basics() {
        let l3 = line(3).unwrap();
        assert_eq!(
            brute_force_min_swaps(&l3, &Circuit::new(3, vec![]).unwrap(), 0).unwrap(),
            Some(0)
        );
        let tri = Circuit::from_pairs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(brute_force_min_swaps(&l3, &tri, 0).unwrap(), None);
        assert_eq!(brute_force_min_swaps(&l3, &tri, 2).unwrap(), Some(1));
    }
}
