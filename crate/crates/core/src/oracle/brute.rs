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

use rustc_hash::FxHashSet;

use crate::circuit::{build_dependency_dag, Circuit};
use crate::error::{Error, Result};
use crate::graph::{CouplingGraph, UndirectedGraph};

type State = (Box<[u8]>, u64);

/// Minimum SWAP count by breadth-first search over (placement of the used
/// qubits, set of executed gates), started from every injective placement.
/// Gates run one at a time at no cost and each SWAP costs one. Returns
/// `None` if more than `budget` SWAPs are needed.
///
/// Exponential in everything; meant for circuits of a few qubits and at
/// most 64 gates.
pub fn brute_force_min_swaps(
    coupling: &CouplingGraph,
    circuit: &Circuit,
    budget: usize,
) -> Result<Option<usize>> {
    let n = coupling.num_qubits();
    if circuit.len() > 64 || n > u8::MAX as usize || circuit.num_qubits() > n {
        return Err(Error::Precondition(
            "brute force handles at most 64 gates on at most 255 device qubits".into(),
        ));
    }
    let gates = circuit.gates();
    let mut used: Vec<usize> = gates.iter().flat_map(|g| [g.q0, g.q1]).collect();
    used.sort_unstable();
    used.dedup();
    let mut slot = vec![usize::MAX; circuit.num_qubits()];
    for (i, &q) in used.iter().enumerate() {
        slot[q] = i;
    }
    let dag = build_dependency_dag(circuit);
    let needs: Vec<u64> = (0..gates.len())
        .map(|g| dag.predecessors(g).iter().fold(0u64, |m, &p| m | 1 << p))
        .collect();
    let all: u64 = if gates.is_empty() {
        0
    } else {
        u64::MAX >> (64 - gates.len())
    };

    let mut seen: FxHashSet<State> = FxHashSet::default();
    let mut level: Vec<State> = Vec::new();
    let mut placement = Vec::with_capacity(used.len());
    let mut taken = vec![false; n];
    placements(n, used.len(), &mut placement, &mut taken, &mut |p| {
        let s: State = (p.iter().map(|&x| x as u8).collect(), 0);
        if seen.insert(s.clone()) {
            level.push(s);
        }
    });

    // Expands `frontier` in place through free gate executions.
    let run_gates = |frontier: &mut Vec<State>, seen: &mut FxHashSet<State>| {
        let mut i = 0;
        while i < frontier.len() {
            let (pos, done) = frontier[i].clone();
            for (g, gate) in gates.iter().enumerate() {
                let bit = 1u64 << g;
                if done & bit != 0 || done & needs[g] != needs[g] {
                    continue;
                }
                let (a, b) = (pos[slot[gate.q0]] as usize, pos[slot[gate.q1]] as usize);
                if coupling.has_edge(a, b) {
                    let next = (pos.clone(), done | bit);
                    if seen.insert(next.clone()) {
                        frontier.push(next);
                    }
                }
            }
            i += 1;
        }
    };

    for cost in 0..=budget {
        run_gates(&mut level, &mut seen);
        if level.iter().any(|s| s.1 == all) {
            return Ok(Some(cost));
        }
        if cost == budget {
            break;
        }
        let mut next_level = Vec::new();
        for (pos, done) in &level {
            for &(u, v) in coupling.edges() {
                let mut moved = pos.clone();
                let mut touched = false;
                for p in moved.iter_mut() {
                    if *p as usize == u {
                        *p = v as u8;
                        touched = true;
                    } else if *p as usize == v {
                        *p = u as u8;
                        touched = true;
                    }
                }
                if touched {
                    let s = (moved, *done);
                    if seen.insert(s.clone()) {
                        next_level.push(s);
                    }
                }
            }
        }
        level = next_level;
    }
    Ok(None)
}

fn placements(
    n: usize,
    k: usize,
    cur: &mut Vec<usize>,
    taken: &mut [bool],
    emit: &mut impl FnMut(&[usize]),
) {
    if cur.len() == k {
        emit(cur);
        return;
    }
    for p in 0..n {
        if !taken[p] {
            taken[p] = true;
            cur.push(p);
            placements(n, k, cur, taken, emit);
            cur.pop();
            taken[p] = false;
        }
    }
}
