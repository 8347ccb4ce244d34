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

use std::time::Instant;

use rustc_hash::FxHashMap;

use super::{OracleConfig, OracleOutcome, Witness};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::graph::{CouplingGraph, UndirectedGraph};
use crate::mapping::Mapping;

const NONE: u16 = u16::MAX;

#[derive(Clone, Copy, Debug)]
enum Op {
    Bind(u16, u16),
    Exec(u32),
    Swap(u16, u16),
}

struct Exhausted;

enum Memo {
    Packed {
        pos_bits: u32,
        front_bits: u32,
        map: FxHashMap<u128, u8>,
    },
    Wide(FxHashMap<Box<[u16]>, u8>),
}

fn bits_for(max: usize) -> u32 {
    usize::BITS - max.leading_zeros()
}

struct Search<'a> {
    cfg: OracleConfig,
    coupling: &'a CouplingGraph,
    dist: Vec<u16>,
    n: usize,
    gates: &'a [Gate],
    /// Program qubits that appear in some gate.
    active: Vec<usize>,
    queues: Vec<Vec<u32>>,
    pos: Vec<u16>,
    occ: Vec<u16>,
    front: Vec<u16>,
    done: usize,
    path: Vec<Op>,
    memo: Memo,
    states: u64,
    start: Instant,
}

impl<'a> Search<'a> {
    fn new(coupling: &'a CouplingGraph, circuit: &'a Circuit, cfg: OracleConfig) -> Self {
        let n = coupling.num_qubits();
        let mut queues = vec![Vec::new(); n];
        for (i, g) in circuit.gates().iter().enumerate() {
            queues[g.q0].push(i as u32);
            queues[g.q1].push(i as u32);
        }
        let active: Vec<usize> = (0..n).filter(|&q| !queues[q].is_empty()).collect();
        let longest = queues.iter().map(Vec::len).max().unwrap_or(0);
        let pos_bits = bits_for(n);
        let front_bits = bits_for(longest);
        let memo = if active.len() as u32 * (pos_bits + front_bits) <= 128 {
            Memo::Packed {
                pos_bits,
                front_bits,
                map: FxHashMap::default(),
            }
        } else {
            Memo::Wide(FxHashMap::default())
        };
        Search {
            cfg,
            coupling,
            dist: coupling
                .distance_matrix()
                .into_iter()
                .map(|d| d as u16)
                .collect(),
            n,
            gates: circuit.gates(),
            active,
            queues,
            pos: vec![NONE; n],
            occ: vec![NONE; n],
            front: vec![0; n],
            done: 0,
            path: Vec::new(),
            memo,
            states: 0,
            start: Instant::now(),
        }
    }

    fn next_gate(&self, q: usize) -> Option<u32> {
        self.queues[q].get(self.front[q] as usize).copied()
    }

    /// Gate at the front of both its qubits, if `q` has one.
    fn ready(&self, q: usize) -> Option<u32> {
        let g = self.next_gate(q)?;
        let gate = self.gates[g as usize];
        let other = if gate.q0 == q { gate.q1 } else { gate.q0 };
        (self.next_gate(other) == Some(g)).then_some(g)
    }

    fn executable(&self, g: u32) -> bool {
        let gate = self.gates[g as usize];
        let (a, b) = (self.pos[gate.q0], self.pos[gate.q1]);
        a != NONE && b != NONE && self.coupling.has_edge(a as usize, b as usize)
    }

    fn apply(&mut self, op: Op) {
        match op {
            Op::Bind(q, p) => {
                self.pos[q as usize] = p;
                self.occ[p as usize] = q;
            }
            Op::Exec(g) => {
                let gate = self.gates[g as usize];
                self.front[gate.q0] += 1;
                self.front[gate.q1] += 1;
                self.done += 1;
            }
            Op::Swap(u, v) => self.swap(u as usize, v as usize),
        }
        self.path.push(op);
    }

    fn swap(&mut self, u: usize, v: usize) {
        let (a, b) = (self.occ[u], self.occ[v]);
        self.occ[u] = b;
        self.occ[v] = a;
        if a != NONE {
            self.pos[a as usize] = v as u16;
        }
        if b != NONE {
            self.pos[b as usize] = u as u16;
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.path.len() > mark {
            match self.path.pop().unwrap() {
                Op::Bind(q, p) => {
                    self.pos[q as usize] = NONE;
                    self.occ[p as usize] = NONE;
                }
                Op::Exec(g) => {
                    let gate = self.gates[g as usize];
                    self.front[gate.q0] -= 1;
                    self.front[gate.q1] -= 1;
                    self.done -= 1;
                }
                Op::Swap(u, v) => self.swap(u as usize, v as usize),
            }
        }
    }

    fn close(&mut self) {
        loop {
            let mut progressed = false;
            for i in 0..self.active.len() {
                let q = self.active[i];
                if let Some(g) = self.ready(q) {
                    if self.gates[g as usize].q0 == q && self.executable(g) {
                        self.apply(Op::Exec(g));
                        progressed = true;
                    }
                }
            }
            if !progressed {
                return;
            }
        }
    }

    fn ready_gates(&self) -> Vec<u32> {
        self.active
            .iter()
            .filter_map(|&q| self.ready(q).filter(|&g| self.gates[g as usize].q0 == q))
            .collect()
    }

    fn lower_bound(&self, ready: &[u32]) -> usize {
        let mut max = 0;
        let mut sum = 0;
        for &g in ready {
            let gate = self.gates[g as usize];
            let (a, b) = (self.pos[gate.q0], self.pos[gate.q1]);
            if a == NONE || b == NONE {
                continue;
            }
            let d = self.dist[a as usize * self.n + b as usize] as usize - 1;
            max = max.max(d);
            sum += d;
        }
        max.max(sum.div_ceil(2))
    }

    fn memo_get(&self) -> Option<u8> {
        match &self.memo {
            Memo::Packed {
                pos_bits,
                front_bits,
                map,
            } => map.get(&self.packed(*pos_bits, *front_bits)).copied(),
            Memo::Wide(map) => map.get(&self.wide()[..]).copied(),
        }
    }

    fn memo_put(&mut self, budget: u8) {
        match &self.memo {
            Memo::Packed {
                pos_bits,
                front_bits,
                ..
            } => {
                let key = self.packed(*pos_bits, *front_bits);
                if let Memo::Packed { map, .. } = &mut self.memo {
                    let e = map.entry(key).or_insert(budget);
                    *e = (*e).max(budget);
                }
            }
            Memo::Wide(_) => {
                let key = self.wide();
                if let Memo::Wide(map) = &mut self.memo {
                    let e = map.entry(key).or_insert(budget);
                    *e = (*e).max(budget);
                }
            }
        }
    }

    fn packed(&self, pos_bits: u32, front_bits: u32) -> u128 {
        let mut key = 0u128;
        for &q in &self.active {
            let p = if self.pos[q] == NONE {
                self.n as u128
            } else {
                self.pos[q] as u128
            };
            key = (key << pos_bits) | p;
            key = (key << front_bits) | self.front[q] as u128;
        }
        key
    }

    fn wide(&self) -> Box<[u16]> {
        self.active
            .iter()
            .flat_map(|&q| [self.pos[q], self.front[q]])
            .collect()
    }

    fn tick(&mut self) -> std::result::Result<(), Exhausted> {
        self.states += 1;
        if self.states > self.cfg.max_states {
            return Err(Exhausted);
        }
        if self.states.is_multiple_of(4096) && self.start.elapsed() > self.cfg.time_limit {
            return Err(Exhausted);
        }
        Ok(())
    }

    /// True if the remaining gates fit in `budget` SWAPs; the solution is
    /// left on `path`.
    fn dfs(
        &mut self,
        budget: usize,
        last_swap: Option<(u16, u16)>,
    ) -> std::result::Result<bool, Exhausted> {
        let mark = self.path.len();
        let mut last_swap = last_swap;
        if self.cfg.greedy_closure {
            self.close();
            if self.path.len() > mark {
                last_swap = None;
            }
        }
        if self.done == self.gates.len() {
            return Ok(true);
        }
        if self.memo_get().is_some_and(|b| b as usize >= budget) {
            self.undo_to(mark);
            return Ok(false);
        }
        self.tick()?;
        let ready = self.ready_gates();

        // Place a qubit the first time one of its gates reaches the front.
        let unbound = ready.iter().find_map(|&g| {
            let gate = self.gates[g as usize];
            [gate.q0, gate.q1]
                .into_iter()
                .find(|&q| self.pos[q] == NONE)
                .map(|q| (gate, q))
        });
        if let Some((gate, q)) = unbound {
            let partner = if gate.q0 == q { gate.q1 } else { gate.q0 };
            let mut spots: Vec<usize> = (0..self.n).filter(|&p| self.occ[p] == NONE).collect();
            if self.pos[partner] != NONE {
                let near = self.pos[partner] as usize;
                spots.sort_by_key(|&p| self.dist[p * self.n + near]);
            }
            for p in spots {
                let inner = self.path.len();
                self.apply(Op::Bind(q as u16, p as u16));
                if self.dfs(budget, last_swap)? {
                    return Ok(true);
                }
                self.undo_to(inner);
            }
            self.fail(mark, budget);
            return Ok(false);
        }

        if !self.cfg.greedy_closure {
            for &g in &ready {
                if self.executable(g) {
                    let inner = self.path.len();
                    self.apply(Op::Exec(g));
                    if self.dfs(budget, None)? {
                        return Ok(true);
                    }
                    self.undo_to(inner);
                }
            }
        }

        if budget == 0 || self.lower_bound(&ready) > budget {
            self.fail(mark, budget);
            return Ok(false);
        }
        for &(u, v) in self.coupling.edges() {
            let (u, v) = (u as u16, v as u16);
            if Some((u, v)) == last_swap {
                continue;
            }
            if self.occ[u as usize] == NONE && self.occ[v as usize] == NONE {
                continue;
            }
            let inner = self.path.len();
            self.apply(Op::Swap(u, v));
            if self.dfs(budget - 1, Some((u, v)))? {
                return Ok(true);
            }
            self.undo_to(inner);
        }
        self.fail(mark, budget);
        Ok(false)
    }

    fn fail(&mut self, mark: usize, budget: usize) {
        self.memo_put(budget.min(u8::MAX as usize) as u8);
        self.undo_to(mark);
    }

    fn witness(&self, num_qubits: usize) -> Result<Witness> {
        let n = self.n;
        let mut slot: Vec<usize> = (0..n).collect();
        let mut initial = vec![usize::MAX; n];
        let mut pos = vec![usize::MAX; n];
        let mut occ = vec![usize::MAX; n];
        let mut answer = Vec::new();
        for op in &self.path {
            match *op {
                Op::Bind(q, p) => {
                    initial[q as usize] = slot[p as usize];
                    pos[q as usize] = p as usize;
                    occ[p as usize] = q as usize;
                }
                Op::Exec(g) => {
                    let gate = self.gates[g as usize];
                    answer.push(Gate::cx(pos[gate.q0], pos[gate.q1]));
                }
                Op::Swap(u, v) => {
                    let (u, v) = (u as usize, v as usize);
                    slot.swap(u, v);
                    let (a, b) = (occ[u], occ[v]);
                    occ.swap(u, v);
                    if a != usize::MAX {
                        pos[a] = v;
                    }
                    if b != usize::MAX {
                        pos[b] = u;
                    }
                    answer.push(Gate::swap(u, v));
                }
            }
        }
        let mut used = vec![false; n];
        for &p in initial.iter().filter(|&&p| p != usize::MAX) {
            used[p] = true;
        }
        let mut free = (0..n).filter(|&p| !used[p]);
        for p in initial.iter_mut().filter(|p| **p == usize::MAX) {
            *p = free.next().expect("as many slots as qubits");
        }
        debug_assert!(num_qubits <= n);
        Ok(Witness {
            initial_mapping: Mapping::new(initial)?,
            answer: Circuit::new(n, answer)?,
        })
    }
}

/// Smallest number of SWAPs with which `circuit` runs on `coupling`, over
/// all initial mappings, searching up to `budget` SWAPs.
///
/// Iterative deepening over the SWAP count. Program qubits are placed
/// lazily when their first gate reaches the front, executable front gates
/// run for free, and failed states are remembered across iterations.
pub fn exact_min_swaps(
    coupling: &CouplingGraph,
    circuit: &Circuit,
    budget: usize,
    config: OracleConfig,
) -> Result<OracleOutcome> {
    if circuit.num_qubits() > coupling.num_qubits() {
        return Err(Error::Precondition(format!(
            "circuit has {} qubits but the device only {}",
            circuit.num_qubits(),
            coupling.num_qubits()
        )));
    }
    if circuit.swap_count() > 0 {
        return Err(Error::Precondition(
            "input circuit already contains SWAP gates".into(),
        ));
    }
    let mut search = Search::new(coupling, circuit, config);
    for k in 0..=budget {
        match search.dfs(k, None) {
            Ok(true) => {
                return Ok(OracleOutcome::Optimal {
                    swaps: k,
                    witness: search.witness(circuit.num_qubits())?,
                })
            }
            Ok(false) => {}
            Err(Exhausted) => {
                return Ok(OracleOutcome::ResourcesExhausted {
                    lower_bound: k,
                    states: search.states,
                })
            }
        }
        search.undo_to(0);
    }
    Ok(OracleOutcome::ExceedsBudget { budget })
}
