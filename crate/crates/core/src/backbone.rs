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

//! Turning a section graph into an ordered gate sequence whose dependency
//! DAG chains every gate after the prior special gate and before the
//! current one.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;

use crate::circuit::Gate;
use crate::error::{Error, Result};
use crate::graph::{CouplingGraph, UndirectedGraph};
use crate::isogen::SectionGraph;
use crate::mapping::Mapping;

/// How a section's gates are ordered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Ordering {
    /// Prior special gate, a BFS pass from one of its endpoints, then a
    /// reversed BFS pass towards the special gate. Every edge appears twice
    /// in sections that follow another section.
    TwoPass,
    /// Reversed BFS towards the special gate, preceded only by the shortest
    /// paths needed to hang every gate off the prior special gate.
    #[default]
    Compact,
}

/// Qubits that the section's own edges must connect: endpoints of `S`, the
/// anchor, and the prior special gate's endpoints. The target only needs the
/// special gate itself.
fn section_vertices(section: &SectionGraph, prior: Option<Gate>) -> BTreeSet<usize> {
    let mut v: BTreeSet<usize> = section.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    v.insert(section.anchor);
    if let Some(g) = prior {
        v.extend([g.q0, g.q1]);
    }
    v
}

/// Connected components of `(vertices, edges)`, as a component id per vertex.
fn components(vertices: &BTreeSet<usize>, edges: &[(usize, usize)], n: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut x = x;
        while parent[x] != r {
            let next = parent[x];
            parent[x] = r;
            x = next;
        }
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut comp = vec![usize::MAX; n];
    for &v in vertices {
        comp[v] = find(&mut parent, v);
    }
    comp
}

/// Adds executable edges to `section.edges` until the edges alone connect
/// every endpoint of `S` and of `prior`.
///
/// Components are joined along shortest physical paths, mapped back through
/// `f⁻¹`, starting from the component holding the anchor.
pub fn connect_section(
    coupling: &CouplingGraph,
    mapping: &Mapping,
    section: &SectionGraph,
    prior: Option<Gate>,
) -> Result<SectionGraph> {
    let n = coupling.num_qubits();
    for &(a, b) in &section.edges {
        if !mapping.is_executable(coupling, a, b) {
            return Err(Error::Precondition(format!(
                "section edge ({a}, {b}) is not executable under the mapping"
            )));
        }
    }
    let mut out = section.clone();
    let mut vertices = section_vertices(section, prior);
    loop {
        let comp = components(&vertices, &out.edges, n);
        let root = comp[out.anchor];
        if vertices.iter().all(|&v| comp[v] == root) {
            return Ok(out);
        }
        // Multi-source BFS on the hardware from the anchor's component.
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &v in &vertices {
            if comp[v] == root {
                let p = mapping.physical(v);
                seen[p] = true;
                queue.push_back(p);
            }
        }
        let mut hit = None;
        'bfs: while let Some(p) = queue.pop_front() {
            for &x in coupling.neighbors(p) {
                if seen[x] {
                    continue;
                }
                seen[x] = true;
                prev[x] = p;
                let q = mapping.program(x);
                if vertices.contains(&q) && comp[q] != root {
                    hit = Some(x);
                    break 'bfs;
                }
                queue.push_back(x);
            }
        }
        let mut x = hit.expect("coupling graph is connected");
        while prev[x] != usize::MAX {
            let p = prev[x];
            let (a, b) = (mapping.program(p), mapping.program(x));
            out.edges.push((a, b));
            vertices.insert(a);
            vertices.insert(b);
            x = p;
        }
    }
}

/// Simple multigraph over program qubits with edge ids.
struct EdgeGraph {
    adj: Vec<Vec<(usize, usize)>>,
    pairs: Vec<(usize, usize)>,
}

impl EdgeGraph {
    fn new(n: usize, pairs: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (id, &(a, b)) in pairs.iter().enumerate() {
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        EdgeGraph { adj, pairs }
    }

    /// Edge ids in BFS visiting order from `root`: when a vertex is popped,
    /// each of its not-yet-emitted edges is emitted, neighbors ascending.
    /// Edge `skip` is traversed but not emitted.
    fn bfs_edges(&self, root: usize, skip: Option<usize>) -> Vec<usize> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut emitted = vec![false; self.pairs.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            for &(v, id) in &self.adj[u] {
                if !emitted[id] {
                    emitted[id] = true;
                    if Some(id) != skip {
                        order.push(id);
                    }
                }
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        order
    }

    fn is_connected(&self) -> bool {
        let Some(&(root, _)) = self.pairs.first() else {
            return true;
        };
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        self.pairs.iter().all(|&(a, _)| seen[a])
    }

    fn num_components(&self) -> usize {
        let vertices: BTreeSet<usize> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let comp = components(&vertices, &self.pairs, self.adj.len());
        vertices
            .iter()
            .map(|&v| comp[v])
            .collect::<BTreeSet<_>>()
            .len()
    }
}

fn num_qubits_hint(section: &SectionGraph, prior: Option<Gate>) -> usize {
    section_vertices(section, prior)
        .last()
        .map_or(0, |&v| v + 1)
        .max(section.special.q0.max(section.special.q1) + 1)
}

/// Orders a connected section. The special gate is always last.
pub fn order_section<R: Rng + ?Sized>(
    section: &SectionGraph,
    prior: Option<Gate>,
    rng: &mut R,
    strategy: Ordering,
) -> Result<Vec<Gate>> {
    let n = num_qubits_hint(section, prior);
    let special = section.special;
    let s_len = section.edges.len();

    // H ∪ {special}: the pass towards the special gate.
    let mut with_special = section.edges.clone();
    with_special.push((special.q0, special.q1));
    let towards = EdgeGraph::new(n, with_special);
    if !towards.is_connected() {
        return Err(Error::DisconnectedSection {
            components: towards.num_components(),
        });
    }
    let from_prior = prior.map(|g| {
        let mut pairs = section.edges.clone();
        pairs.push((g.q0, g.q1));
        EdgeGraph::new(n, pairs)
    });
    if let Some(g) = &from_prior {
        if !g.is_connected() {
            return Err(Error::DisconnectedSection {
                components: g.num_components(),
            });
        }
    }

    let gate_of = |id: usize| {
        let (a, b) = section.edges[id];
        Gate::cx(a, b)
    };
    let mut out = Vec::new();
    match strategy {
        Ordering::TwoPass => {
            if let (Some(g), Some(graph)) = (prior, &from_prior) {
                let root = if rng.random_bool(0.5) { g.q0 } else { g.q1 };
                out.push(g);
                out.extend(graph.bfs_edges(root, Some(s_len)).into_iter().map(gate_of));
            }
            let root = if rng.random_bool(0.5) {
                special.q0
            } else {
                special.q1
            };
            let mut pass = towards.bfs_edges(root, Some(s_len));
            pass.reverse();
            out.extend(pass.into_iter().map(gate_of));
        }
        Ordering::Compact => {
            let root = if rng.random_bool(0.5) {
                special.q0
            } else {
                special.q1
            };
            let mut tail = towards.bfs_edges(root, Some(s_len));
            tail.reverse();
            let mut prefix = Vec::new();
            if let Some(g) = prior {
                let plain = EdgeGraph::new(n, section.edges.clone());
                loop {
                    let mut hot = vec![false; n];
                    hot[g.q0] = true;
                    hot[g.q1] = true;
                    for &id in &prefix {
                        let (a, b) = section.edges[id];
                        hot[a] = true;
                        hot[b] = true;
                    }
                    let hot_prefix = hot.clone();
                    let mut failing = None;
                    for &id in &tail {
                        let (a, b) = section.edges[id];
                        if hot[a] || hot[b] {
                            hot[a] = true;
                            hot[b] = true;
                        } else {
                            failing = Some((a, b));
                            break;
                        }
                    }
                    let Some((a, b)) = failing else { break };
                    let path = shortest_edge_path(&plain, &hot_prefix, &[a, b]).ok_or(
                        Error::DisconnectedSection {
                            components: plain.num_components(),
                        },
                    )?;
                    prefix.extend(path);
                }
            }
            out.extend(prefix.into_iter().map(gate_of));
            out.extend(tail.into_iter().map(gate_of));
        }
    }
    out.push(special);
    Ok(out)
}

/// Edge ids of a shortest path from any `sources` vertex to any `targets`
/// vertex, in walking order.
fn shortest_edge_path(
    graph: &EdgeGraph,
    sources: &[bool],
    targets: &[usize],
) -> Option<Vec<usize>> {
    let n = graph.adj.len();
    let mut via = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if sources[v] {
            seen[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        if targets.contains(&u) {
            let mut path = Vec::new();
            let mut x = u;
            while let Some((p, id)) = via[x] {
                path.push(id);
                x = p;
            }
            path.reverse();
            return Some(path);
        }
        for &(v, id) in &graph.adj[u] {
            if !seen[v] {
                seen[v] = true;
                via[v] = Some((u, id));
                queue.push_back(v);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arch::{grid, line};
    use crate::circuit::{build_dependency_dag, Circuit};
    use crate::isogen::tests::worked_example_graph;
    use crate::isogen::{build_section_graph, swap_candidates, SwapChoice};
    use crate::mapping::apply_swap;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn worked_sections() -> (CouplingGraph, Mapping, SectionGraph, Mapping, SectionGraph) {
        let g = worked_example_graph();
        let m1 = Mapping::identity(11);
        let s1 = build_section_graph(
            &g,
            &m1,
            SwapChoice {
                anchor: 1,
                partner: 2,
                target: 7,
            },
        )
        .unwrap();
        let m2 = apply_swap(&g, &m1, (1, 2)).unwrap();
        let s2 = build_section_graph(
            &g,
            &m2,
            SwapChoice {
                anchor: 0,
                partner: 4,
                target: 7,
            },
        )
        .unwrap();
        (g, m1, s1, m2, s2)
    }

    /// Checks both dependency obligations on the DAG of `[prior] ++ seq`.
    fn assert_chained(seq: &[Gate], prior: Option<Gate>, n: usize) {
        let mut gates = Vec::new();
        gates.extend(prior);
        gates.extend_from_slice(seq);
        let c = Circuit::new(n, gates).unwrap();
        let dag = build_dependency_dag(&c);
        let last = c.len() - 1;
        let prev_last = dag.prev(last);
        let offset = usize::from(prior.is_some());
        for i in offset..last {
            assert!(
                prev_last.contains(i),
                "gate {i} does not precede the special gate"
            );
            if prior.is_some() {
                assert!(
                    dag.prev(i).contains(0),
                    "gate {i} does not follow the prior special"
                );
            }
        }
        if prior.is_some() {
            assert!(prev_last.contains(0));
        }
    }

    #[test]
    fn connected_section_is_unchanged() {
        let (g, m1, s1, _, _) = worked_sections();
        assert_eq!(connect_section(&g, &m1, &s1, None).unwrap(), s1);
    }

    #[test]
    fn second_section_gets_the_bridging_edges() {
        let (g, _, s1, m2, s2) = worked_sections();
        let c = connect_section(&g, &m2, &s2, Some(s1.special)).unwrap();
        let added: Vec<_> = c.edges[s2.edges.len()..]
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        // q7 is joined through q1 or q4, both one hop away on the hardware.
        assert!(
            added.contains(&(1, 7)) || added.contains(&(4, 7)),
            "{added:?}"
        );
        for &(a, b) in &c.edges {
            assert!(m2.is_executable(&g, a, b));
        }
    }

    #[test]
    fn three_components_need_two_edges() {
        // line-7 with a hand-made section: components {0,1}, {3}, {5,6}.
        let g = line(7).unwrap();
        let m = Mapping::identity(7);
        let s = SectionGraph {
            edges: vec![(0, 1), (5, 6)],
            special: Gate::cx(1, 3),
            anchor: 1,
            swap_edge: (1, 2),
            target_physical: 3,
        };
        let c = connect_section(&g, &m, &s, None).unwrap();
        assert!(c.edges.len() >= 4);
        let v = section_vertices(&c, None);
        let comp = components(&v, &c.edges, 7);
        assert!(v.iter().all(|&x| comp[x] == comp[0]));
    }

    #[test]
    fn first_section_ends_with_special_after_star() {
        let (_, _, s1, _, _) = worked_sections();
        for strategy in [Ordering::TwoPass, Ordering::Compact] {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let seq = order_section(&s1, None, &mut rng, strategy).unwrap();
            assert_eq!(seq.len(), 5);
            assert_eq!(*seq.last().unwrap(), Gate::cx(1, 7));
            assert_chained(&seq, None, 11);
        }
    }

    #[test]
    fn two_pass_second_section_layout() {
        let (g, _, s1, m2, s2) = worked_sections();
        let s2 = connect_section(&g, &m2, &s2, Some(s1.special)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let seq = order_section(&s2, Some(s1.special), &mut rng, Ordering::TwoPass).unwrap();
        assert_eq!(seq[0], s1.special);
        assert_eq!(seq.len(), 2 * s2.edges.len() + 2);
        assert_eq!(*seq.last().unwrap(), Gate::cx(0, 7));
        assert_chained(&seq, Some(s1.special), 11);
    }

    #[test]
    fn compact_second_section_is_shorter_and_chained() {
        let (g, _, s1, m2, s2) = worked_sections();
        let s2 = connect_section(&g, &m2, &s2, Some(s1.special)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let seq = order_section(&s2, Some(s1.special), &mut rng, Ordering::Compact).unwrap();
        assert!(seq.len() <= 2 * s2.edges.len() + 1);
        assert_chained(&seq, Some(s1.special), 11);
    }

    #[test]
    fn disconnected_section_is_rejected() {
        let s = SectionGraph {
            edges: vec![(0, 1), (5, 6)],
            special: Gate::cx(1, 3),
            anchor: 1,
            swap_edge: (1, 2),
            target_physical: 3,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            order_section(&s, None, &mut rng, Ordering::Compact),
            Err(Error::DisconnectedSection { .. })
        ));
    }

    #[test]
    fn chaining_holds_across_random_sections() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for g in [grid(3, 3).unwrap(), grid(2, 4).unwrap(), line(6).unwrap()] {
            let n = g.num_qubits();
            let cands = swap_candidates(&g);
            for round in 0..30 {
                let mut perm: Vec<usize> = (0..n).collect();
                rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
                let m = Mapping::new(perm).unwrap();
                let c = cands[rng.random_range(0..cands.len())];
                let s = build_section_graph(&g, &m, c).unwrap();
                // A plausible prior special: any executable pair.
                let prior = if round % 3 == 0 {
                    None
                } else {
                    let (a, b) = g.edges()[rng.random_range(0..g.edges().len())];
                    Some(Gate::cx(m.program(a), m.program(b)))
                };
                let s = connect_section(&g, &m, &s, prior).unwrap();
                for strategy in [Ordering::TwoPass, Ordering::Compact] {
                    let seq = order_section(&s, prior, &mut rng, strategy).unwrap();
                    assert_chained(&seq, prior, n);
                    for gate in &seq[..seq.len() - 1] {
                        assert!(m.is_executable(&g, gate.q0, gate.q1));
                    }
                }
            }
        }
    }
}
