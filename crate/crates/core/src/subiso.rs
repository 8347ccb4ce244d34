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

//! Subgraph-isomorphism (monomorphism) search: does a pattern graph embed
//! into a host graph with every pattern edge landing on a host edge?
//!
//! The search is a complete backtracking matcher in the VF2 style. Pattern
//! vertices are matched in a connectivity-first order and candidates are
//! pruned by degree, by a neighbor-degree dominance test and by a one-step
//! lookahead. A global degree pigeonhole test runs first; it alone decides
//! most of the non-embeddable section graphs the generator produces.

use crate::graph::UndirectedGraph;

/// Injective map from pattern vertices to host vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub assignment: Vec<usize>,
}

impl Embedding {
    /// True when the map is injective and preserves every pattern edge.
    pub fn is_valid<P: UndirectedGraph, H: UndirectedGraph>(&self, pattern: &P, host: &H) -> bool {
        if self.assignment.len() != pattern.num_vertices() {
            return false;
        }
        let mut used = vec![false; host.num_vertices()];
        for &h in &self.assignment {
            if h >= host.num_vertices() || used[h] {
                return false;
            }
            used[h] = true;
        }
        (0..pattern.num_vertices()).all(|u| {
            pattern
                .neighbors(u)
                .iter()
                .all(|&v| host.has_edge(self.assignment[u], self.assignment[v]))
        })
    }
}

/// Returns an embedding of `pattern` into `host`, or `None` when none exists.
pub fn find_embedding<P: UndirectedGraph, H: UndirectedGraph>(
    pattern: &P,
    host: &H,
) -> Option<Embedding> {
    let np = pattern.num_vertices();
    let nh = host.num_vertices();
    if np > nh {
        return None;
    }
    if !degree_pigeonhole_ok(pattern, host) {
        return None;
    }
    let order = match_order(pattern);
    let compat = compatibility(pattern, host);
    let mut state = Search {
        pattern,
        host,
        order: &order,
        compat: &compat,
        map: vec![usize::MAX; np],
        used: vec![false; nh],
    };
    if !state.extend(0) {
        return None;
    }
    // Isolated pattern vertices take any leftover host vertex.
    let mut free = (0..nh).filter(|&h| !state.used[h]);
    let mut assignment = state.map;
    for a in assignment.iter_mut() {
        if *a == usize::MAX {
            *a = free.next()?;
        }
    }
    Some(Embedding { assignment })
}

/// Whether some embedding exists.
pub fn embeds<P: UndirectedGraph, H: UndirectedGraph>(pattern: &P, host: &H) -> bool {
    find_embedding(pattern, host).is_some()
}

/// For every threshold `t`, the pattern must not have more vertices of
/// degree `>= t` than the host has.
pub fn degree_pigeonhole_ok<P: UndirectedGraph, H: UndirectedGraph>(pattern: &P, host: &H) -> bool {
    let max = (0..pattern.num_vertices())
        .map(|v| pattern.degree(v))
        .chain((0..host.num_vertices()).map(|v| host.degree(v)))
        .max()
        .unwrap_or(0);
    let mut pc = vec![0usize; max + 2];
    let mut hc = vec![0usize; max + 2];
    for v in 0..pattern.num_vertices() {
        pc[pattern.degree(v)] += 1;
    }
    for v in 0..host.num_vertices() {
        hc[host.degree(v)] += 1;
    }
    let (mut p_at_least, mut h_at_least) = (0, 0);
    for t in (1..=max).rev() {
        p_at_least += pc[t];
        h_at_least += hc[t];
        if p_at_least > h_at_least {
            return false;
        }
    }
    true
}

struct Step {
    vertex: usize,
    parent: Option<usize>,
    /// Neighbors matched earlier in the order.
    matched_neighbors: Vec<usize>,
}

/// Connectivity-first order over non-isolated pattern vertices: next is the
/// vertex with most already-ordered neighbors, then highest degree, then
/// lowest index.
fn match_order<P: UndirectedGraph>(pattern: &P) -> Vec<Step> {
    let n = pattern.num_vertices();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::new();
    let active: Vec<usize> = (0..n).filter(|&v| pattern.degree(v) > 0).collect();
    for _ in 0..active.len() {
        let v = *active
            .iter()
            .filter(|&&v| !placed[v])
            .max_by(|&&a, &&b| {
                (links[a], pattern.degree(a), std::cmp::Reverse(a)).cmp(&(
                    links[b],
                    pattern.degree(b),
                    std::cmp::Reverse(b),
                ))
            })
            .expect("unplaced vertex remains");
        let matched_neighbors: Vec<usize> = pattern
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| placed[u])
            .collect();
        let parent = order
            .iter()
            .map(|s: &Step| s.vertex)
            .find(|u| matched_neighbors.contains(u));
        placed[v] = true;
        for &u in pattern.neighbors(v) {
            links[u] += 1;
        }
        order.push(Step {
            vertex: v,
            parent,
            matched_neighbors,
        });
    }
    order
}

fn sorted_neighbor_degrees<G: UndirectedGraph>(g: &G, v: usize) -> Vec<usize> {
    let mut d: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// `compat[p * nh + h]`: host vertex `h` can host pattern vertex `p` as far
/// as local degree information can tell.
fn compatibility<P: UndirectedGraph, H: UndirectedGraph>(pattern: &P, host: &H) -> Vec<bool> {
    let nh = host.num_vertices();
    let host_nd: Vec<Vec<usize>> = (0..nh).map(|h| sorted_neighbor_degrees(host, h)).collect();
    let mut out = vec![false; pattern.num_vertices() * nh];
    for p in 0..pattern.num_vertices() {
        let pd = sorted_neighbor_degrees(pattern, p);
        for h in 0..nh {
            out[p * nh + h] =
                pd.len() <= host_nd[h].len() && pd.iter().zip(&host_nd[h]).all(|(a, b)| a <= b);
        }
    }
    out
}

struct Search<'a, P, H> {
    pattern: &'a P,
    host: &'a H,
    order: &'a [Step],
    compat: &'a [bool],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl<P: UndirectedGraph, H: UndirectedGraph> Search<'_, P, H> {
    fn extend(&mut self, depth: usize) -> bool {
        let Some(step) = self.order.get(depth) else {
            return true;
        };
        let v = step.vertex;
        let nh = self.host.num_vertices();
        let candidates: Vec<usize> = match step.parent {
            Some(u) => self.host.neighbors(self.map[u]).to_vec(),
            None => (0..nh).collect(),
        };
        let unmatched_neighbors = self
            .pattern
            .neighbors(v)
            .iter()
            .filter(|&&u| self.map[u] == usize::MAX)
            .count();
        for h in candidates {
            if self.used[h] || !self.compat[v * nh + h] {
                continue;
            }
            if !step
                .matched_neighbors
                .iter()
                .all(|&u| self.host.has_edge(self.map[u], h))
            {
                continue;
            }
            let free_host_neighbors = self
                .host
                .neighbors(h)
                .iter()
                .filter(|&&x| !self.used[x])
                .count();
            if free_host_neighbors < unmatched_neighbors {
                continue;
            }
            self.map[v] = h;
            self.used[h] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.map[v] = usize::MAX;
            self.used[h] = false;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arch::{grid, line};
    use crate::graph::{CouplingGraph, InteractionGraph};

    fn star(leaves: usize) -> InteractionGraph {
        InteractionGraph::from_pairs(leaves + 1, (1..=leaves).map(|l| (0, l)))
    }

    #[test]
    fn triangle_does_not_fit_a_line() {
        let tri = InteractionGraph::from_pairs(3, [(0, 1), (1, 2), (0, 2)]);
        assert!(find_embedding(&tri, &line(4).unwrap()).is_none());
    }

    #[test]
    fn degree_five_star_does_not_fit_degree_four_host() {
        let host = grid(3, 3).unwrap();
        assert!(find_embedding(&star(5), &host).is_none());
        assert!(find_embedding(&star(4), &host).is_some());
    }

    #[test]
    fn identical_graph_embeds() {
        let host = grid(2, 3).unwrap();
        let pattern = InteractionGraph::from_pairs(6, host.edges().iter().copied());
        let e = find_embedding(&pattern, &host).unwrap();
        assert!(e.is_valid(&pattern, &host));
    }

    #[test]
    fn larger_pattern_is_rejected() {
        let pattern = InteractionGraph::from_pairs(5, [(0, 1)]);
        assert!(find_embedding(&pattern, &line(4).unwrap()).is_none());
    }

    #[test]
    fn isolated_vertices_use_leftovers() {
        let pattern = InteractionGraph::from_pairs(4, [(2, 3)]);
        let host = line(4).unwrap();
        let e = find_embedding(&pattern, &host).unwrap();
        assert!(e.is_valid(&pattern, &host));
    }

    #[test]
    fn cycle_embeds_in_grid_only_if_even() {
        let host: CouplingGraph = grid(3, 3).unwrap();
        let c4 = InteractionGraph::from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        let c5 = InteractionGraph::from_pairs(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(find_embedding(&c4, &host).is_some());
        assert!(find_embedding(&c5, &host).is_none());
    }
}
