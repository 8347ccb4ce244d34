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

//! Architecture library: procedural families and bundled device data.

use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::CouplingGraph;

const ASPEN4: &str = include_str!("../data/aspen4.json");
const SYCAMORE54: &str = include_str!("../data/sycamore54.json");
const ROCHESTER53: &str = include_str!("../data/rochester53.json");
const EAGLE127: &str = include_str!("../data/eagle127.json");

/// Named devices shipped with the crate.
pub const NAMED_DEVICES: [&str; 4] = ["aspen4", "sycamore54", "rochester53", "eagle127"];

/// Procedural family patterns accepted by [`make_architecture`].
pub const FAMILIES: [&str; 3] = ["line-K", "grid-RxC", "heavy-hex-D"];

/// Resolves an architecture spec: a family instance (`line-5`, `grid-3x3`,
/// `heavy-hex-2`), a bundled device name, or a path to a coupling-graph file.
pub fn make_architecture(spec: &str) -> Result<CouplingGraph> {
    let named = match spec {
        "aspen4" => Some(ASPEN4),
        "sycamore54" => Some(SYCAMORE54),
        "rochester53" => Some(ROCHESTER53),
        "eagle127" => Some(EAGLE127),
        _ => None,
    };
    if let Some(text) = named {
        return CouplingGraph::from_json(text);
    }
    if let Some(k) = spec.strip_prefix("line-") {
        return line(parse_dim(spec, k)?);
    }
    if let Some(d) = spec.strip_prefix("heavy-hex-") {
        return heavy_hex(parse_dim(spec, d)?);
    }
    if let Some(rc) = spec.strip_prefix("grid-") {
        let (r, c) = rc
            .split_once('x')
            .ok_or_else(|| Error::UnknownArchitecture(spec.to_string()))?;
        return grid(parse_dim(spec, r)?, parse_dim(spec, c)?);
    }
    let path = Path::new(spec);
    if path.is_file() {
        return CouplingGraph::load(path);
    }
    Err(Error::UnknownArchitecture(spec.to_string()))
}

fn parse_dim(spec: &str, text: &str) -> Result<usize> {
    match text.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(Error::UnknownArchitecture(spec.to_string())),
    }
}

pub fn line(k: usize) -> Result<CouplingGraph> {
    if k < 2 {
        return Err(Error::InvalidCoupling(
            "a line needs at least 2 qubits".into(),
        ));
    }
    CouplingGraph::new(format!("line-{k}"), k, (0..k - 1).map(|i| (i, i + 1)))
}

/// Row-major `rows x cols` grid.
pub fn grid(rows: usize, cols: usize) -> Result<CouplingGraph> {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    CouplingGraph::new(format!("grid-{rows}x{cols}"), rows * cols, edges)
}

/// Heavy-hex lattice with `d + 1` long rows of `4d + 1` qubits. Rows `r` and
/// `r + 1` are joined by bridge qubits at columns `0, 4, ..` when `r` is even
/// and `2, 6, ..` when `r` is odd. Qubits are numbered row by row, each row
/// followed by the bridges below it. `heavy-hex-1` is a single 12-cycle.
pub fn heavy_hex(d: usize) -> Result<CouplingGraph> {
    let width = 4 * d + 1;
    let mut edges = Vec::new();
    let mut next = 0;
    let mut pending: Option<Vec<usize>> = None; // bridge qubit by column
    for r in 0..=d {
        let start = next;
        next += width;
        for c in 0..width - 1 {
            edges.push((start + c, start + c + 1));
        }
        if let Some(bridges) = pending.take() {
            for (c, b) in bridges.into_iter().enumerate() {
                if b != usize::MAX {
                    edges.push((b, start + c));
                }
            }
        }
        if r < d {
            let offset = if r % 2 == 0 { 0 } else { 2 };
            let mut bridges = vec![usize::MAX; width];
            for c in (offset..width).step_by(4) {
                bridges[c] = next;
                edges.push((start + c, next));
                next += 1;
            }
            pending = Some(bridges);
        }
    }
    CouplingGraph::new(format!("heavy-hex-{d}"), next, edges)
}
