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

//! On-disk instance bundles: `circuit.qasm`, `answer.qasm` and `meta.json`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{BenchmarkInstance, ScheduledSwap};
use crate::mapping::Mapping;
use crate::qasm::{emit_qasm, parse_qasm};

pub const SCHEMA_VERSION: u32 = 1;
pub const CIRCUIT_FILE: &str = "circuit.qasm";
pub const ANSWER_FILE: &str = "answer.qasm";
pub const META_FILE: &str = "meta.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapEntry {
    pub answer_index: usize,
    pub edge: [usize; 2],
}

/// Contents of `meta.json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub schema_version: u32,
    pub arch: String,
    pub seed: u64,
    pub optimal_swaps: usize,
    pub two_qubit_gates: usize,
    pub initial_mapping: Vec<usize>,
    pub swap_schedule: Vec<SwapEntry>,
    pub section_boundaries: Vec<[usize; 2]>,
    pub generator_version: String,
}

impl Meta {
    pub fn from_instance(instance: &BenchmarkInstance) -> Self {
        Meta {
            schema_version: SCHEMA_VERSION,
            arch: instance.arch.clone(),
            seed: instance.seed,
            optimal_swaps: instance.optimal_swaps,
            two_qubit_gates: instance.circuit.len(),
            initial_mapping: instance.initial_mapping.assignment().to_vec(),
            swap_schedule: instance
                .swap_schedule
                .iter()
                .map(|s| SwapEntry {
                    answer_index: s.answer_index,
                    edge: [s.edge.0, s.edge.1],
                })
                .collect(),
            section_boundaries: instance
                .section_boundaries
                .iter()
                .map(|&(s, e)| [s, e])
                .collect(),
            generator_version: instance.generator_version.clone(),
        }
    }
}

/// Writes the three bundle files into `dir`, creating it if needed.
pub fn write_bundle(instance: &BenchmarkInstance, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let write = |name: &str, text: String| {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|e| Error::io(path, e))
    };
    write(CIRCUIT_FILE, emit_qasm(&instance.circuit))?;
    write(ANSWER_FILE, emit_qasm(&instance.answer))?;
    let mut meta =
        serde_json::to_string_pretty(&Meta::from_instance(instance)).expect("meta serializes");
    meta.push('\n');
    write(META_FILE, meta)
}

pub fn read_meta(dir: &Path) -> Result<Meta> {
    let path = dir.join(META_FILE);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::json(&path, e))?;
    match value.get("schema_version").and_then(|v| v.as_u64()) {
        Some(v) if v == SCHEMA_VERSION as u64 => {}
        other => {
            return Err(Error::Bundle {
                path,
                message: format!("unsupported schema_version {other:?}, expected {SCHEMA_VERSION}"),
            })
        }
    }
    serde_json::from_value(value).map_err(|e| Error::json(&path, e))
}

/// Reads a bundle written by [`write_bundle`].
pub fn read_bundle(dir: &Path) -> Result<BenchmarkInstance> {
    let meta = read_meta(dir)?;
    let read_qasm = |name: &str| {
        let path = dir.join(name);
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        parse_qasm(&text).map_err(|e| Error::Bundle {
            path,
            message: e.to_string(),
        })
    };
    let circuit = read_qasm(CIRCUIT_FILE)?;
    let answer = read_qasm(ANSWER_FILE)?;
    let bad = |message: String| Error::Bundle {
        path: dir.join(META_FILE),
        message,
    };
    if circuit.len() != meta.two_qubit_gates {
        return Err(bad(format!(
            "two_qubit_gates is {} but {CIRCUIT_FILE} has {} gates",
            meta.two_qubit_gates,
            circuit.len()
        )));
    }
    let initial_mapping = Mapping::new(meta.initial_mapping).map_err(|e| bad(e.to_string()))?;
    Ok(BenchmarkInstance {
        arch: meta.arch,
        circuit,
        answer,
        initial_mapping,
        swap_schedule: meta
            .swap_schedule
            .into_iter()
            .map(|s| ScheduledSwap {
                answer_index: s.answer_index,
                edge: (s.edge[0], s.edge[1]),
            })
            .collect(),
        optimal_swaps: meta.optimal_swaps,
        seed: meta.seed,
        section_boundaries: meta
            .section_boundaries
            .into_iter()
            .map(|[s, e]| (s, e))
            .collect(),
        generator_version: meta.generator_version,
    })
}
