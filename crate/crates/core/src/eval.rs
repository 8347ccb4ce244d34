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

//! Auditing external routing results against benchmark instances and
//! aggregating SWAP ratios.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use crate::bundle::{read_bundle, META_FILE};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::generator::BenchmarkInstance;
use crate::graph::CouplingGraph;
use crate::mapping::Mapping;
use crate::qasm::{emit_qasm, parse_qasm};
use crate::replay::{decomposed_swaps, replay};
use crate::verify::{Severity, Violation, ViolationKind};

pub const TRANSPILED_FILE: &str = "transpiled.qasm";
pub const RESULT_FILE: &str = "result.json";

/// Contents of `result.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultMeta {
    pub tool: String,
    pub instance: String,
    pub initial_layout: Vec<usize>,
    pub trials: u64,
    pub wall_time_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    /// `"initial"` (the default) or `"final"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tool_version: Option<String>,
}

/// A routed circuit produced by some tool for one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct ToolResult {
    pub meta: ResultMeta,
    pub transpiled: Circuit,
}

impl ToolResult {
    /// The instance's own answer dressed up as a tool result.
    pub fn from_instance(instance: &BenchmarkInstance, instance_id: &str, tool: &str) -> Self {
        ToolResult {
            meta: ResultMeta {
                tool: tool.to_string(),
                instance: instance_id.to_string(),
                initial_layout: instance.initial_mapping.assignment().to_vec(),
                trials: 1,
                wall_time_s: 0.0,
                status: None,
                layout_kind: None,
                tool_version: None,
            },
            transpiled: instance.answer.clone(),
        }
    }

    pub fn failed(&self) -> bool {
        self.meta.status.as_deref().is_some_and(|s| s != "ok")
    }
}

pub fn write_result(result: &ToolResult, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(TRANSPILED_FILE);
    fs::write(&path, emit_qasm(&result.transpiled)).map_err(|e| Error::io(path, e))?;
    let path = dir.join(RESULT_FILE);
    let mut text = serde_json::to_string_pretty(&result.meta).expect("result serializes");
    text.push('\n');
    fs::write(&path, text).map_err(|e| Error::io(path, e))
}

/// Reads `result.json` and, unless the run failed, `transpiled.qasm`.
pub fn read_result(dir: &Path) -> Result<ToolResult> {
    let path = dir.join(RESULT_FILE);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let meta: ResultMeta = serde_json::from_str(&text).map_err(|e| Error::json(&path, e))?;
    let qasm = dir.join(TRANSPILED_FILE);
    let transpiled = match fs::read_to_string(&qasm) {
        Ok(text) => parse_qasm(&text)?,
        Err(_) if meta.status.as_deref().is_some_and(|s| s != "ok") => Circuit::new(0, Vec::new())?,
        Err(e) => return Err(Error::io(qasm, e)),
    };
    Ok(ToolResult { meta, transpiled })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Audit {
    /// Explicit `swap` operations in the transpiled circuit.
    pub swap_count: usize,
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Completes a partial layout with the unused physical qubits in order.
fn complete_layout(layout: &[usize], n: usize) -> Option<Mapping> {
    if layout.len() > n {
        return None;
    }
    let mut used = vec![false; n];
    for &p in layout {
        if p >= n || std::mem::replace(&mut used[p], true) {
            return None;
        }
    }
    let mut free = (0..n).filter(|&p| !used[p]);
    let full: Vec<usize> = layout
        .iter()
        .copied()
        .chain(std::iter::from_fn(|| free.next()))
        .collect();
    Mapping::new(full).ok()
}

/// Replays a tool result against the instance it claims to route.
pub fn audit_result(
    coupling: &CouplingGraph,
    instance: &BenchmarkInstance,
    result: &ToolResult,
) -> Audit {
    let swap_count = result.transpiled.swap_count();
    let mut violations = Vec::new();
    if result.failed() {
        violations.push(Violation::new(
            ViolationKind::ToolFailed,
            format!(
                "tool reported status {:?}",
                result.meta.status.as_deref().unwrap_or_default()
            ),
        ));
        return Audit {
            swap_count,
            valid: false,
            violations,
        };
    }
    let n = coupling.num_qubits();
    let Some(mut layout) = complete_layout(&result.meta.initial_layout, n) else {
        violations.push(Violation::new(
            ViolationKind::ShapeMismatch,
            format!("initial_layout is not an injective map into {n} physical qubits"),
        ));
        return Audit {
            swap_count,
            valid: false,
            violations,
        };
    };
    if result.meta.layout_kind.as_deref() == Some("final") {
        for g in result
            .transpiled
            .gates()
            .iter()
            .rev()
            .filter(|g| g.is_swap())
        {
            if g.q0 < n && g.q1 < n {
                layout.swap_physical(g.q0, g.q1);
            }
        }
    }
    let run = replay(coupling, &instance.circuit, &result.transpiled, &layout);
    violations.extend(run.violations);
    for at in decomposed_swaps(&result.transpiled) {
        violations.push(
            Violation::warning(
                ViolationKind::DecomposedSwap,
                "three alternating CX on one coupler look like a decomposed SWAP; it is not counted",
            )
            .at_gate(at),
        );
    }
    Audit {
        swap_count,
        valid: violations.iter().all(|v| v.severity != Severity::Error),
        violations,
    }
}

/// One line of the aggregated table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapRow {
    pub arch: String,
    pub designed_n: usize,
    pub tool: String,
    pub average_swaps: f64,
    /// `None` when `designed_n` is zero.
    pub ratio: Option<f64>,
    pub results: usize,
    pub invalid: usize,
}

/// Average of `counts` divided by `designed_n`, or `None` for `designed_n`
/// of zero or no counts.
pub fn swap_ratio(counts: &[usize], designed_n: usize) -> Option<f64> {
    if designed_n == 0 || counts.is_empty() {
        return None;
    }
    Some(average(counts) / designed_n as f64)
}

fn average(counts: &[usize]) -> f64 {
    if counts.is_empty() {
        return 0.0;
    }
    counts.iter().sum::<usize>() as f64 / counts.len() as f64
}

/// Per-result line of the evaluation CSV.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalRow {
    pub arch: String,
    pub instance: String,
    pub tool: String,
    pub optimal: usize,
    pub found: usize,
    pub ratio: Option<f64>,
    pub valid: bool,
    #[serde(skip)]
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, Default)]
pub struct EvalReport {
    pub rows: Vec<EvalRow>,
    pub summary: Vec<GapRow>,
    /// Results that could not be matched or read.
    pub warnings: Vec<String>,
}

impl EvalReport {
    pub fn all_valid(&self) -> bool {
        self.rows.iter().all(|r| r.valid)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "arch", "instance", "tool", "optimal", "found", "ratio", "valid",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.arch.clone(),
                r.instance.clone(),
                r.tool.clone(),
                r.optimal.to_string(),
                r.found.to_string(),
                fmt_ratio(r.ratio),
                r.valid.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))
    }

    pub fn write_summary_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "arch",
            "n",
            "tool",
            "average_swaps",
            "ratio",
            "results",
            "invalid",
        ])?;
        for g in &self.summary {
            w.write_record([
                g.arch.clone(),
                g.designed_n.to_string(),
                g.tool.clone(),
                format!("{:.4}", g.average_swaps),
                fmt_ratio(g.ratio),
                g.results.to_string(),
                g.invalid.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))
    }
}

fn fmt_ratio(r: Option<f64>) -> String {
    r.map_or_else(|| "N/A".to_string(), |r| format!("{r:.4}"))
}

/// Groups rows by (arch, optimal count, tool). Invalid rows are counted but
/// left out of the averages.
pub fn summarize(rows: &[EvalRow]) -> Vec<GapRow> {
    let mut groups: BTreeMap<(String, usize, String), (Vec<usize>, usize)> = BTreeMap::new();
    for r in rows {
        let e = groups
            .entry((r.arch.clone(), r.optimal, r.tool.clone()))
            .or_default();
        if r.valid {
            e.0.push(r.found);
        } else {
            e.1 += 1;
        }
    }
    groups
        .into_iter()
        .map(|((arch, n, tool), (counts, invalid))| GapRow {
            arch,
            designed_n: n,
            tool,
            average_swaps: average(&counts),
            ratio: swap_ratio(&counts, n),
            results: counts.len(),
            invalid,
        })
        .collect()
}

/// Directories under `root` (inclusive) that contain `marker`, sorted.
pub fn find_dirs(root: &Path, marker: &str) -> Vec<PathBuf> {
    let mut dirs: Vec<PathBuf> = WalkDir::new(root)
        .sort_by_file_name()
        .into_iter()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_type().is_file() && e.file_name() == marker)
        .filter_map(|e| e.path().parent().map(Path::to_path_buf))
        .collect();
    dirs.sort();
    dirs
}

/// Name a bundle is referred to by in `result.json`: its directory name.
pub fn instance_id(bundle_dir: &Path) -> String {
    bundle_dir.file_name().map_or_else(
        || bundle_dir.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    )
}

/// Audits every result under `results_dir` against the bundles under
/// `bench_dir`. `resolve` maps an instance's `arch` to its coupling graph.
pub fn evaluate(
    bench_dir: &Path,
    results_dir: &Path,
    resolve: impl Fn(&str) -> Result<CouplingGraph> + Sync,
) -> Result<EvalReport> {
    let mut bundles = BTreeMap::new();
    for dir in find_dirs(bench_dir, META_FILE) {
        bundles.insert(instance_id(&dir), read_bundle(&dir)?);
    }
    let result_dirs = find_dirs(results_dir, RESULT_FILE);
    let outcomes: Vec<std::result::Result<EvalRow, String>> = result_dirs
        .par_iter()
        .map(|dir| {
            let result = read_result(dir).map_err(|e| e.to_string())?;
            let instance = bundles.get(&result.meta.instance).ok_or_else(|| {
                format!(
                    "{}: unknown instance `{}`",
                    dir.display(),
                    result.meta.instance
                )
            })?;
            let coupling = resolve(&instance.arch).map_err(|e| e.to_string())?;
            let audit = audit_result(&coupling, instance, &result);
            let found = audit.swap_count;
            Ok(EvalRow {
                arch: instance.arch.clone(),
                instance: result.meta.instance.clone(),
                tool: result.meta.tool.clone(),
                optimal: instance.optimal_swaps,
                found,
                ratio: (instance.optimal_swaps > 0 && audit.valid)
                    .then(|| found as f64 / instance.optimal_swaps as f64),
                valid: audit.valid,
                violations: audit.violations,
            })
        })
        .collect();
    let mut report = EvalReport::default();
    for o in outcomes {
        match o {
            Ok(row) => report.rows.push(row),
            Err(w) => report.warnings.push(w),
        }
    }
    report
        .rows
        .sort_by(|a, b| (&a.arch, &a.instance, &a.tool).cmp(&(&b.arch, &b.instance, &b.tool)));
    report.summary = summarize(&report.rows);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arch::make_architecture;
    use crate::circuit::Gate;
    use crate::generator::generate;

    fn setup() -> (CouplingGraph, BenchmarkInstance) {
        let g = make_architecture("grid-3x3").unwrap();
        let inst = generate(&g, 2, 30, 11).unwrap();
        (g, inst)
    }

    #[test]
    fn self_audit_is_valid() {
        let (g, inst) = setup();
        let a = audit_result(&g, &inst, &ToolResult::from_instance(&inst, "x", "self"));
        assert!(a.valid, "{:?}", a.violations);
        assert_eq!(a.swap_count, 2);
    }

    #[test]
    fn ratio_arithmetic() {
        assert_eq!(swap_ratio(&[5, 10], 5), Some(1.5));
        assert_eq!(swap_ratio(&[3, 3, 3], 3), Some(1.0));
        assert_eq!(swap_ratio(&[3], 0), None);
        assert_eq!(swap_ratio(&[10, 2, 7], 2), swap_ratio(&[7, 10, 2], 2));
    }

    #[test]
    fn non_edge_gate_is_invalid() {
        let (g, inst) = setup();
        let mut r = ToolResult::from_instance(&inst, "x", "bad");
        let mut gates = r.transpiled.gates().to_vec();
        let i = gates.iter().position(|g| !g.is_swap()).unwrap();
        // Physical 0 and 8 are opposite corners of the grid.
        gates[i] = Gate::cx(0, 8);
        r.transpiled = Circuit::new(9, gates).unwrap();
        let a = audit_result(&g, &inst, &r);
        assert!(!a.valid);
        assert!(a
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::GateNotOnCoupler));
    }

    #[test]
    fn decomposed_swaps_warn_and_count_zero() {
        let (g, inst) = setup();
        let mut r = ToolResult::from_instance(&inst, "x", "decomposed");
        let expanded: Vec<Gate> = inst
            .answer
            .gates()
            .iter()
            .flat_map(|g| {
                if g.is_swap() {
                    vec![
                        Gate::cx(g.q0, g.q1),
                        Gate::cx(g.q1, g.q0),
                        Gate::cx(g.q0, g.q1),
                    ]
                } else {
                    vec![*g]
                }
            })
            .collect();
        r.transpiled = Circuit::new(9, expanded).unwrap();
        let a = audit_result(&g, &inst, &r);
        assert_eq!(a.swap_count, 0);
        let warnings = a
            .violations
            .iter()
            .filter(|v| v.kind == ViolationKind::DecomposedSwap && v.severity == Severity::Warning)
            .count();
        assert_eq!(warnings, 2);
        assert!(!a.valid);
    }

    #[test]
    fn final_layout_is_unwound() {
        let (g, inst) = setup();
        let mut r = ToolResult::from_instance(&inst, "x", "final");
        let fin = replay(&g, &inst.circuit, &inst.answer, &inst.initial_mapping).final_mapping;
        r.meta.initial_layout = fin.assignment().to_vec();
        r.meta.layout_kind = Some("final".into());
        assert!(audit_result(&g, &inst, &r).valid);
    }

    #[test]
    fn failed_runs_are_invalid() {
        let (g, inst) = setup();
        let mut r = ToolResult::from_instance(&inst, "x", "crash");
        r.meta.status = Some("failed".into());
        assert!(!audit_result(&g, &inst, &r).valid);
    }

    #[test]
    fn partial_layout_is_completed() {
        let m = complete_layout(&[4, 2], 5).unwrap();
        assert_eq!(m.assignment(), &[4, 2, 0, 1, 3]);
        assert!(complete_layout(&[1, 1], 3).is_none());
        assert!(complete_layout(&[7], 3).is_none());
    }

    #[test]
    fn summary_excludes_invalid() {
        let row = |found, valid| EvalRow {
            arch: "a".into(),
            instance: "i".into(),
            tool: "t".into(),
            optimal: 2,
            found,
            ratio: None,
            valid,
            violations: vec![],
        };
        let s = summarize(&[row(2, true), row(4, true), row(0, false)]);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].average_swaps, 3.0);
        assert_eq!(s[0].ratio, Some(1.5));
        assert_eq!(s[0].invalid, 1);
    }

    #[test]
    fn result_files_round_trip() {
        let (_, inst) = setup();
        let mut r = ToolResult::from_instance(&inst, "x", "t");
        r.meta.tool_version = Some("1.2".into());
        let dir = tempfile::tempdir().unwrap();
        write_result(&r, dir.path()).unwrap();
        assert_eq!(read_result(dir.path()).unwrap(), r);
    }
}
