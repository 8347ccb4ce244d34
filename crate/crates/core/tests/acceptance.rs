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

//! End-to-end acceptance checks. Prints one PASS/FAIL line per check and
//! exits non-zero if any fails.

use std::fs;
use std::path::Path;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qubikos::arch::make_architecture;
use qubikos::bundle::write_bundle;
use qubikos::circuit::{Circuit, Gate};
use qubikos::eval::{evaluate, write_result, ToolResult};
use qubikos::generator::{generate, BenchmarkInstance};
use qubikos::oracle::{brute_force_min_swaps, exact_min_swaps, OracleConfig};
use qubikos::rng::instance_seed;
use qubikos::verify::{
    check_answer_validity, check_section_hardness, check_serialization, mutate, verify_instance,
    Mutation,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn report(name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took > limit {
            o.passed = false;
            o.detail
                .push_str(&format!("; over the {} s limit", limit.as_secs()));
        }
    }
    let tag = if o.passed { "PASS" } else { "FAIL" };
    println!("{tag} {name}: {} ({:.1} s)", o.detail, took.as_secs_f64());
    o.passed
}

const SMALL: [&str; 3] = ["line-5", "grid-3x3", "grid-2x4"];
const LARGE: [(&str, usize); 4] = [
    ("aspen4", 300),
    ("sycamore54", 1500),
    ("rochester53", 1500),
    ("eagle127", 3000),
];

fn small_suite() -> Vec<BenchmarkInstance> {
    let mut out = Vec::new();
    for arch in SMALL {
        let g = make_architecture(arch).unwrap();
        for n in 1..=3 {
            for i in 0..20 {
                out.push(generate(&g, n, 30, instance_seed(1000 + n as u64, i)).unwrap());
            }
        }
    }
    out
}

fn large_suite() -> Vec<BenchmarkInstance> {
    let jobs: Vec<(&str, usize, usize, u64)> = LARGE
        .iter()
        .flat_map(|&(a, gates)| {
            [5, 10, 15, 20]
                .into_iter()
                .flat_map(move |n| (0..10).map(move |i| (a, gates, n, i)))
        })
        .collect();
    jobs.par_iter()
        .map(|&(a, gates, n, i)| {
            let g = make_architecture(a).unwrap();
            generate(&g, n, gates, instance_seed(2000 + n as u64, i)).unwrap()
        })
        .collect()
}

fn scaled_optimality(suite: &[BenchmarkInstance]) -> Outcome {
    let exact: Vec<bool> = suite
        .par_iter()
        .map(|inst| {
            let g = make_architecture(&inst.arch).unwrap();
            let o = exact_min_swaps(
                &g,
                &inst.circuit,
                inst.optimal_swaps,
                OracleConfig::default(),
            )
            .unwrap();
            inst.circuit.len() <= 30 && o.swaps() == Some(inst.optimal_swaps)
        })
        .collect();
    let ok = exact.iter().filter(|&&b| b).count();
    Outcome {
        passed: ok == suite.len() && suite.len() == 180,
        detail: format!(
            "{ok}/{} instances solved to exactly their designed count",
            suite.len()
        ),
    }
}

fn oracle_cross_validation() -> Outcome {
    let archs = [
        "line-4", "line-5", "line-7", "line-9", "grid-2x2", "grid-2x3", "grid-2x4", "grid-3x3",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let cases: Vec<(String, Circuit)> = (0..240)
        .map(|i| {
            let arch = archs[i % archs.len()];
            let n = make_architecture(arch).unwrap().num_qubits();
            let k = rng.random_range(2..=n.min(6));
            let m = rng.random_range(1..=15);
            let gates = (0..m)
                .map(|_| {
                    let a = rng.random_range(0..k);
                    Gate::cx(a, (a + rng.random_range(1..k)) % k)
                })
                .collect();
            (arch.to_string(), Circuit::new(n, gates).unwrap())
        })
        .collect();
    let agree: Vec<bool> = cases
        .par_iter()
        .map(|(arch, c)| {
            let g = make_architecture(arch).unwrap();
            let e = exact_min_swaps(&g, c, 3, OracleConfig::default())
                .unwrap()
                .swaps();
            e == brute_force_min_swaps(&g, c, 3).unwrap()
        })
        .collect();
    let ok = agree.iter().filter(|&&b| b).count();
    Outcome {
        passed: ok == cases.len(),
        detail: format!(
            "{ok}/{} random circuits agree with brute force",
            cases.len()
        ),
    }
}

fn structural_validity(suite: &[BenchmarkInstance]) -> Outcome {
    let passed: Vec<bool> = suite
        .par_iter()
        .map(|inst| {
            let g = make_architecture(&inst.arch).unwrap();
            let gates_ok = LARGE
                .iter()
                .any(|&(a, n)| a == inst.arch && inst.circuit.len() == n);
            gates_ok
                && inst.answer.swap_count() == inst.optimal_swaps
                && check_answer_validity(&g, inst).passed
                && check_section_hardness(&g, inst).passed
                && check_serialization(inst).passed
        })
        .collect();
    let ok = passed.iter().filter(|&&b| b).count();
    Outcome {
        passed: ok == suite.len() && suite.len() == 160,
        detail: format!(
            "{ok}/{} instances pass all three checks with exactly n SWAPs",
            suite.len()
        ),
    }
}

fn mutation_kill_rate(suite: &[BenchmarkInstance]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut lines = Vec::new();
    let mut all = true;
    for m in Mutation::ALL {
        let mut killed = 0;
        let mut tried = 0;
        for inst in suite.iter().filter(|i| i.optimal_swaps > 0) {
            if tried == 20 {
                break;
            }
            let Some(bad) = mutate(inst, m, &mut rng) else {
                continue;
            };
            tried += 1;
            let g = make_architecture(&inst.arch).unwrap();
            if !verify_instance(&g, &bad).passed {
                killed += 1;
            }
        }
        all &= tried == 20 && killed == 20;
        lines.push(format!("{m:?} {killed}/{tried}"));
    }
    Outcome {
        passed: all,
        detail: lines.join(", "),
    }
}

fn tree(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for e in fs::read_dir(&dir).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push((
                    p.strip_prefix(root).unwrap().display().to_string(),
                    fs::read(&p).unwrap(),
                ));
            }
        }
    }
    out.sort();
    out
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let run = |seed: &str, out: &str| {
        let out = tmp.path().join(out);
        let status = Command::new(env!("CARGO_BIN_EXE_qubikos"))
            .args([
                "gen",
                "--arch",
                "sycamore54",
                "--swaps",
                "10",
                "--gates",
                "1500",
                "--count",
                "5",
            ])
            .args(["--seed", seed, "--out"])
            .arg(&out)
            .stderr(Stdio::null())
            .status()
            .unwrap();
        assert!(status.success());
        tree(&out)
    };
    let (a, b, c) = (run("42", "a"), run("42", "b"), run("43", "c"));
    let same = a == b;
    let differ = a.iter().zip(&c).all(|(x, y)| x.1 != y.1);
    Outcome {
        passed: same && differ && !a.is_empty(),
        detail: format!(
            "same seed byte-identical: {same}; every file differs across seeds: {differ} ({} files)",
            a.len()
        ),
    }
}

fn self_audit(suites: &[&[BenchmarkInstance]]) -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let (bench, results) = (tmp.path().join("bench"), tmp.path().join("results"));
    for (i, inst) in suites.iter().flat_map(|s| s.iter()).enumerate() {
        let id = format!("{}-n{}-{i:04}", inst.arch, inst.optimal_swaps);
        write_bundle(inst, &bench.join(&id)).unwrap();
        write_result(
            &ToolResult::from_instance(inst, &id, "self"),
            &results.join(&id),
        )
        .unwrap();
    }
    let report = evaluate(&bench, &results, make_architecture).unwrap();
    let groups = report.summary.len();
    let exact = report
        .summary
        .iter()
        .filter(|g| g.ratio == Some(1.0) && g.invalid == 0)
        .count();
    Outcome {
        passed: groups == 25 && exact == groups && report.warnings.is_empty() && report.all_valid(),
        detail: format!(
            "{exact}/{groups} (arch, n) groups at ratio 1.0 over {} results",
            report.rows.len()
        ),
    }
}

fn main() {
    let small = small_suite();
    let large = large_suite();
    let results = [
        report(
            "scaled optimality (180 instances, exact oracle)",
            Some(Duration::from_secs(900)),
            || scaled_optimality(&small),
        ),
        report(
            "oracle cross-validation (exact vs brute force)",
            Some(Duration::from_secs(600)),
            oracle_cross_validation,
        ),
        report(
            "large-scale structural validity (160 instances)",
            Some(Duration::from_secs(1800)),
            || structural_validity(&large),
        ),
        report("mutation kill-rate (4 classes x 20)", None, || {
            mutation_kill_rate(&small)
        }),
        report("determinism of gen", None, determinism),
        report("self-audit ratio", None, || self_audit(&[&small, &large])),
    ];
    let failed = results.iter().filter(|&&p| !p).count();
    println!(
        "{} of {} acceptance checks passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
