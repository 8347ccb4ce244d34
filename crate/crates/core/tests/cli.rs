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

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qubikos::bundle::read_bundle;
use qubikos::eval::{write_result, ToolResult};

fn qubikos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qubikos"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn gen(out: &Path, seed: &str, extra: &[&str]) -> Output {
    let mut args = vec![
        "gen", "--arch", "grid-3x3", "--swaps", "2", "--gates", "30", "--seed", seed, "--out",
    ];
    args.push(out.to_str().unwrap());
    args.extend_from_slice(extra);
    qubikos(&args)
}

fn read_tree(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = walk(root)
        .into_iter()
        .map(|p| {
            (
                p.strip_prefix(root).unwrap().display().to_string(),
                fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

#[test]
fn gen_writes_count_bundles_that_verify() {
    let tmp = tempfile::tempdir().unwrap();
    let bench = tmp.path().join("bench");
    let out = gen(&bench, "1", &["--count", "20"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(fs::read_dir(&bench).unwrap().count(), 20);
    let v = qubikos(&["verify", bench.to_str().unwrap()]);
    assert_eq!(
        v.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&v.stdout)
    );
}

#[test]
fn gen_is_byte_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b, c) = (
        tmp.path().join("a"),
        tmp.path().join("b"),
        tmp.path().join("c"),
    );
    gen(&a, "9", &["--count", "3"]);
    gen(&b, "9", &["--count", "3"]);
    gen(&c, "10", &["--count", "3"]);
    assert_eq!(read_tree(&a), read_tree(&b));
    assert_ne!(read_tree(&a), read_tree(&c));
}

#[test]
fn instance_reproducible_in_isolation() {
    let tmp = tempfile::tempdir().unwrap();
    let (all, one) = (tmp.path().join("all"), tmp.path().join("one"));
    gen(&all, "4", &["--count", "5"]);
    gen(&one, "4", &["--count", "1", "--first", "3"]);
    let name = "grid-3x3-n2-g30-0003";
    assert_eq!(read_tree(&all.join(name)), read_tree(&one.join(name)));
}

#[test]
fn tampered_bundle_fails_verify() {
    let tmp = tempfile::tempdir().unwrap();
    let bench = tmp.path().join("bench");
    gen(&bench, "2", &[]);
    let dir = bench.join("grid-3x3-n2-g30-0000");
    let answer = fs::read_to_string(dir.join("answer.qasm")).unwrap();
    let first_swap = answer
        .lines()
        .find(|l| l.starts_with("swap"))
        .unwrap()
        .to_string()
        + "\n";
    fs::write(dir.join("answer.qasm"), answer.replacen(&first_swap, "", 1)).unwrap();
    let v = qubikos(&["verify", bench.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&v.stdout).contains("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qubikos(&["gen", "--bogus"]).status.code(), Some(2));
    assert_eq!(qubikos(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        qubikos(&["arch", "show", "no-such-device"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qubikos(&["verify", "/definitely/not/here"]).status.code(),
        Some(2)
    );
}

#[test]
fn eval_writes_csv_and_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let bench = tmp.path().join("bench");
    gen(&bench, "3", &["--count", "4"]);
    let results = tmp.path().join("results");
    for e in fs::read_dir(&bench).unwrap() {
        let dir = e.unwrap().path();
        let id = dir.file_name().unwrap().to_str().unwrap().to_string();
        let inst = read_bundle(&dir).unwrap();
        write_result(
            &ToolResult::from_instance(&inst, &id, "self"),
            &results.join(&id),
        )
        .unwrap();
    }
    let csv_path = tmp.path().join("gaps.csv");
    let out = qubikos(&[
        "eval",
        "--bench",
        bench.to_str().unwrap(),
        "--results",
        results.to_str().unwrap(),
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("arch,instance,tool,optimal,found,ratio,valid")
    );
    assert_eq!(lines.filter(|l| l.ends_with(",2,2,1.0000,true")).count(), 4);
    let summary = fs::read_to_string(tmp.path().join("gaps_summary.csv")).unwrap();
    assert!(
        summary.contains("grid-3x3,2,self,2.0000,1.0000,4,0"),
        "{summary}"
    );
}

#[test]
fn oracle_confirms_bundle() {
    let tmp = tempfile::tempdir().unwrap();
    let bench = tmp.path().join("bench");
    gen(&bench, "5", &[]);
    let dir = bench.join("grid-3x3-n2-g30-0000");
    let witness = tmp.path().join("w.qasm");
    let out = qubikos(&[
        "oracle",
        dir.to_str().unwrap(),
        "--budget",
        "3",
        "--witness",
        witness.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("optimal 2"));
    let text = fs::read_to_string(witness).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("swap")).count(), 2);

    let qasm = dir.join("circuit.qasm");
    let out = qubikos(&[
        "oracle",
        qasm.to_str().unwrap(),
        "--arch",
        "grid-3x3",
        "--budget",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("more than 1"));
}

#[test]
fn arch_list_and_show() {
    let out = qubikos(&["arch", "list"]);
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["aspen4", "sycamore54", "rochester53", "eagle127"] {
        assert!(text.contains(name));
    }
    let out = qubikos(&["arch", "show", "grid-2x2"]);
    let g =
        qubikos::graph::CouplingGraph::from_json(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(g.edges().len(), 4);
}
