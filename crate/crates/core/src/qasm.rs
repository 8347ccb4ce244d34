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

//! OpenQASM 2.0 emission and a tolerant parser for two-qubit content.

use std::fmt::Write;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

const HEADER: &str = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

/// Writes a circuit as QASM over one register `q`. CX gates become `cx`,
/// SWAPs become `swap`; order is preserved.
pub fn emit_qasm(circuit: &Circuit) -> String {
    let mut out = String::with_capacity(HEADER.len() + 20 * circuit.len() + 16);
    out.push_str(HEADER);
    writeln!(out, "qreg q[{}];", circuit.num_qubits()).unwrap();
    for g in circuit.gates() {
        let op = match g.kind {
            GateKind::Cx => "cx",
            GateKind::Swap => "swap",
        };
        writeln!(out, "{op} q[{}],q[{}];", g.q0, g.q1).unwrap();
    }
    out
}

// Statements that never touch two qubits at once and are dropped.
const IGNORED: &[&str] = &[
    "barrier", "measure", "creg", "reset", "id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "sx",
    "sxdg", "rx", "ry", "rz", "p", "u", "u1", "u2", "u3", "U", "gate", "opaque", "if",
];

/// Reads the `cx` and `swap` gates of a single-register QASM 2.0 program.
/// One-qubit gates, barriers, measurements and classical registers are
/// skipped. Other multi-qubit gates are an error.
pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let mut register: Option<(String, usize)> = None;
    let mut gates = Vec::new();
    let mut line_no = 1;
    let mut depth = 0usize;
    for (stmt_line, stmt) in split_statements(text) {
        line_no = stmt_line;
        let err = |message: String| Error::Qasm {
            line: stmt_line,
            message,
        };
        let stmt = stmt.trim();
        if stmt.is_empty() {
            continue;
        }
        // Skip bodies of custom gate definitions.
        if depth > 0 {
            if stmt.ends_with('}') {
                depth -= 1;
            }
            continue;
        }
        if stmt.starts_with("gate ") || stmt.starts_with("opaque ") {
            if stmt.ends_with('{') {
                depth = 1;
            }
            continue;
        }
        let word_end = stmt
            .find(|c: char| c.is_whitespace() || c == '(' || c == '[')
            .unwrap_or(stmt.len());
        let word = &stmt[..word_end];
        match word {
            "OPENQASM" | "include" => {}
            "qreg" => {
                if register.is_some() {
                    return Err(err("only a single quantum register is supported".into()));
                }
                let (name, size) = parse_ref(stmt[word_end..].trim())
                    .ok_or_else(|| err(format!("malformed register declaration `{stmt}`")))?;
                register = Some((name.to_string(), size));
            }
            "cx" | "CX" | "swap" => {
                let (name, size) = register
                    .as_ref()
                    .ok_or_else(|| err("gate before register declaration".into()))?;
                let args: Vec<&str> = stmt[word_end..].split(',').map(str::trim).collect();
                if args.len() != 2 {
                    return Err(err(format!("`{word}` takes two qubits")));
                }
                let mut idx = [0usize; 2];
                for (slot, arg) in idx.iter_mut().zip(&args) {
                    let (reg, i) =
                        parse_ref(arg).ok_or_else(|| err(format!("malformed operand `{arg}`")))?;
                    if reg != name {
                        return Err(err(format!("unknown register `{reg}`")));
                    }
                    if i >= *size {
                        return Err(err(format!(
                            "qubit index {i} out of range for {name}[{size}]"
                        )));
                    }
                    *slot = i;
                }
                if idx[0] == idx[1] {
                    return Err(err(format!("`{word}` on a repeated qubit")));
                }
                gates.push(if word == "swap" {
                    Gate::swap(idx[0], idx[1])
                } else {
                    Gate::cx(idx[0], idx[1])
                });
            }
            w if IGNORED.contains(&w) => {
                if operand_count(&stmt[word_end..]) > 1
                    && !matches!(w, "barrier" | "measure" | "if" | "creg")
                {
                    return Err(err(format!("`{w}` with more than one qubit")));
                }
            }
            w => {
                let arity = operand_count(&stmt[word_end..]);
                if arity >= 2 {
                    return Err(err(format!("unsupported multi-qubit gate `{w}`")));
                }
            }
        }
    }
    let (_, size) = register.ok_or(Error::Qasm {
        line: line_no,
        message: "no quantum register declared".into(),
    })?;
    Circuit::new(size, gates)
}

/// Splits on `;`, `{` and `}` and strips `//` comments, keeping the line
/// each statement starts on.
fn split_statements(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 1;
    for (i, line) in text.lines().enumerate() {
        let line = line.split("//").next().unwrap_or("");
        for c in line.chars() {
            if cur.trim().is_empty() {
                start = i + 1;
            }
            match c {
                ';' => out.push((start, std::mem::take(&mut cur))),
                '{' | '}' => {
                    cur.push(c);
                    out.push((start, std::mem::take(&mut cur)));
                }
                _ => cur.push(c),
            }
        }
        cur.push(' ');
    }
    if !cur.trim().is_empty() {
        out.push((start, cur));
    }
    out
}

/// `name[index]`.
fn parse_ref(s: &str) -> Option<(&str, usize)> {
    let open = s.find('[')?;
    let close = s.find(']')?;
    let index = s[open + 1..close].trim().parse().ok()?;
    Some((s[..open].trim(), index))
}

/// Number of qubit operands after the gate name and parameters.
fn operand_count(rest: &str) -> usize {
    let rest = rest.trim_start();
    let rest = if rest.starts_with('(') {
        rest.find(')').map_or("", |i| &rest[i + 1..])
    } else {
        rest
    };
    rest.split(',').filter(|a| !a.trim().is_empty()).count()
}
