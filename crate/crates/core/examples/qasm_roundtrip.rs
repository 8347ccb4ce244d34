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

//! Read a transpiler-style QASM file and write it back in canonical form.

use qubikos::qasm::{emit_qasm, parse_qasm};

const TOOL_OUTPUT: &str = r#"OPENQASM 2.0;
include "qelib1.inc";
qreg q[5];
creg meas[5];
rz(pi/2) q[0];
sx q[0];
cx q[0],q[1];
swap q[1],q[2];
barrier q[0],q[1],q[2],q[3],q[4];
cx q[2],q[3];
measure q[0] -> meas[0];
"#;

fn main() -> qubikos::Result<()> {
    let circuit = parse_qasm(TOOL_OUTPUT)?;
    println!(
        "{} two-qubit operations, {} SWAP",
        circuit.len(),
        circuit.swap_count()
    );
    print!("{}", emit_qasm(&circuit));
    assert_eq!(parse_qasm(&emit_qasm(&circuit))?, circuit);

    match parse_qasm("OPENQASM 2.0;\nqreg q[3];\nccx q[0],q[1],q[2];\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
