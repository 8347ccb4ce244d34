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

//! Score routing results the way an external tool's output would be scored:
//! an optimal one, a wasteful one and a broken one.

use qubikos::arch::make_architecture;
use qubikos::circuit::{Circuit, Gate};
use qubikos::eval::{audit_result, swap_ratio, ToolResult};
use qubikos::generator::generate;

fn main() -> qubikos::Result<()> {
    let coupling = make_architecture("sycamore54")?;
    let instance = generate(&coupling, 5, 1500, 77)?;

    let optimal = ToolResult::from_instance(&instance, "demo", "reference");

    // Same routing with a pointless SWAP pair in front.
    let mut wasteful = optimal.clone();
    let (a, b) = coupling.edges()[0];
    let mut gates = vec![Gate::swap(a, b), Gate::swap(a, b)];
    gates.extend_from_slice(instance.answer.gates());
    wasteful.transpiled = Circuit::new(coupling.num_qubits(), gates)?;
    wasteful.meta.tool = "wasteful".into();

    // Drops the first SWAP, so later gates land on uncoupled qubits.
    let mut broken = optimal.clone();
    let first = instance.swap_schedule[0].answer_index;
    let gates: Vec<Gate> = instance
        .answer
        .gates()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != first)
        .map(|(_, g)| *g)
        .collect();
    broken.transpiled = Circuit::new(coupling.num_qubits(), gates)?;
    broken.meta.tool = "broken".into();

    let mut counts = Vec::new();
    for r in [&optimal, &wasteful, &broken] {
        let audit = audit_result(&coupling, &instance, r);
        println!(
            "{:<10} swaps {:>3} valid {}",
            r.meta.tool, audit.swap_count, audit.valid
        );
        if let Some(v) = audit.violations.first() {
            println!("           {v}");
        }
        if audit.valid {
            counts.push(audit.swap_count);
        }
    }
    println!(
        "ratio over valid results: {:?}",
        swap_ratio(&counts, instance.optimal_swaps)
    );
    Ok(())
}
