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

//! Solve small routing problems exactly and compare with brute force.

use qubikos::arch::{grid, line};
use qubikos::circuit::Circuit;
use qubikos::oracle::{brute_force_min_swaps, exact_min_swaps, OracleConfig, OracleOutcome};
use qubikos::qasm::emit_qasm;

fn main() -> qubikos::Result<()> {
    let l4 = line(4)?;
    let triangle = Circuit::from_pairs(4, [(0, 1), (1, 2), (2, 0)])?;
    match exact_min_swaps(&l4, &triangle, 3, OracleConfig::default())? {
        OracleOutcome::Optimal { swaps, witness } => {
            println!("triangle on line-4: {swaps} SWAP(s)");
            println!("initial mapping {:?}", witness.initial_mapping.assignment());
            print!("{}", emit_qasm(&witness.answer));
        }
        other => println!("triangle on line-4: {other:?}"),
    }

    // Odd cycles never fit a bipartite grid.
    let g = grid(3, 3)?;
    let circuit = Circuit::from_pairs(
        9,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 2),
            (5, 0),
            (6, 1),
        ],
    )?;
    let exact = exact_min_swaps(&g, &circuit, 4, OracleConfig::default())?;
    let brute = brute_force_min_swaps(&g, &circuit, 4)?;
    println!(
        "pentagon plus extras on grid-3x3: exact {:?}, brute force {:?}",
        exact.swaps(),
        brute
    );
    Ok(())
}
