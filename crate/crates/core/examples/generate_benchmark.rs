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

//! Generate a benchmark that needs exactly four SWAPs on Aspen-4 and write it
//! out as a bundle.
//!
//!     cargo run --example generate_benchmark -- [out-dir]

use std::path::PathBuf;

use qubikos::arch::make_architecture;
use qubikos::bundle::write_bundle;
use qubikos::generator::generate;

fn main() -> qubikos::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("qubikos-aspen4-n4"));
    let coupling = make_architecture("aspen4")?;
    let instance = generate(&coupling, 4, 300, 2024)?;

    println!(
        "{} two-qubit gates, optimal SWAP count {}",
        instance.circuit.len(),
        instance.optimal_swaps
    );
    for (j, (range, swap)) in instance
        .section_boundaries
        .iter()
        .zip(&instance.swap_schedule)
        .enumerate()
    {
        println!(
            "section {j}: gates {}..{}, SWAP on {:?} at answer index {}",
            range.0, range.1, swap.edge, swap.answer_index
        );
    }
    println!(
        "padding after the last section: {} gates",
        instance.circuit.len() - instance.section_boundaries.last().map_or(0, |r| r.1)
    );

    write_bundle(&instance, &out)?;
    println!("bundle written to {}", out.display());
    Ok(())
}
