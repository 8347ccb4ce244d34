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

//! Ask whether an interaction graph fits a device without any SWAP.

use qubikos::arch::{grid, heavy_hex};
use qubikos::graph::InteractionGraph;
use qubikos::subiso::find_embedding;

fn main() -> qubikos::Result<()> {
    let g = grid(3, 3)?;
    let cycle4 = InteractionGraph::from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
    let triangle = InteractionGraph::from_pairs(3, [(0, 1), (1, 2), (2, 0)]);
    let star5 = InteractionGraph::from_pairs(6, (1..6).map(|i| (0, i)));

    for (name, pattern) in [
        ("4-cycle", &cycle4),
        ("triangle", &triangle),
        ("5-star", &star5),
    ] {
        match find_embedding(pattern, &g) {
            Some(e) => println!("{name} -> grid-3x3 at {:?}", e.assignment),
            None => println!("{name} does not fit grid-3x3"),
        }
    }

    // Heavy-hex has no 4-cycles at all.
    let hh = heavy_hex(2)?;
    println!(
        "4-cycle fits heavy-hex-2: {}",
        find_embedding(&cycle4, &hh).is_some()
    );
    Ok(())
}
