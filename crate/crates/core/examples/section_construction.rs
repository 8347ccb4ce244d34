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

//! Build one section by hand: choose a forcing SWAP, derive the section
//! graph, connect it, and order it into gates.

use qubikos::arch::grid;
use qubikos::backbone::{connect_section, order_section, Ordering};
use qubikos::graph::InteractionGraph;
use qubikos::isogen::{build_section_graph, swap_candidates};
use qubikos::mapping::{apply_swap, Mapping};
use qubikos::rng::attempt_rng;
use qubikos::subiso::embeds;

fn main() -> qubikos::Result<()> {
    let coupling = grid(3, 3)?;
    let mapping = Mapping::identity(9);
    let mut rng = attempt_rng(1, 0);

    // Centre qubit 4 swaps with 1 and gains neighbour 0.
    let choice = swap_candidates(&coupling)
        .into_iter()
        .find(|c| c.anchor == 4 && c.partner == 1 && c.target == 0)
        .expect("candidate exists on a 3x3 grid");
    let section = build_section_graph(&coupling, &mapping, choice)?;
    println!(
        "S has {} edges, special gate {:?}",
        section.edges.len(),
        section.special
    );

    let section = connect_section(&coupling, &mapping, &section, None)?;
    let gates = order_section(&section, None, &mut rng, Ordering::Compact)?;
    println!("ordered section ({} gates):", gates.len());
    for g in &gates {
        println!("  cx q[{}],q[{}]", g.q0, g.q1);
    }

    let with = InteractionGraph::from_pairs(9, gates.iter().map(|g| g.pair()));
    let without =
        InteractionGraph::from_pairs(9, gates[..gates.len() - 1].iter().map(|g| g.pair()));
    println!("embeds with special gate: {}", embeds(&with, &coupling));
    println!("embeds without it:        {}", embeds(&without, &coupling));

    let after = apply_swap(&coupling, &mapping, choice.edge())?;
    let s = section.special;
    println!(
        "special gate executable after the SWAP: {}",
        after.is_executable(&coupling, s.q0, s.q1)
    );
    Ok(())
}
