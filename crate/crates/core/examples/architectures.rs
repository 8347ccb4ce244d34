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

//! Inspect the bundled devices and the procedural families.

use qubikos::arch::{make_architecture, NAMED_DEVICES};

fn main() -> qubikos::Result<()> {
    println!(
        "{:<12} {:>6} {:>8} {:>10} {:>9}",
        "arch", "qubits", "couplers", "max degree", "diameter"
    );
    let extra = ["line-5", "grid-3x3", "grid-2x4", "heavy-hex-2"];
    for name in NAMED_DEVICES.iter().chain(&extra) {
        let g = make_architecture(name)?;
        let diameter = g.distance_matrix().into_iter().max().unwrap_or(0);
        println!(
            "{name:<12} {:>6} {:>8} {:>10} {:>9}",
            g.num_qubits(),
            g.edges().len(),
            g.max_degree(),
            diameter
        );
    }

    // Custom devices are plain JSON edge lists.
    let path = std::env::temp_dir().join("qubikos-ring5.json");
    std::fs::write(
        &path,
        r#"{"name":"ring5","num_qubits":5,"edges":[[0,1],[1,2],[2,3],[3,4],[0,4]]}"#,
    )
    .unwrap();
    let ring = make_architecture(path.to_str().unwrap())?;
    println!(
        "{} loaded from file: {} couplers",
        ring.name(),
        ring.edges().len()
    );
    Ok(())
}
