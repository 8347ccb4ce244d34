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

//! Verify a bundle, then corrupt it in each supported way and watch the
//! checks catch it.
//!
//!     cargo run --example verify_bundle -- [bundle-dir]

use qubikos::arch::make_architecture;
use qubikos::bundle::read_bundle;
use qubikos::generator::generate;
use qubikos::rng::attempt_rng;
use qubikos::verify::{mutate, verify_instance, Mutation};

fn main() -> qubikos::Result<()> {
    let instance = match std::env::args().nth(1) {
        Some(dir) => read_bundle(dir.as_ref())?,
        None => generate(&make_architecture("grid-3x3")?, 3, 30, 5)?,
    };
    let coupling = make_architecture(&instance.arch)?;

    let report = verify_instance(&coupling, &instance);
    for check in &report.checks {
        println!(
            "{:<16} {}",
            check.check,
            if check.passed { "ok" } else { "FAILED" }
        );
    }

    let mut rng = attempt_rng(0, 0);
    for m in Mutation::ALL {
        let Some(bad) = mutate(&instance, m, &mut rng) else {
            println!("{m:?}: no site to mutate");
            continue;
        };
        let r = verify_instance(&coupling, &bad);
        let first = r.checks.iter().flat_map(|c| &c.violations).next();
        match first {
            Some(v) => println!("{m:?}: caught, {v}"),
            None => println!("{m:?}: NOT caught"),
        }
    }
    Ok(())
}
