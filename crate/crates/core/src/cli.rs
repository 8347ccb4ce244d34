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

//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::arch::{make_architecture, FAMILIES, NAMED_DEVICES};
use crate::backbone::Ordering;
use crate::bundle::{read_bundle, write_bundle, META_FILE};
use crate::error::{Error, Result};
use crate::eval::{evaluate, find_dirs};
use crate::generator::{generate_with, GeneratorConfig};
use crate::graph::CouplingGraph;
use crate::oracle::{exact_min_swaps, OracleConfig, OracleOutcome};
use crate::qasm::{emit_qasm, parse_qasm};
use crate::rng::instance_seed;
use crate::verify::verify_instance;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qubikos",
    version,
    about = "Layout synthesis benchmarks with known optimal SWAP counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate benchmark bundles.
    Gen(GenArgs),
    /// Check bundles for answer validity, section hardness and serialization.
    Verify(VerifyArgs),
    /// Compute the exact minimum SWAP count of a small circuit.
    Oracle(OracleArgs),
    /// Audit tool results against bundles and tabulate SWAP ratios.
    Eval(EvalArgs),
    /// Inspect architectures.
    Arch {
        #[command(subcommand)]
        command: ArchCommand,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderingArg {
    Compact,
    TwoPass,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Architecture name, family instance (`grid-3x3`) or coupling file.
    #[arg(long)]
    arch: String,
    /// Optimal SWAP count of each instance.
    #[arg(long)]
    swaps: usize,
    /// Two-qubit gates per instance.
    #[arg(long)]
    gates: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Index of the first instance; instance `i` uses the seed derived from
    /// (`--seed`, `i`).
    #[arg(long, default_value_t = 0)]
    first: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = OrderingArg::Compact)]
    ordering: OrderingArg,
    #[arg(long, default_value_t = GeneratorConfig::default().max_attempts)]
    max_attempts: u64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Bundle directories, or directories searched for bundles.
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    /// Resolve every bundle against this architecture instead of its own.
    #[arg(long)]
    arch: Option<String>,
    /// Write the JSON reports here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// A bundle directory or a QASM file.
    input: PathBuf,
    /// Required for QASM input; defaults to the bundle's architecture.
    #[arg(long)]
    arch: Option<String>,
    #[arg(long, default_value_t = 4)]
    budget: usize,
    /// Seconds.
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    #[arg(long, default_value_t = OracleConfig::default().max_states)]
    max_states: u64,
    /// Branch on single gate executions instead of running them greedily.
    #[arg(long)]
    no_closure: bool,
    /// Write the optimal routed circuit here.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    bench: PathBuf,
    #[arg(long)]
    results: PathBuf,
    /// Per-result CSV.
    #[arg(long)]
    out: PathBuf,
    /// Per-(arch, n, tool) CSV. Defaults to `<out>` with a `_summary` suffix.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long)]
    arch: Option<String>,
}

#[derive(Debug, Subcommand)]
enum ArchCommand {
    /// List bundled devices and procedural families.
    List,
    /// Print an architecture as a coupling-graph JSON file.
    Show { name: String },
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => oracle(a),
        Command::Eval(a) => eval(a),
        Command::Arch { command } => arch(command),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Directory name `gen` uses for instance `index`.
pub fn bundle_dir_name(arch: &str, swaps: usize, gates: usize, index: usize) -> String {
    let arch: String = Path::new(arch)
        .file_stem()
        .map_or_else(|| arch.to_string(), |s| s.to_string_lossy().into_owned())
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect();
    format!("{arch}-n{swaps}-g{gates}-{index:04}")
}

fn gen(a: GenArgs) -> Result<i32> {
    let coupling = make_architecture(&a.arch)?;
    let config = GeneratorConfig {
        ordering: match a.ordering {
            OrderingArg::Compact => Ordering::Compact,
            OrderingArg::TwoPass => Ordering::TwoPass,
        },
        max_attempts: a.max_attempts,
    };
    let instances: Vec<_> = (a.first..a.first + a.count)
        .into_par_iter()
        .map(|i| {
            let mut inst = generate_with(
                &coupling,
                a.swaps,
                a.gates,
                instance_seed(a.seed, i as u64),
                config,
            )?;
            inst.arch = a.arch.clone();
            Ok((i, inst))
        })
        .collect::<Result<_>>()?;
    for (i, inst) in &instances {
        write_bundle(
            inst,
            &a.out.join(bundle_dir_name(&a.arch, a.swaps, a.gates, *i)),
        )?;
    }
    eprintln!("wrote {} bundles to {}", instances.len(), a.out.display());
    Ok(EXIT_OK)
}

fn resolve(override_arch: Option<&str>, arch: &str) -> Result<CouplingGraph> {
    make_architecture(override_arch.unwrap_or(arch))
}

fn bundle_dirs(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut dirs = Vec::new();
    for p in paths {
        if !p.exists() {
            return Err(Error::io(
                p,
                std::io::Error::from(std::io::ErrorKind::NotFound),
            ));
        }
        dirs.extend(find_dirs(p, META_FILE));
    }
    Ok(dirs)
}

fn verify(a: VerifyArgs) -> Result<i32> {
    let dirs = bundle_dirs(&a.paths)?;
    if dirs.is_empty() {
        eprintln!("no bundles found");
        return Ok(EXIT_USAGE);
    }
    let results: Vec<(PathBuf, std::result::Result<_, String>)> = dirs
        .par_iter()
        .map(|dir| {
            let r = read_bundle(dir)
                .and_then(|inst| {
                    Ok(verify_instance(
                        &resolve(a.arch.as_deref(), &inst.arch)?,
                        &inst,
                    ))
                })
                .map_err(|e| e.to_string());
            (dir.clone(), r)
        })
        .collect();
    let mut failures = 0;
    let mut reports = Vec::new();
    for (dir, r) in &results {
        match r {
            Ok(report) if report.passed => println!("ok    {}", dir.display()),
            Ok(report) => {
                failures += 1;
                println!("FAIL  {}", dir.display());
                for v in report.checks.iter().flat_map(|c| &c.violations) {
                    println!("      {v}");
                }
            }
            Err(e) => {
                failures += 1;
                println!("FAIL  {}: {e}", dir.display());
            }
        }
        if let Ok(report) = r {
            reports.push(serde_json::json!({ "bundle": dir, "report": report }));
        }
    }
    if let Some(path) = &a.report {
        let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
        fs::write(path, text).map_err(|e| Error::io(path, e))?;
    }
    println!("{} bundles, {} failed", results.len(), failures);
    Ok(if failures == 0 { EXIT_OK } else { EXIT_FAILED })
}

fn oracle(a: OracleArgs) -> Result<i32> {
    let (circuit, arch, claimed) = if a.input.is_dir() {
        let inst = read_bundle(&a.input)?;
        let arch = a.arch.clone().unwrap_or_else(|| inst.arch.clone());
        (inst.circuit, arch, Some(inst.optimal_swaps))
    } else {
        let text = fs::read_to_string(&a.input).map_err(|e| Error::io(&a.input, e))?;
        let arch = a
            .arch
            .clone()
            .ok_or_else(|| Error::Precondition("--arch is required for QASM input".into()))?;
        (parse_qasm(&text)?, arch, None)
    };
    let coupling = make_architecture(&arch)?;
    let config = OracleConfig {
        max_states: a.max_states,
        time_limit: Duration::from_secs_f64(a.time_limit.max(0.0)),
        greedy_closure: !a.no_closure,
    };
    let outcome = exact_min_swaps(&coupling, &circuit, a.budget, config)?;
    match &outcome {
        OracleOutcome::Optimal { swaps, witness } => {
            println!("optimal {swaps}");
            if let Some(path) = &a.witness {
                fs::write(path, emit_qasm(&witness.answer)).map_err(|e| Error::io(path, e))?;
                println!("initial mapping {:?}", witness.initial_mapping.assignment());
            }
        }
        OracleOutcome::ExceedsBudget { budget } => println!("more than {budget}"),
        OracleOutcome::ResourcesExhausted {
            lower_bound,
            states,
        } => {
            println!("unknown: at least {lower_bound} (search stopped after {states} states)")
        }
    }
    Ok(match (claimed, &outcome) {
        (Some(c), OracleOutcome::Optimal { swaps, .. }) if *swaps != c => {
            println!("bundle claims {c}");
            EXIT_FAILED
        }
        (Some(c), OracleOutcome::ExceedsBudget { budget }) if c <= *budget => {
            println!("bundle claims {c}");
            EXIT_FAILED
        }
        _ => EXIT_OK,
    })
}

fn eval(a: EvalArgs) -> Result<i32> {
    let over = a.arch.clone();
    let report = evaluate(&a.bench, &a.results, |arch| resolve(over.as_deref(), arch))?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let out = fs::File::create(&a.out).map_err(|e| Error::io(&a.out, e))?;
    report.write_csv(out)?;
    let summary_path = a.summary.clone().unwrap_or_else(|| {
        let stem = a
            .out
            .file_stem()
            .map_or_else(|| "gaps".into(), |s| s.to_string_lossy().into_owned());
        a.out.with_file_name(format!("{stem}_summary.csv"))
    });
    let summary = fs::File::create(&summary_path).map_err(|e| Error::io(&summary_path, e))?;
    report.write_summary_csv(summary)?;

    let invalid: Vec<_> = report.rows.iter().filter(|r| !r.valid).collect();
    for r in &invalid {
        eprintln!("invalid: {} / {}", r.instance, r.tool);
        for v in &r.violations {
            eprintln!("    {v}");
        }
    }
    let below: Vec<_> = report
        .rows
        .iter()
        .filter(|r| r.valid && r.found < r.optimal)
        .collect();
    for r in &below {
        eprintln!(
            "integrity: {} / {} routes with {} SWAPs, below the optimum {}",
            r.instance, r.tool, r.found, r.optimal
        );
    }
    println!(
        "{} results, {} invalid; wrote {} and {}",
        report.rows.len(),
        invalid.len(),
        a.out.display(),
        summary_path.display()
    );
    Ok(
        if invalid.is_empty() && below.is_empty() && report.warnings.is_empty() {
            EXIT_OK
        } else {
            EXIT_FAILED
        },
    )
}

fn arch(c: ArchCommand) -> Result<i32> {
    match c {
        ArchCommand::List => {
            for name in NAMED_DEVICES {
                let g = make_architecture(name)?;
                println!(
                    "{name:<12} {:>4} qubits {:>4} couplers",
                    g.num_qubits(),
                    g.edges().len()
                );
            }
            for f in FAMILIES {
                println!("{f}");
            }
        }
        ArchCommand::Show { name } => println!("{}", make_architecture(&name)?.to_json()),
    }
    Ok(EXIT_OK)
}
