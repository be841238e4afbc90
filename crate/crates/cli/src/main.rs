use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use ringlab::checks::{run_check, Caps, Instance, Verdict, COHN_CHECKS, SHIFTED_CHECKS};
use ringlab::dsl::{eval_list, parse, parse_ring};
use ringlab::reproduce::{reproduce, ReproduceError};
use ringlab::suite::{run_suite, suite_names};
use ringlab_core::{jacobson, Extension, Ideal, RingError, ShiftedRing, SubringLattice, DEFAULT_SIZE_CAP, LATTICE_CAP};

const OK: u8 = 0;
const COUNTEREXAMPLE: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "ringlab", version, about = "Finite commutative rings and their extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a ring expression and print its normal form
    Parse { expr: String },
    /// Analyze the extension of the subring generated by --sub-gens
    Analyze {
        #[arg(long)]
        ambient: String,
        #[arg(long, default_value = "")]
        sub_gens: String,
        /// Also write the report to this file
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Enumerate the intermediate rings of an extension
    Lattice {
        #[arg(long)]
        ambient: String,
        #[arg(long, default_value = "")]
        sub_gens: String,
        #[arg(long, default_value_t = LATTICE_CAP)]
        cap: usize,
    },
    /// Check a shifted ring over an ideal, or Cohn's ring without --ideal
    Cohn {
        #[arg(long)]
        ring: String,
        /// Ideal generators, or J for the Jacobson radical
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Run a verification suite and print the JSON report
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 32)]
        max_size: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = LATTICE_CAP)]
        lattice_cap: usize,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce a worked example: 7.4, 7.5 or 7.6
    Reproduce {
        #[arg(long)]
        example: String,
        /// Prime for 7.4
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Base ring for 7.6
        #[arg(long, default_value = "Z/3")]
        ring: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        json: bool,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("value prints")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Parse { expr } => {
            let ast = match parse(&expr) {
                Ok(a) => a,
                Err(e) => return usage(e),
            };
            println!("{ast}");
            match ringlab::dsl::build(&ast, DEFAULT_SIZE_CAP) {
                Ok(r) => {
                    println!("{} elements", r.size());
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
        Command::Analyze { ambient, sub_gens, json } => {
            let s = match parse_ring(&ambient, DEFAULT_SIZE_CAP) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let gens = match eval_list(&s, &sub_gens) {
                Ok(g) => g,
                Err(e) => return usage(e),
            };
            let ext = Extension::from_generators(&s, &gens);
            let report = serde_json::to_value(ext.analyze()).expect("report serializes");
            let text = pretty(&report);
            println!("{text}");
            if let Some(path) = json {
                if let Err(e) = std::fs::write(&path, text + "\n") {
                    return usage(format!("{}: {e}", path.display()));
                }
            }
            ExitCode::SUCCESS
        }
        Command::Lattice { ambient, sub_gens, cap } => {
            let s = match parse_ring(&ambient, DEFAULT_SIZE_CAP) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let gens = match eval_list(&s, &sub_gens) {
                Ok(g) => g,
                Err(e) => return usage(e),
            };
            let ext = Extension::from_generators(&s, &gens);
            match SubringLattice::enumerate(&ext, cap) {
                Ok(l) => println!("{}", pretty(&serde_json::to_value(l.dump()).unwrap())),
                Err(e @ RingError::CapExceeded { .. }) => {
                    println!("{}", pretty(&json!({ "verdict": "cap-skipped", "reason": e.to_string() })))
                }
                Err(e) => return usage(e),
            }
            ExitCode::SUCCESS
        }
        Command::Cohn { ring, ideal, degree } => {
            let r = match parse_ring(&ring, DEFAULT_SIZE_CAP) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            let ideal = match ideal.as_deref().map(str::trim) {
                None => None,
                Some("J") => Some(jacobson(&r).generators().iter().map(|&g| r.format(g)).collect()),
                Some(src) => match eval_list(&r, src) {
                    Ok(g) => Some(g.iter().map(|&x| r.format(x)).collect::<Vec<_>>()),
                    Err(e) => return usage(e),
                },
            };
            let built = match &ideal {
                Some(g) => eval_list(&r, &g.join(", "))
                    .map_err(|e| e.to_string())
                    .and_then(|g| ShiftedRing::shifted(&r, &Ideal::generated(&r, &g)).map_err(|e| e.to_string())),
                None => ShiftedRing::cohn(&r).map_err(|e| e.to_string()),
            };
            if let Err(e) = built {
                return usage(e);
            }
            let checks: &[&str] = if ideal.is_some() { &SHIFTED_CHECKS } else { &COHN_CHECKS };
            let inst = Instance::Shifted { ring, ideal, degree };
            let caps = Caps::default();
            let findings: Vec<_> = checks.iter().map(|c| run_check(c, &inst, &caps)).collect();
            println!("{}", pretty(&serde_json::to_value(&findings).unwrap()));
            if findings.iter().any(|f| f.verdict == Verdict::Counterexample) {
                ExitCode::from(COUNTEREXAMPLE)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Verify { suite, max_size, seed, lattice_cap, out } => {
            if !suite_names().contains(&suite) {
                return usage(format!("unknown suite '{suite}'; expected one of {}", suite_names().join(", ")));
            }
            let caps = Caps { max_size, lattice_cap, ..Caps::default() };
            let report = match run_suite(&suite, &caps, seed) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            let text = report.to_json();
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text + "\n") {
                        return usage(format!("{}: {e}", path.display()));
                    }
                    let s = &report.summary;
                    eprintln!(
                        "{} confirmed, {} counterexamples, {} cap-skipped",
                        s.confirmed, s.counterexample, s.cap_skipped
                    );
                }
                None => println!("{text}"),
            }
            ExitCode::from(if report.all_confirmed() { OK } else { COUNTEREXAMPLE })
        }
        Command::Reproduce { example, p, ring, n, m, json } => {
            if example == "7.6" && !(1 <= n && n < m) {
                return usage(format!("7.6 needs 1 <= n < m, got n = {n}, m = {m}"));
            }
            match reproduce(&example, p, &ring, n, m) {
                Ok(rep) => {
                    if json {
                        println!("{}", pretty(&rep.json));
                    } else {
                        for l in &rep.lines {
                            println!("{l}");
                        }
                    }
                    ExitCode::from(if rep.ok { OK } else { COUNTEREXAMPLE })
                }
                Err(e @ (ReproduceError::UnknownExample(_) | ReproduceError::Dsl(_) | ReproduceError::Ring(_))) => usage(e),
            }
        }
    }
}
