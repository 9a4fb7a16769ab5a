use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use terracini_core::constructions::{
    ai0_witness, elliptic_quartic_points, plane_cubic_points, reducible_rnc_points, rnc_points, PlaneCubicMode, Sample,
};
use terracini_core::harness::{check_scheme, run_suite, write_csv, write_json, HarnessError, SuiteConfig, SuiteId};
use terracini_core::witness::{WitnessOptions, DEFAULT_BUDGET};
use terracini_core::{Exec, PrimeField};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "terracini", version, about = "Exact checks of Terracini loci of double points over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct InputArgs {
    /// Point set or scheme JSON.
    file: PathBuf,
    #[arg(long)]
    d: usize,
    /// Used when the file does not name a prime.
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long)]
    sequential: bool,
}

impl InputArgs {
    fn options(&self) -> WitnessOptions {
        WitnessOptions {
            budget: self.budget,
            exec: if self.sequential { Exec::Sequential } else { Exec::Parallel },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructFamily {
    Rnc,
    ReducibleRnc,
    PlaneCubic,
    EllipticQuartic,
    Ai0,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology, T1 verdict, critical scheme and witness.
    Check(InputArgs),
    /// Minimally-Terracini certificate.
    Minimal(InputArgs),
    /// A critical scheme of the double points.
    Critical(InputArgs),
    /// Witness curve for the input (a scheme, or the critical scheme of a point set).
    Witness(InputArgs),
    /// Sample a configuration and print it as a point-set file.
    Construct {
        family: ConstructFamily,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Segment dimensions of a reducible curve, e.g. 1,2.
        #[arg(long, value_delimiter = ',')]
        chain: Vec<usize>,
        /// Points per segment of a reducible curve.
        #[arg(long, value_delimiter = ',')]
        alloc: Vec<usize>,
        /// Plane cubic: points in general position on the curve instead of a complete intersection.
        #[arg(long)]
        free: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long)]
        budget: Option<usize>,
        /// Restrict the grid's degrees.
        #[arg(long, value_delimiter = ',')]
        d: Vec<usize>,
        #[arg(long, value_enum, default_value = "json")]
        out: OutFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        sequential: bool,
    },
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<(), HarnessError> {
    write_json(v, io::stdout().lock())
}

fn field(prime: Option<u64>) -> Result<PrimeField, HarnessError> {
    Ok(match prime {
        Some(p) => PrimeField::new(p)?,
        None => PrimeField::default_field(),
    })
}

#[allow(clippy::too_many_arguments)]
fn construct(
    family: ConstructFamily,
    n: usize,
    x: Option<usize>,
    d: Option<usize>,
    chain: &[usize],
    alloc: &[usize],
    free: bool,
    seed: u64,
    prime: Option<u64>,
) -> Result<serde_json::Value, HarnessError> {
    let f = field(prime)?;
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| HarnessError::InvalidConfig(format!("--{flag} is required")));
    let sample: Option<Sample> = match family {
        ConstructFamily::Rnc => Some(rnc_points(f, n, need(x, "x")?, seed)?),
        ConstructFamily::ReducibleRnc => Some(reducible_rnc_points(f, chain, alloc, &[], seed)?),
        ConstructFamily::PlaneCubic => {
            let d = need(d, "d")?;
            let mode = if free {
                PlaneCubicMode::FreePoints
            } else {
                PlaneCubicMode::CompleteIntersection
            };
            Some(plane_cubic_points(f, d, mode, seed)?)
        }
        ConstructFamily::EllipticQuartic => Some(elliptic_quartic_points(f, need(d, "d")?, seed)?),
        ConstructFamily::Ai0 => None,
    };
    Ok(match sample {
        Some(s) => json!({
            "n": s.spec.n,
            "prime": f.modulus(),
            "seed": seed,
            "points": s.points,
            "spec": s.spec,
        }),
        None => {
            let pts = ai0_witness(f, n, need(d, "d")?, need(x, "x")?, seed)?;
            json!({ "n": n, "prime": f.modulus(), "seed": seed, "points": pts })
        }
    })
}

fn run(cli: Cli) -> Result<u8, HarnessError> {
    match cli.command {
        Command::Check(a) => {
            let out = check_scheme(&a.file, a.d, a.prime, false, &a.options())?;
            print_json(&out)?;
        }
        Command::Minimal(a) => {
            let out = check_scheme(&a.file, a.d, a.prime, true, &a.options())?;
            print_json(&out.certificate)?;
        }
        Command::Critical(a) => {
            let out = check_scheme(&a.file, a.d, a.prime, false, &a.options())?;
            print_json(&json!({ "h1": out.cohomology.h1, "critical": out.critical }))?;
        }
        Command::Witness(a) => {
            let out = check_scheme(&a.file, a.d, a.prime, false, &a.options())?;
            print_json(&json!({ "witness": out.witness, "error": out.witness_error }))?;
        }
        Command::Construct {
            family,
            n,
            x,
            d,
            chain,
            alloc,
            free,
            seed,
            prime,
        } => {
            print_json(&construct(family, n, x, d, &chain, &alloc, free, seed, prime)?)?;
        }
        Command::Verify {
            suite,
            seed,
            trials,
            primes,
            budget,
            d,
            out,
            output,
            sequential,
        } => {
            let id: SuiteId = suite.parse()?;
            let mut cfg = SuiteConfig::new(id);
            if let Some(s) = seed {
                cfg = cfg.with_seed(s);
            }
            if let Some(t) = trials {
                cfg = cfg.with_trials(t);
            }
            if !primes.is_empty() {
                cfg = cfg.with_primes(primes);
            }
            if let Some(b) = budget {
                cfg.budget = b;
            }
            if !d.is_empty() {
                cfg.grid.d = d;
            }
            if sequential {
                cfg = cfg.with_exec(Exec::Sequential);
            }
            cfg.output = output.clone();
            let report = run_suite(&cfg)?;
            let sink: Box<dyn Write> = match &output {
                Some(p) => Box::new(File::create(p)?),
                None => Box::new(io::stdout().lock()),
            };
            match out {
                OutFormat::Json => write_json(&report, sink)?,
                OutFormat::Csv => write_csv(&report, sink)?,
            }
            eprintln!(
                "{}: {} ({} cells, {} trials, {} counterexamples)",
                report.suite,
                if report.passed { "PASS" } else { "FAIL" },
                report.cells.len(),
                report.trial_count(),
                report.counterexamples.len()
            );
            if !report.passed {
                return Ok(EXIT_FAIL);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                HarnessError::CounterexampleFound(_) => EXIT_FAIL,
                HarnessError::Parse { .. }
                | HarnessError::UnknownSuite(_)
                | HarnessError::InvalidConfig(_)
                | HarnessError::Io(_)
                | HarnessError::Linalg(_)
                | HarnessError::Construction(_) => EXIT_USAGE,
                _ => EXIT_FAIL,
            };
            ExitCode::from(code)
        }
    }
}
