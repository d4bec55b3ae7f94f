use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rashba_ring::sweep::{resonance_table, run_sweep, to_csv, Engine, SweepSpec, XiFraction};
use rashba_ring::tjunction::{residuals, TJunction};
use rashba_ring::verify::run_verify;
use rashba_ring::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_AUDIT: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "rashba-ring",
    version,
    about = "Spin transport through a Rashba ring with attached leads"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the energy for the symmetric three-lead ring and write CSV.
    Sweep {
        #[arg(long)]
        alpha: f64,
        /// Attachment angle as a fraction of pi, e.g. 1/2.
        #[arg(long, value_parser = parse_xi)]
        xi: XiFraction,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        /// Energy range as <min>:<max>.
        #[arg(long = "lambda", value_parser = parse_range)]
        range: (f64, f64),
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value = "generic", value_parser = parse_engine)]
        engine: Engine,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<String>,
        /// Worker threads; the output does not depend on this.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// List ring resonances in an energy range.
    Resonances {
        #[arg(long)]
        alpha: f64,
        #[arg(long = "lambda", value_parser = parse_range)]
        range: (f64, f64),
    },
    /// Run the seeded symmetry and identity audit.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Print the T-junction scattering matrix.
    Tjunction {
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
}

fn parse_xi(s: &str) -> Result<XiFraction, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected <min>:<max>, got {s:?}"))?;
    let a = a
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad minimum {a:?}: {e}"))?;
    let b = b
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad maximum {b:?}: {e}"))?;
    Ok((a, b))
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("rashba-ring: {msg}");
    ExitCode::from(code)
}

fn numerical_or_usage(e: Error) -> ExitCode {
    match e {
        Error::SingularSystem { .. } | Error::ResonanceProximity { .. } => fail(EXIT_NUMERICAL, e),
        other => fail(EXIT_USAGE, other),
    }
}

fn emit(out: Option<&str>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    match cli.command {
        Command::Sweep {
            alpha,
            xi,
            beta,
            range,
            samples,
            engine,
            out,
            threads,
        } => {
            let spec = SweepSpec {
                alpha,
                xi,
                beta,
                lambda_min: range.0,
                lambda_max: range.1,
                samples,
                engine,
            };
            if let Err(e) = spec.validate() {
                return fail(EXIT_USAGE, e);
            }
            let points = match threads {
                Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                    Ok(pool) => pool.install(|| run_sweep(&spec)),
                    Err(e) => return fail(EXIT_USAGE, e),
                },
                None => run_sweep(&spec),
            };
            let points = match points {
                Ok(p) => p,
                Err(e) => return numerical_or_usage(e),
            };
            if let Err(e) = emit(out.as_deref(), &to_csv(&spec, &points)) {
                return fail(EXIT_USAGE, e);
            }
            ExitCode::SUCCESS
        }
        Command::Resonances { alpha, range } => match resonance_table(alpha, range.0, range.1) {
            Ok((_, text)) => match emit(None, &text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(EXIT_USAGE, e),
            },
            Err(e) => fail(EXIT_USAGE, e),
        },
        Command::Verify { seed, trials } => match run_verify(seed, trials) {
            Ok(report) => {
                println!("{report}");
                if report.passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(EXIT_AUDIT)
                }
            }
            Err(Error::InvalidDevice(msg)) => fail(EXIT_USAGE, msg),
            Err(e) => numerical_or_usage(e),
        },
        Command::Tjunction { beta } => {
            let t = match TJunction::new(beta) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_USAGE, e),
            };
            let s = t.scattering();
            println!("# T-junction scattering matrix, beta={beta}");
            for row in &s {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>24.16e}")).collect();
                println!("{}", cells.join(" "));
            }
            let r = residuals(&t);
            println!("residual |P^2 - P|      = {:.3e}", r.idempotent);
            println!("residual |S^2 - I|      = {:.3e}", r.involution);
            println!("residual |S - (2P - I)| = {:.3e}", r.projection_form);
            ExitCode::SUCCESS
        }
    }
}
