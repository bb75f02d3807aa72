//! `jenningslab`: series arithmetic in J(Z), commutator-word certificates,
//! abelianization reports, and the named verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports failures,
//! 2 on usage or domain errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use jennings_core::abelian::full_report;
use jennings_core::group::bounds;
use jennings_core::verify::run_suites;
use jennings_core::witness::{check_witness, lemma_witness};
use jennings_core::TruncatedSeries;

#[derive(Parser)]
#[command(
    name = "jenningslab",
    about = "Exact arithmetic in the group of formal power series x + a2*x^2 + ... under composition",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose two series: prints f(g(x)).
    Compose {
        /// Left series, e.g. "x + x^2" (truncation clause optional).
        f: String,
        /// Right series.
        g: String,
        /// Truncation order: work modulo x^N.
        #[arg(long)]
        trunc: usize,
    },
    /// Compositional inverse of a series.
    Inverse {
        f: String,
        #[arg(long)]
        trunc: usize,
    },
    /// Commutator [f, g] = f . g . f^-1 . g^-1 under composition.
    Commutator {
        f: String,
        g: String,
        #[arg(long)]
        trunc: usize,
    },
    /// Emit a commutator word with value x + alpha*x^l + O(x^{l+1}) over J_k.
    Witness {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: i64,
        /// Also evaluate the word and report its leading term and validity.
        #[arg(long)]
        check: bool,
    },
    /// Compute H1(J_k(Z)) and compare it with the closed-form prediction.
    Abelianize {
        #[arg(long)]
        k: usize,
        /// Emit the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run a named verification suite.
    Verify {
        /// One of: core, witness, gamma, appendix, abelianization, phi, psi, all.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

fn parse_series(s: &str, trunc: usize) -> Result<TruncatedSeries, String> {
    let text = if s.contains("(mod") {
        s.to_string()
    } else {
        format!("{s} (mod x^{trunc})")
    };
    let f = TruncatedSeries::parse(&text).map_err(|e| e.to_string())?;
    f.truncate(trunc.min(f.trunc_order()))
        .map_err(|e| e.to_string())
}

fn max_k() -> usize {
    std::env::var("JENNINGSLAB_MAX_K")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(25)
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Compose { f, g, trunc } => {
            let f = parse_series(&f, trunc)?;
            let g = parse_series(&g, trunc)?;
            let h = f.compose(&g).map_err(|e| e.to_string())?;
            println!("{h}");
        }
        Command::Inverse { f, trunc } => {
            let f = parse_series(&f, trunc)?;
            println!("{}", f.inverse());
        }
        Command::Commutator { f, g, trunc } => {
            let f = parse_series(&f, trunc)?;
            let g = parse_series(&g, trunc)?;
            let h = f.commutator(&g).map_err(|e| e.to_string())?;
            println!("{h}");
        }
        Command::Witness { k, l, alpha, check } => {
            let word = lemma_witness(k, l, alpha).map_err(|e| e.to_string())?;
            if check {
                let report = check_witness(&word, k, l + 1);
                let out = json!({
                    "word": word.to_json_value(),
                    "value": report.value.to_string(),
                    "leading": format!(
                        "{}*x^{}",
                        report.target_coefficient, report.target_degree
                    ),
                    "valid": report.valid,
                });
                println!("{out}");
                if !report.valid {
                    return Ok(ExitCode::from(1));
                }
            } else {
                println!("{}", word.to_json());
            }
        }
        Command::Abelianize { k, json } => {
            let ceiling = max_k();
            if k < 2 || k > ceiling {
                return Err(format!(
                    "k must satisfy 2 <= k <= {ceiling} (got {k}); set JENNINGSLAB_MAX_K to raise the ceiling"
                ));
            }
            let report = full_report(k).map_err(|e| e.to_string())?;
            if json {
                println!("{}", report.to_json_value());
            } else {
                let verdict = if report.matches_theorem {
                    "matches theorem"
                } else {
                    "DOES NOT match theorem"
                };
                println!("{} [{verdict}]", report.structure);
                let b = bounds(k).map_err(|e| e.to_string())?;
                for i in k..b.c {
                    println!(
                        "  |pi(x + x^{i})| = {}",
                        report.generator_orders[&i]
                    );
                }
            }
            if !report.matches_theorem {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Verify {
            suite,
            seed,
            trials,
        } => {
            let reports = run_suites(&suite, seed, trials).map_err(|e| e.to_string())?;
            let mut failed = false;
            for r in &reports {
                println!(
                    "suite {}: {} cases, {} failures ({} ms)",
                    r.suite,
                    r.cases,
                    r.failures.len(),
                    r.runtime_ms
                );
                for note in &r.notes {
                    println!("  note: {note}");
                }
                for f in &r.failures {
                    println!("  FAIL: {f}");
                }
                failed |= !r.failures.is_empty();
            }
            if failed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
