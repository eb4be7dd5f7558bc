//! The `creal` command line: approximate expressions, prove strict
//! inequalities, and run the standard benchmark.
//!
//! Exit codes for `prove`: 0 proved, 1 disproved, 2 inconclusive after the
//! iteration budget, 3 parse or domain error. `approx` uses 0/3, `bench`
//! returns 0 when every row reproduces its expected digits.

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::elementary::Compression;
use crate::parse::{parse_expr, parse_inequality, CmpOp};
use crate::prover::{eval_with, prove_lt, ProofOutcome, DEFAULT_MAX_ITERS};
use crate::rational::{decimal_close, Rational, Tolerance};

/// What a single command execution produced, timing included.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub expr: String,
    pub digits: Option<u32>,
    pub value: Option<String>,
    pub elapsed_micros: u128,
    pub proof: Option<ProofOutcome>,
}

#[derive(Parser)]
#[command(name = "creal", version, about = "Exact real arithmetic calculator and inequality prover")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression to a given number of decimal digits
    Approx {
        /// Expression, e.g. "sqrt(e/pi)" or "sin((e+1)^3)"
        expr: String,
        /// Fractional decimal digits to print
        #[arg(long, default_value_t = 20)]
        digits: u32,
        /// Compression at the documented insertion points
        #[arg(long, value_enum, default_value_t = CompressFlag::On)]
        compress: CompressFlag,
    },
    /// Semi-decide a strict inequality, e.g. "pi < 355/113"
    Prove {
        /// Inequality of the form "<expr> < <expr>" or "<expr> > <expr>"
        inequality: String,
        /// Initial probe tolerance for the witness search
        #[arg(long, default_value = "1")]
        delta0: String,
        /// Number of halvings before giving up
        #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
        max_iters: u32,
    },
    /// Evaluate the three standard benchmark expressions at 20 digits
    Bench {
        /// Tab-separated machine-readable output: expr, digits, value, micros
        #[arg(long)]
        porcelain: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CompressFlag {
    On,
    Off,
}

impl From<CompressFlag> for Compression {
    fn from(flag: CompressFlag) -> Compression {
        match flag {
            CompressFlag::On => Compression::On,
            CompressFlag::Off => Compression::Off,
        }
    }
}

/// Entry point used by `main`; returns the process exit code.
pub fn run_from_args() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Approx {
            expr,
            digits,
            compress,
        } => match cmd_approx(&expr, digits, compress.into()) {
            Ok(report) => {
                println!("{}", report.value.as_deref().unwrap_or(""));
                eprintln!(
                    "expr: {}  digits: {}  time: {} µs",
                    report.expr,
                    digits,
                    report.elapsed_micros
                );
                0
            }
            Err(message) => {
                eprintln!("error: {message}");
                3
            }
        },
        Command::Prove {
            inequality,
            delta0,
            max_iters,
        } => match cmd_prove(&inequality, &delta0, max_iters) {
            Ok(report) => {
                let code = match report.proof.as_ref().expect("prove reports carry an outcome") {
                    ProofOutcome::Proved { witness, probes } => {
                        println!("proved");
                        println!("witness: {witness}");
                        println!("probes: {probes}");
                        0
                    }
                    ProofOutcome::Disproved => {
                        println!("disproved");
                        1
                    }
                    ProofOutcome::Inconclusive { probes } => {
                        println!("inconclusive after {probes} probes");
                        2
                    }
                };
                eprintln!("time: {} µs", report.elapsed_micros);
                code
            }
            Err(message) => {
                eprintln!("error: {message}");
                3
            }
        },
        Command::Bench { porcelain } => {
            let rows = cmd_bench();
            let mut all_ok = true;
            for (report, expected) in &rows {
                let value = report.value.as_deref().unwrap_or("");
                let ok = decimal_close(value, expected);
                all_ok &= ok;
                if porcelain {
                    println!(
                        "{}\t{}\t{}\t{}",
                        report.expr,
                        report.digits.unwrap_or(0),
                        value,
                        report.elapsed_micros
                    );
                } else {
                    println!(
                        "{:<22} {} (expected {}, {}, error 1e-20, {} µs)",
                        report.expr,
                        value,
                        expected,
                        if ok { "ok" } else { "MISMATCH" },
                        report.elapsed_micros
                    );
                }
            }
            if all_ok {
                0
            } else {
                1
            }
        }
    }
}

/// Parses, evaluates, and renders an expression. The total error of the
/// printed decimal is at most 10^-digits.
pub fn cmd_approx(expr_text: &str, digits: u32, mode: Compression) -> Result<RunReport, String> {
    if digits == 0 {
        return Err("need at least one decimal digit".into());
    }
    let expr = parse_expr(expr_text).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let value = eval_with(&expr, mode).map_err(|e| e.to_string())?;
    let rendered = value.to_decimal(digits);
    Ok(RunReport {
        expr: expr_text.to_string(),
        digits: Some(digits),
        value: Some(rendered),
        elapsed_micros: start.elapsed().as_micros(),
        proof: None,
    })
}

/// Parses an inequality and runs the witness search on it.
pub fn cmd_prove(input: &str, delta0_text: &str, max_iters: u32) -> Result<RunReport, String> {
    let (lhs, op, rhs) = parse_inequality(input).map_err(|e| e.to_string())?;
    let delta0_value = Rational::parse_literal(delta0_text).map_err(|e| e.to_string())?;
    let delta0 = Tolerance::new(delta0_value).map_err(|e| e.to_string())?;
    if max_iters == 0 {
        return Err("--max-iters must be at least 1".into());
    }
    let (smaller, larger) = match op {
        CmpOp::Lt => (lhs, rhs),
        CmpOp::Gt => (rhs, lhs),
    };
    let start = Instant::now();
    let outcome = prove_lt(&smaller, &larger, &delta0, max_iters).map_err(|e| e.to_string())?;
    Ok(RunReport {
        expr: input.to_string(),
        digits: None,
        value: None,
        elapsed_micros: start.elapsed().as_micros(),
        proof: Some(outcome),
    })
}

/// The three standard benchmark expressions at 20 digits, with the digit
/// strings they are expected to reproduce (final digit up to one ulp).
pub fn cmd_bench() -> Vec<(RunReport, &'static str)> {
    const ROWS: [(&str, &str); 3] = [
        ("sqrt(e/pi)", "0.93019136710263285866"),
        ("sin((e+1)^3)", "0.90949524105726624718"),
        ("exp(exp(exp(1/2)))", "181.33130360854569351505"),
    ];
    ROWS.iter()
        .map(|(expr, expected)| {
            let report = cmd_approx(expr, 20, Compression::On)
                .expect("benchmark expressions are well-formed");
            (report, *expected)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approx_reports_value_and_digits() {
        let report = cmd_approx("1/3", 5, Compression::On).unwrap();
        assert_eq!(report.value.as_deref(), Some("0.33333"));
        assert_eq!(report.digits, Some(5));
        assert!(cmd_approx("1 +", 5, Compression::On).is_err());
        assert!(cmd_approx("ln(0-1)", 5, Compression::On).is_err());
    }

    #[test]
    fn prove_maps_both_operator_directions() {
        let report = cmd_prove("0 < 1", "1", 16).unwrap();
        assert!(matches!(report.proof, Some(ProofOutcome::Proved { .. })));
        let report = cmd_prove("1 > 0", "1", 16).unwrap();
        assert!(matches!(report.proof, Some(ProofOutcome::Proved { .. })));
        let report = cmd_prove("1 < 0", "1", 16).unwrap();
        assert!(matches!(report.proof, Some(ProofOutcome::Disproved)));
        let report = cmd_prove("0 < 0", "1", 16).unwrap();
        assert!(matches!(report.proof, Some(ProofOutcome::Inconclusive { .. })));
        assert!(cmd_prove("1 2", "1", 16).is_err());
        assert!(cmd_prove("0 < 1", "0", 16).is_err());
        assert!(cmd_prove("0 < 1", "1/1024", 0).is_err());
    }

    #[test]
    fn prove_accepts_rational_and_decimal_delta0() {
        let report = cmd_prove("0 < 2", "1/1024", 16).unwrap();
        assert!(matches!(report.proof, Some(ProofOutcome::Proved { .. })));
        let report = cmd_prove("0 < 2", "0.125", 16).unwrap();
        match report.proof {
            Some(ProofOutcome::Proved { witness, .. }) => {
                assert_eq!(witness.epsilon(), &Tolerance::ratio(15, 8));
            }
            other => panic!("expected proof, got {other:?}"),
        }
    }

    #[test]
    fn bench_rows_reproduce_their_expectations() {
        for (report, expected) in cmd_bench() {
            let value = report.value.as_deref().unwrap();
            assert!(
                decimal_close(value, expected),
                "{}: got {value}, want {expected}",
                report.expr
            );
        }
    }
}
