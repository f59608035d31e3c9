//! Command-line front end.
//!
//! Machine-readable output goes to `out`; notices and errors go to `err`.
//! Exit codes: 0 success, 1 usage or input error, 2 `verify` found a
//! profitable deviation.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::certify::{certify_allpay, certify_lotto};
use crate::dist::{self, FiniteDist};
use crate::equilibria::{
    build_equilibrium, canonical_params, classify, param_space, payoff_range, EqParams, Valuations,
};
use crate::error::Error;
use crate::payoff::h_value;
use crate::rational::{self, Rational};
use crate::statics;

#[derive(Debug, Parser)]
#[command(name = "allpay", about = "Equilibria of discrete two-player all-pay auctions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Pair {
    /// Valuation of player 1 (`p/q`, integer or decimal)
    #[arg(long, allow_hyphen_values = true)]
    v1: String,
    /// Valuation of player 2
    #[arg(long, allow_hyphen_values = true)]
    v2: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print an equilibrium profile and the range of equilibrium payoffs
    Solve {
        #[command(flatten)]
        pair: Pair,
        /// Parameter object as JSON, or `@path` to read it from a file
        #[arg(long)]
        params: Option<String>,
        /// Also print the feasible parameter region
        #[arg(long)]
        all_ranges: bool,
    },
    /// Certify a profile read from two distribution files
    Verify {
        #[command(flatten)]
        pair: Pair,
        x: PathBuf,
        y: PathBuf,
        /// Also certify the profile in the fixed-mean General Lotto game
        #[arg(long)]
        lotto: bool,
    },
    /// Compare discrete and continuous payoffs of player 2 over a range of v2
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        v1: String,
        #[arg(long = "v2-min", allow_hyphen_values = true)]
        v2_min: String,
        #[arg(long = "v2-max", allow_hyphen_values = true)]
        v2_max: String,
        #[arg(long, allow_hyphen_values = true)]
        step: String,
        /// Render values as decimals with this many digits
        #[arg(long)]
        decimal: Option<usize>,
    },
    /// Print a building-block distribution: dirac K, uniform-odd M,
    /// uniform-even M, uniform-odd-shift M, w J M, v J M
    Dist {
        builder: String,
        #[arg(allow_hyphen_values = true)]
        args: Vec<i64>,
    },
    /// Print H(X, Y) = Pr(X > Y) - Pr(X < Y)
    H { x: PathBuf, y: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    NotEquilibrium,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the command line `argv` (program name first) and returns the exit
/// code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::NotEquilibrium) => 2,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn parse_rat(name: &str, s: &str) -> Result<Rational, Failure> {
    rational::parse(s).map_err(|_| Failure::Usage(format!("{name}: cannot parse {s:?} as a rational")))
}

/// Orders the pair, printing a notice when player roles are exchanged.
fn valuations(pair: &Pair, err: &mut dyn Write) -> Result<(Valuations, bool), Failure> {
    let (v, swapped) = Valuations::ordered(parse_rat("--v1", &pair.v1)?, parse_rat("--v2", &pair.v2)?)?;
    if swapped {
        let _ = writeln!(
            err,
            "notice: v1 < v2, swapping roles so that player 1 is the stronger player (v1 = {}, v2 = {})",
            v.v1(),
            v.v2()
        );
    }
    Ok((v, swapped))
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: invalid JSON: {e}", path.display())))
}

fn read_dist(path: &PathBuf) -> Result<FiniteDist, Failure> {
    FiniteDist::from_json(&read_json(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, value: &Value) -> Outcome {
    writeln!(out, "{value}").map_err(|e| Failure::Usage(e.to_string()))
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Solve { pair, params, all_ranges } => {
            let (v, _) = valuations(&pair, err)?;
            let case = classify(&v);
            let p = match params {
                None => canonical_params(&v),
                Some(src) => {
                    let text = match src.strip_prefix('@') {
                        Some(path) => std::fs::read_to_string(path)
                            .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?,
                        None => src,
                    };
                    let value: Value = serde_json::from_str(&text)
                        .map_err(|e| Failure::Usage(format!("--params: invalid JSON: {e}")))?;
                    EqParams::from_json(case, &value)?
                }
            };
            let profile = build_equilibrium(&v, &p)?;
            let mut obj = profile.to_json();
            let map = obj.as_object_mut().expect("profile serializes to an object");
            map.insert("payoff_range".into(), payoff_range(&v).to_json());
            if all_ranges {
                map.insert("param_space".into(), param_space(&v).to_json());
            }
            emit(out, &obj)
        }
        Command::Verify { pair, x, y, lotto } => {
            let (v, swapped) = valuations(&pair, err)?;
            let (mut dx, mut dy) = (read_dist(&x)?, read_dist(&y)?);
            if swapped {
                std::mem::swap(&mut dx, &mut dy);
            }
            let cert = certify_allpay(&v, &dx, &dy)?;
            let mut ok = cert.is_equilibrium;
            let value = if lotto {
                let lc = certify_lotto(&dx, &dy);
                ok &= lc.is_equilibrium;
                json!({ "allpay": cert.to_json(), "lotto": lc.to_json() })
            } else {
                cert.to_json()
            };
            emit(out, &value)?;
            if ok {
                Ok(())
            } else {
                Err(Failure::NotEquilibrium)
            }
        }
        Command::Sweep { v1, v2_min, v2_max, step, decimal } => {
            let rows = statics::sweep(
                &parse_rat("--v1", &v1)?,
                &parse_rat("--v2-min", &v2_min)?,
                &parse_rat("--v2-max", &v2_max)?,
                &parse_rat("--step", &step)?,
            )?;
            write!(out, "{}", statics::to_csv(&rows, decimal)).map_err(|e| Failure::Usage(e.to_string()))
        }
        Command::Dist { builder, args } => {
            let arity = |n: usize| -> Result<(), Failure> {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(Failure::Usage(format!("{builder} takes {n} integer argument(s), got {}", args.len())))
                }
            };
            let d = match builder.as_str() {
                "dirac" => {
                    arity(1)?;
                    let k = u64::try_from(args[0])
                        .map_err(|_| Failure::Usage(format!("dirac needs a nonnegative bid, got {}", args[0])))?;
                    dist::dirac(k)
                }
                "uniform-odd" => {
                    arity(1)?;
                    dist::uniform_odd(args[0])?
                }
                "uniform-even" => {
                    arity(1)?;
                    dist::uniform_even(args[0])?
                }
                "uniform-odd-shift" => {
                    arity(1)?;
                    dist::uniform_odd_shift(args[0])?
                }
                "w" => {
                    arity(2)?;
                    dist::w_dist(args[0], args[1])?
                }
                "v" => {
                    arity(2)?;
                    dist::v_dist(args[0], args[1])?
                }
                other => return Err(Failure::Usage(format!("unknown builder {other:?}"))),
            };
            emit(out, &d.to_json())
        }
        Command::H { x, y } => {
            let h = h_value(&read_dist(&x)?, &read_dist(&y)?);
            writeln!(out, "{}", rational::format(&h)).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}
