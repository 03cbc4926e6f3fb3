//! Command-line front end. Every command prints one JSON document.
//!
//! Exit codes: 0 on success, 1 on malformed input (bad flags, unreadable or
//! unparsable files), 2 on domain errors. Errors print `{"error": …}`.
//! `QTLINE_TOLERANCE` overrides both comparison tolerances.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::chern::{chern_numeric, chern_symbolic};
use crate::cocycle::{cocycle_identity_residuals, Cocycle};
use crate::error::{Error, Result};
use crate::heisenberg::{commutator_pairing_with, k_group, LambdaPoint};
use crate::numeric::{QuadReal, Tolerance};
use crate::picard::{ah_normal_form, triviality_test_with, DEFAULT_SEARCH_BOUND};
use crate::pseudolattice::{LatticeVector, Pseudolattice};
use crate::theta::{solve_theta_with, theta_residuals, ThetaCandidate};

/// Base point used by `chern` for the numeric cross-check.
const CHERN_CHECK_POINT: Complex64 = Complex64 { re: 0.3, im: 0.2 };

#[derive(Parser, Debug)]
#[command(name = "qtline", version, about = "Line bundles on quantum tori")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Continued fraction of θ = ω₂/ω₁ and the convergent bound.
    Cf {
        /// Pseudolattice JSON file; alternative to --omega1/--omega2/--d.
        #[arg(long, conflicts_with_all = ["omega1", "omega2", "d"])]
        lattice: Option<PathBuf>,
        /// ω₁ as an expression such as `1` or `1/2+1/2*sqrtD`.
        #[arg(long, requires_all = ["omega2", "d"])]
        omega1: Option<String>,
        #[arg(long)]
        omega2: Option<String>,
        /// Square-free D with ω₁, ω₂ ∈ ℚ(√D).
        #[arg(long)]
        d: Option<i64>,
        /// Number of convergents.
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Check the cocycle identity at seeded samples.
    Verify {
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include every per-sample residual.
        #[arg(long)]
        emit_samples: bool,
    },
    /// Chern class, exact and numeric.
    Chern {
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Appell-Humbert normal form (χ, E).
    NormalForm {
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Decide whether the class is trivial.
    Trivial {
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: u64,
    },
    /// Commutator pairing of two points of Λ, given as `α,β` over |s|.
    Pairing {
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x1: String,
        #[arg(long, allow_hyphen_values = true)]
        x2: String,
    },
    /// Structure of K(ℒ).
    KGroup {
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Solve θ(v+l) = A_l(v)θ(v), or certify that no solution exists.
    ThetaSolve {
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: u64,
    },
    /// Residual of a theta candidate against a cocycle.
    ThetaCheck {
        #[arg(long)]
        cocycle: PathBuf,
        /// Candidate JSON, or the output of theta-solve.
        #[arg(long)]
        theta: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        emit_samples: bool,
    },
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let raw = std::fs::read_to_string(path).map_err(|e| Error::parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| Error::parse(format!("{}: {e}", path.display())))
}

fn parse_point(raw: &str, s: i64) -> Result<LambdaPoint> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(Error::parse(format!("point {raw:?} must look like `alpha,beta`")));
    };
    let int = |t: &str| t.parse::<i64>().map_err(|_| Error::parse(format!("{t:?} is not an integer")));
    LambdaPoint::new(int(a)?, int(b)?, s)
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn execute(cmd: Command, tol: Tolerance) -> Result<Value> {
    match cmd {
        Command::Cf { lattice, omega1, omega2, d, n } => {
            let lat = match (lattice, omega1, omega2, d) {
                (Some(path), ..) => read_json::<Pseudolattice>(&path)?,
                (None, Some(w1), Some(w2), Some(d)) => {
                    Pseudolattice::new(QuadReal::parse(&w1, d)?, QuadReal::parse(&w2, d)?)?
                }
                _ => return Err(Error::parse("cf needs --lattice or all of --omega1, --omega2, --d")),
            };
            let convergents = lat
                .convergents(n)?
                .into_iter()
                .map(|c| {
                    let l = c.small_vector();
                    json!({
                        "index": c.index,
                        "p": c.p,
                        "q": c.q,
                        "small_vector": l,
                        "length": lat.real_value_f64(l).abs(),
                        "bound_holds": lat.satisfies_convergent_bound(&c),
                    })
                })
                .collect::<Vec<_>>();
            Ok(json!({
                "lattice": lat,
                "theta": lat.theta().approx,
                "partial_quotients": lat.partial_quotients(n).iter().map(|&a| a as i64).collect::<Vec<_>>(),
                "convergents": convergents,
            }))
        }
        Command::Verify { cocycle, samples, seed, emit_samples } => {
            let a: Cocycle = read_json(&cocycle)?;
            let residuals = cocycle_identity_residuals(&a, samples, seed)?;
            let max = residuals.iter().copied().fold(0.0, f64::max);
            let mut out = json!({
                "samples": samples,
                "seed": seed,
                "max_residual": max,
                "tolerance": tol.abs_eps,
                "pass": max < tol.abs_eps,
            });
            if emit_samples {
                out["residuals"] = json!(residuals);
            }
            Ok(out)
        }
        Command::Chern { cocycle } => {
            let a: Cocycle = read_json(&cocycle)?;
            let s = chern_symbolic(&a).s();
            let numeric = chern_numeric(&a, LatticeVector::OMEGA1, LatticeVector::OMEGA2, CHERN_CHECK_POINT)?;
            Ok(json!({
                "s": s,
                "numeric_check": {
                    "v": complex(CHERN_CHECK_POINT),
                    "value": numeric,
                    "agree": numeric == s,
                },
            }))
        }
        Command::NormalForm { cocycle } => Ok(to_value(&ah_normal_form(&read_json(&cocycle)?))),
        Command::Trivial { cocycle, bound } => Ok(to_value(&triviality_test_with(&read_json(&cocycle)?, bound, tol)?)),
        Command::Pairing { cocycle, x1, x2 } => {
            let a: Cocycle = read_json(&cocycle)?;
            let s = a.s().abs().max(1);
            let report = commutator_pairing_with(&a, parse_point(&x1, s)?, parse_point(&x2, s)?, tol)?;
            Ok(to_value(&report))
        }
        Command::KGroup { cocycle } => {
            let k = k_group(&read_json(&cocycle)?);
            let mut out = to_value(&k);
            out["order"] = json!(k.order());
            Ok(out)
        }
        Command::ThetaSolve { cocycle, bound } => Ok(to_value(&solve_theta_with(&read_json(&cocycle)?, bound, tol)?)),
        Command::ThetaCheck { cocycle, theta, samples, seed, emit_samples } => {
            let a: Cocycle = read_json(&cocycle)?;
            let doc: Value = read_json(&theta)?;
            let doc = match doc.get("solution") {
                Some(inner) => inner.clone(),
                None if doc.get("certificate").is_some() || doc.get("inconclusive").is_some() => {
                    return Err(Error::domain("the theta document carries no solution"));
                }
                None => doc,
            };
            let t: ThetaCandidate = serde_json::from_value(doc).map_err(|e| Error::parse(format!("{}: {e}", theta.display())))?;
            let per_sample = theta_residuals(&a, &t, samples, seed)?;
            let max = per_sample.iter().map(|s| s.residual).fold(0.0, f64::max);
            let mut out = json!({
                "samples": samples,
                "seed": seed,
                "max_residual": max,
                "tolerance": tol.abs_eps,
                "pass": max < tol.abs_eps,
            });
            if emit_samples {
                out["residuals"] = to_value(&per_sample);
            }
            Ok(out)
        }
    }
}

fn error_document(e: &Error) -> String {
    let kind = match e {
        Error::Domain(_) => "domain",
        Error::Precondition(_) => "precondition",
        Error::Range { .. } => "range",
        Error::Consistency(_) => "consistency",
        Error::Parse(_) => "parse",
    };
    json!({"error": e.to_string(), "kind": kind}).to_string()
}

/// Runs the command line `args` (program name first); returns the exit code
/// and what to print on stdout.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    (0, e.to_string())
                }
                _ => (1, json!({"error": e.to_string(), "kind": "usage"}).to_string()),
            };
        }
    };
    let result = Tolerance::from_env().and_then(|tol| execute(cli.command, tol));
    match result {
        Ok(v) => (0, serde_json::to_string_pretty(&v).expect("serializable")),
        Err(e) if e.is_malformed_input() => (1, error_document(&e)),
        Err(e) => (2, error_document(&e)),
    }
}
