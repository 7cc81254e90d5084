//! Command-line front end: order checks, suprema, spectral-measure
//! evaluation and deterministic test-operator generation over a small JSON
//! operator file format.
//!
//! Exit codes are a stable contract: 0 = affirmative, 1 = negative with a
//! certificate (order does not hold / supremum does not exist), 2 = input
//! error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use qlo::{
    logic_leq, sup_exists, supremum, verify_supremum, BorelSet, FiniteSpectralMeasure,
    HermitianOperator, OperatorFile, Tolerances,
};

#[derive(Parser)]
#[command(name = "qlo", about = "Logic order on Hermitian matrices: order checks, suprema, spectral measures", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TolFlags {
    /// Eigenvalue clustering tolerance (scaled by the operator norm).
    #[arg(long, default_value_t = Tolerances::default().cluster)]
    tol_cluster: f64,
    /// Threshold below which eigenvalues count as 0 (scaled by the norm).
    #[arg(long, default_value_t = Tolerances::default().zero)]
    tol_zero: f64,
    /// Orthogonality / subspace-containment tolerance.
    #[arg(long, default_value_t = Tolerances::default().orth)]
    tol_orth: f64,
    /// Operator equality tolerance.
    #[arg(long, default_value_t = Tolerances::default().eq)]
    tol_eq: f64,
}

impl TolFlags {
    fn to_tolerances(&self) -> Tolerances {
        Tolerances {
            cluster: self.tol_cluster,
            zero: self.tol_zero,
            orth: self.tol_orth,
            eq: self.tol_eq,
            ..Tolerances::default()
        }
    }

    fn echo(&self) -> String {
        format!(
            "tolerances: cluster={:e} zero={:e} orth={:e} eq={:e}",
            self.tol_cluster, self.tol_zero, self.tol_orth, self.tol_eq
        )
    }

    fn json(&self) -> serde_json::Value {
        json!({
            "cluster": self.tol_cluster,
            "zero": self.tol_zero,
            "orth": self.tol_orth,
            "eq": self.tol_eq,
        })
    }
}

#[derive(clap::ValueEnum, Clone, Copy, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether A precedes B in the logic order.
    CheckOrder {
        path_a: PathBuf,
        path_b: PathBuf,
        #[command(flatten)]
        tol: TolFlags,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute the supremum of A and B, or report the witness if none exists.
    Sup {
        path_a: PathBuf,
        path_b: PathBuf,
        /// Where to write the supremum operator file.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        tol: TolFlags,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate the spectral measure of A on a Borel set.
    Eval {
        path_a: PathBuf,
        /// Borel set, e.g. "(0.5,1.5]", "{0}", "[-1,1] \ {0}", "R", unions with U.
        set: String,
        #[command(flatten)]
        tol: TolFlags,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Generate a random Hermitian operator with a prescribed spectrum.
    Gen {
        /// Matrix dimension.
        #[arg(long)]
        dim: usize,
        /// Spectrum as "value:multiplicity,..." e.g. "0:1,1:2".
        #[arg(long)]
        spectrum: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the generated operator file.
        #[arg(long)]
        out: PathBuf,
        /// Optional label stored in the file.
        #[arg(long)]
        label: Option<String>,
    },
}

fn load(path: &Path, tol: &Tolerances) -> Result<HermitianOperator, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let file = OperatorFile::from_json(&text)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    file.to_operator(tol)
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn save(path: &Path, op: &HermitianOperator, label: Option<String>) -> Result<(), String> {
    let file = OperatorFile::from_operator(op, label);
    std::fs::write(path, file.to_json()).map_err(|e| format!("{}: {e}", path.display()))
}

fn fmt_matrix(op: &HermitianOperator) -> String {
    let m = op.matrix();
    let mut out = String::new();
    for i in 0..m.nrows() {
        out.push_str("  [");
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("{:+.6}{:+.6}i", z.re, z.im));
        }
        out.push_str("]\n");
    }
    out
}

fn cmd_check_order(
    path_a: &Path,
    path_b: &Path,
    tol: &TolFlags,
    format: Format,
) -> Result<ExitCode, String> {
    let t = tol.to_tolerances();
    let a = load(path_a, &t)?;
    let b = load(path_b, &t)?;
    let v = logic_leq(&a, &b, &t).map_err(|e| e.to_string())?;
    let residual_norm = v.residual.as_ref().map(|r| r.norm());
    if format == Format::Json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "holds": v.holds,
                "route_algebraic": v.route_algebraic,
                "route_spectral": v.route_spectral,
                "defect": v.defect,
                "residual_norm": residual_norm,
                "ambiguous": v.ambiguous,
                "tolerances": tol.json(),
            }))
            .unwrap()
        );
    } else {
        println!("A \u{227c} B: {}", if v.holds { "holds" } else { "does not hold" });
        println!("  algebraic route: {}", v.route_algebraic);
        println!("  spectral route:  {} (defect {:.3e})", v.route_spectral, v.defect);
        if let Some(n) = residual_norm {
            println!("  residual C = B - A: norm {n:.6e}");
        }
        if v.ambiguous {
            println!("  warning: defect sits near the decision threshold");
        }
        println!("{}", tol.echo());
    }
    Ok(if v.holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_sup(
    path_a: &Path,
    path_b: &Path,
    out: &Path,
    tol: &TolFlags,
    format: Format,
) -> Result<ExitCode, String> {
    let t = tol.to_tolerances();
    let a = load(path_a, &t)?;
    let b = load(path_b, &t)?;
    let r = sup_exists(&a, &b, &t).map_err(|e| e.to_string())?;
    if let Some(w) = &r.witness {
        let vec: Vec<[f64; 2]> = w.unit_vector.iter().map(|z| [z.re, z.im]).collect();
        if format == Format::Json {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "exists": false,
                    "witness": {
                        "lambda": w.lambda,
                        "mu": w.mu,
                        "overlap_norm": w.overlap_norm,
                        "unit_vector": vec,
                    },
                    "checked_pairs": r.checked_pairs,
                    "tolerances": tol.json(),
                }))
                .unwrap()
            );
        } else {
            println!("supremum does not exist");
            println!(
                "  witness: eigenvalues ({}, {}), overlap norm {:.6e}",
                w.lambda, w.mu, w.overlap_norm
            );
            println!("  witness vector: {vec:?}");
            println!("{}", tol.echo());
        }
        return Ok(ExitCode::from(1));
    }
    let s = supremum(&a, &b, &t).map_err(|e| e.to_string())?;
    let rep = verify_supremum(&a, &b, &s, &[], &t).map_err(|e| e.to_string())?;
    save(out, &s, Some("supremum".into()))?;
    if format == Format::Json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "exists": true,
                "out": out.display().to_string(),
                "leq_a": rep.leq_a.holds,
                "leq_b": rep.leq_b.holds,
                "certificate_deviation": rep.certificate_deviation,
                "tolerances": tol.json(),
            }))
            .unwrap()
        );
    } else {
        println!("supremum exists; written to {}", out.display());
        println!(
            "  certificate: A \u{227c} S {}, B \u{227c} S {}, spectral deviation {:.3e}",
            rep.leq_a.holds, rep.leq_b.holds, rep.certificate_deviation
        );
        println!("{}", tol.echo());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_eval(path_a: &Path, set: &str, tol: &TolFlags, format: Format) -> Result<ExitCode, String> {
    let t = tol.to_tolerances();
    let a = load(path_a, &t)?;
    let delta = BorelSet::parse(set).map_err(|e| e.to_string())?;
    let e = FiniteSpectralMeasure::of(&a, &t).map_err(|e| e.to_string())?;
    let p = e.evaluate(&delta);
    if format == Format::Json {
        let rows: Vec<Vec<[f64; 2]>> = (0..p.dim())
            .map(|i| (0..p.dim()).map(|j| {
                let z = p.matrix()[(i, j)];
                [z.re, z.im]
            }).collect())
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "set": delta.to_string(),
                "rank": p.rank(),
                "matrix": rows,
                "tolerances": tol.json(),
            }))
            .unwrap()
        );
    } else {
        let op = HermitianOperator::new(p.matrix().clone(), &t).map_err(|e| e.to_string())?;
        println!("P^A({delta}), rank {}:", p.rank());
        print!("{}", fmt_matrix(&op));
        println!("{}", tol.echo());
    }
    Ok(ExitCode::SUCCESS)
}

/// Parse "value:multiplicity,..." into a spectrum list.
fn parse_spectrum(spec: &str) -> Result<Vec<(f64, usize)>, String> {
    spec.split(',')
        .map(|part| {
            let (v, m) = part
                .split_once(':')
                .ok_or_else(|| format!("bad spectrum entry {part:?}, expected value:multiplicity"))?;
            let value: f64 = v.trim().parse().map_err(|e| format!("bad value {v:?}: {e}"))?;
            let mult: usize = m.trim().parse().map_err(|e| format!("bad multiplicity {m:?}: {e}"))?;
            Ok((value, mult))
        })
        .collect()
}

fn cmd_gen(
    dim: usize,
    spec: &str,
    seed: u64,
    out: &Path,
    label: Option<String>,
) -> Result<ExitCode, String> {
    let spectrum = parse_spectrum(spec)?;
    let a = qlo::testgen::gen_random_hermitian(dim, &spectrum, seed).map_err(|e| e.to_string())?;
    save(out, &a, label)?;
    println!("wrote {} ({dim}x{dim}, seed {seed})", out.display());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::CheckOrder { path_a, path_b, tol, format } => {
            cmd_check_order(path_a, path_b, tol, *format)
        }
        Command::Sup { path_a, path_b, out, tol, format } => {
            cmd_sup(path_a, path_b, out, tol, *format)
        }
        Command::Eval { path_a, set, tol, format } => cmd_eval(path_a, set, tol, *format),
        Command::Gen { dim, spectrum, seed, out, label } => {
            cmd_gen(*dim, spectrum, *seed, out, label.clone())
        }
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
