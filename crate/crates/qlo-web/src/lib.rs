//! Browser bindings: thin JSON-in/JSON-out wrappers around the core crate
//! so a static page can check the logic order, compute suprema and evaluate
//! spectral measures without any server.
//!
//! Operators cross the boundary in the same JSON format the CLI uses:
//! `{"dim": n, "matrix": [[[re,im],...],...]}`.

use serde_json::json;
use wasm_bindgen::prelude::*;

use qlo::{
    logic_leq, sup_exists, supremum, verify_supremum, BorelSet, FiniteSpectralMeasure,
    HermitianOperator, OperatorFile, Tolerances,
};

fn parse_op(text: &str) -> Result<HermitianOperator, String> {
    OperatorFile::from_json(text)
        .and_then(|f| f.to_operator(&Tolerances::default()))
        .map_err(|e| e.to_string())
}

fn matrix_json(op: &HermitianOperator) -> serde_json::Value {
    let m = op.matrix();
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    json!(rows)
}

fn err_json(msg: String) -> String {
    json!({ "error": msg }).to_string()
}

/// Decide A ≼ B. Returns `{holds, route_algebraic, route_spectral, defect,
/// residual_norm}` or `{error}`.
#[wasm_bindgen]
pub fn check_order(a_json: &str, b_json: &str) -> String {
    let t = Tolerances::default();
    let inner = || -> Result<String, String> {
        let a = parse_op(a_json)?;
        let b = parse_op(b_json)?;
        let v = logic_leq(&a, &b, &t).map_err(|e| e.to_string())?;
        Ok(json!({
            "holds": v.holds,
            "route_algebraic": v.route_algebraic,
            "route_spectral": v.route_spectral,
            "defect": v.defect,
            "residual_norm": v.residual.as_ref().map(|r| r.norm()),
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}

/// Compute sup(A, B). Returns `{exists: true, matrix, certificate_deviation}`
/// or `{exists: false, witness: {lambda, mu, overlap_norm}}` or `{error}`.
#[wasm_bindgen]
pub fn compute_sup(a_json: &str, b_json: &str) -> String {
    let t = Tolerances::default();
    let inner = || -> Result<String, String> {
        let a = parse_op(a_json)?;
        let b = parse_op(b_json)?;
        let r = sup_exists(&a, &b, &t).map_err(|e| e.to_string())?;
        if let Some(w) = r.witness {
            return Ok(json!({
                "exists": false,
                "witness": {
                    "lambda": w.lambda,
                    "mu": w.mu,
                    "overlap_norm": w.overlap_norm,
                },
            })
            .to_string());
        }
        let s = supremum(&a, &b, &t).map_err(|e| e.to_string())?;
        let rep = verify_supremum(&a, &b, &s, &[], &t).map_err(|e| e.to_string())?;
        Ok(json!({
            "exists": true,
            "matrix": matrix_json(&s),
            "certificate_deviation": rep.certificate_deviation,
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}

/// Evaluate P^A(Δ) for a Borel set string. Returns `{rank, matrix, set}` or
/// `{error}`.
#[wasm_bindgen]
pub fn eval_measure(a_json: &str, set: &str) -> String {
    let t = Tolerances::default();
    let inner = || -> Result<String, String> {
        let a = parse_op(a_json)?;
        let delta = BorelSet::parse(set).map_err(|e| e.to_string())?;
        let e = FiniteSpectralMeasure::of(&a, &t).map_err(|e| e.to_string())?;
        let p = e.evaluate(&delta);
        let op = HermitianOperator::new(p.matrix().clone(), &t).map_err(|e| e.to_string())?;
        Ok(json!({
            "set": delta.to_string(),
            "rank": p.rank(),
            "matrix": matrix_json(&op),
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}
