//! Browser bindings for three interactive views: the colored solution for a
//! chosen `α`, the partial-sum bound curve, and small set-theoretic maps.
//!
//! Every binding returns a JSON string; the plain `*_report` functions hold
//! the logic so it can be tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use ybx_core::colored::{build_j, colored_residual, euler_check, ode_residual, JSpec};
use ybx_core::scalar::rational_to_f64;
use ybx_core::set::{enumerate_solutions, set_yb_check, FiniteMap};
use ybx_core::transc::thm41_check;
use ybx_core::{Form, Matrix, Norm, Result, ScalarKind};

/// Largest grid the page may request for the colored residual heat map.
pub const MAX_GRID: usize = 41;
/// Largest `n` for the bound curve; rows are all returned to the page.
pub const MAX_CURVE_N: u64 = 2000;

pub fn colored_report(alpha: f64, grid: usize) -> Result<Value> {
    let spec = JSpec::new(alpha)?;
    let grid = grid.clamp(2, MAX_GRID);
    let j = build_j(&spec);
    let j2 = Norm::of(&j.mul(&j)?.add(&Matrix::identity(4, ScalarKind::CFloat))?).value();
    let pi = std::f64::consts::PI;
    let step = 2.0 * pi / (grid - 1) as f64;
    let mut cells = Vec::with_capacity(grid * grid);
    for a in 0..grid {
        for b in 0..grid {
            let (x, y) = (-pi + a as f64 * step, -pi + b as f64 * step);
            cells.push(colored_residual(&spec, x, y)?.value());
        }
    }
    let ode: Vec<Value> = [0.1, 0.05, 0.025, 0.0125]
        .iter()
        .map(|&h| ode_residual(&spec, 0.7, h).map(|n| json!([h, n.value()])))
        .collect::<Result<_>>()?;
    Ok(json!({
        "alpha": alpha,
        "euler": euler_check(&spec)?.value(),
        "j_squared_plus_identity": j2,
        "grid": grid,
        "residuals": cells,
        "max_residual": cells.iter().copied().fold(0.0, f64::max),
        "ode": ode,
    }))
}

pub fn basel_report(n_max: u64) -> Result<Value> {
    let n_max = n_max.clamp(1, MAX_CURVE_N);
    let report = thm41_check(n_max, n_max as usize)?;
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| json!([r.n, rational_to_f64(&r.lhs), rational_to_f64(&r.rhs), r.verdict]))
        .collect();
    Ok(json!({"n_max": n_max, "holds": report.holds(), "rows": rows}))
}

fn parse_form(form: &str) -> Result<Form> {
    form.parse()
}

/// `table` lists the images of `(0,0), (0,1), …` as a flat `a0 b0 a1 b1 …` sequence.
pub fn map_report(n: usize, table: &[u32], form: &str) -> Result<Value> {
    let form = parse_form(form)?;
    if table.len() != 2 * n * n {
        return Err(ybx_core::Error::parse(
            "table",
            format!("expected {} entries for n = {n}, got {}", 2 * n * n, table.len()),
        ));
    }
    let pairs = table.chunks(2).map(|p| (p[0] as usize, p[1] as usize)).collect();
    let map = FiniteMap::new(n, pairs)?;
    let report = set_yb_check(&map, form);
    Ok(json!({"passed": report.passed(), "report": report.to_json()}))
}

pub fn enumerate_report(n: usize, form: &str, up_to_iso: bool) -> Result<Value> {
    let form = parse_form(form)?;
    let e = enumerate_solutions(n, form, up_to_iso)?;
    Ok(json!({
        "count": e.maps.len(),
        "count_all": e.summary.count,
        "count_up_to_iso": e.summary.count_up_to_iso,
        "maps": e.maps.iter().map(FiniteMap::to_json).collect::<Vec<_>>(),
    }))
}

fn to_js(r: Result<Value>) -> std::result::Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn colored(alpha: f64, grid: usize) -> std::result::Result<String, JsError> {
    to_js(colored_report(alpha, grid))
}

#[wasm_bindgen]
pub fn basel_curve(n_max: u32) -> std::result::Result<String, JsError> {
    to_js(basel_report(n_max as u64))
}

#[wasm_bindgen]
pub fn check_map(n: usize, table: &[u32], form: &str) -> std::result::Result<String, JsError> {
    to_js(map_report(n, table, form))
}

#[wasm_bindgen]
pub fn enumerate(n: usize, form: &str, up_to_iso: bool) -> std::result::Result<String, JsError> {
    to_js(enumerate_report(n, form, up_to_iso))
}
