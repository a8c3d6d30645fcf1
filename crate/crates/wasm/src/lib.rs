//! Browser bindings: triangle bases, heat-map sampling and Gram matrices.
//!
//! Each export has a plain Rust counterpart so the logic is testable natively.

use num_traits::ToPrimitive;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use sobolex::bases::{monomial_basis, monomials_up_to, rodrigue_basis, Basis, Family};
use sobolex::eigenspaces::{split_singular, u_space};
use sobolex::sobolev::{gram, GramReport, InnerProductSpec, Lambdas};
use sobolex::{Error, ParamVector, Polynomial, Result};

/// Parse `"a,b,c"` as the three triangle parameters.
fn parse_gamma(text: &str) -> Result<ParamVector> {
    let g = ParamVector::parse(text)?;
    if g.dim() != 2 {
        return Err(Error::InvalidArgument(format!("expected 3 parameters, got {}", g.dim() + 1)));
    }
    Ok(g)
}

/// Empty text means all λ equal to one.
fn parse_lambdas(text: &str) -> Result<Lambdas> {
    if text.trim().is_empty() {
        return Ok(Lambdas::ones());
    }
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("lambdas: {e}")))
}

/// `family` is `auto`, `rodrigue`, `monomial` or `u`; `auto` picks `u` when
/// the last parameter is `-1`.
pub fn triangle_basis(n: u32, gamma: &str, family: &str, lambdas: &str) -> Result<Basis> {
    let g = parse_gamma(gamma)?;
    let singular = g.last() == &-sobolex::int(1);
    let family = match family {
        "auto" if singular => "u",
        "auto" => "rodrigue",
        f => f,
    };
    match family {
        "rodrigue" => rodrigue_basis(&g, n),
        "monomial" => monomial_basis(&g, n),
        "u" => {
            let (tail, k) = split_singular(&g)?;
            if k == 0 {
                return Err(Error::InvalidArgument("family u needs a last parameter of -1".into()));
            }
            u_space(&tail, 2, k, n, &parse_lambdas(lambdas)?)
        }
        other => Err(Error::InvalidArgument(format!("unknown family '{other}'"))),
    }
}

/// The inner product matching `gamma`: Sobolev for trailing `-1` entries,
/// the classical weighted form otherwise.
pub fn triangle_form(gamma: &str, lambdas: &str) -> Result<InnerProductSpec> {
    let g = parse_gamma(gamma)?;
    let (tail, k) = split_singular(&g)?;
    if k > 0 {
        return InnerProductSpec::sobolev(2, tail, k, parse_lambdas(lambdas)?);
    }
    g.check_integrable()?;
    Ok(InnerProductSpec::classical(g))
}

#[derive(Serialize)]
struct Element {
    label: String,
    display: String,
}

#[derive(Serialize)]
struct BasisView {
    n: u32,
    gamma: String,
    family: Family,
    elements: Vec<Element>,
}

pub fn basis_view(n: u32, gamma: &str, family: &str, lambdas: &str) -> Result<String> {
    let b = triangle_basis(n, gamma, family, lambdas)?;
    let view = BasisView {
        n,
        gamma: b.params.to_string(),
        family: b.family.clone(),
        elements: b
            .elements
            .iter()
            .map(|e| Element {
                label: e.label.clone(),
                display: e.poly.to_string(),
            })
            .collect(),
    };
    serde_json::to_string(&view).map_err(|e| Error::Parse(e.to_string()))
}

/// Floating-point evaluation for plotting only.
fn eval_f64(p: &Polynomial, x: f64, y: f64) -> f64 {
    p.terms()
        .iter()
        .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * x.powi(e.0[0] as i32) * y.powi(e.0[1] as i32))
        .sum()
}

/// Values of element `index` at the cell centres of a `res × res` grid over
/// the unit square, row-major with `y` decreasing; `NaN` outside the triangle.
pub fn sample_grid(n: u32, gamma: &str, family: &str, lambdas: &str, index: usize, res: usize) -> Result<Vec<f64>> {
    let b = triangle_basis(n, gamma, family, lambdas)?;
    let p = &b
        .elements
        .get(index)
        .ok_or_else(|| Error::InvalidArgument(format!("index {index} out of range 0..{}", b.len())))?
        .poly;
    let step = 1.0 / res as f64;
    let mut out = Vec::with_capacity(res * res);
    for row in 0..res {
        let y = 1.0 - (row as f64 + 0.5) * step;
        for col in 0..res {
            let x = (col as f64 + 0.5) * step;
            out.push(if x + y <= 1.0 { eval_f64(p, x, y) } else { f64::NAN });
        }
    }
    Ok(out)
}

/// Gram matrix of the basis against itself (`same`) or against the
/// monomials of lower degree (`lower`).
pub fn gram_report(n: u32, gamma: &str, family: &str, lambdas: &str, against: &str) -> Result<GramReport> {
    let spec = triangle_form(gamma, lambdas)?;
    let rows = triangle_basis(n, gamma, family, lambdas)?;
    let cols = match against {
        "same" => rows.clone(),
        "lower" if n == 0 => return Err(Error::InvalidArgument("no lower degree for n = 0".into())),
        "lower" => monomials_up_to(2, n - 1),
        other => return Err(Error::InvalidArgument(format!("unknown comparison '{other}'"))),
    };
    gram(&spec, &rows, &cols)
}

fn js(e: Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// JSON listing of a triangle basis of degree `n`.
#[wasm_bindgen(js_name = basisJson)]
pub fn basis_json(n: u32, gamma: &str, family: &str, lambdas: &str) -> std::result::Result<String, JsValue> {
    basis_view(n, gamma, family, lambdas).map_err(js)
}

/// Heat-map samples of one basis element.
#[wasm_bindgen(js_name = sampleGrid)]
pub fn sample_grid_js(
    n: u32,
    gamma: &str,
    family: &str,
    lambdas: &str,
    index: usize,
    res: usize,
) -> std::result::Result<Vec<f64>, JsValue> {
    sample_grid(n, gamma, family, lambdas, index, res).map_err(js)
}

/// JSON Gram report with exact entries.
#[wasm_bindgen(js_name = gramJson)]
pub fn gram_json(n: u32, gamma: &str, family: &str, lambdas: &str, against: &str) -> std::result::Result<String, JsValue> {
    let report = gram_report(n, gamma, family, lambdas, against).map_err(js)?;
    serde_json::to_string(&report).map_err(|e| JsValue::from_str(&e.to_string()))
}
