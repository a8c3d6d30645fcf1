//! Named verification suites. Each suite returns a deterministic verdict
//! tree; every identity is checked exactly and failures carry a witness.

mod classical;
mod lemmas;
mod theorems;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};
use crate::linalg::Matrix;
use crate::par;
use crate::poly::Polynomial;
use crate::report::{Check, Verdict};
use crate::weighted::ParamVector;

pub use classical::{jacobi, monomial, rodrigue, triangle};
pub use lemmas::lemmas4;
pub use theorems::{thm31, thm34, thm36};

/// Suite names accepted by [`run`].
pub const SUITES: [&str; 9] = [
    "jacobi", "triangle", "rodrigue", "monomial", "lemmas4", "thm31", "thm34", "thm36", "all",
];

/// Ranges for a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Dimensions to test; empty means the suite's default.
    pub dims: Vec<usize>,
    pub n_max: u32,
    /// Parameter samples supplied by the caller; empty means the defaults.
    pub gammas: Vec<ParamVector>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            dims: Vec::new(),
            n_max: 3,
            gammas: Vec::new(),
        }
    }
}

impl Config {
    pub fn new(dims: Vec<usize>, n_max: u32) -> Self {
        Config {
            dims,
            n_max,
            gammas: Vec::new(),
        }
    }

    fn dims_or(&self, default: &[usize], allowed: impl Fn(usize) -> bool) -> Vec<usize> {
        let ds = if self.dims.is_empty() { default.to_vec() } else { self.dims.clone() };
        ds.into_iter().filter(|&d| allowed(d)).collect()
    }

    /// Full parameter vectors for dimension `d`: the caller's samples of
    /// that length, or `0`, `1/2` and `(1,0,…,0)`.
    fn full_samples(&self, d: usize) -> Vec<ParamVector> {
        let given: Vec<ParamVector> = self.gammas.iter().filter(|g| g.dim() == d).cloned().collect();
        if !given.is_empty() {
            return given;
        }
        let mut first = vec![int(0); d + 1];
        first[0] = int(1);
        vec![
            ParamVector::zeros(d),
            ParamVector::new(vec![rat(1, 2); d + 1]).expect("nonempty"),
            ParamVector::new(first).expect("nonempty"),
        ]
    }

    /// Parameter tails of length `len` with entries `> -1`: prefixes of the
    /// caller's samples, or `0`, `1/2` and `(1, 1/3, 2, …)`.
    fn tail_samples(&self, len: usize) -> Vec<Vec<Rational>> {
        if len == 0 {
            return vec![vec![]];
        }
        let m1 = -int(1);
        let mut out: Vec<Vec<Rational>> = Vec::new();
        for g in &self.gammas {
            if g.gamma().len() >= len {
                let t = g.gamma()[..len].to_vec();
                if t.iter().all(|x| x > &m1) && !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let cycle = [int(1), rat(1, 3), int(2)];
        vec![
            vec![int(0); len],
            vec![rat(1, 2); len],
            (0..len).map(|i| cycle[i % 3].clone()).collect(),
        ]
    }
}

/// Output of a suite run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub dims: Vec<usize>,
    pub n_max: u32,
    pub pass: bool,
    pub checks: usize,
    pub failed: usize,
    pub tree: Verdict,
}

/// Run a named suite.
pub fn run(suite: &str, cfg: &Config) -> Result<VerifyReport> {
    let tree = match suite {
        "jacobi" => jacobi(cfg),
        "triangle" => triangle(cfg),
        "rodrigue" => rodrigue(cfg),
        "monomial" => monomial(cfg),
        "lemmas4" => lemmas4(cfg),
        "thm31" => thm31(cfg),
        "thm34" => thm34(cfg),
        "thm36" => thm36(cfg),
        "all" => {
            let mut v = Verdict::new("all");
            for s in &SUITES[..SUITES.len() - 1] {
                v.child(run(s, cfg)?.tree);
            }
            v
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    let (checks, failed) = tree.counts();
    Ok(VerifyReport {
        suite: suite.to_string(),
        dims: cfg.dims.clone(),
        n_max: cfg.n_max,
        pass: tree.pass,
        checks,
        failed,
        tree,
    })
}

/// Turn an error inside a check into a failed check.
pub(crate) fn guard(name: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::error(name, &e))
}

/// Pass iff `pred` holds for every polynomial; the first failure is the
/// witness.
pub(crate) fn each<F>(name: &str, polys: &[Polynomial], pred: F) -> Result<Check>
where
    F: Fn(&Polynomial) -> Result<bool> + Sync + Send,
{
    let ok = par::try_map(polys, |p| pred(p))?;
    let witness = ok.iter().position(|b| !b).map(|i| polys[i].clone());
    Ok(Check::new(name, witness.is_none())
        .with_detail(format!("{} polynomials", polys.len()))
        .witness(witness))
}

/// First row of `m` with a nonzero entry, as a witness from `rows`.
pub(crate) fn nonzero_row(m: &Matrix, rows: &[Polynomial]) -> Option<Polynomial> {
    m.iter()
        .position(|r| r.iter().any(|x| !x.is_zero()))
        .map(|i| rows[i].clone())
}

pub(crate) fn fmt_tail(t: &[Rational]) -> String {
    let s: Vec<String> = t.iter().map(crate::exact::format_rational).collect();
    format!("({})", s.join(","))
}
