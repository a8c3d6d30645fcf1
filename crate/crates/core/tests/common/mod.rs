//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};
use sobolex::{MultiIndex, ParamVector, Polynomial, Rational};

pub fn r(p: i64, q: i64) -> Rational {
    BigRational::new(p.into(), q.into())
}

pub fn ri(p: i64) -> Rational {
    r(p, 1)
}

/// `B(p+a, q+b) / B(p, q)` by stepping `B(p+1,q) = B(p,q)·p/(p+q)` and
/// `B(p,q+1) = B(p,q)·q/(p+q)`.
pub fn beta_ratio(p: &Rational, q: &Rational, a: u32, b: u32) -> Rational {
    let mut ratio = Rational::one();
    let (mut p, mut q) = (p.clone(), q.clone());
    for _ in 0..a {
        ratio = ratio * &p / (&p + &q);
        p += Rational::one();
    }
    for _ in 0..b {
        ratio = ratio * &q / (&p + &q);
        q += Rational::one();
    }
    ratio
}

/// `∫ x^{γ+a} (1-|x|)^{γ_{d+1}+a_{d+1}} / ∫ x^γ (1-|x|)^{γ_{d+1}}` by
/// integrating out `x_d` first: the inner integral over `[0, 1-|x'|]` is a
/// Beta function times a power of `1-|x'|`, which joins the last factor.
pub fn oracle_moment(gamma: &[Rational], a: &[u32]) -> Rational {
    let d = gamma.len() - 1;
    let mut last_param = gamma[d].clone();
    let mut last_exp = a[d];
    let mut out = Rational::one();
    for i in (0..d).rev() {
        let p = &gamma[i] + Rational::one();
        let q = &last_param + Rational::one();
        out *= beta_ratio(&p, &q, a[i], last_exp);
        last_param = &gamma[i] + &last_param + Rational::one();
        last_exp += a[i];
    }
    out
}

/// Normalized `∫ h W_γ` from the oracle moments.
pub fn oracle_integral(h: &Polynomial, gamma: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (e, c) in h.terms() {
        let mut a = e.0.clone();
        a.push(0);
        acc += c * oracle_moment(gamma, &a);
    }
    acc
}

pub fn oracle_inner(f: &Polynomial, g: &Polynomial, gamma: &[Rational]) -> Rational {
    oracle_integral(&(f * g), gamma)
}

/// `Σ x_i ∂_ii f - Σ_{i,j} x_i x_j ∂_ij f + Σ (γ_i+1 - (|γ|+d+1) x_i) ∂_i f`.
pub fn oracle_operator(gamma: &[Rational], f: &Polynomial) -> Polynomial {
    let d = f.dim();
    let s: Rational = gamma.iter().cloned().sum::<Rational>() + ri(d as i64 + 1);
    let mut out = Polynomial::zero(d);
    for i in 0..d {
        let xi = Polynomial::var(d, i);
        let fi = f.partial(i).unwrap();
        out = &out + &(&xi * &fi.partial(i).unwrap());
        for j in 0..d {
            let xj = Polynomial::var(d, j);
            out = &out - &(&(&xi * &xj) * &fi.partial(j).unwrap());
        }
        let coef = &Polynomial::constant(d, &gamma[i] + Rational::one()) - &xi.scale(&s);
        out = &out + &(&coef * &fi);
    }
    out
}

/// `L_γ f = λ f` with the eigenvalue `-n(n+|γ|+d)`.
pub fn is_eigen(gamma: &[Rational], f: &Polynomial, n: u32) -> bool {
    let d = f.dim() as i64;
    let s: Rational = gamma.iter().cloned().sum();
    let n = ri(n as i64);
    let lambda = -(&n * (&n + s + ri(d)));
    oracle_operator(gamma, f) == f.scale(&lambda)
}

/// Exact rank by Gauss-Jordan elimination on coefficient rows.
pub fn oracle_rank(polys: &[Polynomial]) -> usize {
    let mut cols: Vec<MultiIndex> = Vec::new();
    for p in polys {
        for e in p.terms().keys() {
            if !cols.contains(e) {
                cols.push(e.clone());
            }
        }
    }
    let mut m: Vec<Vec<Rational>> = polys.iter().map(|p| cols.iter().map(|e| p.coeff(e)).collect()).collect();
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                for j in c..cols.len() {
                    let v = &m[rank][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Leading principal minors of a symmetric matrix are all positive.
pub fn oracle_positive_definite(m: &[Vec<Rational>]) -> bool {
    // The pivots of symmetric elimination are ratios of consecutive minors.
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    for k in 0..n {
        if a[k][k] <= Rational::zero() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &a[k][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    true
}

pub fn samples(d: usize) -> Vec<ParamVector> {
    let mut first = vec![ri(0); d + 1];
    first[0] = ri(1);
    vec![
        ParamVector::new(vec![ri(0); d + 1]).unwrap(),
        ParamVector::new(vec![r(1, 2); d + 1]).unwrap(),
        ParamVector::new(first).unwrap(),
    ]
}

pub fn tails(len: usize) -> Vec<Vec<Rational>> {
    if len == 0 {
        return vec![vec![]];
    }
    let cycle = [ri(1), r(1, 3), ri(2)];
    vec![
        vec![ri(0); len],
        vec![r(1, 2); len],
        (0..len).map(|i| cycle[i % 3].clone()).collect(),
    ]
}

/// Monomials `x^m` with `|m| <= n`.
pub fn monomials(d: usize, n: u32) -> Vec<Polynomial> {
    MultiIndex::all_up_to_degree(d, n)
        .into_iter()
        .map(|m| Polynomial::monomial(d, m, Rational::one()))
        .collect()
}

/// One line per criterion on the real stdout, visible without `--nocapture`.
pub fn report(n: u32, title: &str, pass: bool, detail: &str) {
    use std::io::Write;
    let line = format!(
        "criterion {n:>2} [{}] {title}{}\n",
        if pass { "pass" } else { "FAIL" },
        if detail.is_empty() { String::new() } else { format!(" — {detail}") }
    );
    let _ = std::io::stdout().write_all(line.as_bytes());
}
