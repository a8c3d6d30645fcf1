//! Identities for Rodrigue polynomials whose parameters contain `-1`.

use num_traits::Zero;

use crate::bases::rodrigue_poly;
use crate::eigenspaces::face_space;
use crate::exact::{format_rational, int, Rational};
use crate::linalg::poly_in_span;
use crate::poly::{MultiIndex, Polynomial};
use crate::report::{Check, Verdict};
use crate::weighted::ParamVector;

use super::{fmt_tail, guard, Config};

fn params(parts: &[&[Rational]]) -> crate::Result<ParamVector> {
    ParamVector::new(parts.concat())
}

fn ones(k: usize, v: i64) -> Vec<Rational> {
    vec![int(v); k]
}

/// `x_{d+2-k} ⋯ x_d` (empty product for `k = 1`).
fn x_block(d: usize, k: usize) -> Polynomial {
    let mut p = Polynomial::one(d);
    for i in d + 1 - k..d {
        p = &p * &Polynomial::var(d, i);
    }
    p
}

/// `ν - (0, 1_{k-1})`, or `None` if an entry would go negative.
fn drop_block(nu: &MultiIndex, k: usize) -> Option<MultiIndex> {
    let d = nu.len();
    let mut m = vec![0; d];
    for i in d + 1 - k..d {
        m[i] = 1;
    }
    nu.checked_sub(&MultiIndex(m))
}

/// Compare `lhs(ν)` with `rhs(ν)` over the given indices.
fn identity<F>(name: String, nus: Vec<MultiIndex>, f: F) -> Check
where
    F: Fn(&MultiIndex) -> crate::Result<(Polynomial, Polynomial)>,
{
    guard(&name.clone(), || {
        let mut witness = None;
        for nu in &nus {
            let (l, r) = f(nu)?;
            if l != r {
                witness = Some(l);
                break;
            }
        }
        Ok(Check::new(name, witness.is_none())
            .with_detail(format!("{} indices", nus.len()))
            .witness(witness))
    })
}

fn indices(d: usize, n_max: u32, keep: impl Fn(&MultiIndex) -> bool) -> Vec<MultiIndex> {
    (1..=n_max)
        .flat_map(|n| MultiIndex::all_of_degree(d, n))
        .filter(|nu| keep(nu))
        .collect()
}

/// Reduction identities at parameters `-1`, the span inclusion for
/// `X_k P_ν^{(γ,1_k)}` and the homogeneous face equation.
pub fn lemmas4(cfg: &Config) -> Verdict {
    let dims = cfg.dims_or(&[2, 3], |d| d >= 2);
    let mut root = Verdict::new(format!("lemmas4 n<={}", cfg.n_max));
    for &d in &dims {
        let mut vd = Verdict::new(format!("d={d}"));
        vd.child(last_parameter(cfg, d));
        vd.child(inner_parameter(cfg, d));
        vd.child(block_reduction(cfg, d));
        vd.child(block_expansion(cfg, d));
        vd.child(span_inclusion(cfg, d));
        vd.child(homogeneous_face(cfg, d));
        root.child(vd);
    }
    root
}

/// `P_ν^{(γ,-1)} = (1-|x|) Σ_i n_i(γ_i+n_i)/|ν| P_{ν-e_i}^{(γ,1)}`.
fn last_parameter(cfg: &Config, d: usize) -> Verdict {
    let mut v = Verdict::new("last parameter -1");
    for g in cfg.tail_samples(d) {
        let lo = params(&[&g, &ones(1, -1)]);
        let hi = params(&[&g, &ones(1, 1)]);
        v.check(identity(format!("γ={}", fmt_tail(&g)), indices(d, cfg.n_max, |_| true), |nu| {
            let (lo, hi) = (lo.clone()?, hi.clone()?);
            let n = int(nu.degree() as i64);
            let mut sum = Polynomial::zero(d);
            for i in 0..d {
                if let Some(m) = nu.checked_sub(&MultiIndex::unit(d, i)) {
                    let c = int(nu.0[i] as i64) * (&g[i] + int(nu.0[i] as i64)) / &n;
                    sum = &sum + &rodrigue_poly(&hi, &m)?.scale(&c);
                }
            }
            Ok((rodrigue_poly(&lo, nu)?, &Polynomial::one_minus_sum(d) * &sum))
        }));
    }
    v
}

/// `P_ν^γ = -(|ν|+γ_{d+1}) x_i P_{ν-e_i}^{γ+2e_i}` when `γ_i = -1`, `n_i >= 1`.
fn inner_parameter(cfg: &Config, d: usize) -> Verdict {
    let mut v = Verdict::new("inner parameter -1");
    for g in cfg.tail_samples(d + 1) {
        for i in 0..d {
            let mut gv = g.clone();
            gv[i] = -int(1);
            let name = format!("γ={} i={}", fmt_tail(&gv), i + 1);
            v.check(identity(name, indices(d, cfg.n_max, |nu| nu.0[i] >= 1), |nu| {
                let gp = ParamVector::new(gv.clone())?;
                let m = nu.checked_sub(&MultiIndex::unit(d, i)).expect("n_i >= 1");
                let c = -(int(nu.degree() as i64) + gp.last());
                let rhs = (&Polynomial::var(d, i) * &rodrigue_poly(&gp.shifted(i + 1, &int(2)), &m)?).scale(&c);
                Ok((rodrigue_poly(&gp, nu)?, rhs))
            }));
        }
    }
    v
}

/// `P_ν^{(γ,-1_{k-1},γ_{d+1})} = (-1)^{k-1} x_{d+2-k}⋯x_d Π_j(|ν|+γ_{d+1}-j+1)
/// P_{ν-(0,1_{k-1})}^{(γ,1_{k-1},γ_{d+1})}`.
fn block_reduction(cfg: &Config, d: usize) -> Verdict {
    let mut v = Verdict::new("block of -1 before the last parameter");
    for k in 2..=d {
        for g in cfg.tail_samples(d + 2 - k) {
            let (tail, last) = g.split_at(d + 1 - k);
            let name = format!("k={k} γ={} γ_(d+1)={}", fmt_tail(tail), format_rational(&last[0]));
            v.check(identity(name, indices(d, cfg.n_max, |nu| drop_block(nu, k).is_some()), |nu| {
                let lo = params(&[tail, &ones(k - 1, -1), last])?;
                let hi = params(&[tail, &ones(k - 1, 1), last])?;
                let n = int(nu.degree() as i64);
                let mut c = if k % 2 == 0 { -int(1) } else { int(1) };
                for j in 1..k {
                    c *= &n + &last[0] - int(j as i64) + int(1);
                }
                let rhs = (&x_block(d, k) * &rodrigue_poly(&hi, &drop_block(nu, k).unwrap())?).scale(&c);
                Ok((rodrigue_poly(&lo, nu)?, rhs))
            }));
        }
    }
    v
}

/// `P_ν^{(γ,-1_k)} = x_{d+2-k}⋯x_d (1-|x|) Σ_i λ_i P_{ν-e_i-(0,1_{k-1})}^{(γ,1_k)}`,
/// `λ_i = (-1)^{k-1} n_i(n_i+γ_i)/|ν| Π_{j<k-1}(|ν|-j)`.
fn block_expansion(cfg: &Config, d: usize) -> Verdict {
    let mut v = Verdict::new("trailing block of -1");
    for k in 1..=d {
        for tail in cfg.tail_samples(d + 1 - k) {
            let name = format!("k={k} γ={}", fmt_tail(&tail));
            v.check(identity(name, indices(d, cfg.n_max, |nu| drop_block(nu, k).is_some()), |nu| {
                let lo = params(&[&tail, &ones(k, -1)])?;
                let hi = params(&[&tail, &ones(k, 1)])?;
                let n = int(nu.degree() as i64);
                let mut base = if k % 2 == 0 { -int(1) } else { int(1) };
                for j in 0..k.saturating_sub(1) {
                    base *= &n - int(j as i64);
                }
                base /= &n;
                let mut sum = Polynomial::zero(d);
                for i in 0..d {
                    let ni = int(nu.0[i] as i64);
                    let lam = &base * &ni * (&ni + lo.at(i + 1));
                    if lam.is_zero() {
                        continue;
                    }
                    let Some(m) = nu.checked_sub(&MultiIndex::unit(d, i)).and_then(|m| drop_block(&m, k)) else {
                        continue;
                    };
                    sum = &sum + &rodrigue_poly(&hi, &m)?.scale(&lam);
                }
                let rhs = &(&x_block(d, k) * &Polynomial::one_minus_sum(d)) * &sum;
                Ok((rodrigue_poly(&lo, nu)?, rhs))
            }));
        }
    }
    v
}

/// `X_k P_ν^{(γ,1_k)}` lies in the span of `P^{(γ,-1_k)}` with indices
/// `(|ν|-|j|+1, j_2, …, j_d) + (0, 1_{k-1})`, `j_i <= n_i`; the solved
/// coefficients are recorded.
fn span_inclusion(cfg: &Config, d: usize) -> Verdict {
    let mut v = Verdict::new("X_k P^(γ,1_k) span inclusion");
    let x_k = |k: usize| &x_block(d, k) * &Polynomial::one_minus_sum(d);
    for k in 1..=d {
        for tail in cfg.tail_samples(d + 1 - k) {
            let name = format!("k={k} γ={}", fmt_tail(&tail));
            v.check(guard(&name, || {
                let lo = params(&[&tail, &ones(k, -1)])?;
                let hi = params(&[&tail, &ones(k, 1)])?;
                let mut witness = None;
                let mut solved = Vec::new();
                let mut count = 0;
                for n in 0..cfg.n_max.saturating_sub(k as u32 - 1) {
                    for nu in MultiIndex::all_of_degree(d, n) {
                        count += 1;
                        let target = &x_k(k) * &rodrigue_poly(&hi, &nu)?;
                        let mut span = Vec::new();
                        for j in MultiIndex(nu.0[1..].to_vec()).dominated() {
                            let mut idx = vec![n - j.degree() + 1];
                            idx.extend(j.0.iter().copied());
                            for i in d + 1 - k..d {
                                idx[i] += 1;
                            }
                            span.push(rodrigue_poly(&lo, &MultiIndex(idx))?);
                        }
                        match poly_in_span(&span, &target) {
                            Some(mu) => {
                                let s: Vec<String> = mu.iter().map(format_rational).collect();
                                solved.push(format!("ν={:?}: [{}]", nu.0, s.join(",")));
                            }
                            None if witness.is_none() => witness = Some(target),
                            None => {}
                        }
                    }
                }
                Ok(Check::new(name.clone(), witness.is_none())
                    .with_detail(format!("{count} indices; μ {}", solved.join("; ")))
                    .witness(witness))
            }));
        }
    }
    v
}

/// Elements of `H_n(W_{γ,0})` on the face `x_{d+1} = 0` are homogeneous of
/// degree `n` and solve `Σ x_i ∂_i² g + Σ (γ_i+1) ∂_i g = 0`.
fn homogeneous_face(cfg: &Config, d: usize) -> Verdict {
    let mut v = Verdict::new("homogeneous face space");
    for tail in cfg.tail_samples(d) {
        let name = format!("γ={}", fmt_tail(&tail));
        v.check(guard(&name, || {
            let g = params(&[&tail, &ones(1, 0)])?;
            let mut witness = None;
            let mut count = 0;
            for n in 0..=cfg.n_max {
                for p in face_space(&g, &[d + 1], n)?.polys() {
                    count += 1;
                    let mut euler = Polynomial::zero(d);
                    let mut eq = Polynomial::zero(d);
                    for i in 0..d {
                        let xi = Polynomial::var(d, i);
                        let di = p.partial(i)?;
                        euler = &euler + &(&xi * &di);
                        eq = &eq + &(&(&xi * &di.partial(i)?) + &di.scale(&(&tail[i] + int(1))));
                    }
                    let ok = p.is_homogeneous(n) && euler == p.scale(&int(n as i64)) && eq.is_zero();
                    if !ok && witness.is_none() {
                        witness = Some(p);
                    }
                }
            }
            Ok(Check::new(name.clone(), witness.is_none())
                .with_detail(format!("{count} polynomials"))
                .witness(witness))
        }));
    }
    v
}
