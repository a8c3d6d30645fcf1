//! Suites for the classical families: Jacobi polynomials, the triangle
//! bases, Rodrigue and permuted bases, and the monomial basis.

use num_traits::{One, Zero};

use crate::bases::{
    eigencheck, jacobi_degenerate, jacobi_norm, jacobi_p, jacobi_shifted, monomial_basis, monomial_poly,
    monomials_up_to, permuted_basis, rodrigue_basis, rodrigue_poly, Degenerate,
};
use crate::bases::rodrigue::triangle_p;
use crate::eigenspaces::u_dimension;
use crate::exact::{binomial, binomial_rational, format_rational, int, multi_factorial, pochhammer, rat, Rational};
use crate::linalg::{is_positive_definite, poly_rank, same_span};
use crate::moments::{inner_product, normalized_integral};
use crate::poly::{FaceId, MultiIndex, Polynomial};
use crate::report::{Check, Verdict};
use crate::sobolev::{InnerProductSpec, Jacobi1d, Lambdas, SubsetLambda};
use crate::weighted::ParamVector;

use super::{each, fmt_tail, guard, nonzero_row, Config};

fn x1() -> Polynomial {
    Polynomial::var(1, 0)
}

/// `(1-x²)y'' + [β-α-(α+β+2)x]y' + n(n+α+β+1)y`.
fn jacobi_ode_residual(p: &Polynomial, n: u32, a: &Rational, b: &Rational) -> crate::Result<Polynomial> {
    let x = x1();
    let one = Polynomial::one(1);
    let d1 = p.partial(0)?;
    let d2 = d1.partial(0)?;
    let s = a + b;
    let lin = &Polynomial::constant(1, b - a) - &x.scale(&(&s + int(2)));
    let ev = int(n as i64) * (int(n as i64) + &s + int(1));
    Ok(&(&(&(&one - &(&x * &x)) * &d2) + &(&lin * &d1)) + &p.scale(&ev))
}

/// Normalized integral over `[-1,1]` against `(1-x)^α (1+x)^β`.
fn interval_integral(h: &Polynomial, a: &Rational, b: &Rational) -> crate::Result<Rational> {
    let t = &x1().scale(&int(2)) - &Polynomial::one(1);
    normalized_integral(&h.substitute(&[t])?, &ParamVector::new(vec![b.clone(), a.clone()])?)
}

fn gram_1d(spec: &InnerProductSpec, ps: &[Polynomial]) -> crate::Result<Vec<Vec<Rational>>> {
    spec.gram_matrix(ps, ps)
}

fn offdiag_zero(m: &[Vec<Rational>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, v)| i == j || v.is_zero()))
}

/// Jacobi polynomials on `[-1,1]` and `[0,1]`, the negative-parameter
/// relation and the two degenerate Sobolev-orthogonal families.
pub fn jacobi(cfg: &Config) -> Verdict {
    let n_max = cfg.n_max.max(1);
    let mut root = Verdict::new(format!("jacobi n<={n_max}"));
    let pairs = [(int(0), int(0)), (rat(1, 2), int(0)), (int(1), rat(1, 2)), (rat(-1, 2), int(2))];

    let mut classical = Verdict::new("classical P_n^(α,β)");
    for (a, b) in &pairs {
        let tag = format!("(α,β)=({},{})", format_rational(a), format_rational(b));
        classical.check(guard(&format!("ode {tag}"), || {
            let ps: Vec<Polynomial> = (0..=n_max).map(|n| jacobi_p(n, a, b)).collect::<crate::Result<_>>()?;
            let bad = (0..=n_max as usize)
                .find(|&n| !jacobi_ode_residual(&ps[n], n as u32, a, b).map(|r| r.is_zero()).unwrap_or(false));
            Ok(Check::new(format!("ode {tag}"), bad.is_none()).witness(bad.map(|n| ps[n].clone())))
        }));
        classical.check(guard(&format!("orthogonality and h_n {tag}"), || {
            let ps: Vec<Polynomial> = (0..=n_max).map(|n| jacobi_p(n, a, b)).collect::<crate::Result<_>>()?;
            let mut witness = None;
            for i in 0..ps.len() {
                for j in 0..=i {
                    let v = interval_integral(&ps[i].checked_mul(&ps[j])?, a, b)?;
                    let want = if i == j { jacobi_norm(i as u32, a, b)? } else { Rational::zero() };
                    if v != want && witness.is_none() {
                        witness = Some(ps[i].clone());
                    }
                }
            }
            Ok(Check::new(format!("orthogonality and h_n {tag}"), witness.is_none()).witness(witness))
        }));
        classical.check(guard(&format!("shifted J_n ode {tag}"), || {
            // x(1-x)y'' + [β+1-(α+β+2)x]y' + n(n+α+β+1)y = 0 on [0,1].
            let x = x1();
            let mut witness = None;
            for n in 0..=n_max {
                let j = jacobi_shifted(n, a, b)?;
                let d1 = j.partial(0)?;
                let d2 = d1.partial(0)?;
                let lin = &Polynomial::constant(1, b + int(1)) - &x.scale(&(a + b + int(2)));
                let ev = int(n as i64) * (int(n as i64) + a + b + int(1));
                let r = &(&(&(&x * &(&Polynomial::one(1) - &x)) * &d2) + &(&lin * &d1)) + &j.scale(&ev);
                if !r.is_zero() && witness.is_none() {
                    witness = Some(j);
                }
            }
            Ok(Check::new(format!("shifted J_n ode {tag}"), witness.is_none()).witness(witness))
        }));
    }
    root.child(classical);

    let mut neg = Verdict::new("negative parameter relation");
    for b in [int(0), rat(1, 2), int(3)] {
        for l in 1..=2u32 {
            let name = format!("l={l} β={}", format_rational(&b));
            neg.check(guard(&name, || {
                let mut witness = None;
                for n in l..=n_max.max(l) {
                    let lhs = jacobi_p(n, &-int(l as i64), &b)?.scale(&binomial(n, l));
                    let half = (&x1() - &Polynomial::one(1)).scale(&rat(1, 2));
                    let rhs = (&half.pow(l) * &jacobi_p(n - l, &int(l as i64), &b)?)
                        .scale(&binomial_rational(&(&b + int(n as i64)), l));
                    if lhs != rhs && witness.is_none() {
                        witness = Some(lhs);
                    }
                }
                Ok(Check::new(name.clone(), witness.is_none()).witness(witness))
            }));
        }
    }
    root.child(neg);

    let top = n_max.max(5);
    let mut deg_b = Verdict::new(format!("P_n^(-1,β), n<={top}"));
    for b in [int(0), rat(1, 2), int(2)] {
        let case = Degenerate::AlphaMinusOne { beta: b.clone() };
        let tag = format!("β={}", format_rational(&b));
        deg_b.check(guard(&format!("ode {tag}"), || {
            let ps: Vec<Polynomial> = (0..=top).map(|n| jacobi_degenerate(n, &case)).collect::<crate::Result<_>>()?;
            each(&format!("ode {tag}"), &ps, |p| {
                let n = p.degree().unwrap_or(0);
                Ok(jacobi_ode_residual(p, n, &-int(1), &b)?.is_zero())
            })
        }));
        deg_b.check(guard(&format!("agrees with Rodrigue at α=-1 {tag}"), || {
            let mut witness = None;
            for n in 1..=top {
                let p = jacobi_degenerate(n, &case)?;
                if p != jacobi_p(n, &-int(1), &b)? && witness.is_none() {
                    witness = Some(p);
                }
            }
            Ok(Check::new(format!("agrees with Rodrigue at α=-1 {tag}"), witness.is_none()).witness(witness))
        }));
        for lambda in [int(1), rat(1, 2), int(3)] {
            let name = format!("Sobolev orthogonality {tag} λ={}", format_rational(&lambda));
            deg_b.check(guard(&name, || {
                let ps: Vec<Polynomial> = (0..=top).map(|n| jacobi_degenerate(n, &case)).collect::<crate::Result<_>>()?;
                let spec = InnerProductSpec::jacobi_1d(Jacobi1d::AlphaMinusOne { beta: b.clone(), lambda: lambda.clone() });
                let g = gram_1d(&spec, &ps)?;
                let ok = offdiag_zero(&g) && g.iter().enumerate().all(|(i, r)| r[i] > Rational::zero());
                Ok(Check::new(name.clone(), ok && spec.is_valid()).with_detail(format!("{}×{} Gram", g.len(), g.len())))
            }));
        }
    }
    root.child(deg_b);

    let mut deg_bb = Verdict::new(format!("P_n^(-1,-1), n<={top}"));
    for (l1, l2) in [(int(1), int(1)), (int(1), int(3)), (rat(5, 2), rat(1, 2))] {
        let tag = format!("λ=({},{})", format_rational(&l1), format_rational(&l2));
        deg_bb.check(guard(&tag, || {
            let case = Degenerate::from_lambdas(&l1, &l2)?;
            let ps: Vec<Polynomial> = (0..=top).map(|n| jacobi_degenerate(n, &case)).collect::<crate::Result<_>>()?;
            let spec = InnerProductSpec::jacobi_1d(Jacobi1d::BothMinusOne { lambda1: l1.clone(), lambda2: l2.clone() });
            let g = gram_1d(&spec, &ps)?;
            let ode = ps
                .iter()
                .enumerate()
                .all(|(n, p)| jacobi_ode_residual(p, n as u32, &-int(1), &-int(1)).map(|r| r.is_zero()).unwrap_or(false));
            let mu = match &case {
                Degenerate::BothMinusOne { mu } => format_rational(mu),
                _ => unreachable!(),
            };
            let witness = if offdiag_zero(&g) { None } else { Some(ps[1].clone()) };
            Ok(Check::new(format!("orthogonality and ode {tag}"), witness.is_none() && ode)
                .with_detail(format!("μ = {mu}"))
                .witness(witness))
        }));
    }
    root.child(deg_bb);
    root
}

fn poly2(f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Polynomial {
    f(&Polynomial::var(2, 0), &Polynomial::var(2, 1))
}

/// Orthogonal to `Π_{n-1}` under `⟨·,·⟩_γ`, exactly.
fn classical_orthogonal(gamma: &ParamVector, polys: &[Polynomial], n: u32) -> crate::Result<Option<Polynomial>> {
    if n == 0 {
        return Ok(None);
    }
    let lower = monomials_up_to(gamma.dim(), n - 1).polys();
    let spec = InnerProductSpec::classical(gamma.clone());
    Ok(nonzero_row(&spec.gram_matrix(polys, &lower)?, polys))
}

/// Triangle bases: Rodrigue, the `Q` and `R` re-parametrizations, and the
/// face restrictions of the `P_{0,n}`.
pub fn triangle(cfg: &Config) -> Verdict {
    let mut root = Verdict::new(format!("triangle n<={}", cfg.n_max));
    let y_x = poly2(|x, y| {
        let _ = x;
        y.clone()
    });
    let swap = [y_x.clone(), Polynomial::var(2, 0)];
    let r_sub = [poly2(|x, y| &(&Polynomial::one(2) - x) - y), Polynomial::var(2, 1)];
    for g in cfg.full_samples(2) {
        let (a, b, c) = (g.at(1).clone(), g.at(2).clone(), g.at(3).clone());
        let mut v = Verdict::new(format!("(α,β,γ)={g}"));
        for n in 0..=cfg.n_max {
            v.check(guard(&format!("Q and R bases n={n}"), || {
                let pq = ParamVector::new(vec![b.clone(), a.clone(), c.clone()])?;
                let pr = ParamVector::new(vec![c.clone(), b.clone(), a.clone()])?;
                let mut q = Vec::new();
                let mut r = Vec::new();
                for k in 0..=n {
                    q.push(triangle_p(k, n, &pq)?.substitute(&swap)?);
                    r.push(triangle_p(k, n, &pr)?.substitute(&r_sub)?);
                }
                let ok_eig = q.iter().chain(&r).all(|p| eigencheck(&g, p, n).unwrap_or(false));
                let orth_q = classical_orthogonal(&g, &q, n)?;
                let orth_r = classical_orthogonal(&g, &r, n)?;
                let rank = poly_rank(&q) == n as usize + 1 && poly_rank(&r) == n as usize + 1;
                // The permuted construction with orders (2,1) and (3,2).
                let lock = same_span(&q, &permuted_basis(&g, &[2, 1], n)?.polys())
                    && same_span(&r, &permuted_basis(&g, &[3, 2], n)?.polys());
                let pass = ok_eig && orth_q.is_none() && orth_r.is_none() && rank && lock;
                Ok(Check::new(format!("Q and R bases n={n}"), pass)
                    .with_detail(format!("eigen {ok_eig}, rank {rank}, permuted spans {lock}"))
                    .witness(orth_q.or(orth_r)))
            }));
            v.check(guard(&format!("face restrictions n={n}"), || {
                // 1. P_{0,n}^{(α,β,γ)} on x=0 is J_n^{(γ,β)}(y).
                let p1 = triangle_p(0, n, &g)?.restrict_to_face(&FaceId::new(2, [1])?)?;
                let j1 = jacobi_shifted(n, &c, &b)?;
                // 2. P_{0,n}^{(β,α,γ)}(y,x) on y=0 is J_n^{(γ,α)}(x).
                let pq = ParamVector::new(vec![b.clone(), a.clone(), c.clone()])?;
                let p2 = triangle_p(0, n, &pq)?.substitute(&swap)?.restrict_to_face(&FaceId::new(2, [2])?)?;
                let j2 = jacobi_shifted(n, &c, &a)?;
                // 3. P_{0,n}^{(γ,β,α)}(1-x-y,y) on x+y=1 is J_n^{(α,β)}(y), y = 1-x.
                let pr = ParamVector::new(vec![c.clone(), b.clone(), a.clone()])?;
                let p3 = triangle_p(0, n, &pr)?.substitute(&r_sub)?.restrict_to_face(&FaceId::new(2, [3])?)?;
                let j3 = jacobi_shifted(n, &a, &b)?.substitute(&[&Polynomial::one(1) - &x1()])?;
                let fails: Vec<&str> = [("x=0", p1 == j1), ("y=0", p2 == j2), ("x+y=1", p3 == j3)]
                    .iter()
                    .filter(|(_, ok)| !ok)
                    .map(|(s, _)| *s)
                    .collect();
                Ok(Check::new(format!("face restrictions n={n}"), fails.is_empty())
                    .with_detail(if fails.is_empty() { "all three lines".into() } else { format!("failed on {}", fails.join(", ")) }))
            }));
        }
        root.child(v);
    }
    root
}

/// Every ordered choice of `d` distinct labels from `1..=d+1`.
pub(crate) fn all_orders(d: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for l in 1..=d + 1 {
            if !cur.contains(&l) {
                cur.push(l);
                rec(d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(d, &mut Vec::new(), &mut out);
    out
}

/// Exact positivity of the monomial Gram matrix of `Π_n` under `⟨·,·⟩_γ`.
pub fn classical_positive(gamma: &ParamVector, n: u32) -> crate::Result<bool> {
    let m = monomials_up_to(gamma.dim(), n).polys();
    Ok(is_positive_definite(&InnerProductSpec::classical(gamma.clone()).gram_matrix(&m, &m)?))
}

/// Rodrigue and permuted Rodrigue bases: eigen-equation, orthogonality,
/// dimension; positivity of the classical form; partial orthogonality at
/// negative integer parameters; eigen-equation at parameters `<= -1`.
pub fn rodrigue(cfg: &Config) -> Verdict {
    let dims = cfg.dims_or(&[1, 2, 3], |d| d >= 1);
    let mut root = Verdict::new(format!("rodrigue n<={}", cfg.n_max));
    for &d in &dims {
        let mut vd = Verdict::new(format!("d={d}"));
        for g in cfg.full_samples(d) {
            let mut v = Verdict::new(format!("γ={g}"));
            for n in 0..=cfg.n_max {
                v.check(guard(&format!("rodrigue n={n}"), || {
                    let b = rodrigue_basis(&g, n)?.polys();
                    let eig = each("eigen", &b, |p| eigencheck(&g, p, n))?;
                    let orth = classical_orthogonal(&g, &b, n)?;
                    let rank = poly_rank(&b) == u_dimension(d, n) as usize;
                    Ok(Check::new(format!("rodrigue n={n}"), eig.pass && orth.is_none() && rank)
                        .with_detail(format!("eigen {}, rank {rank}", eig.pass))
                        .witness(eig.counterexample.or(orth)))
                }));
                v.check(guard(&format!("permuted n={n}"), || {
                    let orders = all_orders(d);
                    let mut witness = None;
                    let mut failed = Vec::new();
                    for o in &orders {
                        let b = permuted_basis(&g, o, n)?.polys();
                        let eig = each("eigen", &b, |p| eigencheck(&g, p, n))?;
                        let orth = classical_orthogonal(&g, &b, n)?;
                        if !eig.pass || orth.is_some() || poly_rank(&b) != b.len() {
                            failed.push(format!("{o:?}"));
                            witness = witness.or(eig.counterexample).or(orth);
                        }
                    }
                    Ok(Check::new(format!("permuted n={n}"), failed.is_empty())
                        .with_detail(if failed.is_empty() {
                            format!("{} orders", orders.len())
                        } else {
                            format!("failed orders {}", failed.join(" "))
                        })
                        .witness(witness))
                }));
                v.check(guard(&format!("monomial Gram of Π_{n} positive definite"), || {
                    Ok(Check::new(format!("monomial Gram of Π_{n} positive definite"), classical_positive(&g, n)?))
                }));
            }
            vd.child(v);
        }
        if d >= 2 {
            vd.child(partial_orthogonality(cfg, d));
        }
        vd.child(degenerate_eigen(cfg, d));
        root.child(vd);
    }
    root
}

/// `∫ P_ν^{(γ,-m)} Q W_{γ,0} = 0` for `deg Q <= |ν|-|m|-1`, `m = (1)` and `(1,1)`.
fn partial_orthogonality(cfg: &Config, d: usize) -> Verdict {
    let mut v = Verdict::new("partial orthogonality at parameters -m");
    for m in [vec![1u32], vec![1, 1]] {
        let k = m.len();
        if k > d {
            continue;
        }
        for tail in cfg.tail_samples(d + 1 - k) {
            for n in 0..=cfg.n_max {
                let msum = m.iter().sum::<u32>();
                if n <= msum {
                    continue;
                }
                let name = format!("m={m:?} γ={} n={n}", fmt_tail(&tail));
                v.check(guard(&name, || {
                    let mut gp = tail.clone();
                    gp.extend(m.iter().map(|&mi| -int(mi as i64)));
                    let gbar = ParamVector::new(gp)?;
                    let mut w = tail.clone();
                    w.extend(std::iter::repeat(int(0)).take(k));
                    let w = ParamVector::new(w)?;
                    let ps: Vec<Polynomial> = MultiIndex::all_of_degree(d, n)
                        .iter()
                        .map(|nu| rodrigue_poly(&gbar, nu))
                        .collect::<crate::Result<_>>()?;
                    let qs = monomials_up_to(d, n - msum - 1).polys();
                    let g = InnerProductSpec::classical(w).gram_matrix(&ps, &qs)?;
                    let witness = nonzero_row(&g, &ps);
                    Ok(Check::new(name.clone(), witness.is_none()).witness(witness))
                }));
            }
        }
    }
    v
}

/// `L_γ P_ν^γ = -n(n+|γ|+d) P_ν^γ` still holds when entries of `γ` are
/// `<= -1`, wherever the Rodrigue quotient is a polynomial.
fn degenerate_eigen(cfg: &Config, d: usize) -> Verdict {
    let mut v = Verdict::new("eigen-equation at parameters <= -1");
    let mut samples = Vec::new();
    let mut last = vec![rat(1, 2); d + 1];
    last[d] = -int(1);
    samples.push(last);
    samples.push(vec![-int(1); d + 1]);
    let mut first = vec![int(0); d + 1];
    first[0] = -int(2);
    samples.push(first);
    for s in samples {
        let g = ParamVector::new(s).expect("nonempty");
        v.check(guard(&format!("γ={g}"), || {
            let mut built = 0;
            let mut skipped = 0;
            let mut witness = None;
            for n in 0..=cfg.n_max {
                for nu in MultiIndex::all_of_degree(d, n) {
                    match rodrigue_poly(&g, &nu) {
                        Ok(p) => {
                            built += 1;
                            if !p.is_zero() && !eigencheck(&g, &p, n)? && witness.is_none() {
                                witness = Some(p);
                            }
                        }
                        Err(crate::Error::NonPolynomialQuotient { .. }) => skipped += 1,
                        Err(e) => return Err(e),
                    }
                }
            }
            Ok(Check::new(format!("γ={g}"), witness.is_none())
                .with_detail(format!("{built} built, {skipped} not polynomial"))
                .witness(witness))
        }));
    }
    v
}

/// `(-1)^n ν! Π(γ_i+1)_{n_i} (γ_{d+1}+1)_n / (|γ|+d+1)_{2n}`.
pub fn biorthogonal_constant(gamma: &ParamVector, nu: &MultiIndex) -> Rational {
    let d = gamma.dim();
    let n = nu.degree();
    let mut c = multi_factorial(&nu.0) * pochhammer(&(gamma.last() + int(1)), n)
        / pochhammer(&(gamma.sum() + int(d as i64 + 1)), 2 * n);
    for i in 0..d {
        c *= pochhammer(&(&gamma.gamma()[i] + int(1)), nu.0[i]);
    }
    if n % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Monomial basis: eigen-equation, leading term, orthogonality,
/// biorthogonality with the Rodrigue basis, the derivative identity and
/// orthogonality under the derivative products `[·,·]_γ`.
pub fn monomial(cfg: &Config) -> Verdict {
    let dims = cfg.dims_or(&[1, 2, 3], |d| d >= 1);
    let mut root = Verdict::new(format!("monomial n<={}", cfg.n_max));
    for &d in &dims {
        let mut vd = Verdict::new(format!("d={d}"));
        for g in cfg.full_samples(d) {
            let mut v = Verdict::new(format!("γ={g}"));
            for n in 0..=cfg.n_max {
                v.check(guard(&format!("basis n={n}"), || {
                    let b = monomial_basis(&g, n)?;
                    let polys = b.polys();
                    let eig = each("eigen", &polys, |p| eigencheck(&g, p, n))?;
                    let lead = b.elements.iter().all(|e| {
                        let nu = MultiIndex(e.index.clone().unwrap_or_default());
                        let rest = &e.poly - &Polynomial::monomial(d, nu, Rational::one());
                        rest.degree().map_or(true, |r| r < n)
                    });
                    let orth = classical_orthogonal(&g, &polys, n)?;
                    Ok(Check::new(format!("basis n={n}"), eig.pass && lead && orth.is_none())
                        .with_detail(format!("eigen {}, leading term x^ν {lead}", eig.pass))
                        .witness(eig.counterexample.or(orth)))
                }));
                v.check(guard(&format!("biorthogonality n={n}"), || {
                    let nus = MultiIndex::all_of_degree(d, n);
                    let p = rodrigue_basis(&g, n)?.polys();
                    let vv = monomial_basis(&g, n)?.polys();
                    let mut witness = None;
                    for (i, a) in p.iter().enumerate() {
                        for (j, b) in vv.iter().enumerate() {
                            let want = if i == j { biorthogonal_constant(&g, &nus[i]) } else { Rational::zero() };
                            if inner_product(a, b, &g)? != want && witness.is_none() {
                                witness = Some(a.clone());
                            }
                        }
                    }
                    Ok(Check::new(format!("biorthogonality n={n}"), witness.is_none()).witness(witness))
                }));
                v.check(guard(&format!("derivative identity n={n}"), || {
                    let mut witness = None;
                    for nu in MultiIndex::all_of_degree(d, n) {
                        let vn = monomial_poly(&g, &nu)?;
                        for i in 0..d {
                            let lhs = vn.partial(i)?;
                            let rhs = match nu.checked_sub(&MultiIndex::unit(d, i)) {
                                None => Polynomial::zero(d),
                                Some(m) => {
                                    let gs = g.shifted(i + 1, &int(1)).shifted(d + 1, &int(1));
                                    monomial_poly(&gs, &m)?.scale(&int(nu.0[i] as i64))
                                }
                            };
                            if lhs != rhs && witness.is_none() {
                                witness = Some(vn.clone());
                            }
                        }
                    }
                    Ok(Check::new(format!("derivative identity n={n}"), witness.is_none()).witness(witness))
                }));
                if n >= 1 {
                    for m in 1..=d {
                        for lam in ["1", "|S|+1/2"] {
                            let name = format!("[·,·] orthogonality m={m} λ_S={lam} n={n}");
                            v.check(guard(&name, || {
                                let mut l = Lambdas::ones();
                                if lam != "1" {
                                    let labels: Vec<usize> = (1..=d).collect();
                                    l.subsets = (1..=m)
                                        .flat_map(|j| crate::sobolev::subsets_of_size(&labels, j))
                                        .map(|s| SubsetLambda { value: int(s.len() as i64) + rat(1, 2), set: s })
                                        .collect();
                                }
                                let spec = InnerProductSpec::epd(g.clone(), m, l);
                                let polys = monomial_basis(&g, n)?.polys();
                                let lower = monomials_up_to(d, n - 1).polys();
                                let witness = nonzero_row(&spec.gram_matrix(&polys, &lower)?, &polys);
                                Ok(Check::new(name.clone(), witness.is_none()).witness(witness))
                            }));
                        }
                    }
                }
            }
            vd.child(v);
        }
        root.child(vd);
    }
    root
}
