//! Suites for the singular eigenspaces: the triangle decompositions and
//! named forms, the general direct sums, and Sobolev orthogonality.

use num_traits::Zero;

use crate::bases::{eigencheck, monomials_up_to, rodrigue_basis};
use crate::bases::rodrigue::triangle_p;
use crate::eigenspaces::{u_blocks, u_dimension, u_space, verify_u_space_parts};
use crate::exact::{format_rational, int, rat, Rational};
use crate::linalg::{is_positive_definite, poly_rank, same_span};
use crate::poly::Polynomial;
use crate::report::{Check, Verdict};
use crate::sobolev::{dirichlet_mass_ratio, subsets_of_size, D2Named, InnerProductSpec, Lambdas};
use crate::weighted::ParamVector;

use super::{fmt_tail, guard, nonzero_row, Config};

type R<T> = crate::Result<T>;

fn pv(v: &[Rational]) -> ParamVector {
    ParamVector::new(v.to_vec()).expect("nonempty")
}

fn xy() -> (Polynomial, Polynomial, Polynomial) {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let z = &(&Polynomial::one(2) - &x) - &y;
    (x, y, z)
}

/// `P_{0,n}^{(a,b,c)}` for all `n`, empty for negative degree.
fn p0(n: i64, a: &Rational, b: &Rational, c: &Rational) -> R<Vec<Polynomial>> {
    if n < 0 {
        return Ok(vec![]);
    }
    Ok(vec![triangle_p(0, n as u32, &pv(&[a.clone(), b.clone(), c.clone()]))?])
}

/// `H_{n,1}(w_{γ,β}) = P_{0,n}^{(0,β,γ)}(x,y)`.
fn h1(n: i64, g: &Rational, b: &Rational) -> R<Vec<Polynomial>> {
    p0(n, &int(0), b, g)
}

/// `H_{n,2}(w_{γ,α}) = P_{0,n}^{(0,α,γ)}(y,x)`.
fn h2(n: i64, g: &Rational, a: &Rational) -> R<Vec<Polynomial>> {
    let (x, y, _) = xy();
    p0(n, &int(0), a, g)?.iter().map(|p| p.substitute(&[y.clone(), x.clone()])).collect()
}

/// `H_{n,3}(w_{α,β}) = P_{0,n}^{(0,β,α)}(1-x-y,y)`.
fn h3(n: i64, a: &Rational, b: &Rational) -> R<Vec<Polynomial>> {
    let (_, y, z) = xy();
    p0(n, &int(0), b, a)?.iter().map(|p| p.substitute(&[z.clone(), y.clone()])).collect()
}

/// `V_n(W_γ)` on the triangle, empty for negative degree.
fn v2(n: i64, g: &[Rational]) -> R<Vec<Polynomial>> {
    if n < 0 {
        return Ok(vec![]);
    }
    Ok(rodrigue_basis(&pv(g), n as u32)?.polys())
}

fn times(m: &Polynomial, ps: Vec<Polynomial>) -> Vec<Polynomial> {
    ps.iter().map(|p| m * p).collect()
}

/// Explicit triangle decomposition vs. the general construction: same
/// span, full rank, eigen-equation.
fn compare_spaces(name: String, explicit: R<Vec<Polynomial>>, general: R<Vec<Polynomial>>, params: &ParamVector, n: u32) -> Check {
    guard(&name.clone(), || {
        let e = explicit?;
        let g = general?;
        let dim = n as usize + 1;
        let eig = e.iter().find(|p| !eigencheck(params, p, n).unwrap_or(false)).cloned();
        let rank = poly_rank(&e) == dim && e.len() == dim;
        let span = same_span(&e, &g);
        Ok(Check::new(name, eig.is_none() && rank && span)
            .with_detail(format!("rank {}, same span {span}", poly_rank(&e)))
            .witness(eig.or_else(|| e.first().cloned())))
    })
}

fn named_forms(alpha: &Rational, beta: &Rational, lam: &[Rational; 5]) -> Vec<D2Named> {
    let [l1, l2, l10, l01, l00] = lam.clone();
    vec![
        D2Named::AlphaBetaM1 { alpha: alpha.clone(), beta: beta.clone(), lambda1: l1.clone() },
        D2Named::AlphaM1M1 { alpha: alpha.clone(), lambda1: l1.clone(), lambda10: l10.clone() },
        D2Named::AllM1 { lambda1: l1.clone(), lambda2: l2.clone(), lambda10: l10, lambda01: l01, lambda00: l00.clone() },
        D2Named::M1M1Gamma { gamma: alpha.clone(), lambda1: l1, lambda2: l2, lambda00: l00 },
    ]
}

fn variant(f: &D2Named) -> &'static str {
    match f {
        D2Named::AlphaBetaM1 { .. } => "(α,β,-1)",
        D2Named::AlphaM1M1 { .. } => "(α,-1,-1)",
        D2Named::AllM1 { .. } => "(-1,-1,-1)",
        D2Named::M1M1Gamma { .. } => "(-1,-1,γ)",
    }
}

/// The eigenspace a named form is meant to diagonalize, at degree `n`.
fn named_u(f: &D2Named, n: u32) -> R<Vec<Polynomial>> {
    Ok(match f {
        D2Named::AlphaBetaM1 { alpha, beta, .. } => u_space(&[alpha.clone(), beta.clone()], 2, 1, n, &Lambdas::ones())?.polys(),
        D2Named::AlphaM1M1 { alpha, .. } => u_space(&[alpha.clone()], 2, 2, n, &Lambdas::ones())?.polys(),
        D2Named::AllM1 { lambda10, lambda01, lambda00, .. } => {
            let l = Lambdas { vertices: vec![lambda00.clone(), lambda10.clone(), lambda01.clone()], ..Lambdas::ones() };
            u_space(&[], 2, 3, n, &l)?.polys()
        }
        D2Named::M1M1Gamma { gamma, .. } => remark_space(gamma, n)?,
    })
}

/// `U_n(W_{-1,-1,γ}) = xyV_{n-2}(W_{1,1,γ}) + xH_{n-1,2}(w_{γ,1}) + yH_{n-1,1}(w_{γ,1})`.
fn remark_space(g: &Rational, n: u32) -> R<Vec<Polynomial>> {
    if n == 0 {
        return Ok(vec![Polynomial::one(2)]);
    }
    let (x, y, _) = xy();
    let n = n as i64;
    let mut out = times(&(&x * &y), v2(n - 2, &[int(1), int(1), g.clone()])?);
    out.extend(times(&x, h2(n - 1, g, &int(1))?));
    out.extend(times(&y, h1(n - 1, g, &int(1))?));
    Ok(out)
}

/// The general form matching a named form, and the pullback applied to
/// polynomials before evaluating it.
fn general_equivalent(f: &D2Named) -> R<(InnerProductSpec, Option<Vec<usize>>)> {
    let ratio = |a: &Rational| dirichlet_mass_ratio(&pv(&[a.clone(), int(0)]), &pv(&[a + int(1), int(0)]));
    Ok(match f {
        D2Named::AlphaBetaM1 { alpha, beta, lambda1 } => (
            InnerProductSpec::sobolev(2, vec![alpha.clone(), beta.clone()], 1, Lambdas { main: Some(lambda1.clone()), ..Lambdas::ones() })?,
            None,
        ),
        D2Named::AlphaM1M1 { alpha, lambda1, lambda10 } => {
            let l = Lambdas { main: Some(lambda10.clone()), coords: vec![lambda1 / ratio(alpha)?], ..Lambdas::ones() };
            (InnerProductSpec::sobolev(2, vec![alpha.clone()], 2, l)?, None)
        }
        D2Named::AllM1 { lambda1, lambda2, lambda10, lambda01, lambda00 } => {
            let mut l = Lambdas { vertices: vec![lambda00.clone(), lambda10.clone(), lambda01.clone()], ..Lambdas::ones() };
            l.set_subset(&[1], lambda1.clone());
            l.set_subset(&[2], lambda2.clone());
            (InnerProductSpec::sobolev(2, vec![], 3, l)?, None)
        }
        D2Named::M1M1Gamma { gamma, lambda2, lambda00, .. } => {
            let l = Lambdas { main: Some(lambda00.clone()), coords: vec![lambda2 / ratio(gamma)?], ..Lambdas::ones() };
            (InnerProductSpec::sobolev(2, vec![gamma.clone()], 2, l)?, Some(vec![2, 3]))
        }
    })
}

/// The triangle: explicit decompositions, corollary recursions, the named
/// forms and the redefined `U_1(W_{-1,-1,-1})`.
pub fn thm31(cfg: &Config) -> Verdict {
    let mut root = Verdict::new(format!("thm31 d=2 n<={}", cfg.n_max));
    if !cfg.dims.is_empty() && !cfg.dims.contains(&2) {
        return root;
    }
    let (x, y, z) = xy();
    let pairs = cfg.tail_samples(2);
    let one = int(1);

    let mut dec = Verdict::new("decompositions");
    for ab in &pairs {
        let (a, b) = (&ab[0], &ab[1]);
        for n in 0..=cfg.n_max {
            let ni = n as i64;
            let explicit = || -> R<Vec<Polynomial>> {
                let mut e = times(&z, v2(ni - 1, &[a.clone(), b.clone(), one.clone()])?);
                e.extend(h3(ni, a, b)?);
                Ok(e)
            };
            dec.check(compare_spaces(
                format!("(α,β,-1) (α,β)={} n={n}", fmt_tail(ab)),
                explicit(),
                u_space(ab, 2, 1, n, &Lambdas::ones()).map(|b| b.polys()),
                &pv(&[a.clone(), b.clone(), -int(1)]),
                n,
            ));
            let explicit = || -> R<Vec<Polynomial>> {
                if n == 0 {
                    return Ok(vec![Polynomial::one(2)]);
                }
                let mut e = times(&(&y * &z), v2(ni - 2, &[a.clone(), one.clone(), one.clone()])?);
                e.extend(times(&y, h3(ni - 1, a, &one)?));
                e.extend(times(&z, h2(ni - 1, &one, a)?));
                Ok(e)
            };
            dec.check(compare_spaces(
                format!("(α,-1,-1) α={} n={n}", format_rational(a)),
                explicit(),
                u_space(&ab[..1], 2, 2, n, &Lambdas::ones()).map(|b| b.polys()),
                &pv(&[a.clone(), -int(1), -int(1)]),
                n,
            ));
            dec.check(compare_spaces(
                format!("(-1,-1,γ) γ={} n={n}", format_rational(a)),
                remark_space(a, n),
                u_space(&ab[..1], 2, 2, n, &Lambdas::ones())
                    .and_then(|b| b.polys().iter().map(|p| p.barycentric_substitute(&[3, 1])).collect()),
                &pv(&[-int(1), -int(1), a.clone()]),
                n,
            ));
        }
    }
    for n in 2..=cfg.n_max {
        let ni = n as i64;
        let explicit = || -> R<Vec<Polynomial>> {
            let mut e = times(&(&(&x * &y) * &z), v2(ni - 3, &[one.clone(), one.clone(), one.clone()])?);
            e.extend(times(&(&x * &y), h3(ni - 2, &one, &one)?));
            e.extend(times(&(&x * &z), h2(ni - 2, &one, &one)?));
            e.extend(times(&(&y * &z), h1(ni - 2, &one, &one)?));
            Ok(e)
        };
        dec.check(compare_spaces(
            format!("(-1,-1,-1) n={n}"),
            explicit(),
            u_space(&[], 2, 3, n, &Lambdas::ones()).map(|b| b.polys()),
            &pv(&[-int(1), -int(1), -int(1)]),
            n,
        ));
    }
    root.child(dec);

    let mut cor = Verdict::new("recursions");
    for ab in &pairs {
        let a = &ab[0];
        for n in 1..=cfg.n_max {
            let ni = n as i64;
            let rec = || -> R<Vec<Polynomial>> {
                let mut e = times(&y, u_space(&[a.clone(), one.clone()], 2, 1, n - 1, &Lambdas::ones())?.polys());
                e.extend(times(&z, h2(ni - 1, &one, a)?));
                Ok(e)
            };
            cor.check(compare_spaces(
                format!("U_n(α,-1,-1) = yU_(n-1)(α,1,-1) + (1-x-y)H α={} n={n}", format_rational(a)),
                rec(),
                u_space(&[a.clone()], 2, 2, n, &Lambdas::ones()).map(|b| b.polys()),
                &pv(&[a.clone(), -int(1), -int(1)]),
                n,
            ));
        }
    }
    for n in 2..=cfg.n_max {
        let ni = n as i64;
        let rec = || -> R<Vec<Polynomial>> {
            let mut e = times(&x, u_space(&[one.clone()], 2, 2, n - 1, &Lambdas::ones())?.polys());
            e.extend(times(&(&y * &z), h1(ni - 2, &one, &one)?));
            Ok(e)
        };
        cor.check(compare_spaces(
            format!("U_n(-1,-1,-1) = xU_(n-1)(1,-1,-1) + y(1-x-y)H n={n}"),
            rec(),
            u_space(&[], 2, 3, n, &Lambdas::ones()).map(|b| b.polys()),
            &pv(&[-int(1), -int(1), -int(1)]),
            n,
        ));
    }
    root.child(cor);

    let lambda_sets = [
        [int(1), int(1), int(1), int(1), int(1)],
        [rat(1, 2), int(2), int(3), rat(1, 3), int(1)],
    ];
    let mut named = Verdict::new("named forms");
    for ab in &pairs {
        for lam in &lambda_sets {
            for f in named_forms(&ab[0], &ab[1], lam) {
                let tag = format!("{} {}", variant(&f), serde_json::to_string(&f).unwrap_or_default());
                let spec = InnerProductSpec::d2_named(f.clone());
                named.check(guard(&format!("positive definite on Π_3 {tag}"), || {
                    let m = monomials_up_to(2, 3).polys();
                    let pd = is_positive_definite(&spec.gram_matrix(&m, &m)?);
                    Ok(Check::new(format!("positive definite on Π_3 {tag}"), pd && spec.is_valid()))
                }));
                for n in 1..=cfg.n_max {
                    let name = format!("U_{n} orthogonal to Π_{} {tag}", n - 1);
                    named.check(guard(&name, || {
                        let u = named_u(&f, n)?;
                        let g = spec.gram_matrix(&u, &monomials_up_to(2, n - 1).polys())?;
                        let w = nonzero_row(&g, &u);
                        Ok(Check::new(name.clone(), w.is_none()).witness(w))
                    }));
                }
                // The (-1,-1,γ) form matches the general one only without its λ1 term.
                let mut f0 = f.clone();
                if let D2Named::M1M1Gamma { lambda1, .. } = &mut f0 {
                    *lambda1 = Rational::zero();
                }
                let name = format!("agrees with the general form on Π_3 {}", serde_json::to_string(&f0).unwrap_or_default());
                named.check(guard(&name, || {
                    let (general, pull) = general_equivalent(&f0)?;
                    let m = monomials_up_to(2, 3).polys();
                    let mg: Vec<Polynomial> = match &pull {
                        Some(l) => m.iter().map(|p| p.barycentric_substitute(l)).collect::<R<_>>()?,
                        None => m.clone(),
                    };
                    let a = InnerProductSpec::d2_named(f0.clone()).gram_matrix(&m, &m)?;
                    let b = general.gram_matrix(&mg, &mg)?;
                    Ok(Check::new(name.clone(), a == b))
                }));
            }
        }
    }
    root.child(named);

    let mut u1 = Verdict::new("U_1(W_{-1,-1,-1})");
    for (l00, l10, l01) in [(int(1), int(1), int(1)), (int(1), int(2), int(3)), (int(0), rat(1, 2), int(2))] {
        let name = format!("λ00={} λ10={} λ01={}", format_rational(&l00), format_rational(&l10), format_rational(&l01));
        u1.check(guard(&name, || {
            let s = &l00 + &l10 + &l01;
            let want = vec![
                &x - &Polynomial::constant(2, &l10 / &s),
                &y - &Polynomial::constant(2, &l01 / &s),
            ];
            let l = Lambdas { vertices: vec![l00.clone(), l10.clone(), l01.clone()], ..Lambdas::ones() };
            let u = u_space(&[], 2, 3, 1, &l)?.polys();
            let spec = InnerProductSpec::d2_named(D2Named::AllM1 {
                lambda1: int(1),
                lambda2: int(1),
                lambda10: l10.clone(),
                lambda01: l01.clone(),
                lambda00: l00.clone(),
            });
            let g = spec.gram_matrix(&u, &[Polynomial::one(2)])?;
            let ok = u == want && g.iter().flatten().all(|v| v.is_zero());
            Ok(Check::new(name.clone(), ok).witness(u.first().cloned()))
        }));
    }
    root.child(u1);
    root
}

/// Non-unit `λ` values covering every term of the forms in dimension `d`.
pub fn sample_lambdas(d: usize) -> Lambdas {
    let mut l = Lambdas {
        main: Some(int(2)),
        coords: (1..=d).map(|i| int(i as i64) + rat(1, 2)).collect(),
        subsets: vec![],
        vertices: (0..=d).map(|j| rat(j as i64 + 1, 3)).collect(),
    };
    let labels: Vec<usize> = (1..=d).collect();
    for s in 1..d {
        for set in subsets_of_size(&labels, s) {
            let v = int(set.len() as i64) + rat(1, 3);
            l.set_subset(&set, v);
        }
    }
    l
}

fn u_cases(cfg: &Config) -> Vec<(usize, usize, Vec<Rational>)> {
    let dims = cfg.dims_or(&[2, 3], |d| d >= 1);
    let mut out = Vec::new();
    for &d in &dims {
        for k in 1..=d + 1 {
            for tail in cfg.tail_samples(d + 1 - k) {
                out.push((d, k, tail));
            }
        }
    }
    out
}

/// Direct-sum decompositions: eigen-equation and dimension of every
/// `U_n^d(W_{γ,-1_k})`.
pub fn thm34(cfg: &Config) -> Verdict {
    let mut root = Verdict::new(format!("thm34 n<={}", cfg.n_max));
    for (d, k, tail) in u_cases(cfg) {
        let mut v = Verdict::new(format!("d={d} k={k} γ={}", fmt_tail(&tail)));
        for n in 0..=cfg.n_max {
            match verify_u_space_parts(&tail, d, k, n, &Lambdas::ones(), true, false) {
                Ok(t) => v.child(t),
                Err(e) => v.check(Check::error(format!("n={n}"), &e)),
            }
            if n >= 1 {
                v.check(guard(&format!("block sizes n={n}"), || {
                    let blocks = u_blocks(&tail, d, k, n, &Lambdas::ones())?;
                    let total: usize = blocks.iter().map(|b| b.basis.len()).sum();
                    let sizes: Vec<String> = blocks.iter().map(|b| format!("{}:{}", b.name, b.basis.len())).collect();
                    Ok(Check::new(format!("block sizes n={n}"), total == u_dimension(d, n) as usize)
                        .with_detail(sizes.join(", ")))
                }));
            }
        }
        root.child(v);
    }
    root
}

/// Sobolev orthogonality of `U_n` to lower degree, positivity of the
/// forms, and orthogonality between the two blocks when `k = 1`.
pub fn thm36(cfg: &Config) -> Verdict {
    let mut root = Verdict::new(format!("thm36 n<={}", cfg.n_max));
    for (d, k, tail) in u_cases(cfg) {
        let mut v = Verdict::new(format!("d={d} k={k} γ={}", fmt_tail(&tail)));
        for (lname, lam) in [("λ=1", Lambdas::ones()), ("λ sample", sample_lambdas(d))] {
            v.check(guard(&format!("positive definite on Π_3 {lname}"), || {
                let spec = InnerProductSpec::sobolev(d, tail.clone(), k, lam.clone())?;
                let m = monomials_up_to(d, 3).polys();
                let pd = is_positive_definite(&spec.gram_matrix(&m, &m)?);
                Ok(Check::new(format!("positive definite on Π_3 {lname}"), pd && spec.is_valid()))
            }));
            for n in 1..=cfg.n_max {
                match verify_u_space_parts(&tail, d, k, n, &lam, false, true) {
                    Ok(mut t) => {
                        t.name = format!("{} {lname}", t.name);
                        v.child(t)
                    }
                    Err(e) => v.check(Check::error(format!("n={n} {lname}"), &e)),
                }
            }
        }
        if k == 1 {
            for n in 1..=cfg.n_max {
                let name = format!("blocks mutually orthogonal n={n}");
                v.check(guard(&name, || {
                    let blocks = u_blocks(&tail, d, k, n, &Lambdas::ones())?;
                    let spec = InnerProductSpec::sobolev(d, tail.clone(), k, Lambdas::ones())?;
                    let mut witness = None;
                    for i in 0..blocks.len() {
                        for j in i + 1..blocks.len() {
                            let a = blocks[i].basis.polys();
                            let g = spec.gram_matrix(&a, &blocks[j].basis.polys())?;
                            witness = witness.or(nonzero_row(&g, &a));
                        }
                    }
                    Ok(Check::new(name.clone(), witness.is_none())
                        .with_detail(format!("{} blocks", blocks.len()))
                        .witness(witness))
                }));
            }
        }
        root.child(v);
    }
    root
}
