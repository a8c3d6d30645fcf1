//! Jacobi polynomials: `P_n^{(α,β)}` on `[-1,1]`, `J_n^{(α,β)}` on `[0,1]`,
//! and the degenerate families at parameter -1.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, pochhammer, rat, Rational};
use crate::poly::{MultiIndex, Polynomial};
use crate::weighted::ParamVector;

use super::rodrigue::rodrigue_poly;

/// `J_n^{(α,β)}(t) = (1-t)^{-α} t^{-β} dⁿ/dtⁿ[(1-t)^{n+α} t^{n+β}]`.
///
/// This is the one-variable Rodrigue polynomial for the weight
/// `t^β (1-t)^α`, i.e. parameters `(β, α)`.
pub fn jacobi_shifted(n: u32, alpha: &Rational, beta: &Rational) -> Result<Polynomial> {
    let g = ParamVector::new(vec![beta.clone(), alpha.clone()])?;
    rodrigue_poly(&g, &MultiIndex(vec![n]))
}

/// Classical `P_n^{(α,β)}(x) = (-1)^n / n! · J_n^{(α,β)}((1+x)/2)`.
pub fn jacobi_p(n: u32, alpha: &Rational, beta: &Rational) -> Result<Polynomial> {
    let j = jacobi_shifted(n, alpha, beta)?;
    let t = (&Polynomial::one(1) + &Polynomial::var(1, 0)).scale(&rat(1, 2));
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    Ok(j.substitute(&[t])?.scale(&(sign / factorial(n))))
}

/// `h_n^{(α,β)}`, the normalized squared norm of `P_n^{(α,β)}`.
pub fn jacobi_norm(n: u32, alpha: &Rational, beta: &Rational) -> Result<Rational> {
    ParamVector::new(vec![alpha.clone(), beta.clone()])?.check_integrable()?;
    if n == 0 {
        // The displayed quotient is (α+β+1)/(α+β+1), which is 1 even where
        // α+β+1 = 0 by continuity.
        return Ok(Rational::one());
    }
    let one = Rational::one();
    let s = alpha + beta;
    let num = pochhammer(&(alpha + &one), n)
        * pochhammer(&(beta + &one), n)
        * (&s + int(n as i64) + &one);
    let den = factorial(n) * pochhammer(&(&s + int(2)), n) * (&s + int(2 * n as i64) + &one);
    if den.is_zero() {
        return Err(Error::ZeroDenominator(format!("h_{n} at ({alpha},{beta})")));
    }
    Ok(num / den)
}

/// The two degenerate parameter families on `[-1,1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degenerate {
    /// `(α, β) = (-1, β)`.
    AlphaMinusOne { beta: Rational },
    /// `(α, β) = (-1, -1)` with the free constant `μ` of `P_1 = x + μ`.
    BothMinusOne { mu: Rational },
}

impl Degenerate {
    /// `μ = (λ₂ - λ₁)/(λ₁ + λ₂)` for point masses `λ₁` at `1` and `λ₂` at `-1`.
    pub fn from_lambdas(l1: &Rational, l2: &Rational) -> Result<Self> {
        let s = l1 + l2;
        if s.is_zero() {
            return Err(Error::ZeroDenominator("λ₁ + λ₂ = 0".into()));
        }
        Ok(Degenerate::BothMinusOne { mu: (l2 - l1) / s })
    }
}

/// `P_n^{(-1,β)} = (n+β)/n · (x-1)/2 · P_{n-1}^{(1,β)}` with `P_0 = 1`;
/// `P_n^{(-1,-1)} = ¼(x²-1) P_{n-2}^{(1,1)}` with `P_0 = 1`, `P_1 = x + μ`.
pub fn jacobi_degenerate(n: u32, case: &Degenerate) -> Result<Polynomial> {
    let x = Polynomial::var(1, 0);
    let one = Polynomial::one(1);
    if n == 0 {
        return Ok(one);
    }
    match case {
        Degenerate::AlphaMinusOne { beta } => {
            let c = (beta + int(n as i64)) / int(n as i64);
            let half = (&x - &one).scale(&rat(1, 2));
            let p = jacobi_p(n - 1, &int(1), beta)?;
            Ok((&half * &p).scale(&c))
        }
        Degenerate::BothMinusOne { mu } => {
            if n == 1 {
                return Ok(&x + &Polynomial::constant(1, mu.clone()));
            }
            let q = (&(&x * &x) - &one).scale(&rat(1, 4));
            Ok(&q * &jacobi_p(n - 2, &int(1), &int(1))?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial_rational;
    use crate::moments::normalized_integral;

    fn poly1(coeffs: &[Rational]) -> Polynomial {
        Polynomial::from_terms(
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (MultiIndex(vec![k as u32]), c.clone())),
        )
        .unwrap()
    }

    /// Independent closed form:
    /// `P_n = Σ_s C(n+α, n-s) C(n+β, s) ((x-1)/2)^s ((x+1)/2)^{n-s}`.
    fn explicit_sum(n: u32, a: &Rational, b: &Rational) -> Polynomial {
        let x = Polynomial::var(1, 0);
        let one = Polynomial::one(1);
        let xm = (&x - &one).scale(&rat(1, 2));
        let xp = (&x + &one).scale(&rat(1, 2));
        let mut out = Polynomial::zero(1);
        for s in 0..=n {
            let c = binomial_rational(&(a + int(n as i64)), n - s)
                * binomial_rational(&(b + int(n as i64)), s);
            out = &out + &(&xm.pow(s) * &xp.pow(n - s)).scale(&c);
        }
        out
    }

    #[test]
    fn jacobi_examples() {
        let (a, b) = (rat(1, 3), rat(5, 2));
        assert_eq!(jacobi_p(0, &a, &b).unwrap(), Polynomial::one(1));
        // ((α+β+2)x + (α-β))/2
        let expect = poly1(&[(&a - &b) / int(2), (&a + &b + int(2)) / int(2)]);
        assert_eq!(jacobi_p(1, &a, &b).unwrap(), expect);
        assert_eq!(
            jacobi_p(2, &int(0), &int(0)).unwrap(),
            poly1(&[rat(-1, 2), int(0), rat(3, 2)])
        );
    }

    #[test]
    fn agrees_with_explicit_sum() {
        for n in 0..6 {
            for (a, b) in [(int(0), int(0)), (rat(1, 2), int(1)), (rat(-1, 3), rat(7, 4)), (int(-1), int(2))] {
                assert_eq!(jacobi_p(n, &a, &b).unwrap(), explicit_sum(n, &a, &b), "n={n} a={a} b={b}");
            }
        }
    }

    #[test]
    fn shifted_examples() {
        let (a, b) = (rat(2, 3), rat(1, 5));
        assert_eq!(jacobi_shifted(0, &a, &b).unwrap(), Polynomial::one(1));
        let expect = poly1(&[&b + int(1), -(&a + &b + int(2))]);
        assert_eq!(jacobi_shifted(1, &a, &b).unwrap(), expect);
        assert_eq!(jacobi_shifted(1, &int(0), &int(0)).unwrap(), poly1(&[int(1), int(-2)]));
    }

    /// Normalized integral over `[-1,1]` against `(1-x)^α(1+x)^β`, via
    /// `t = (1+x)/2` and the Dirichlet moments with parameters `(β, α)`.
    fn interval_integral(h: &Polynomial, a: &Rational, b: &Rational) -> Rational {
        let x_of_t = (&Polynomial::var(1, 0).scale(&int(2))) - &Polynomial::one(1);
        let ht = h.substitute(&[x_of_t]).unwrap();
        normalized_integral(&ht, &ParamVector::new(vec![b.clone(), a.clone()]).unwrap()).unwrap()
    }

    #[test]
    fn norms_match_integrals() {
        assert_eq!(jacobi_norm(0, &rat(3, 2), &int(7)).unwrap(), int(1));
        assert_eq!(jacobi_norm(1, &int(0), &int(0)).unwrap(), rat(1, 3));
        let vals = [int(0), rat(1, 2), int(1)];
        for a in &vals {
            for b in &vals {
                for n in 0..=3 {
                    let p = jacobi_p(n, a, b).unwrap();
                    assert_eq!(interval_integral(&(&p * &p), a, b), jacobi_norm(n, a, b).unwrap());
                    for m in 0..n {
                        let q = jacobi_p(m, a, b).unwrap();
                        assert_eq!(interval_integral(&(&p * &q), a, b), int(0));
                    }
                }
            }
        }
        assert!(jacobi_norm(1, &int(-1), &int(0)).is_err());
    }

    #[test]
    fn degenerate_examples() {
        let beta = rat(1, 2);
        let case = Degenerate::AlphaMinusOne { beta: beta.clone() };
        assert_eq!(jacobi_degenerate(0, &case).unwrap(), Polynomial::one(1));
        let both = Degenerate::from_lambdas(&int(2), &int(2)).unwrap();
        assert_eq!(jacobi_degenerate(1, &both).unwrap(), Polynomial::var(1, 0));
        assert_eq!(
            jacobi_degenerate(2, &both).unwrap(),
            poly1(&[rat(-1, 4), int(0), rat(1, 4)])
        );
        // The Rodrigue formula at α = -1 is a second, independent route.
        for n in 1..6 {
            assert_eq!(
                jacobi_degenerate(n, &case).unwrap(),
                jacobi_p(n, &int(-1), &beta).unwrap()
            );
        }
    }

    #[test]
    fn ode_holds() {
        // (1-x²)y'' + (β-α-(α+β+2)x)y' + n(n+α+β+1)y = 0, including α = -1.
        for (a, b) in [(int(0), int(0)), (rat(1, 2), int(3)), (int(-1), rat(2, 3)), (int(-1), int(-1))] {
            for n in 0..6u32 {
                let y = if a == int(-1) && b == int(-1) {
                    jacobi_degenerate(n, &Degenerate::BothMinusOne { mu: rat(1, 7) }).unwrap()
                } else {
                    jacobi_p(n, &a, &b).unwrap()
                };
                let x = Polynomial::var(1, 0);
                let one = Polynomial::one(1);
                let y1 = y.partial(0).unwrap();
                let y2 = y1.partial(0).unwrap();
                let lhs = &(&(&one - &(&x * &x)) * &y2)
                    + &(&(&Polynomial::constant(1, &b - &a) - &x.scale(&(&a + &b + int(2)))) * &y1);
                let lam = int(n as i64) * (int(n as i64) + &a + &b + int(1));
                let res = &lhs + &y.scale(&lam);
                assert!(res.is_zero(), "n={n} a={a} b={b}: {res}");
            }
        }
    }
}
