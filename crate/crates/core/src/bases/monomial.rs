//! Monomial orthogonal polynomials `V_ν^γ = x^ν + lower-degree terms`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{binomial, int, pochhammer, Rational};
use crate::poly::{MultiIndex, Polynomial};
use crate::weighted::ParamVector;

use super::{Basis, Family};

/// `V_ν^γ(x) = Σ_{m ≤ ν} (-1)^{n+|m|} Π_i C(n_i,m_i) (γ_i+1)_{n_i}/(γ_i+1)_{m_i}
///             · (|γ|+d)_{n+|m|} / (|γ|+d)_{2n} · x^m`, with `n = |ν|`.
///
/// Only `|γ|` involves `γ_{d+1}`, so `γ_{d+1} = -1` is allowed.
pub fn monomial_poly(gamma: &ParamVector, nu: &MultiIndex) -> Result<Polynomial> {
    let d = gamma.dim();
    if nu.len() != d {
        return Err(Error::DimensionMismatch {
            left: d,
            right: nu.len(),
        });
    }
    let n = nu.degree();
    let base = gamma.sum() + int(d as i64);
    let den = pochhammer(&base, 2 * n);
    if den.is_zero() {
        return Err(Error::ZeroDenominator(format!(
            "(|γ|+d)_{{2n}} vanishes for γ = {gamma}, n = {n}"
        )));
    }
    let shifted: Vec<Rational> = gamma.gamma()[..d].iter().map(|g| g + int(1)).collect();
    let mut out = Polynomial::zero(d);
    for m in nu.dominated() {
        let mut c = pochhammer(&base, n + m.degree()) / &den;
        if (n + m.degree()) % 2 == 1 {
            c = -c;
        }
        for i in 0..d {
            let low = pochhammer(&shifted[i], m.0[i]);
            if low.is_zero() {
                return Err(Error::ZeroDenominator(format!(
                    "(γ_{}+1)_{} vanishes for γ = {gamma}",
                    i + 1,
                    m.0[i]
                )));
            }
            c *= binomial(nu.0[i], m.0[i]) * pochhammer(&shifted[i], nu.0[i]) / low;
        }
        out.add_term(m, c);
    }
    Ok(out)
}

/// `{V_ν^γ : |ν| = n}` in graded-lex order of `ν`.
pub fn monomial_basis(gamma: &ParamVector, n: u32) -> Result<Basis> {
    let d = gamma.dim();
    let mut b = Basis::new(d, n, gamma.clone(), Family::Monomial);
    for nu in MultiIndex::all_of_degree(d, n) {
        let p = monomial_poly(gamma, &nu)?;
        b.push(format!("V{nu}"), Some(&nu), p)?;
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::moments::inner_product;
    use num_traits::One;

    #[test]
    fn monomial_examples() {
        let x = Polynomial::var(2, 0);
        let g0 = ParamVector::zeros(2);
        assert_eq!(
            monomial_poly(&g0, &MultiIndex(vec![1, 0])).unwrap(),
            &x - &Polynomial::constant(2, rat(1, 3))
        );
        let g = ParamVector::from_ints(&[0, 0, -1]);
        assert_eq!(
            monomial_poly(&g, &MultiIndex(vec![1, 0])).unwrap(),
            &x - &Polynomial::constant(2, rat(1, 2))
        );
        let bad = ParamVector::from_ints(&[-1, 0, 0]);
        assert!(matches!(
            monomial_poly(&bad, &MultiIndex(vec![1, 0])),
            Err(Error::ZeroDenominator(_))
        ));
    }

    #[test]
    fn leading_coefficient_is_one_and_orthogonal() {
        let g = ParamVector::new(vec![rat(1, 2), int(1), rat(-1, 3)]).unwrap();
        for n in 0..=3 {
            for nu in MultiIndex::all_of_degree(2, n) {
                let v = monomial_poly(&g, &nu).unwrap();
                assert_eq!(v.coeff(&nu), Rational::one());
                assert!(v.terms().keys().all(|e| e == &nu || e.degree() < n));
                for m in MultiIndex::all_up_to_degree(2, n.saturating_sub(1)) {
                    if n == 0 {
                        break;
                    }
                    let q = Polynomial::monomial(2, m, Rational::one());
                    assert_eq!(inner_product(&v, &q, &g).unwrap(), int(0));
                }
            }
        }
    }
}
