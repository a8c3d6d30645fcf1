//! The second-order operator `L_γ` whose eigenfunctions are the orthogonal
//! polynomials of the Jacobi weight on the simplex.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::poly::Polynomial;
use crate::weighted::ParamVector;

/// `L_γ f = Σ x_i(1-x_i) ∂_i² f - 2 Σ_{i<j} x_i x_j ∂_i∂_j f
///          + Σ (γ_i + 1 - (|γ|+d+1) x_i) ∂_i f`.
///
/// The operator is polynomial in `γ`, so any rational `γ` (including -1
/// entries) is accepted.
pub fn apply_l(gamma: &ParamVector, f: &Polynomial) -> Result<Polynomial> {
    let d = f.dim();
    if gamma.dim() != d {
        return Err(Error::DimensionMismatch {
            left: d,
            right: gamma.dim(),
        });
    }
    let xs: Vec<Polynomial> = (0..d).map(|i| Polynomial::var(d, i)).collect();
    let first: Vec<Polynomial> = (0..d).map(|i| f.partial(i)).collect::<Result<_>>()?;
    let total = gamma.sum() + int(d as i64 + 1);
    let one = Polynomial::one(d);
    let mut out = Polynomial::zero(d);
    for i in 0..d {
        let fii = first[i].partial(i)?;
        out = &out + &(&(&xs[i] * &(&one - &xs[i])) * &fii);
        for j in (i + 1)..d {
            let fij = first[i].partial(j)?;
            out = &out - &(&(&xs[i] * &xs[j]) * &fij).scale(&int(2));
        }
        let coef = &Polynomial::constant(d, &gamma.gamma()[i] + Rational::one())
            - &xs[i].scale(&total);
        out = &out + &(&coef * &first[i]);
    }
    Ok(out)
}

/// `-n(n + |γ| + d)`.
pub fn eigenvalue(gamma: &ParamVector, n: u32) -> Rational {
    let n = int(n as i64);
    -(&n * (&n + gamma.sum() + int(gamma.dim() as i64)))
}

/// True iff `L_γ f = -n(n+|γ|+d) f` exactly.
pub fn eigencheck(gamma: &ParamVector, f: &Polynomial, n: u32) -> Result<bool> {
    eigencheck_value(gamma, f, &eigenvalue(gamma, n))
}

/// True iff `L_γ f = λ f` exactly.
pub fn eigencheck_value(gamma: &ParamVector, f: &Polynomial, lambda: &Rational) -> Result<bool> {
    Ok((&apply_l(gamma, f)? - &f.scale(lambda)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{monomial_basis, rodrigue_basis};

    #[test]
    fn operator_examples() {
        let g0 = ParamVector::zeros(2);
        assert!(apply_l(&g0, &Polynomial::one(2)).unwrap().is_zero());
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = &(&Polynomial::one(2) - &x.scale(&int(2))) - &y;
        assert_eq!(apply_l(&g0, &p).unwrap(), p.scale(&int(-3)));
        let gm = ParamVector::from_ints(&[-1, -1, -1]);
        let f = &x + &Polynomial::constant(2, crate::exact::rat(2, 7));
        assert!(apply_l(&gm, &f).unwrap().is_zero());
        assert!(!eigencheck(&g0, &x, 2).unwrap());
    }

    #[test]
    fn bases_are_eigenfunctions() {
        let g0 = ParamVector::zeros(2);
        for n in 0..=4 {
            for b in [rodrigue_basis(&g0, n).unwrap(), monomial_basis(&g0, n).unwrap()] {
                for e in &b.elements {
                    assert!(eigencheck(&g0, &e.poly, n).unwrap(), "{}", e.label);
                }
            }
        }
    }
}
