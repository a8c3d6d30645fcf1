//! Rodrigue bases `P_ν^γ` on the simplex and their permuted variants.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::par;
use crate::poly::{check_labels, MultiIndex, Polynomial};
use crate::weighted::{Direction, ParamVector, WeightedForm};

use super::{Basis, Family};

/// `P_ν^γ = W_γ^{-1} ∂^ν [x^{γ+ν} (1-|x|)^{γ_{d+1}+|ν|}]`.
pub fn rodrigue_poly(gamma: &ParamVector, nu: &MultiIndex) -> Result<Polynomial> {
    let d = gamma.dim();
    let order: Vec<usize> = (1..=d).collect();
    permuted_poly(gamma, &order, nu)
}

/// Permuted Rodrigue polynomial for the ordered barycentric labels
/// `order = (s_1, …, s_d)`; `c` denotes the one label left out.
///
/// The bracket gives label `s_p` the exponent `γ_{s_p} + ν_p` and label `c`
/// the exponent `γ_c + |ν|`. The derivative in position `p` is the
/// derivative along the barycentric coordinate `u_p = x_{s_p}` when the
/// other `u`'s are held fixed:
/// `∂_{s_p}` if `c = d+1`, `-∂_c` if `s_p = d+1`, and `∂_{s_p} - ∂_c`
/// otherwise. The result is divided by `W_γ` in the original coordinates.
pub fn permuted_poly(gamma: &ParamVector, order: &[usize], nu: &MultiIndex) -> Result<Polynomial> {
    let d = gamma.dim();
    check_labels(order, d)?;
    if nu.len() != d {
        return Err(Error::DimensionMismatch {
            left: d,
            right: nu.len(),
        });
    }
    let c = (1..=d + 1)
        .find(|l| !order.contains(l))
        .expect("exactly one label is missing");
    let total = int(nu.degree() as i64);

    let mut exps = vec![Rational::one(); d + 1];
    for (p, &s) in order.iter().enumerate() {
        exps[s - 1] = gamma.at(s) + int(nu.0[p] as i64);
    }
    exps[c - 1] = gamma.at(c) + &total;
    let beta = exps.pop().expect("d+1 entries");
    let mut form = WeightedForm::term(Rational::one(), exps, beta);

    for (p, &s) in order.iter().enumerate() {
        let dir = if c == d + 1 {
            Direction::plus(s - 1)
        } else if s == d + 1 {
            Direction::minus(c - 1)
        } else {
            Direction::difference(s - 1, c - 1)
        };
        for _ in 0..nu.0[p] {
            form = form.directional_wdiff(&dir)?;
        }
    }
    form.divide_by_weight(gamma)
}

/// `{P_ν^γ : |ν| = n}` in graded-lex order of `ν`.
pub fn rodrigue_basis(gamma: &ParamVector, n: u32) -> Result<Basis> {
    let d = gamma.dim();
    let order: Vec<usize> = (1..=d).collect();
    build(gamma, &order, n, Family::Rodrigue, "P")
}

/// `{P_ν^{γ_S}(x_S) : |ν| = n}` expressed in the original variables.
pub fn permuted_basis(gamma: &ParamVector, order: &[usize], n: u32) -> Result<Basis> {
    check_labels(order, gamma.dim())?;
    build(
        gamma,
        order,
        n,
        Family::Permuted {
            order: order.to_vec(),
        },
        "P_S",
    )
}

fn build(gamma: &ParamVector, order: &[usize], n: u32, family: Family, tag: &str) -> Result<Basis> {
    let d = gamma.dim();
    let nus = MultiIndex::all_of_degree(d, n);
    let polys = par::try_map(&nus, |nu| permuted_poly(gamma, order, nu))?;
    let mut b = Basis::new(d, n, gamma.clone(), family);
    for (nu, p) in nus.iter().zip(polys) {
        b.push(format!("{tag}{nu}"), Some(nu), p)?;
    }
    Ok(b)
}

/// Triangle basis `P_{k,n}^{(α,β,γ)}(x,y)`, i.e. `ν = (k, n-k)`.
pub fn triangle_p(k: u32, n: u32, g: &ParamVector) -> Result<Polynomial> {
    rodrigue_poly(g, &MultiIndex(vec![k, n - k]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn xy() -> (Polynomial, Polynomial) {
        (Polynomial::var(2, 0), Polynomial::var(2, 1))
    }

    #[test]
    fn rodrigue_examples() {
        let (x, y) = xy();
        let one = Polynomial::one(2);
        let g0 = ParamVector::zeros(2);
        let p = rodrigue_poly(&g0, &MultiIndex(vec![1, 0])).unwrap();
        assert_eq!(p, &(&one - &x.scale(&int(2))) - &y);

        let g = ParamVector::from_ints(&[-1, 0, 0]);
        assert_eq!(rodrigue_poly(&g, &MultiIndex(vec![1, 0])).unwrap(), -&x);

        for gm in [g0, ParamVector::new(vec![rat(1, 2), int(3), rat(-1, 2)]).unwrap()] {
            let b = rodrigue_basis(&gm, 0).unwrap();
            assert_eq!(b.polys(), vec![one.clone()]);
        }
    }

    /// Dual route: Rodrigue in the variables `u` with permuted parameters,
    /// then substitute `u_p = x_{s_p}`.
    fn via_substitution(gamma: &ParamVector, order: &[usize], nu: &MultiIndex) -> Polynomial {
        let d = gamma.dim();
        let c = (1..=d + 1).find(|l| !order.contains(l)).unwrap();
        let mut labels = order.to_vec();
        labels.push(c);
        let gs = gamma.select(&labels);
        rodrigue_poly(&gs, nu).unwrap().barycentric_substitute(order).unwrap()
    }

    #[test]
    fn permuted_matches_substitution() {
        let g = ParamVector::new(vec![rat(1, 2), int(1), rat(2, 3), int(0)]).unwrap();
        let orders = [[2, 1, 3], [4, 1, 2], [1, 4, 3], [3, 2, 4], [4, 3, 1]];
        for order in orders {
            for n in 0..=3 {
                for nu in MultiIndex::all_of_degree(3, n) {
                    assert_eq!(
                        permuted_poly(&g, &order, &nu).unwrap(),
                        via_substitution(&g, &order, &nu),
                        "order {order:?} nu {nu}"
                    );
                }
            }
        }
    }

    #[test]
    fn triangle_q_and_r() {
        // Q_k^n = P_{k,n}^{(β,α,γ)}(y,x); R_k^n = P_{k,n}^{(γ,β,α)}(1-x-y, y).
        let (a, b, c) = (rat(1, 2), int(1), rat(1, 3));
        let g = ParamVector::new(vec![a.clone(), b.clone(), c.clone()]).unwrap();
        let gq = ParamVector::new(vec![b.clone(), a.clone(), c.clone()]).unwrap();
        let gr = ParamVector::new(vec![c.clone(), b.clone(), a.clone()]).unwrap();
        for n in 0..=3 {
            for k in 0..=n {
                let nu = MultiIndex(vec![k, n - k]);
                let q = triangle_p(k, n, &gq).unwrap().barycentric_substitute(&[2, 1]).unwrap();
                assert_eq!(permuted_poly(&g, &[2, 1], &nu).unwrap(), q);
                let r = triangle_p(k, n, &gr).unwrap().barycentric_substitute(&[3, 2]).unwrap();
                assert_eq!(permuted_poly(&g, &[3, 2], &nu).unwrap(), r);
            }
        }
        // R_0^1 at γ = 0 is x - y.
        let (x, y) = xy();
        assert_eq!(
            permuted_poly(&ParamVector::zeros(2), &[3, 2], &MultiIndex(vec![0, 1])).unwrap(),
            &x - &y
        );
    }

    #[test]
    fn permuted_rejects_bad_order() {
        let g = ParamVector::zeros(2);
        assert!(permuted_basis(&g, &[1, 1], 1).is_err());
        assert!(permuted_basis(&g, &[1, 4], 1).is_err());
        assert_eq!(permuted_basis(&g, &[3, 1], 0).unwrap().len(), 1);
    }
}
