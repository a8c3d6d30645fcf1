//! Exact linear algebra over ℚ: rank by fraction-free (Bareiss)
//! elimination, determinants, leading principal minors and span solves.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::Rational;
use crate::poly::{MultiIndex, Polynomial};

pub type Matrix = Vec<Vec<Rational>>;

/// Scale a rational row by the lcm of its denominators.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect()
}

/// Rank of a rational matrix, computed with Bareiss elimination on
/// integer-scaled rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let nrows = m.len();
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..nrows {
            for j in (c + 1)..ncols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant by rational Gaussian elimination with pivoting.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for i in (c + 1)..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for j in c..n {
                let v = &a[c][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    det
}

/// The determinants of the leading `k×k` blocks, `k = 1..=n`.
///
/// Elimination without pivoting yields them as running products of pivots;
/// once a zero pivot appears the remaining minors are computed directly.
pub fn leading_principal_minors(m: &[Vec<Rational>]) -> Vec<Rational> {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut out = Vec::with_capacity(n);
    let mut running = Rational::one();
    for c in 0..n {
        let pivot = a[c][c].clone();
        if pivot.is_zero() {
            for k in (c + 1)..=n {
                let block: Matrix = m[..k].iter().map(|r| r[..k].to_vec()).collect();
                out.push(determinant(&block));
            }
            return out;
        }
        running *= &pivot;
        out.push(running.clone());
        for i in (c + 1)..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for j in c..n {
                let v = &a[c][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    out
}

/// Symmetric and every leading principal minor strictly positive.
pub fn is_positive_definite(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return false;
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return false;
            }
        }
    }
    leading_principal_minors(m).iter().all(|x| x.is_positive())
}

/// Solve `Σ_i c_i rows[i] = target`; `None` if `target` is not in the span.
/// When the rows are dependent, free coefficients are set to zero.
pub fn solve_combination(rows: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = rows.len();
    let ncols = target.len();
    // Augmented system: one equation per column, unknowns c_0..c_{k-1}.
    let mut a: Matrix = (0..ncols)
        .map(|j| {
            let mut eq: Vec<Rational> = rows.iter().map(|r| r[j].clone()).collect();
            eq.push(target[j].clone());
            eq
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..ncols).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for j in c..=k {
            a[r][j] *= &inv;
        }
        for i in 0..ncols {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=k {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|eq| !eq[k].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        sol[c] = a[row][k].clone();
    }
    Some(sol)
}

/// Union of the monomial supports, in graded-lex order.
pub fn support(polys: &[&Polynomial]) -> Vec<MultiIndex> {
    let set: BTreeSet<MultiIndex> = polys
        .iter()
        .flat_map(|p| p.terms().keys().cloned())
        .collect();
    set.into_iter().collect()
}

/// Dense coefficient matrix of polynomials over their joint support.
pub fn coefficient_matrix(polys: &[Polynomial]) -> Matrix {
    let refs: Vec<&Polynomial> = polys.iter().collect();
    let mons = support(&refs);
    polys.iter().map(|p| p.coefficient_row(&mons)).collect()
}

/// Dimension of the span of `polys`.
pub fn poly_rank(polys: &[Polynomial]) -> usize {
    if polys.is_empty() {
        return 0;
    }
    rank(&coefficient_matrix(polys))
}

/// Coefficients expressing `target` in `span(polys)`, if it lies there.
pub fn poly_in_span(polys: &[Polynomial], target: &Polynomial) -> Option<Vec<Rational>> {
    let mut refs: Vec<&Polynomial> = polys.iter().collect();
    refs.push(target);
    let mons = support(&refs);
    let rows: Matrix = polys.iter().map(|p| p.coefficient_row(&mons)).collect();
    solve_combination(&rows, &target.coefficient_row(&mons))
}

/// True when the two families span the same space.
pub fn same_span(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let ra = poly_rank(a);
    let rb = poly_rank(b);
    if ra != rb {
        return false;
    }
    let both: Vec<Polynomial> = a.iter().chain(b).cloned().collect();
    poly_rank(&both) == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[0, 1], &[1, 0]])), 2);
        assert_eq!(rank(&m(&[&[0, 0, 0]])), 0);
        let q = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(3, 2), int(1)]];
        assert_eq!(rank(&q), 1);
    }

    #[test]
    fn minors_and_definiteness() {
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(leading_principal_minors(&a), vec![int(2), int(3), int(4)]);
        assert!(is_positive_definite(&a));
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(leading_principal_minors(&b), vec![int(0), int(-1)]);
        assert!(!is_positive_definite(&b));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), int(-1));
    }

    #[test]
    fn solve_examples() {
        let rows = m(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(
            solve_combination(&rows, &[int(2), int(3), int(5)]),
            Some(vec![int(2), int(3)])
        );
        assert_eq!(solve_combination(&rows, &[int(1), int(1), int(1)]), None);
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(proptest::collection::vec((-3i64..4, 1i64..3), 4), 1..5)
            .prop_map(|rs| {
                rs.into_iter()
                    .map(|r| r.into_iter().map(|(p, q)| rat(p, q)).collect())
                    .collect()
            })
    }

    proptest! {
        #[test]
        fn rank_consistency(a in arb_matrix()) {
            // Row rank equals column rank; square matrices have full rank
            // exactly when the determinant is nonzero.
            let t: Matrix = (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect();
            prop_assert_eq!(rank(&a), rank(&t));
            if a.len() == a[0].len() {
                prop_assert_eq!(rank(&a) == a.len(), !determinant(&a).is_zero());
            }
        }

        #[test]
        fn solve_recovers_combination(a in arb_matrix(), c in proptest::collection::vec(-3i64..4, 5)) {
            let target: Vec<Rational> = (0..a[0].len())
                .map(|j| a.iter().zip(&c).map(|(r, &ci)| &r[j] * int(ci)).fold(int(0), |s, v| s + v))
                .collect();
            let sol = solve_combination(&a, &target).expect("in span");
            let back: Vec<Rational> = (0..a[0].len())
                .map(|j| a.iter().zip(&sol).map(|(r, ci)| &r[j] * ci).fold(int(0), |s, v| s + v))
                .collect();
            prop_assert_eq!(back, target);
        }
    }
}
