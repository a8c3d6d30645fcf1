//! Face subspaces `H_n^d` and the singular eigenspaces `U_n^d(W_{γ,-1_k})`.
//!
//! `U_n^d(W_{γ,-1_k})` is assembled block by block over the 0/1 patterns on
//! the singular positions `d-k+2, …, d+1`: a pattern with `j` ones
//! contributes `Π_{ones} x_ℓ · H_{n-j}` with the ones raised to parameter 1
//! and the zeros forming the zero set of the face space; the all-ones
//! pattern contributes the core block `x_{d-k+2}⋯x_{d+1} V_{n-k}(W_{γ,1_k})`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bases::{eigencheck_value, eigenvalue, monomials_up_to, permuted_poly, rodrigue_basis, Basis, Family};
use crate::error::{Error, Result};
use crate::exact::{binomial, format_rational, int, Rational};
use crate::linalg::poly_rank;
use crate::moments::vertex_eval;
use crate::par;
use crate::poly::{MultiIndex, Polynomial};
use crate::report::{Check, Verdict};
use crate::sobolev::{InnerProductSpec, Lambdas};
use crate::weighted::ParamVector;

/// A 0/1 pattern `ε` on the `k` singular positions `d-k+2, …, d+1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arrangement {
    pub d: usize,
    pub pattern: Vec<u8>,
}

impl Arrangement {
    pub fn new(d: usize, pattern: Vec<u8>) -> Result<Self> {
        let k = pattern.len();
        if k == 0 || k > d + 1 {
            return Err(Error::InvalidPattern(format!("pattern length {k} must lie in 1..={}", d + 1)));
        }
        if pattern.iter().any(|&e| e > 1) {
            return Err(Error::InvalidPattern(format!("{pattern:?} is not a 0/1 pattern")));
        }
        Ok(Arrangement { d, pattern })
    }

    /// Every distinct pattern of length `k` with `j` ones, lexicographic.
    pub fn all(d: usize, k: usize, j: usize) -> Result<Vec<Self>> {
        if j > k {
            return Err(Error::InvalidPattern(format!("j = {j} exceeds k = {k}")));
        }
        let mut out = Vec::new();
        for mask in 0u32..(1 << k) {
            if mask.count_ones() as usize == j {
                let pattern = (0..k).map(|p| ((mask >> (k - 1 - p)) & 1) as u8).collect();
                out.push(Arrangement::new(d, pattern)?);
            }
        }
        Ok(out)
    }

    pub fn k(&self) -> usize {
        self.pattern.len()
    }

    pub fn j(&self) -> usize {
        self.pattern.iter().filter(|&&e| e == 1).count()
    }

    fn label_at(&self, p: usize) -> usize {
        self.d + 2 - self.k() + p
    }

    /// Labels carrying a one: the factors of the multiplier.
    pub fn ones(&self) -> Vec<usize> {
        (0..self.k()).filter(|&p| self.pattern[p] == 1).map(|p| self.label_at(p)).collect()
    }

    /// Labels carrying a zero: the zero-index set `S_{k,j}`.
    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.k()).filter(|&p| self.pattern[p] == 0).map(|p| self.label_at(p)).collect()
    }

    /// `x_{j,k} = Π_{ℓ ∈ ones} x_ℓ` with `x_{d+1} = 1 - |x|`.
    pub fn multiplier(&self) -> Polynomial {
        self.ones().iter().fold(Polynomial::one(self.d), |acc, &l| {
            &acc * &Polynomial::barycentric(self.d, l).expect("label in range")
        })
    }

    /// `(γ, ε)`: the tail followed by the pattern.
    pub fn params(&self, tail: &[Rational]) -> Result<ParamVector> {
        if tail.len() + self.k() != self.d + 1 {
            return Err(Error::InvalidPattern(format!(
                "tail of length {} does not fit a pattern of length {} in dimension {}",
                tail.len(),
                self.k(),
                self.d
            )));
        }
        let mut g = tail.to_vec();
        g.extend(self.pattern.iter().map(|&e| int(e as i64)));
        ParamVector::new(g)
    }

    pub fn tag(&self) -> String {
        self.pattern.iter().map(|e| e.to_string()).collect()
    }
}

/// Permuted Rodrigue order realizing the face space with zero set `zero`:
/// zero labels first (`d+1` leading when present), then the free labels
/// except the complement `c`, which is `d+1` when free and otherwise the
/// largest free label.
pub fn face_space_order(d: usize, zero: &[usize]) -> Result<(Vec<usize>, usize)> {
    let mut z: Vec<usize> = zero.to_vec();
    z.sort_unstable();
    z.dedup();
    if z.len() != zero.len() || z.iter().any(|&l| l == 0 || l > d + 1) {
        return Err(Error::InvalidPattern(format!("bad zero set {zero:?} for d = {d}")));
    }
    let free: Vec<usize> = (1..=d + 1).filter(|l| !z.contains(l)).collect();
    let c = if free.contains(&(d + 1)) { d + 1 } else { *free.last().expect("|Z| <= d") };
    let mut order = Vec::with_capacity(d);
    if z.contains(&(d + 1)) {
        order.push(d + 1);
    }
    order.extend(z.iter().copied().filter(|&l| l != d + 1));
    order.extend(free.iter().copied().filter(|&l| l != c));
    Ok((order, c))
}

/// `H_{n,Z}^d(W_γ)`: permuted Rodrigue polynomials whose indices vanish on
/// the zero set `Z`, with the parameters on `Z` set to 0. Empty when
/// `|Z| >= d`.
pub fn face_space(gamma: &ParamVector, zero: &[usize], n: u32) -> Result<Basis> {
    let d = gamma.dim();
    let family = Family::HSpace { zero_set: zero.to_vec() };
    if zero.len() > d + 1 {
        return Err(Error::InvalidPattern(format!("zero set {zero:?} too large for d = {d}")));
    }
    if zero.len() >= d {
        return Ok(Basis::new(d, n, gamma.clone(), family));
    }
    let (order, _) = face_space_order(d, zero)?;
    let mut g = gamma.clone();
    for &l in zero {
        g = g.with(l, Rational::zero());
    }
    let free = d - zero.len();
    let nus: Vec<MultiIndex> = MultiIndex::all_of_degree(free, n)
        .into_iter()
        .map(|m| {
            let mut v = vec![0; zero.len()];
            v.extend(m.0);
            MultiIndex(v)
        })
        .collect();
    let polys = par::try_map(&nus, |nu| permuted_poly(&g, &order, nu))?;
    let mut b = Basis::new(d, n, g, family);
    for (nu, p) in nus.iter().zip(polys) {
        b.push(format!("H{nu}"), Some(nu), p)?;
    }
    Ok(b)
}

/// `H_n^d(W_{γ,ε})` for an arrangement `ε` over the tail `γ`.
pub fn h_space(tail: &[Rational], arrangement: &Arrangement, n: u32) -> Result<Basis> {
    face_space(&arrangement.params(tail)?, &arrangement.zero_set(), n)
}

/// One summand of the direct-sum decomposition of `U_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub name: String,
    pub pattern: Vec<u8>,
    pub basis: Basis,
}

fn check_tail(tail: &[Rational]) -> Result<()> {
    let m1 = -Rational::one();
    for (i, g) in tail.iter().enumerate() {
        if g <= &m1 {
            return Err(Error::NonIntegrableWeight {
                index: i + 1,
                value: format_rational(g),
            });
        }
    }
    Ok(())
}

/// `(γ, -1_k)`.
pub fn singular_params(tail: &[Rational], k: usize) -> Result<ParamVector> {
    let mut g = tail.to_vec();
    g.extend(std::iter::repeat(-Rational::one()).take(k));
    ParamVector::new(g)
}

/// Split `γ` into `(tail, k)` with `k` trailing `-1` entries; any other
/// entry `<= -1` is rejected.
pub fn split_singular(gamma: &ParamVector) -> Result<(Vec<Rational>, usize)> {
    let m1 = -int(1);
    let g = gamma.gamma();
    let k = g.iter().rev().take_while(|x| **x == m1).count();
    let tail = g[..g.len() - k].to_vec();
    if let Some(i) = tail.iter().position(|x| x <= &m1) {
        return Err(Error::NonIntegrableWeight {
            index: i + 1,
            value: format!(
                "{} (only a trailing block of -1 entries is supported; reorder with --family permuted)",
                format_rational(&tail[i])
            ),
        });
    }
    Ok((tail, k))
}

/// `c_j = -λ_{j,0} / (λ_{0,0} + Σ_i λ_{i,0})`, `j = 1..=d`.
pub fn vertex_constants(d: usize, lambdas: &Lambdas) -> Result<Vec<Rational>> {
    let total = (0..=d).fold(Rational::zero(), |s, j| s + lambdas.vertex(j));
    if total.is_zero() {
        return Err(Error::ZeroDenominator("sum of vertex weights λ_{j,0} is zero".into()));
    }
    Ok((1..=d).map(|j| -lambdas.vertex(j) / &total).collect())
}

/// The blocks of `U_n^d(W_{γ,-1_k})` in a fixed order: core block first,
/// then patterns by decreasing number of ones, lexicographic within.
pub fn u_blocks(tail: &[Rational], d: usize, k: usize, n: u32, lambdas: &Lambdas) -> Result<Vec<Block>> {
    if k == 0 || k > d + 1 {
        return Err(Error::InvalidArgument(format!("k = {k} must lie in 1..={}", d + 1)));
    }
    if tail.len() != d + 1 - k {
        return Err(Error::InvalidArgument(format!(
            "parameter tail has length {}, expected d+1-k = {}",
            tail.len(),
            d + 1 - k
        )));
    }
    check_tail(tail)?;
    let full = singular_params(tail, k)?;
    let mk = |name: String, pattern: Vec<u8>| Block {
        name,
        pattern,
        basis: Basis::new(d, n, full.clone(), Family::USpace { k }),
    };
    if n == 0 {
        let mut b = mk("constants".into(), vec![]);
        b.basis.push("1".into(), None, Polynomial::one(d))?;
        return Ok(vec![b]);
    }
    if k == d + 1 && n == 1 {
        let cs = vertex_constants(d, lambdas)?;
        let mut b = mk("vertex-adjusted linears".into(), vec![]);
        for (j, c) in cs.into_iter().enumerate() {
            let p = &Polynomial::var(d, j) + &Polynomial::constant(d, c);
            b.basis.push(format!("x{} + c{}", j + 1, j + 1), None, p)?;
        }
        return Ok(vec![b]);
    }
    let mut out = Vec::new();
    for j in (0..=k).rev() {
        if (n as usize) < j {
            continue;
        }
        for arr in Arrangement::all(d, k, j)? {
            let mult = arr.multiplier();
            let (inner, name) = if j == k {
                let b = rodrigue_basis(&arr.params(tail)?, n - k as u32)?;
                (b, format!("core x[{}]·V", arr.tag()))
            } else {
                if k - j >= d {
                    continue;
                }
                (h_space(tail, &arr, n - j as u32)?, format!("x[{}]·H", arr.tag()))
            };
            let mut block = mk(name, arr.pattern.clone());
            for e in inner.elements {
                let p = &mult * &e.poly;
                block.basis.push(format!("x[{}]·{}", arr.tag(), e.label), None, p)?;
            }
            if !block.basis.is_empty() {
                out.push(block);
            }
        }
    }
    Ok(out)
}

/// `U_n^d(W_{γ,-1_k})` as one basis (concatenated blocks).
pub fn u_space(tail: &[Rational], d: usize, k: usize, n: u32, lambdas: &Lambdas) -> Result<Basis> {
    let blocks = u_blocks(tail, d, k, n, lambdas)?;
    let mut b = Basis::new(d, n, singular_params(tail, k)?, Family::USpace { k });
    for bl in blocks {
        b.extend(bl.basis);
    }
    Ok(b)
}

/// `binom(n+d-1, n)`.
pub fn u_dimension(d: usize, n: u32) -> u32 {
    let v = binomial(n + d as u32 - 1, n);
    v.to_integer().try_into().expect("small dimension")
}

/// `-n(n + |γ| + d - k)`, i.e. the classical eigenvalue at `(γ, -1_k)`.
pub fn u_eigenvalue(tail: &[Rational], k: usize, n: u32) -> Result<Rational> {
    Ok(eigenvalue(&singular_params(tail, k)?, n))
}

/// Exact checks on `U_n^d(W_{γ,-1_k})`: eigen-equation, rank, orthogonality
/// to `Π_{n-1}` under `⟨·,·⟩_{γ,-1_k}`, and for `k = d+1` the form of the
/// eigenvalue and vanishing at the vertices.
pub fn verify_u_space(tail: &[Rational], d: usize, k: usize, n: u32, lambdas: &Lambdas) -> Result<Verdict> {
    verify_u_space_parts(tail, d, k, n, lambdas, true, true)
}

/// [`verify_u_space`] restricted to the structural checks (eigen-equation,
/// rank, vertex behaviour) and/or the orthogonality check.
pub fn verify_u_space_parts(
    tail: &[Rational],
    d: usize,
    k: usize,
    n: u32,
    lambdas: &Lambdas,
    structure: bool,
    orthogonality: bool,
) -> Result<Verdict> {
    let tail_s: Vec<String> = tail.iter().map(format_rational).collect();
    let mut v = Verdict::new(format!("U d={d} k={k} n={n} gamma=({})", tail_s.join(",")));
    let basis = u_space(tail, d, k, n, lambdas)?;
    let params = singular_params(tail, k)?;
    let lambda = u_eigenvalue(tail, k, n)?;

    if structure {
    let bad: Vec<Polynomial> = par::try_map(&basis.elements, |e| {
        eigencheck_value(&params, &e.poly, &lambda).map(|ok| (!ok).then(|| e.poly.clone()))
    })?
    .into_iter()
    .flatten()
    .collect();
    v.check(
        Check::new("eigen-equation", bad.is_empty())
            .with_detail(format!("L_(γ,-1_k) u = {} u", format_rational(&lambda)))
            .witness(bad.first().cloned()),
    );

    let rank = poly_rank(&basis.polys());
    let expected = u_dimension(d, n) as usize;
    v.check(
        Check::new("rank", rank == expected && basis.len() == expected)
            .with_detail(format!("rank {rank} of {} generators, expected {expected}", basis.len())),
    );

    }

    if orthogonality && n > 0 {
        let spec = InnerProductSpec::sobolev(d, tail.to_vec(), k, lambdas.clone())?;
        let lower = monomials_up_to(d, n - 1);
        let g = spec.gram_matrix(&basis.polys(), &lower.polys())?;
        let witness = g
            .iter()
            .position(|r| r.iter().any(|x| !x.is_zero()))
            .map(|i| basis.elements[i].poly.clone());
        v.check(
            Check::new("orthogonal to lower degree", witness.is_none())
                .with_detail(format!("{}×{} Gram against monomials of degree < {n}", g.len(), lower.len()))
                .witness(witness),
        );
    }

    if structure && k == d + 1 {
        let nn = int(n as i64);
        let expect = -(&nn * (&nn - int(1)));
        v.check(
            Check::new("all-singular eigenvalue", lambda == expect)
                .with_detail(format!("{} = -n(n-1)", format_rational(&lambda))),
        );
        if n >= 2 {
            let mut witness = None;
            for e in &basis.elements {
                for j in 0..=d {
                    if !vertex_eval(&e.poly, j)?.is_zero() && witness.is_none() {
                        witness = Some(e.poly.clone());
                    }
                }
            }
            v.check(Check::new("vanishes at vertices", witness.is_none()).witness(witness));
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn arrangements_are_distinct() {
        for k in 1..=4 {
            for j in 0..=k {
                let a = Arrangement::all(3, k, j).unwrap();
                assert_eq!(int(a.len() as i64), binomial(k as u32, j as u32));
            }
        }
        let a = Arrangement::new(3, vec![0, 1]).unwrap();
        assert_eq!(a.ones(), vec![4]);
        assert_eq!(a.zero_set(), vec![3]);
        assert!(Arrangement::new(2, vec![2]).is_err());
    }

    #[test]
    fn vertex_redefinition() {
        let u = u_space(&[], 2, 3, 1, &Lambdas::ones()).unwrap();
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let third = Polynomial::constant(2, rat(1, 3));
        assert_eq!(u.polys(), vec![&x - &third, &y - &third]);
    }

    #[test]
    fn block_sizes_all_singular_triangle() {
        let blocks = u_blocks(&[], 2, 3, 3, &Lambdas::ones()).unwrap();
        let sizes: Vec<usize> = blocks.iter().map(|b| b.basis.len()).collect();
        assert_eq!(sizes, vec![1, 1, 1, 1]);
    }

    #[test]
    fn face_space_dimension() {
        for d in 2..=3usize {
            let g = ParamVector::new(vec![rat(1, 2); d + 1]).unwrap();
            for z in 0..d {
                let zero: Vec<usize> = (d + 2 - z..=d + 1).collect();
                for n in 0..=3 {
                    let h = face_space(&g, &zero, n).unwrap();
                    let expect = binomial(n + (d - z) as u32 - 1, n);
                    assert_eq!(int(poly_rank(&h.polys()) as i64), expect);
                }
            }
        }
    }

    #[test]
    fn small_cases_verify() {
        for (d, k, tail) in [(2, 1, vec![int(0), int(0)]), (2, 2, vec![rat(1, 2)]), (2, 3, vec![])] {
            for n in 0..=3 {
                let v = verify_u_space(&tail, d, k, n, &Lambdas::ones()).unwrap();
                assert!(v.pass, "{}", v.pretty());
            }
        }
    }
}
