//! Functions of the form `Σ c · x^α (1-|x|)^β` with rational exponents,
//! closed under differentiation, and their division by a Jacobi weight.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{as_nonneg_integer, format_rational, int, parse_rational_list, Rational};
use crate::poly::{MultiIndex, Polynomial};

/// Weight parameters `γ = (γ_1, …, γ_{d+1})` of
/// `W_γ(x) = x_1^{γ_1} ⋯ x_d^{γ_d} (1-|x|)^{γ_{d+1}}`.
///
/// Entries are addressed by barycentric label `1..=d+1` via [`ParamVector::at`]
/// or by slice position via [`ParamVector::gamma`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamVector {
    #[serde(with = "crate::exact::serde_rational_vec")]
    gamma: Vec<Rational>,
}

impl ParamVector {
    /// Parameters for dimension `gamma.len() - 1`. A single entry describes
    /// a point (dimension 0).
    pub fn new(gamma: Vec<Rational>) -> Result<Self> {
        if gamma.is_empty() {
            return Err(Error::InvalidArgument("parameter vector must be nonempty".into()));
        }
        Ok(ParamVector { gamma })
    }

    pub fn from_ints(gamma: &[i64]) -> Self {
        ParamVector {
            gamma: gamma.iter().map(|&g| int(g)).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_rational_list(text)?)
    }

    pub fn zeros(d: usize) -> Self {
        ParamVector {
            gamma: vec![Rational::zero(); d + 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.gamma.len() - 1
    }

    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    /// Entry with barycentric label `1..=d+1`.
    pub fn at(&self, label: usize) -> &Rational {
        &self.gamma[label - 1]
    }

    /// `γ_{d+1}`.
    pub fn last(&self) -> &Rational {
        self.gamma.last().expect("nonempty")
    }

    /// `|γ| = γ_1 + … + γ_{d+1}`.
    pub fn sum(&self) -> Rational {
        self.gamma.iter().fold(Rational::zero(), |a, g| a + g)
    }

    /// Labels with `γ_i = -1`.
    pub fn singular_mask(&self) -> Vec<usize> {
        let m1 = -Rational::one();
        (1..=self.gamma.len()).filter(|&l| self.gamma[l - 1] == m1).collect()
    }

    pub fn is_integrable(&self) -> bool {
        let m1 = -Rational::one();
        self.gamma.iter().all(|g| g > &m1)
    }

    pub fn check_integrable(&self) -> Result<()> {
        let m1 = -Rational::one();
        match self.gamma.iter().position(|g| g <= &m1) {
            None => Ok(()),
            Some(i) => Err(Error::NonIntegrableWeight {
                index: i + 1,
                value: format_rational(&self.gamma[i]),
            }),
        }
    }

    /// Copy with entry `label` replaced.
    pub fn with(&self, label: usize, value: Rational) -> Self {
        let mut g = self.gamma.clone();
        g[label - 1] = value;
        ParamVector { gamma: g }
    }

    /// Copy with `delta` added to entry `label`.
    pub fn shifted(&self, label: usize, delta: &Rational) -> Self {
        let mut g = self.gamma.clone();
        g[label - 1] += delta;
        ParamVector { gamma: g }
    }

    /// Parameters reordered to follow the given barycentric labels.
    pub fn select(&self, labels: &[usize]) -> Self {
        ParamVector {
            gamma: labels.iter().map(|&l| self.gamma[l - 1].clone()).collect(),
        }
    }

    /// Concatenate a tail onto this vector (used to form `(γ, -1_k)`).
    pub fn concat(&self, tail: &[Rational]) -> Self {
        let mut g = self.gamma.clone();
        g.extend_from_slice(tail);
        ParamVector { gamma: g }
    }
}

impl fmt::Display for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gamma.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A signed combination of partial derivatives `Σ c_i ∂_i` (0-based `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction(pub Vec<(usize, Rational)>);

impl Direction {
    pub fn plus(i: usize) -> Self {
        Direction(vec![(i, Rational::one())])
    }

    pub fn minus(i: usize) -> Self {
        Direction(vec![(i, -Rational::one())])
    }

    /// `∂_i - ∂_j`.
    pub fn difference(i: usize, j: usize) -> Self {
        Direction(vec![(i, Rational::one()), (j, -Rational::one())])
    }

    /// Apply to a polynomial.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(f.dim());
        for (i, c) in &self.0 {
            out = &out + &f.partial(*i)?.scale(c);
        }
        Ok(out)
    }
}

type TermKey = (Vec<Rational>, Rational);

/// Finite sum `Σ c · x^α (1-|x|)^β`, like terms merged and zeros dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedForm {
    dim: usize,
    terms: BTreeMap<TermKey, Rational>,
}

impl WeightedForm {
    pub fn zero(dim: usize) -> Self {
        WeightedForm {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// Single term `coef · x^alpha (1-|x|)^beta`.
    pub fn term(coef: Rational, alpha: Vec<Rational>, beta: Rational) -> Self {
        let mut f = Self::zero(alpha.len());
        f.add_term(alpha, beta, coef);
        f
    }

    /// The bracket `x^{γ+ν}(1-|x|)^{γ_{d+1}+|ν|}` of the Rodrigue formula.
    pub fn rodrigue_bracket(gamma: &ParamVector, nu: &MultiIndex) -> Self {
        let d = gamma.dim();
        let alpha = (0..d)
            .map(|i| &gamma.gamma()[i] + int(nu.0[i] as i64))
            .collect();
        let beta = gamma.last() + int(nu.degree() as i64);
        Self::term(Rational::one(), alpha, beta)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate `(coef, α, β)`.
    pub fn iter(&self) -> impl Iterator<Item = (&Rational, &[Rational], &Rational)> {
        self.terms.iter().map(|((a, b), c)| (c, a.as_slice(), b))
    }

    fn add_term(&mut self, alpha: Vec<Rational>, beta: Rational, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((alpha, beta)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), c * s);
        }
        out
    }

    /// `∂_i` (0-based), termwise:
    /// `∂_i[x^α(1-|x|)^β] = α_i x^{α-e_i}(1-|x|)^β - β x^α(1-|x|)^{β-1}`.
    pub fn wdiff(&self, i: usize) -> Result<Self> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim,
            });
        }
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            if !a[i].is_zero() {
                let mut a2 = a.clone();
                a2[i] -= Rational::one();
                out.add_term(a2, b.clone(), c * &a[i]);
            }
            if !b.is_zero() {
                out.add_term(a.clone(), b - Rational::one(), -(c * b));
            }
        }
        Ok(out)
    }

    pub fn directional_wdiff(&self, dir: &Direction) -> Result<Self> {
        let mut out = Self::zero(self.dim);
        for (i, c) in &dir.0 {
            out = out.add(&self.wdiff(*i)?.scale(c));
        }
        Ok(out)
    }

    /// Multiply by `W_γ^{-1}` and expand into a polynomial. Every residual
    /// exponent must be a nonnegative integer.
    pub fn divide_by_weight(&self, gamma: &ParamVector) -> Result<Polynomial> {
        if gamma.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: gamma.dim(),
            });
        }
        let d = self.dim;
        let base = Polynomial::one_minus_sum(d);
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(d)];
        let mut out = Polynomial::zero(d);
        for ((a, b), c) in &self.terms {
            let mut exps = Vec::with_capacity(d);
            for i in 0..d {
                let r = &a[i] - &gamma.gamma()[i];
                exps.push(residual(&r)?);
            }
            let m = residual(&(b - gamma.last()))? as usize;
            while powers.len() <= m {
                let next = powers.last().unwrap() * &base;
                powers.push(next);
            }
            let mono = Polynomial::monomial(d, MultiIndex(exps), c.clone());
            out = &out + &(&mono * &powers[m]);
        }
        Ok(out)
    }
}

fn residual(r: &Rational) -> Result<u32> {
    as_nonneg_integer(r).ok_or_else(|| Error::NonPolynomialQuotient {
        exponent: format_rational(r),
    })
}

impl fmt::Display for WeightedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let al: Vec<String> = a.iter().map(format_rational).collect();
                let sign = if c.is_negative() { "-" } else { "" };
                format!(
                    "{sign}{}·x^({})·(1-|x|)^{}",
                    format_rational(&c.abs()),
                    al.join(","),
                    format_rational(b)
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    #[test]
    fn wdiff_examples() {
        // ∂₁[x₁(1-|x|)] = (1-|x|) - x₁, d = 2.
        let f = WeightedForm::term(int(1), vec![int(1), int(0)], int(1));
        let g = f.wdiff(0).unwrap();
        let expect = WeightedForm::term(int(1), vec![int(0), int(0)], int(1))
            .add(&WeightedForm::term(int(-1), vec![int(1), int(0)], int(0)));
        assert_eq!(g, expect);

        let c = WeightedForm::term(int(5), vec![int(0)], int(0));
        assert!(c.wdiff(0).unwrap().is_zero());

        let h = WeightedForm::term(int(1), vec![rat(1, 2)], int(0));
        assert_eq!(
            h.wdiff(0).unwrap(),
            WeightedForm::term(rat(1, 2), vec![rat(-1, 2)], int(0))
        );
    }

    #[test]
    fn directional_examples() {
        let xy = WeightedForm::term(int(1), vec![int(1), int(1)], int(0));
        let got = xy.directional_wdiff(&Direction::difference(0, 1)).unwrap();
        let expect = WeightedForm::term(int(1), vec![int(0), int(1)], int(0))
            .add(&WeightedForm::term(int(-1), vec![int(1), int(0)], int(0)));
        assert_eq!(got, expect);

        let y2 = WeightedForm::term(int(1), vec![int(0), int(2)], int(0));
        assert_eq!(
            y2.directional_wdiff(&Direction::minus(1)).unwrap(),
            WeightedForm::term(int(-2), vec![int(0), int(1)], int(0))
        );

        let s = WeightedForm::term(int(1), vec![int(0), int(0)], rat(7, 3));
        assert!(s.directional_wdiff(&Direction::difference(0, 1)).unwrap().is_zero());
    }

    #[test]
    fn divide_examples() {
        let g = ParamVector::new(vec![rat(1, 3), rat(2, 5)]).unwrap();
        let f = WeightedForm::term(int(1), vec![rat(4, 3)], rat(2, 5));
        assert_eq!(f.divide_by_weight(&g).unwrap(), Polynomial::var(1, 0));

        let f = WeightedForm::term(int(1), vec![int(1), int(0)], int(1));
        let p = f.wdiff(0).unwrap().divide_by_weight(&ParamVector::zeros(2)).unwrap();
        let expect = &(&Polynomial::one(2) - &Polynomial::var(2, 0).scale(&int(2)))
            - &Polynomial::var(2, 1);
        assert_eq!(p, expect);

        let bad = WeightedForm::term(int(1), vec![rat(1, 2)], int(0));
        assert!(matches!(
            bad.divide_by_weight(&ParamVector::zeros(1)),
            Err(Error::NonPolynomialQuotient { .. })
        ));
        let neg = WeightedForm::term(int(1), vec![int(-1)], int(0));
        assert!(neg.divide_by_weight(&ParamVector::zeros(1)).is_err());
    }

    #[test]
    fn params() {
        let g = ParamVector::parse("0,-1,1/2,-1").unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.singular_mask(), vec![2, 4]);
        assert!(!g.is_integrable());
        assert!(matches!(
            g.check_integrable(),
            Err(Error::NonIntegrableWeight { index: 2, .. })
        ));
        assert_eq!(g.sum(), rat(-3, 2));
        assert_eq!(g.to_string(), "(0,-1,1/2,-1)");
    }

    fn arb_gamma(d: usize) -> impl Strategy<Value = ParamVector> {
        proptest::collection::vec((-2i64..9, 1i64..4), d + 1).prop_map(|v| {
            ParamVector::new(v.into_iter().map(|(p, q)| rat(p, q)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn wdiff_commutes(g in arb_gamma(3), i in 0usize..3, j in 0usize..3) {
            let nu = MultiIndex(vec![1, 2, 1]);
            let f = WeightedForm::rodrigue_bracket(&g, &nu);
            let a = f.wdiff(i).unwrap().wdiff(j).unwrap();
            let b = f.wdiff(j).unwrap().wdiff(i).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn rodrigue_degree(g in arb_gamma(2), a in 0u32..3, b in 0u32..3) {
            let nu = MultiIndex(vec![a, b]);
            let mut f = WeightedForm::rodrigue_bracket(&g, &nu);
            for _ in 0..a { f = f.wdiff(0).unwrap(); }
            for _ in 0..b { f = f.wdiff(1).unwrap(); }
            let p = f.divide_by_weight(&g).unwrap();
            // For integrable weights the leading part never cancels; outside
            // that range Pochhammer factors may vanish and the degree drop.
            if g.is_integrable() {
                prop_assert_eq!(p.degree(), Some(a + b));
            } else {
                prop_assert!(p.degree().unwrap_or(0) <= a + b);
            }
        }
    }
}
