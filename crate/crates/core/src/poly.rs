//! Sparse exact multivariate polynomials.
//!
//! Variables are addressed by 0-based index `0..d` in this API. Barycentric
//! coordinates (faces, permuted bases) use labels `1..=d+1`, where label
//! `d+1` stands for `1 - |x|`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{format_rational, int, parse_rational, Rational};

/// Exponent vector, ordered graded-lexicographically: first by total degree,
/// then lexicographically on the entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(d: usize) -> Self {
        MultiIndex(vec![0; d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `self - other` entrywise, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All multi-indices of length `d` and total degree exactly `n`, in
    /// graded-lex order.
    pub fn all_of_degree(d: usize, n: u32) -> Vec<MultiIndex> {
        fn rec(d: usize, n: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == d {
                prefix.push(n);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for k in 0..=n {
                prefix.push(k);
                rec(d, n - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if d == 0 {
            if n == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        rec(d, n, &mut Vec::with_capacity(d), &mut out);
        out
    }

    /// All multi-indices of length `d` with total degree `<= n`.
    pub fn all_up_to_degree(d: usize, n: u32) -> Vec<MultiIndex> {
        (0..=n).flat_map(|k| Self::all_of_degree(d, k)).collect()
    }

    /// Multi-indices `m` with `m <= self` componentwise.
    pub fn dominated(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::new()];
        for &n in &self.0 {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=n).map(move |k| {
                        let mut q = p.clone();
                        q.push(k);
                        q
                    })
                })
                .collect();
        }
        let mut out: Vec<MultiIndex> = out.into_iter().map(MultiIndex).collect();
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Polynomial in `dim` variables with exact rational coefficients. No zero
/// coefficient is ever stored, so structural equality is mathematical
/// equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(dim, MultiIndex::zero(dim), c)
    }

    pub fn monomial(dim: usize, exp: MultiIndex, c: Rational) -> Self {
        assert_eq!(exp.len(), dim, "exponent length must equal dimension");
        let mut p = Self::zero(dim);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(dim: usize, i: usize) -> Self {
        Self::monomial(dim, MultiIndex::unit(dim, i), Rational::one())
    }

    /// `1 - x_1 - ... - x_d`.
    pub fn one_minus_sum(dim: usize) -> Self {
        let mut p = Self::one(dim);
        for i in 0..dim {
            p.add_term(MultiIndex::unit(dim, i), -Rational::one());
        }
        p
    }

    /// Barycentric coordinate with label `1..=d+1`; label `d+1` is `1 - |x|`.
    pub fn barycentric(dim: usize, label: usize) -> Result<Self> {
        match label {
            l if l >= 1 && l <= dim => Ok(Self::var(dim, l - 1)),
            l if l == dim + 1 => Ok(Self::one_minus_sum(dim)),
            l => Err(Error::IndexOutOfRange {
                index: l,
                dim: dim + 1,
            }),
        }
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    pub fn coeff(&self, exp: &MultiIndex) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// True when every term has total degree exactly `n`.
    pub fn is_homogeneous(&self, n: u32) -> bool {
        self.terms.keys().all(|e| e.degree() == n)
    }

    pub fn add_term(&mut self, exp: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
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

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `∂f/∂x_i` with 0-based `i`.
    pub fn partial(&self, i: usize) -> Result<Self> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim,
            });
        }
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2.0[i] -= 1;
            out.add_term(e2, c * int(k as i64));
        }
        Ok(out)
    }

    /// Mixed derivative `∂^ν f`.
    pub fn partial_multi(&self, nu: &MultiIndex) -> Result<Self> {
        let mut out = self.clone();
        for (i, &k) in nu.0.iter().enumerate() {
            for _ in 0..k {
                out = out.partial(i)?;
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Composition `f(g_1, ..., g_d)`; every `g_i` must share one dimension,
    /// which becomes the dimension of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self> {
        if images.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: images.len(),
            });
        }
        let target = match images.first() {
            Some(g) => g.dim,
            None => {
                // Constant polynomial in zero variables.
                return Ok(self.clone());
            }
        };
        for g in images {
            if g.dim != target {
                return Err(Error::DimensionMismatch {
                    left: target,
                    right: g.dim,
                });
            }
        }
        // Cache powers per variable.
        let max_exp: Vec<u32> = (0..self.dim)
            .map(|i| self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Polynomial>> = images
            .iter()
            .zip(&max_exp)
            .map(|(g, &m)| {
                let mut v = vec![Polynomial::one(target)];
                for k in 1..=m as usize {
                    let next = &v[k - 1] * g;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// `f(x_{σ(1)}, ..., x_{σ(d)})` for a 0-based permutation `σ`.
    pub fn permute_variables(&self, sigma: &[usize]) -> Result<Self> {
        check_permutation(sigma, self.dim)?;
        let mut out = Polynomial::zero(self.dim);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; self.dim];
            for (i, &k) in e.0.iter().enumerate() {
                e2[sigma[i]] += k;
            }
            out.add_term(MultiIndex(e2), c.clone());
        }
        Ok(out)
    }

    /// `f(x_{s_1}, ..., x_{s_d})` where each `s_p` is a barycentric label in
    /// `1..=d+1` and `x_{d+1} = 1 - |x|`. Labels must be distinct.
    pub fn barycentric_substitute(&self, labels: &[usize]) -> Result<Self> {
        check_labels(labels, self.dim)?;
        let images = labels
            .iter()
            .map(|&l| Polynomial::barycentric(self.dim, l))
            .collect::<Result<Vec<_>>>()?;
        self.substitute(&images)
    }

    /// Restriction to a face of the simplex; see [`FaceId`].
    pub fn restrict_to_face(&self, face: &FaceId) -> Result<Self> {
        if face.dim != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: face.dim,
            });
        }
        let d = self.dim;
        let survivors = face.survivors();
        let e = face.face_dim();
        let mut images = vec![Polynomial::zero(e); d];
        if face.contains(d + 1) {
            let (last, rest) = survivors.split_last().expect("face has a survivor");
            for (p, &s) in rest.iter().enumerate() {
                images[s - 1] = Polynomial::var(e, p);
            }
            images[*last - 1] = Polynomial::one_minus_sum(e);
        } else {
            for (p, &s) in survivors.iter().enumerate() {
                images[s - 1] = Polynomial::var(e, p);
            }
        }
        self.substitute(&images)
    }

    /// Embed into a larger number of variables (new variables appended).
    pub fn extend_dim(&self, new_dim: usize) -> Self {
        assert!(new_dim >= self.dim);
        let mut out = Polynomial::zero(new_dim);
        for (e, c) in &self.terms {
            let mut v = e.0.clone();
            v.resize(new_dim, 0);
            out.add_term(MultiIndex(v), c.clone());
        }
        out
    }

    /// Coefficients against an explicit monomial list, as a dense row.
    pub fn coefficient_row(&self, monomials: &[MultiIndex]) -> Vec<Rational> {
        monomials.iter().map(|m| self.coeff(m)).collect()
    }

    /// Human-readable form in variables x, y, z (or x1..xd when d > 3).
    pub fn pretty(&self) -> String {
        self.to_string()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }
}

impl Polynomial {
    /// Parse an expression such as `1 - 2*x - y` or `(x1 + 1/2)^2*x2`.
    /// Variables are `x, y, z` (for `d <= 3`) or `x1..xd`; `/` only divides
    /// by constants.
    pub fn parse(dim: usize, text: &str) -> Result<Self> {
        let mut p = ExprParser { dim, chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let out = p.sum()?;
        if p.pos != p.chars.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(out)
    }
}

struct ExprParser {
    dim: usize,
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, what: &str) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Parse(format!("{what} at position {} in {text:?}", self.pos))
    }

    fn sum(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -self.product()?
            }
            Some('+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let rhs = self.power()?;
            if c == '*' {
                acc = &acc * &rhs;
            } else {
                match rhs.degree() {
                    Some(0) => acc = acc.scale(&(Rational::one() / rhs.coeff(&MultiIndex::zero(self.dim)))),
                    None => return Err(Error::ZeroDenominator("division by zero in polynomial expression".into())),
                    _ => return Err(self.error("division by a non-constant")),
                }
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let k: String = self.chars[start..self.pos].iter().collect();
            let k: u32 = k.parse().map_err(|_| self.error("expected an exponent"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let t: String = self.chars[start..self.pos].iter().collect();
                Ok(Polynomial::constant(self.dim, parse_rational(&t)?))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                (0..self.dim)
                    .find(|&i| variable_name(self.dim, i) == name || format!("x{}", i + 1) == name)
                    .map(|i| Polynomial::var(self.dim, i))
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?} for dimension {}", self.dim)))
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

pub(crate) fn check_permutation(sigma: &[usize], d: usize) -> Result<()> {
    if sigma.len() != d {
        return Err(Error::InvalidPermutation(format!(
            "length {} for dimension {d}",
            sigma.len()
        )));
    }
    let set: BTreeSet<usize> = sigma.iter().copied().collect();
    if set.len() != d || sigma.iter().any(|&s| s >= d) {
        return Err(Error::InvalidPermutation(format!("{sigma:?} is not a permutation")));
    }
    Ok(())
}

pub(crate) fn check_labels(labels: &[usize], d: usize) -> Result<()> {
    if labels.len() != d {
        return Err(Error::InvalidPermutation(format!(
            "{} labels for dimension {d}",
            labels.len()
        )));
    }
    let set: BTreeSet<usize> = labels.iter().copied().collect();
    if set.len() != d || labels.iter().any(|&l| l == 0 || l > d + 1) {
        return Err(Error::InvalidPermutation(format!(
            "{labels:?} must be distinct labels in 1..={}",
            d + 1
        )));
    }
    Ok(())
}

fn variable_name(dim: usize, i: usize) -> String {
    if dim <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Within a degree, show x before y before z.
        let mut ordered: Vec<(&MultiIndex, &Rational)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| b.0 .0.cmp(&a.0 .0)));
        let mut first = true;
        for (e, c) in ordered {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let vars: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let v = variable_name(self.dim, i);
                    if k == 1 {
                        v
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&a), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b> $tr<&'b Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            /// Panics on dimension mismatch; use the `checked_*` form to
            /// handle it.
            fn $method(self, rhs: &'b Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial dimensions must agree")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    d: usize,
    terms: Vec<TermJson>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            d: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.0.clone(),
                    coef: format_rational(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c = parse_rational(&t.coef).map_err(serde::de::Error::custom)?;
            terms.push((MultiIndex(t.exp), c));
        }
        Polynomial::from_terms(raw.d, terms).map_err(serde::de::Error::custom)
    }
}

/// Face of the simplex `T^d` on which the barycentric coordinates listed in
/// `zeroed` (labels `1..=d+1`) vanish.
///
/// Restriction parametrizes the face by the surviving coordinates in
/// increasing order. When label `d+1` is zeroed (`|x| = 1`), the
/// highest-index survivor is eliminated through `x_j = 1 - Σ others`, and it
/// plays the role of the face's own "last" barycentric coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId {
    dim: usize,
    zeroed: BTreeSet<usize>,
}

impl FaceId {
    pub fn new(dim: usize, zeroed: impl IntoIterator<Item = usize>) -> Result<Self> {
        let zeroed: BTreeSet<usize> = zeroed.into_iter().collect();
        if zeroed.iter().any(|&l| l == 0 || l > dim + 1) {
            return Err(Error::InvalidFace(format!(
                "labels {zeroed:?} must lie in 1..={}",
                dim + 1
            )));
        }
        if zeroed.len() > dim {
            return Err(Error::InvalidFace(format!(
                "cannot zero {} of {} coordinates",
                zeroed.len(),
                dim + 1
            )));
        }
        Ok(FaceId { dim, zeroed })
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn zeroed(&self) -> &BTreeSet<usize> {
        &self.zeroed
    }

    pub fn contains(&self, label: usize) -> bool {
        self.zeroed.contains(&label)
    }

    /// Dimension of the face, `d - |S|`.
    pub fn face_dim(&self) -> usize {
        self.dim - self.zeroed.len()
    }

    /// Labels in `1..=d` not zeroed, increasing.
    pub fn survivors(&self) -> Vec<usize> {
        (1..=self.dim).filter(|l| !self.zeroed.contains(l)).collect()
    }

    /// The ambient barycentric labels that become the face's barycentric
    /// coordinates `1..=e+1`, in order.
    pub fn face_labels(&self) -> Vec<usize> {
        let mut s = self.survivors();
        if !self.contains(self.dim + 1) {
            s.push(self.dim + 1);
        }
        s
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.zeroed.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn x() -> Polynomial {
        Polynomial::var(2, 0)
    }
    fn y() -> Polynomial {
        Polynomial::var(2, 1)
    }
    fn c(v: i64) -> Polynomial {
        Polynomial::constant(2, int(v))
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&x() * &x(), Polynomial::monomial(2, MultiIndex(vec![2, 0]), int(1)));
        assert_eq!(&x() + &Polynomial::zero(2), x());
        assert_eq!((&x() + &y()).scale(&int(2)), &x().scale(&int(2)) + &y().scale(&int(2)));
        assert!(x().checked_add(&Polynomial::var(3, 0)).is_err());
    }

    #[test]
    fn partial_examples() {
        let f = &(&x() * &x()) * &y();
        assert_eq!(f.partial(0).unwrap(), (&x() * &y()).scale(&int(2)));
        assert!(x().partial(1).unwrap().is_zero());
        let g = &(&c(1) - &x().scale(&int(2))) - &y();
        assert_eq!(g.partial(0).unwrap(), c(-2));
        assert!(x().partial(2).is_err());
    }

    #[test]
    fn restrict_examples() {
        let f = &(&c(1) - &x()) - &y().scale(&int(2));
        let face = FaceId::new(2, [1]).unwrap();
        let expect = &Polynomial::one(1) - &Polynomial::var(1, 0).scale(&int(2));
        assert_eq!(f.restrict_to_face(&face).unwrap(), expect);

        let top = FaceId::new(2, [3]).unwrap();
        assert!(Polynomial::one_minus_sum(2).restrict_to_face(&top).unwrap().is_zero());
        assert_eq!(c(7).restrict_to_face(&top).unwrap(), Polynomial::constant(1, int(7)));

        // On |x| = 1 the last survivor (y) is eliminated: y = 1 - x.
        let r = y().restrict_to_face(&top).unwrap();
        assert_eq!(r, Polynomial::one_minus_sum(1));

        // Vertex faces give constants in zero variables.
        let v = FaceId::new(2, [1, 2]).unwrap();
        let p = (&x() + &c(3)).restrict_to_face(&v).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.eval(&[]).unwrap(), int(3));
        let v1 = FaceId::new(2, [2, 3]).unwrap();
        assert_eq!((&x() + &c(3)).restrict_to_face(&v1).unwrap().eval(&[]).unwrap(), int(4));
    }

    #[test]
    fn permute_examples() {
        let f = &x() * &(&y() * &y());
        assert_eq!(f.permute_variables(&[1, 0]).unwrap(), &(&x() * &x()) * &y());
        assert_eq!(f.permute_variables(&[0, 1]).unwrap(), f);
        assert!(f.permute_variables(&[0, 0]).is_err());
    }

    #[test]
    fn barycentric_substitution() {
        // f(u1, u2) = u1 with labels (3, 2): 1 - x - y.
        let f = Polynomial::var(2, 0);
        assert_eq!(f.barycentric_substitute(&[3, 2]).unwrap(), Polynomial::one_minus_sum(2));
        assert!(f.barycentric_substitute(&[3, 3]).is_err());
    }

    #[test]
    fn display_and_json() {
        let f = &(&c(1) - &x().scale(&int(2))) - &y();
        assert_eq!(f.to_string(), "1 - 2*x - y");
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(
            j,
            r#"{"d":2,"terms":[{"exp":[0,0],"coef":"1"},{"exp":[0,1],"coef":"-1"},{"exp":[1,0],"coef":"-2"}]}"#
        );
        let back: Polynomial = serde_json::from_str(&j).unwrap();
        assert_eq!(back, f);
        let alt: Polynomial =
            serde_json::from_str(r#"{"d":2,"terms":[{"exp":[1,0],"coef":"-2/1"}]}"#).unwrap();
        assert_eq!(alt, x().scale(&int(-2)));
        assert_eq!(Polynomial::var(4, 3).scale(&rat(1, 2)).to_string(), "1/2*x4");
    }

    #[test]
    fn graded_lex_order() {
        let all = MultiIndex::all_up_to_degree(2, 2);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all.len(), 6);
        assert_eq!(MultiIndex::all_of_degree(3, 2).len(), 6);
    }

    fn arb_poly(d: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..3, d), -5i64..6, 1i64..4),
            0..5,
        )
        .prop_map(move |ts| {
            Polynomial::from_terms(d, ts.into_iter().map(|(e, p, q)| (MultiIndex(e), rat(p, q))))
                .unwrap()
        })
    }

    fn arb_point(d: usize) -> impl Strategy<Value = Vec<Rational>> {
        proptest::collection::vec((-6i64..7, 1i64..5).prop_map(|(p, q)| rat(p, q)), d)
    }

    proptest! {
        #[test]
        fn mixed_partials_commute(f in arb_poly(3), i in 0usize..3, j in 0usize..3) {
            let a = f.partial(i).unwrap().partial(j).unwrap();
            let b = f.partial(j).unwrap().partial(i).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn degree_is_additive(f in arb_poly(2), g in arb_poly(2)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!((&f * &g).degree().unwrap(), f.degree().unwrap() + g.degree().unwrap());
        }

        #[test]
        fn restriction_is_ring_hom(f in arb_poly(3), g in arb_poly(3), mask in 0usize..15) {
            let zeroed: Vec<usize> = (1..=4).filter(|l| mask & (1 << (l - 1)) != 0).collect();
            prop_assume!(zeroed.len() <= 3);
            let face = FaceId::new(3, zeroed).unwrap();
            let rf = f.restrict_to_face(&face).unwrap();
            let rg = g.restrict_to_face(&face).unwrap();
            prop_assert_eq!((&f + &g).restrict_to_face(&face).unwrap(), &rf + &rg);
            prop_assert_eq!((&f * &g).restrict_to_face(&face).unwrap(), &rf * &rg);
        }

        #[test]
        fn eval_is_ring_hom(f in arb_poly(2), g in arb_poly(2), p in arb_point(2)) {
            let fv = f.eval(&p).unwrap();
            let gv = g.eval(&p).unwrap();
            prop_assert_eq!((&f * &g).eval(&p).unwrap(), &fv * &gv);
            prop_assert_eq!((&f + &g).eval(&p).unwrap(), fv + gv);
        }

        #[test]
        fn permutation_inverse(f in arb_poly(3), which in 0usize..6) {
            let perms = [[0,1,2],[0,2,1],[1,0,2],[1,2,0],[2,0,1],[2,1,0]];
            let s = perms[which];
            let mut inv = [0usize; 3];
            for (i, &t) in s.iter().enumerate() { inv[t] = i; }
            let back = f.permute_variables(&s).unwrap().permute_variables(&inv).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn json_round_trip(f in arb_poly(3)) {
            let j = serde_json::to_string(&f).unwrap();
            let back: Polynomial = serde_json::from_str(&j).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}

#[cfg(test)]
mod parse_tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn parse_round_trips_display() {
        let p = Polynomial::parse(2, "1 - 2*x - y").unwrap();
        assert_eq!(p.to_string(), "1 - 2*x - y");
        let q = Polynomial::parse(3, "(x + 1/2)^2*z - 2/3*y").unwrap();
        assert_eq!(Polynomial::parse(3, &q.to_string()).unwrap(), q);
        assert_eq!(q.coeff(&MultiIndex(vec![0, 0, 1])), rat(1, 4));
        let r = Polynomial::parse(4, "x1*x4 - x2/2").unwrap();
        assert_eq!(Polynomial::parse(4, &r.to_string()).unwrap(), r);
    }

    #[test]
    fn parse_errors() {
        assert!(Polynomial::parse(2, "z").is_err());
        assert!(Polynomial::parse(2, "x/y").is_err());
        assert!(Polynomial::parse(2, "(x").is_err());
        assert!(Polynomial::parse(2, "x/0").is_err());
    }
}
