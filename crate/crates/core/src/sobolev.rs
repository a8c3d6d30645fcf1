//! Inner products: the classical `⟨·,·⟩_γ`, the derivative products
//! `[·,·]_γ`, the Sobolev forms `⟨·,·⟩_{γ,-1_k}`, the named triangle forms and
//! the two one-variable degenerate products.
//!
//! Every form is a list of [`Term`]s. Each integral is normalized by the
//! total mass of its own weight (a Dirichlet constant), which only rescales
//! the free coefficients `λ` and keeps every value rational.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bases::{Basis, Family};
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, pochhammer, rat, Rational};
use crate::linalg::{is_positive_definite, Matrix};
use crate::moments::{face_params, normalized_integral, vertex_eval};
use crate::par;
use crate::poly::{FaceId, Polynomial};
use crate::weighted::{Direction, ParamVector};

/// Where a term integrates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    /// The full simplex `T^d`.
    Simplex,
    /// A face, parametrized as in [`Polynomial::restrict_to_face`].
    Face(FaceId),
    /// An explicit affine parametrization from `T^e` into the ambient space,
    /// given as the images of the ambient variables.
    Chart(Vec<Polynomial>),
    /// Vertex `e_j` (`e_0` the origin).
    Vertex(usize),
    /// An arbitrary point.
    Point(Vec<Rational>),
}

/// One summand `coef · ∫_D (Df)(Dg) · factor · w_params`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: Rational,
    /// Derivatives applied in sequence to both arguments.
    pub derivs: Vec<Direction>,
    /// Polynomial multiplier of the integrand, in ambient variables.
    pub factor: Option<Polynomial>,
    pub domain: Domain,
    /// Weight parameters on the domain (ignored for point terms).
    pub params: ParamVector,
    pub label: String,
}

impl Term {
    fn simplex(coef: Rational, derivs: Vec<Direction>, factor: Option<Polynomial>, params: ParamVector, label: String) -> Self {
        Term {
            coef,
            derivs,
            factor,
            domain: Domain::Simplex,
            params,
            label,
        }
    }

    fn is_point(&self) -> bool {
        matches!(self.domain, Domain::Vertex(_) | Domain::Point(_))
    }

    /// Human-readable normalization of this term.
    pub fn normalization(&self) -> String {
        if self.is_point() {
            return format!("{}: point evaluation, no normalization", self.label);
        }
        let p = &self.params;
        let e = p.dim();
        let num = format!("Γ({}+{})", format_rational(&p.sum()), e + 1);
        let den: Vec<String> = p
            .gamma()
            .iter()
            .map(|g| format!("Γ({}+1)", format_rational(g)))
            .collect();
        format!(
            "{}: integral multiplied by {} / ({})",
            self.label,
            num,
            den.join("·")
        )
    }

    fn apply_derivs(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut out = f.clone();
        for d in &self.derivs {
            out = d.apply(&out)?;
        }
        Ok(out)
    }

    /// Derivatives applied, optionally multiplied by the factor, and moved
    /// to the term's domain.
    fn prepare(&self, f: &Polynomial, with_factor: bool) -> Result<Prepared> {
        let mut p = self.apply_derivs(f)?;
        if with_factor {
            if let Some(fac) = &self.factor {
                p = p.checked_mul(fac)?;
            }
        }
        Ok(match &self.domain {
            Domain::Simplex => Prepared::Poly(p),
            Domain::Face(face) => Prepared::Poly(p.restrict_to_face(face)?),
            Domain::Chart(images) => Prepared::Poly(p.substitute(images)?),
            Domain::Vertex(j) => Prepared::Value(vertex_eval(&p, *j)?),
            Domain::Point(x) => Prepared::Value(p.eval(x)?),
        })
    }

    fn pair(&self, a: &Prepared, b: &Prepared) -> Result<Rational> {
        let v = match (a, b) {
            (Prepared::Value(x), Prepared::Value(y)) => x * y,
            (Prepared::Poly(x), Prepared::Poly(y)) => {
                if x.is_zero() || y.is_zero() {
                    Rational::zero()
                } else {
                    normalized_integral(&x.checked_mul(y)?, &self.params)?
                }
            }
            _ => unreachable!("both sides prepared by the same term"),
        };
        Ok(&self.coef * v)
    }

    /// This term evaluated on `(f, g)`.
    pub fn evaluate(&self, f: &Polynomial, g: &Polynomial) -> Result<Rational> {
        if self.coef.is_zero() {
            return Ok(Rational::zero());
        }
        self.pair(&self.prepare(f, true)?, &self.prepare(g, false)?)
    }
}

enum Prepared {
    Poly(Polynomial),
    Value(Rational),
}

/// `λ` values of the Sobolev forms. Missing entries default to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Lambdas {
    /// `λ` (boundary term; vertex term when `k = d`).
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub main: Option<Rational>,
    /// `λ_i`, `i = 1, 2, …`.
    #[serde(default, skip_serializing_if = "Vec::is_empty", with = "crate::exact::serde_rational_vec")]
    pub coords: Vec<Rational>,
    /// `λ_I` keyed by the sorted index set `I` (1-based labels).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subsets: Vec<SubsetLambda>,
    /// `λ_{j,0}`, `j = 0..=d`.
    #[serde(default, skip_serializing_if = "Vec::is_empty", with = "crate::exact::serde_rational_vec")]
    pub vertices: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetLambda {
    pub set: Vec<usize>,
    #[serde(with = "crate::exact::serde_rational")]
    pub value: Rational,
}

mod opt_rational {
    use crate::exact::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let t = Option::<String>::deserialize(d)?;
        t.map(|t| parse_rational(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

impl Lambdas {
    pub fn ones() -> Self {
        Self::default()
    }

    pub fn main(&self) -> Rational {
        self.main.clone().unwrap_or_else(Rational::one)
    }

    pub fn coord(&self, i: usize) -> Rational {
        self.coords.get(i - 1).cloned().unwrap_or_else(Rational::one)
    }

    pub fn subset(&self, set: &[usize]) -> Rational {
        let mut key = set.to_vec();
        key.sort_unstable();
        self.subsets
            .iter()
            .find(|s| s.set == key)
            .map(|s| s.value.clone())
            .unwrap_or_else(Rational::one)
    }

    pub fn vertex(&self, j: usize) -> Rational {
        self.vertices.get(j).cloned().unwrap_or_else(Rational::one)
    }

    pub fn set_subset(&mut self, set: &[usize], value: Rational) {
        let mut key = set.to_vec();
        key.sort_unstable();
        self.subsets.retain(|s| s.set != key);
        self.subsets.push(SubsetLambda { set: key, value });
        self.subsets.sort_by(|a, b| a.set.cmp(&b.set));
    }

    fn all_values(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.main.iter().cloned().collect();
        v.extend(self.coords.iter().cloned());
        v.extend(self.subsets.iter().map(|s| s.value.clone()));
        v.extend(self.vertices.iter().cloned());
        v
    }
}

/// The triangle forms written out with explicit edge parametrizations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum D2Named {
    /// `⟨·,·⟩_{α,β,-1}`.
    AlphaBetaM1 {
        #[serde(with = "crate::exact::serde_rational")]
        alpha: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        beta: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        lambda1: Rational,
    },
    /// `⟨·,·⟩_{α,-1,-1}`.
    AlphaM1M1 {
        #[serde(with = "crate::exact::serde_rational")]
        alpha: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        lambda1: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        lambda10: Rational,
    },
    /// `⟨·,·⟩_{-1,-1,-1}`.
    AllM1 {
        #[serde(with = "crate::exact::serde_rational")]
        lambda1: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        lambda2: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        lambda10: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        lambda01: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        lambda00: Rational,
    },
    /// `⟨·,·⟩_{-1,-1,γ}`.
    M1M1Gamma {
        #[serde(with = "crate::exact::serde_rational")]
        gamma: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        lambda1: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        lambda2: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        lambda00: Rational,
    },
}

/// One-variable products on `[-1,1]` for the degenerate Jacobi families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Jacobi1d {
    /// `λ f(1)g(1) + ∫ (x+1)^{β+1} f'g'`.
    AlphaMinusOne {
        #[serde(with = "crate::exact::serde_rational")]
        beta: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        lambda: Rational,
    },
    /// `λ₁ f(1)g(1) + λ₂ f(-1)g(-1) + ∫ f'g'`.
    BothMinusOne {
        #[serde(with = "crate::exact::serde_rational")]
        lambda1: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        lambda2: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecKind {
    Classical {
        gamma: ParamVector,
    },
    /// `⟨f,g⟩_γ + Σ_{|S| ≤ m} λ_S ∫ ∂^S f ∂^S g Π_{i∈S} x_i (1-|x|)^{|S|} W_γ`.
    Epd {
        gamma: ParamVector,
        m: usize,
        lambdas: Lambdas,
    },
    /// `⟨·,·⟩_{γ,-1_k}` with `γ` the tail of length `d+1-k`.
    Sobolev {
        #[serde(with = "crate::exact::serde_rational_vec")]
        tail: Vec<Rational>,
        k: usize,
        lambdas: Lambdas,
    },
    D2Named(D2Named),
    Jacobi1d(Jacobi1d),
}

/// Description of an inner product on polynomials in `dim` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InnerProductSpec {
    pub dim: usize,
    pub kind: SpecKind,
}

fn vec_params(v: Vec<Rational>) -> ParamVector {
    ParamVector::new(v).expect("nonempty parameter list")
}

fn zeros(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

/// All subsets of `items` of the given size, in lexicographic order.
pub fn subsets_of_size(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, size, 0, &mut Vec::new(), &mut out);
    out
}

fn partials(labels: &[usize]) -> Vec<Direction> {
    labels.iter().map(|&l| Direction::plus(l - 1)).collect()
}

fn set_label(set: &[usize]) -> String {
    let parts: Vec<String> = set.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl InnerProductSpec {
    pub fn classical(gamma: ParamVector) -> Self {
        InnerProductSpec {
            dim: gamma.dim(),
            kind: SpecKind::Classical { gamma },
        }
    }

    pub fn epd(gamma: ParamVector, m: usize, lambdas: Lambdas) -> Self {
        InnerProductSpec {
            dim: gamma.dim(),
            kind: SpecKind::Epd { gamma, m, lambdas },
        }
    }

    /// `⟨·,·⟩_{γ,-1_k}` on `T^d`; `tail` has length `d+1-k`.
    pub fn sobolev(d: usize, tail: Vec<Rational>, k: usize, lambdas: Lambdas) -> Result<Self> {
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
        Ok(InnerProductSpec {
            dim: d,
            kind: SpecKind::Sobolev { tail, k, lambdas },
        })
    }

    pub fn d2_named(form: D2Named) -> Self {
        InnerProductSpec {
            dim: 2,
            kind: SpecKind::D2Named(form),
        }
    }

    pub fn jacobi_1d(form: Jacobi1d) -> Self {
        InnerProductSpec {
            dim: 1,
            kind: SpecKind::Jacobi1d(form),
        }
    }

    /// Whether the form is an inner product according to the known
    /// positivity conditions.
    pub fn is_valid(&self) -> bool {
        let pos = |r: &Rational| r.is_positive();
        let nonneg = |r: &Rational| !r.is_negative();
        match &self.kind {
            SpecKind::Classical { gamma } => gamma.is_integrable(),
            SpecKind::Epd { gamma, lambdas, m } => {
                gamma.is_integrable() && *m <= self.dim && lambdas.all_values().iter().all(nonneg)
            }
            SpecKind::Sobolev { tail, k, lambdas } => {
                let d = self.dim;
                let m1 = -Rational::one();
                if !tail.iter().all(|g| g > &m1) || !lambdas.all_values().iter().all(nonneg) {
                    return false;
                }
                let Ok(terms) = self.terms() else {
                    return false;
                };
                let singular_all = *k == d + 1;
                let (vertex, rest): (Vec<&Term>, Vec<&Term>) = terms
                    .iter()
                    .partition(|t| singular_all && matches!(t.domain, Domain::Vertex(_)));
                rest.iter().all(|t| pos(&t.coef))
                    && (!singular_all || vertex.iter().any(|t| pos(&t.coef)))
            }
            SpecKind::D2Named(form) => {
                let m1 = -Rational::one();
                match form {
                    D2Named::AlphaBetaM1 { alpha, beta, lambda1 } => {
                        alpha > &m1 && beta > &m1 && pos(lambda1)
                    }
                    D2Named::AlphaM1M1 { alpha, lambda1, lambda10 } => {
                        alpha > &m1 && pos(lambda1) && pos(lambda10)
                    }
                    D2Named::AllM1 { lambda1, lambda2, lambda10, lambda01, lambda00 } => {
                        pos(lambda1)
                            && pos(lambda2)
                            && [lambda10, lambda01, lambda00].iter().all(|l| nonneg(l))
                            && [lambda10, lambda01, lambda00].iter().any(|l| pos(l))
                    }
                    D2Named::M1M1Gamma { gamma, lambda1, lambda2, lambda00 } => {
                        gamma > &m1
                            && nonneg(lambda1)
                            && nonneg(lambda2)
                            && (pos(lambda1) || pos(lambda2))
                            && pos(lambda00)
                    }
                }
            }
            SpecKind::Jacobi1d(form) => match form {
                Jacobi1d::AlphaMinusOne { beta, lambda } => beta > &-Rational::one() && pos(lambda),
                Jacobi1d::BothMinusOne { lambda1, lambda2 } => {
                    nonneg(lambda1) && nonneg(lambda2) && (pos(lambda1) || pos(lambda2))
                }
            },
        }
    }

    /// The term list realizing this form.
    pub fn terms(&self) -> Result<Vec<Term>> {
        match &self.kind {
            SpecKind::Classical { gamma } => Ok(vec![Term::simplex(
                Rational::one(),
                vec![],
                None,
                gamma.clone(),
                "classical".into(),
            )]),
            SpecKind::Epd { gamma, m, lambdas } => epd_terms(gamma, *m, lambdas),
            SpecKind::Sobolev { tail, k, lambdas } => sobolev_terms(self.dim, tail, *k, lambdas),
            SpecKind::D2Named(form) => Ok(named_terms(form)),
            SpecKind::Jacobi1d(form) => Ok(jacobi_1d_terms(form)),
        }
    }

    /// `⟨f, g⟩` under this spec.
    pub fn inner(&self, f: &Polynomial, g: &Polynomial) -> Result<Rational> {
        for p in [f, g] {
            if p.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    left: self.dim,
                    right: p.dim(),
                });
            }
        }
        let mut acc = Rational::zero();
        for t in self.terms()? {
            acc += t.evaluate(f, g)?;
        }
        Ok(acc)
    }

    /// Exact Gram matrix `[⟨rows_i, cols_j⟩]`.
    pub fn gram_matrix(&self, rows: &[Polynomial], cols: &[Polynomial]) -> Result<Matrix> {
        let terms = self.terms()?;
        // Derivatives and restrictions are computed once per polynomial.
        let prep = |ps: &[Polynomial], with_factor: bool| -> Result<Vec<Vec<Prepared>>> {
            terms
                .iter()
                .map(|t| ps.iter().map(|p| t.prepare(p, with_factor)).collect())
                .collect()
        };
        for p in rows.iter().chain(cols) {
            if p.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    left: self.dim,
                    right: p.dim(),
                });
            }
        }
        let a = prep(rows, true)?;
        let b = prep(cols, false)?;
        let cells: Vec<(usize, usize)> = (0..rows.len())
            .flat_map(|i| (0..cols.len()).map(move |j| (i, j)))
            .collect();
        let values = par::try_map(&cells, |&(i, j)| {
            let mut acc = Rational::zero();
            for (t, term) in terms.iter().enumerate() {
                if term.coef.is_zero() {
                    continue;
                }
                acc += term.pair(&a[t][i], &b[t][j])?;
            }
            Ok::<_, Error>(acc)
        })?;
        let mut it = values.into_iter();
        Ok((0..rows.len())
            .map(|_| (0..cols.len()).map(|_| it.next().unwrap()).collect())
            .collect())
    }

    pub fn normalization_notes(&self) -> Result<Vec<String>> {
        Ok(self.terms()?.iter().map(|t| t.normalization()).collect())
    }
}

fn epd_terms(gamma: &ParamVector, m: usize, lambdas: &Lambdas) -> Result<Vec<Term>> {
    let d = gamma.dim();
    if m > d {
        return Err(Error::InvalidArgument(format!("m = {m} exceeds d = {d}")));
    }
    let mut out = vec![Term::simplex(Rational::one(), vec![], None, gamma.clone(), "classical".into())];
    let labels: Vec<usize> = (1..=d).collect();
    for j in 1..=m {
        for s in subsets_of_size(&labels, j) {
            let mut p = gamma.shifted(d + 1, &int(j as i64));
            for &i in &s {
                p = p.shifted(i, &Rational::one());
            }
            out.push(Term::simplex(
                lambdas.subset(&s),
                partials(&s),
                None,
                p,
                format!("derivative{}", set_label(&s)),
            ));
        }
    }
    Ok(out)
}

fn sobolev_terms(d: usize, tail: &[Rational], k: usize, lambdas: &Lambdas) -> Result<Vec<Term>> {
    let mut out = Vec::new();
    let tail_len = d + 1 - k;
    if k == 1 {
        // Σ_i ∫ x_i ∂_i f ∂_i g x^γ + λ ∫_{|x|=1} f g (…)
        let w = vec_params([tail.to_vec(), zeros(1)].concat());
        for i in 1..=d {
            out.push(Term::simplex(
                Rational::one(),
                vec![Direction::plus(i - 1)],
                Some(Polynomial::var(d, i - 1)),
                w.clone(),
                format!("gradient x_{i}"),
            ));
        }
        let face = FaceId::new(d, [d + 1])?;
        let fp = face_params(&vec_params([tail.to_vec(), zeros(1)].concat()), &face);
        out.push(Term {
            coef: lambdas.main(),
            derivs: vec![],
            factor: None,
            domain: Domain::Face(face),
            params: fp,
            label: "boundary".into(),
        });
        return Ok(out);
    }
    let mk: Vec<usize> = (d + 2 - k..=d).collect();
    if k <= d {
        // Principal term with ∂^{m_k}, weight (γ, 0_{k-1}, k-2).
        let w = vec_params([tail.to_vec(), zeros(k - 1), vec![int(k as i64 - 2)]].concat());
        out.push(Term::simplex(Rational::one(), partials(&mk), None, w, "principal".into()));
        // λ_I terms over faces zeroing m_k \ I.
        for i in 1..=k.saturating_sub(2) {
            for set in subsets_of_size(&mk, i) {
                let zeroed: Vec<usize> = mk.iter().copied().filter(|l| !set.contains(l)).collect();
                let face = FaceId::new(d, zeroed)?;
                let params = vec_params([tail.to_vec(), zeros(i), vec![int(i as i64 - 1)]].concat());
                out.push(Term {
                    coef: lambdas.subset(&set),
                    derivs: partials(&set),
                    factor: None,
                    domain: Domain::Face(face),
                    params,
                    label: format!("lambda_I{}", set_label(&set)),
                });
            }
        }
        // λ_i terms over the face zeroing m_k.
        let face = FaceId::new(d, mk.clone())?;
        for i in 1..=tail_len {
            out.push(Term {
                coef: lambdas.coord(i),
                derivs: vec![Direction::plus(i - 1)],
                factor: Some(Polynomial::var(d, i - 1)),
                domain: Domain::Face(face.clone()),
                params: vec_params([tail.to_vec(), zeros(1)].concat()),
                label: format!("lambda_{i}"),
            });
        }
        // λ term over the face zeroing m_k ∪ {d+1}; a vertex when k = d.
        let mut plus = mk.clone();
        plus.push(d + 1);
        let face = FaceId::new(d, plus)?;
        let params = vec_params(tail.to_vec());
        out.push(Term {
            coef: lambdas.main(),
            derivs: vec![],
            factor: None,
            domain: if k == d { Domain::Vertex(1) } else { Domain::Face(face) },
            params,
            label: if k == d { "vertex e_1".into() } else { "boundary".into() },
        });
        return Ok(out);
    }
    // k = d+1: all parameters are -1.
    let zd: Vec<usize> = (1..=d).collect();
    let w = vec_params([zeros(d), vec![int(d as i64 - 1)]].concat());
    out.push(Term::simplex(Rational::one(), partials(&zd), None, w, "principal".into()));
    for i in 1..d {
        for set in subsets_of_size(&zd, i) {
            let zeroed: Vec<usize> = zd.iter().copied().filter(|l| !set.contains(l)).collect();
            let face = FaceId::new(d, zeroed)?;
            let params = vec_params([zeros(i), vec![int(i as i64 - 1)]].concat());
            out.push(Term {
                coef: lambdas.subset(&set),
                derivs: partials(&set),
                factor: None,
                domain: Domain::Face(face),
                params,
                label: format!("lambda_I{}", set_label(&set)),
            });
        }
    }
    for j in 0..=d {
        out.push(Term {
            coef: lambdas.vertex(j),
            derivs: vec![],
            factor: None,
            domain: Domain::Vertex(j),
            params: ParamVector::zeros(0),
            label: format!("vertex e_{j}"),
        });
    }
    Ok(out)
}

/// Edge charts of the triangle, written out directly.
fn chart(images: [Polynomial; 2]) -> Domain {
    Domain::Chart(images.to_vec())
}

fn named_terms(form: &D2Named) -> Vec<Term> {
    let t = Polynomial::var(1, 0);
    let one_t = &Polynomial::one(1) - &t;
    let zero1 = Polynomial::zero(1);
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let dx = Direction::plus(0);
    let dy = Direction::plus(1);
    let p = |v: &[Rational]| vec_params(v.to_vec());
    let point = |a: i64, b: i64| Domain::Point(vec![int(a), int(b)]);
    let z = Rational::zero;
    let edge = |coef: &Rational, derivs: Vec<Direction>, dom: Domain, params: ParamVector, label: &str| Term {
        coef: coef.clone(),
        derivs,
        factor: None,
        domain: dom,
        params,
        label: label.into(),
    };
    let at = |coef: &Rational, dom: Domain, label: &str| Term {
        coef: coef.clone(),
        derivs: vec![],
        factor: None,
        domain: dom,
        params: ParamVector::zeros(0),
        label: label.into(),
    };
    match form {
        D2Named::AlphaBetaM1 { alpha, beta, lambda1 } => vec![
            Term::simplex(int(1), vec![dx.clone()], Some(x.clone()), p(&[alpha.clone(), beta.clone(), z()]), "x f_x g_x".into()),
            Term::simplex(int(1), vec![dy.clone()], Some(y.clone()), p(&[alpha.clone(), beta.clone(), z()]), "y f_y g_y".into()),
            // f(x, 1-x) against x^α (1-x)^β
            edge(lambda1, vec![], chart([t.clone(), one_t.clone()]), p(&[alpha.clone(), beta.clone()]), "edge x+y=1"),
        ],
        D2Named::AlphaM1M1 { alpha, lambda1, lambda10 } => vec![
            Term::simplex(int(1), vec![dy.clone()], None, p(&[alpha.clone(), z(), z()]), "f_y g_y".into()),
            // ∂_x f(x,0) against x^{α+1}
            edge(lambda1, vec![dx.clone()], chart([t.clone(), zero1.clone()]), p(&[alpha + int(1), z()]), "edge y=0"),
            at(lambda10, point(1, 0), "vertex (1,0)"),
        ],
        D2Named::AllM1 { lambda1, lambda2, lambda10, lambda01, lambda00 } => vec![
            Term::simplex(int(1), vec![dx.clone(), dy.clone()], None, p(&[z(), z(), int(1)]), "f_xy g_xy".into()),
            edge(lambda1, vec![dx.clone()], chart([t.clone(), zero1.clone()]), p(&[z(), z()]), "edge y=0"),
            edge(lambda2, vec![dy.clone()], chart([zero1.clone(), t.clone()]), p(&[z(), z()]), "edge x=0"),
            at(lambda10, point(1, 0), "vertex (1,0)"),
            at(lambda01, point(0, 1), "vertex (0,1)"),
            at(lambda00, point(0, 0), "vertex (0,0)"),
        ],
        D2Named::M1M1Gamma { gamma, lambda1, lambda2, lambda00 } => vec![
            Term::simplex(int(1), vec![Direction::difference(1, 0)], None, p(&[z(), z(), gamma.clone()]), "(f_y-f_x)(g_y-g_x)".into()),
            // ∂_x f(x,0) against (1-x)^{γ+1}
            edge(lambda1, vec![dx], chart([t.clone(), zero1.clone()]), p(&[z(), gamma + int(1)]), "edge y=0"),
            // ∂_y f(0,y) against (1-y)^{γ+1}
            edge(lambda2, vec![dy], chart([zero1, t]), p(&[z(), gamma + int(1)]), "edge x=0"),
            at(lambda00, point(0, 0), "vertex (0,0)"),
        ],
    }
}

fn jacobi_1d_terms(form: &Jacobi1d) -> Vec<Term> {
    // x = 2t - 1 maps [0,1] onto [-1,1]; (1+x) = 2t so (1+x)^{β+1} ↦ t^{β+1}.
    let x_of_t = &Polynomial::var(1, 0).scale(&int(2)) - &Polynomial::one(1);
    let deriv = |params: ParamVector| Term {
        coef: Rational::one(),
        derivs: vec![Direction::plus(0)],
        factor: None,
        domain: Domain::Chart(vec![x_of_t.clone()]),
        params,
        label: "f' g'".into(),
    };
    let at = |coef: &Rational, x: i64, label: &str| Term {
        coef: coef.clone(),
        derivs: vec![],
        factor: None,
        domain: Domain::Point(vec![int(x)]),
        params: ParamVector::zeros(0),
        label: label.into(),
    };
    match form {
        Jacobi1d::AlphaMinusOne { beta, lambda } => vec![
            at(lambda, 1, "point 1"),
            deriv(vec_params(vec![beta + int(1), int(0)])),
        ],
        Jacobi1d::BothMinusOne { lambda1, lambda2 } => vec![
            at(lambda1, 1, "point 1"),
            at(lambda2, -1, "point -1"),
            deriv(ParamVector::zeros(1)),
        ],
    }
}

/// `Γ(a) / Γ(b)` for `a - b` an integer.
fn gamma_ratio(a: &Rational, b: &Rational) -> Result<Rational> {
    let diff = a - b;
    if !diff.is_integer() {
        return Err(Error::InvalidArgument(format!(
            "Γ({a})/Γ({b}) is not rational in general"
        )));
    }
    let k: i64 = diff.to_integer().try_into().map_err(|_| Error::InvalidArgument("shift too large".into()))?;
    if k >= 0 {
        Ok(pochhammer(b, k as u32))
    } else {
        let den = pochhammer(a, (-k) as u32);
        if den.is_zero() {
            return Err(Error::ZeroDenominator(format!("Γ({a})/Γ({b})")));
        }
        Ok(Rational::one() / den)
    }
}

/// `c_a / c_b` for two Dirichlet weights of the same dimension whose
/// parameters differ by integers; `c_γ = Γ(|γ|+e+1) / Π Γ(γ_i+1)`.
pub fn dirichlet_mass_ratio(a: &ParamVector, b: &ParamVector) -> Result<Rational> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let e = int(a.dim() as i64 + 1);
    let mut r = gamma_ratio(&(a.sum() + &e), &(b.sum() + &e))?;
    for (ai, bi) in a.gamma().iter().zip(b.gamma()) {
        r *= gamma_ratio(&(bi + int(1)), &(ai + int(1)))?;
    }
    Ok(r)
}

/// Exact Gram matrix with verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramReport {
    pub spec: InnerProductSpec,
    pub valid_spec: bool,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub all_zero: bool,
    pub diagonal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orthogonal_to_lower_degree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positive_definite: Option<bool>,
    pub normalization: Vec<String>,
}

/// Gram matrix of two bases under `spec`. Positive definiteness is reported
/// when both sides are the same basis.
pub fn gram(spec: &InnerProductSpec, rows: &Basis, cols: &Basis) -> Result<GramReport> {
    let m = spec.gram_matrix(&rows.polys(), &cols.polys())?;
    let same = rows == cols;
    let all_zero = m.iter().flatten().all(|v| v.is_zero());
    let diagonal = m
        .iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, v)| i == j || v.is_zero()));
    let lower = matches!(cols.family, Family::Monomials) && cols.degree < rows.degree;
    Ok(GramReport {
        spec: spec.clone(),
        valid_spec: spec.is_valid(),
        rows: rows.labels(),
        cols: cols.labels(),
        matrix: m.iter().map(|r| r.iter().map(format_rational).collect()).collect(),
        all_zero,
        diagonal,
        orthogonal_to_lower_degree: if lower { Some(all_zero) } else { None },
        positive_definite: if same { Some(is_positive_definite(&m)) } else { None },
        normalization: spec.normalization_notes()?,
    })
}

/// Gram–Schmidt without normalization, in the order of `basis`.
pub fn orthogonalize(spec: &InnerProductSpec, basis: &Basis) -> Result<Basis> {
    let mut out = Basis::new(basis.dim, basis.degree, basis.params.clone(), basis.family.clone());
    let mut done: Vec<(Polynomial, Rational)> = Vec::new();
    for (idx, e) in basis.elements.iter().enumerate() {
        let mut q = e.poly.clone();
        for (p, norm) in &done {
            let c = spec.inner(&e.poly, p)? / norm;
            q = &q - &p.scale(&c);
        }
        let norm = spec.inner(&q, &q)?;
        if q.is_zero() || norm.is_zero() {
            return Err(Error::DependentInput(idx));
        }
        out.elements.push(crate::bases::BasisElement {
            label: e.label.clone(),
            index: e.index.clone(),
            poly: q.clone(),
        });
        done.push((q, norm));
    }
    Ok(out)
}

/// The classical normalization for an integral over `[-1,1]` with weight
/// `(1-x)^α (1+x)^β`, expressed on `[0,1]` as Dirichlet parameters.
pub fn interval_params(alpha: &Rational, beta: &Rational) -> ParamVector {
    vec_params(vec![beta.clone(), alpha.clone()])
}

/// `(1/2)` helper for tests and demos: the midpoint of `[0,1]`.
pub fn half() -> Rational {
    rat(1, 2)
}

/// Map from a subset key string `"1,2"` to λ values, for the CLI.
pub fn parse_subset_lambdas(text: &str) -> Result<Vec<SubsetLambda>> {
    let mut map: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    for item in text.split(';').filter(|s| !s.trim().is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected SET=VALUE, got {item:?}")))?;
        let mut set = k
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index in {k:?}"))))
            .collect::<Result<Vec<_>>>()?;
        set.sort_unstable();
        map.insert(set, crate::exact::parse_rational(v)?);
    }
    Ok(map
        .into_iter()
        .map(|(set, value)| SubsetLambda { set, value })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{monomials_up_to, BasisElement};
    use crate::linalg::leading_principal_minors;

    fn x() -> Polynomial {
        Polynomial::var(2, 0)
    }
    fn y() -> Polynomial {
        Polynomial::var(2, 1)
    }

    #[test]
    fn k1_example() {
        let spec = InnerProductSpec::sobolev(2, vec![int(0), int(0)], 1, Lambdas::ones()).unwrap();
        assert_eq!(spec.inner(&x(), &y()).unwrap(), rat(1, 6));
        assert!(spec.is_valid());
    }

    #[test]
    fn all_singular_constant() {
        let mut l = Lambdas::ones();
        l.vertices = vec![int(2), int(3), int(5)];
        let spec = InnerProductSpec::sobolev(2, vec![], 3, l).unwrap();
        let one = Polynomial::one(2);
        assert_eq!(spec.inner(&one, &one).unwrap(), int(10));
    }

    #[test]
    fn positivity_on_cubics() {
        for d in [2usize, 3] {
            for k in 1..=d + 1 {
                let spec = InnerProductSpec::sobolev(d, vec![rat(1, 2); d + 1 - k], k, Lambdas::ones()).unwrap();
                let m = monomials_up_to(d, 3);
                let g = spec.gram_matrix(&m.polys(), &m.polys()).unwrap();
                assert!(is_positive_definite(&g), "d={d} k={k}: {:?}", leading_principal_minors(&g));
            }
        }
    }

    #[test]
    fn degenerate_spec_is_not_positive() {
        let mut l = Lambdas::ones();
        l.vertices = vec![int(0); 3];
        l.subsets = vec![SubsetLambda { set: vec![1], value: int(0) }, SubsetLambda { set: vec![2], value: int(0) }];
        let spec = InnerProductSpec::sobolev(2, vec![], 3, l).unwrap();
        assert!(!spec.is_valid());
        let m = monomials_up_to(2, 2);
        let g = spec.gram_matrix(&m.polys(), &m.polys()).unwrap();
        assert!(!is_positive_definite(&g));
    }

    #[test]
    fn orthogonalize_example() {
        let spec = InnerProductSpec::classical(ParamVector::zeros(2));
        let mut b = Basis::new(2, 1, ParamVector::zeros(2), Family::Custom { name: "test".into() });
        b.push("1".into(), None, Polynomial::one(2)).unwrap();
        b.push("x".into(), None, x()).unwrap();
        let o = orthogonalize(&spec, &b).unwrap();
        assert_eq!(o.elements[1].poly, &x() - &Polynomial::constant(2, rat(1, 3)));
        assert_eq!(orthogonalize(&spec, &o).unwrap(), o);
        b.elements.push(BasisElement { label: "x again".into(), index: None, poly: x() });
        assert!(matches!(orthogonalize(&spec, &b), Err(Error::DependentInput(2))));
    }

    #[test]
    fn mass_ratio() {
        // c_{(α,0)}/c_{(α+1,0)} = (α+1)/(α+2)
        let a = ParamVector::new(vec![rat(1, 2), int(0)]).unwrap();
        let b = ParamVector::new(vec![rat(3, 2), int(0)]).unwrap();
        assert_eq!(dirichlet_mass_ratio(&a, &b).unwrap(), rat(3, 5));
    }

    #[test]
    fn spec_json_round_trip() {
        let mut l = Lambdas::ones();
        l.set_subset(&[3, 2], rat(1, 2));
        l.vertices = vec![int(1), int(2)];
        let spec = InnerProductSpec::sobolev(3, vec![int(0), rat(1, 3)], 2, l).unwrap();
        let j = serde_json::to_string(&spec).unwrap();
        let back: InnerProductSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.kind, spec.kind);
    }
}
