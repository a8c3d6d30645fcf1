//! Classical polynomial families: Jacobi polynomials on an interval, the
//! Rodrigue and monomial bases on the simplex, and the operator `L_γ`.

pub mod jacobi;
pub mod monomial;
pub mod operator;
pub mod rodrigue;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MultiIndex, Polynomial};
use crate::weighted::ParamVector;

pub use jacobi::{jacobi_degenerate, jacobi_norm, jacobi_p, jacobi_shifted, Degenerate};
pub use monomial::{monomial_basis, monomial_poly};
pub use operator::{apply_l, eigencheck, eigencheck_value, eigenvalue};
pub use rodrigue::{permuted_basis, permuted_poly, rodrigue_basis, rodrigue_poly};

/// Which construction produced a basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Rodrigue,
    /// Barycentric labels `(s_1, …, s_d)` of the permuted Rodrigue basis.
    Permuted { order: Vec<usize> },
    Monomial,
    /// Face subspace whose Rodrigue indices vanish on `zero_set`.
    HSpace { zero_set: Vec<usize> },
    /// Singular eigenspace with `k` trailing parameters equal to -1.
    USpace { k: usize },
    /// Plain list of monomials `x^m`.
    Monomials,
    Custom { name: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<Vec<u32>>,
    pub poly: Polynomial,
}

/// Ordered list of labelled, nonzero polynomials in a common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Basis {
    pub dim: usize,
    pub degree: u32,
    pub params: ParamVector,
    pub family: Family,
    pub elements: Vec<BasisElement>,
}

impl Basis {
    pub fn new(dim: usize, degree: u32, params: ParamVector, family: Family) -> Self {
        Basis {
            dim,
            degree,
            params,
            family,
            elements: Vec::new(),
        }
    }

    /// Append an element; zero polynomials are rejected.
    pub fn push(&mut self, label: String, index: Option<&MultiIndex>, poly: Polynomial) -> Result<()> {
        if poly.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: poly.dim(),
            });
        }
        if poly.is_zero() {
            return Err(Error::DependentInput(self.elements.len()));
        }
        self.elements.push(BasisElement {
            label,
            index: index.map(|m| m.0.clone()),
            poly,
        });
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.elements.iter().map(|e| e.poly.clone()).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.label.clone()).collect()
    }

    /// Concatenate another basis' elements (used for block decompositions).
    pub fn extend(&mut self, other: Basis) {
        self.elements.extend(other.elements);
    }
}

/// The monomials `x^m`, `|m| <= n`, as a basis of `Π_n^d`.
pub fn monomials_up_to(d: usize, n: u32) -> Basis {
    monomial_list(d, MultiIndex::all_up_to_degree(d, n), n)
}

/// The monomials `x^m`, `|m| = n`.
pub fn monomials_of_degree(d: usize, n: u32) -> Basis {
    monomial_list(d, MultiIndex::all_of_degree(d, n), n)
}

fn monomial_list(d: usize, exps: Vec<MultiIndex>, n: u32) -> Basis {
    let mut b = Basis::new(d, n, ParamVector::zeros(d), Family::Monomials);
    for e in exps {
        let p = Polynomial::monomial(d, e.clone(), num_traits::One::one());
        b.push(format!("x^{e}"), Some(&e), p).expect("monomials are nonzero");
    }
    b
}
