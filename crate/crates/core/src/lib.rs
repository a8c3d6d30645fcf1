//! Exact-arithmetic Jacobi and Sobolev orthogonal polynomials on the simplex
//! `T^d = {x : x_i >= 0, |x| <= 1}`.
//!
//! Every coefficient, parameter and integral is an arbitrary-precision
//! rational, so orthogonality relations and eigenfunction equations are
//! checked as exact identities.
//!
//! ```
//! use sobolex::{bases::rodrigue_basis, sobolev::{gram, InnerProductSpec}, ParamVector};
//!
//! let gamma = ParamVector::parse("1/2,0,1")?;
//! let basis = rodrigue_basis(&gamma, 3)?;
//! let lower = sobolex::bases::monomials_up_to(2, 2);
//! let report = gram(&InnerProductSpec::classical(gamma), &basis, &lower)?;
//! assert_eq!(report.orthogonal_to_lower_degree, Some(true));
//! # Ok::<(), sobolex::Error>(())
//! ```

pub mod bases;
pub mod eigenspaces;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod moments;
pub(crate) mod par;
pub mod poly;
pub mod report;
pub mod sobolev;
pub mod verify;
#[cfg(feature = "cli")]
pub mod cli;
pub mod weighted;

pub use error::{Error, Result};
pub use exact::{binomial, int, pochhammer, rat, Rational};
pub use poly::{FaceId, MultiIndex, Polynomial};
pub use weighted::{Direction, ParamVector, WeightedForm};
