//! Dirichlet-normalized integration over the simplex and its faces.
//!
//! Every integral is divided by the total mass of its own weight, so
//! `⟨1, 1⟩ = 1` on every domain and every value stays rational.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, pochhammer, Rational};
use crate::poly::{FaceId, Polynomial};
use crate::weighted::ParamVector;

/// `c_γ ∫ x^{γ+a'} (1-|x|)^{γ_{d+1}+a_{d+1}} dx
///   = Π_{i=1}^{d+1} (γ_i+1)_{a_i} / (|γ|+d+1)_{|a|}`.
pub fn normalized_moment(gamma: &ParamVector, a: &[u32]) -> Result<Rational> {
    gamma.check_integrable()?;
    if a.len() != gamma.gamma().len() {
        return Err(Error::DimensionMismatch {
            left: gamma.gamma().len(),
            right: a.len(),
        });
    }
    let d = gamma.dim();
    let mut num = Rational::one();
    for (g, &k) in gamma.gamma().iter().zip(a) {
        num *= pochhammer(&(g + Rational::one()), k);
    }
    let total: u32 = a.iter().sum();
    let den = pochhammer(&(gamma.sum() + int(d as i64 + 1)), total);
    Ok(num / den)
}

/// Per-coordinate Pochhammer tables, so a full polynomial integral costs
/// one lookup per variable per term.
struct MomentTable {
    per_coord: Vec<Vec<Rational>>,
    denominators: Vec<Rational>,
}

impl MomentTable {
    fn new(gamma: &ParamVector, max_exp: &[u32], max_deg: u32) -> Self {
        let per_coord = gamma
            .gamma()
            .iter()
            .zip(max_exp)
            .map(|(g, &m)| {
                let base = g + Rational::one();
                let mut v = vec![Rational::one()];
                for k in 0..m {
                    let next = &v[k as usize] * (&base + int(k as i64));
                    v.push(next);
                }
                v
            })
            .collect();
        let base = gamma.sum() + int(gamma.dim() as i64 + 1);
        let mut denominators = vec![Rational::one()];
        for k in 0..max_deg {
            let next = &denominators[k as usize] * (&base + int(k as i64));
            denominators.push(next);
        }
        MomentTable {
            per_coord,
            denominators,
        }
    }
}

/// `c_γ ∫_{T^d} h(x) W_γ(x) dx` for a polynomial `h` in `d` variables.
pub fn normalized_integral(h: &Polynomial, gamma: &ParamVector) -> Result<Rational> {
    gamma.check_integrable()?;
    if h.dim() != gamma.dim() {
        return Err(Error::DimensionMismatch {
            left: h.dim(),
            right: gamma.dim(),
        });
    }
    if h.is_zero() {
        return Ok(Rational::zero());
    }
    let d = h.dim();
    let mut max_exp = vec![0u32; d + 1];
    for e in h.terms().keys() {
        for i in 0..d {
            max_exp[i] = max_exp[i].max(e.0[i]);
        }
    }
    let table = MomentTable::new(gamma, &max_exp, h.degree().unwrap_or(0));
    let mut acc = Rational::zero();
    for (e, c) in h.terms() {
        let mut num = c.clone();
        for i in 0..d {
            num *= &table.per_coord[i][e.0[i] as usize];
        }
        acc += num / &table.denominators[e.degree() as usize];
    }
    Ok(acc)
}

/// `⟨f, g⟩_γ = c_γ ∫ f g W_γ`.
pub fn inner_product(f: &Polynomial, g: &Polynomial, gamma: &ParamVector) -> Result<Rational> {
    normalized_integral(&f.checked_mul(g)?, gamma)
}

/// Parameters of the weight `W_γ` restricted to a face, ordered as the
/// face's own barycentric coordinates (see [`FaceId::face_labels`]).
pub fn face_params(gamma: &ParamVector, face: &FaceId) -> ParamVector {
    gamma.select(&face.face_labels())
}

/// Normalized integral of `h` restricted to `face` against the face weight.
pub fn face_integral(h: &Polynomial, face: &FaceId, params: &ParamVector) -> Result<Rational> {
    let r = h.restrict_to_face(face)?;
    normalized_integral(&r, params)
}

/// Restrict `f`, `g` to the face and take their normalized inner product
/// there with weight parameters `params` (dimension `d - |S|`).
pub fn face_inner_product(
    f: &Polynomial,
    g: &Polynomial,
    face: &FaceId,
    params: &ParamVector,
) -> Result<Rational> {
    face_integral(&f.checked_mul(g)?, face, params)
}

/// `f(e_j)`, with `e_0` the origin and `e_j` the `j`-th unit vector.
pub fn vertex_eval(f: &Polynomial, j: usize) -> Result<Rational> {
    let d = f.dim();
    if j > d {
        return Err(Error::IndexOutOfRange { index: j, dim: d });
    }
    let mut p = vec![Rational::zero(); d];
    if j > 0 {
        p[j - 1] = Rational::one();
    }
    f.eval(&p)
}
