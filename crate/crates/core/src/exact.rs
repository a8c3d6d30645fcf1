//! Exact scalars: arbitrary-precision rationals and the combinatorial
//! factors (Pochhammer symbols, binomials, factorials) built from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` in lowest terms. Panics when `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Rising factorial `a (a+1) ... (a+k-1)`; the empty product is 1.
pub fn pochhammer(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Binomial coefficient with the convention `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rational::new(num, den)
}

/// Generalised binomial `C(a, k) = a (a-1) ... (a-k+1) / k!` for rational `a`.
pub fn binomial_rational(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= a - int(i as i64);
        acc /= int(i as i64 + 1);
    }
    acc
}

pub fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

/// Multi-index factorial `nu! = nu_1! ... nu_d!`.
pub fn multi_factorial(nu: &[u32]) -> Rational {
    nu.iter().fold(Rational::one(), |acc, &n| acc * factorial(n))
}

/// Parse `"p/q"`, `"p"` or a plain integer, with an optional sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Comma separated list of rationals, e.g. `"0,1/2,-1"`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}

/// Canonical text form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// True when `r` is an integer and `r >= 0`.
pub fn as_nonneg_integer(r: &Rational) -> Option<u32> {
    if !r.is_integer() || r.is_negative() {
        return None;
    }
    r.to_integer().try_into().ok()
}

/// Serde adapter storing a [`Rational`] as its canonical string.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_rational_vec {
    use super::{format_rational, parse_rational, Rational};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
        assert_eq!(pochhammer(&int(3), 2), int(12));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(pochhammer(&int(-2), 3), int(0));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(9, 0), int(1));
        assert_eq!(binomial(2, 3), int(0));
        assert_eq!(binomial_rational(&int(5), 2), binomial(5, 2));
        assert_eq!(binomial_rational(&rat(1, 2), 2), rat(-1, 8));
    }

    #[test]
    fn large_pochhammer_is_exact() {
        // (11/2)_{20} overflows u64 in the numerator long before the end.
        let p = pochhammer(&rat(11, 2), 20);
        let back = (0..20).fold(p.clone(), |acc, i| acc / (rat(11, 2) + int(i)));
        assert_eq!(back, int(1));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 3 ").unwrap(), int(3));
        assert_eq!(format_rational(&rat(6, 3)), "2");
        assert_eq!(format_rational(&rat(-1, 3)), "-1/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(
            parse_rational_list("0,1/2,-1").unwrap(),
            vec![int(0), rat(1, 2), int(-1)]
        );
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..12).prop_map(|(p, q)| rat(p, q))
    }

    proptest! {
        #[test]
        fn add_then_subtract_is_identity(a in small_rational(), b in small_rational()) {
            prop_assert_eq!((&a + &b) - &b, a);
        }

        #[test]
        fn pochhammer_splits(a in small_rational(), j in 0u32..6, k in 0u32..6) {
            let lhs = pochhammer(&a, j + k);
            let rhs = pochhammer(&a, j) * pochhammer(&(&a + int(j as i64)), k);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn text_round_trip(a in small_rational()) {
            prop_assert_eq!(parse_rational(&format_rational(&a)).unwrap(), a);
        }
    }
}
