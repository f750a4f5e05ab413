//! Exact slopes of stable objects on the curve.
//!
//! A finite slope is a reduced fraction `d/h` with `h >= 1`; torsion sheaves
//! carry the formal slope `+inf`, which sorts above every finite slope.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Slope {
    Finite(Rational64),
    Infinity,
}

impl Slope {
    /// Reduces `d/h`. The denominator must be positive.
    pub fn new(d: i64, h: i64) -> Result<Slope> {
        reduce(d, h)
    }

    pub fn integer(d: i64) -> Slope {
        Slope::Finite(Rational64::from_integer(d))
    }

    pub fn zero() -> Slope {
        Slope::integer(0)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Slope::Finite(_))
    }

    pub fn as_ratio(&self) -> Option<Rational64> {
        match self {
            Slope::Finite(r) => Some(*r),
            Slope::Infinity => None,
        }
    }

    /// Degree numerator of a finite slope.
    pub fn degree(&self) -> Option<i64> {
        self.as_ratio().map(|r| *r.numer())
    }

    /// Rank denominator of a finite slope.
    pub fn rank(&self) -> Option<i64> {
        self.as_ratio().map(|r| *r.denom())
    }
}

pub fn reduce(d: i64, h: i64) -> Result<Slope> {
    if h <= 0 {
        return Err(Error::NonPositiveDenominator(h));
    }
    Ok(Slope::Finite(Rational64::new(d, h)))
}

/// Internal Hom of two stable bundles: `Hom(O(λ), O(μ)) = O(μ-λ)^m`.
///
/// Returns `(ν, m)` with `ν = μ - λ` reduced and `m = h_λ h_μ / h_ν`, the
/// multiplicity forced by rank additivity.
pub fn hom_slope_data(lambda: Slope, mu: Slope) -> Result<(Rational64, i64)> {
    let (l, m) = match (lambda, mu) {
        (Slope::Finite(l), Slope::Finite(m)) => (l, m),
        _ => return Err(Error::InfiniteSlope("hom_slope_data")),
    };
    let nu = m - l;
    let mult = l.denom() * m.denom() / nu.denom();
    Ok((nu, mult))
}

/// Tensor product of stable bundles: `O(λ) ⊗ O(μ) = O(λ+μ)^m`.
pub fn tensor_slope_data(lambda: Rational64, mu: Rational64) -> (Rational64, i64) {
    let nu = lambda + mu;
    (nu, lambda.denom() * mu.denom() / nu.denom())
}

pub(crate) fn fmt_ratio(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => f.write_str(&fmt_ratio(r)),
            Slope::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let s = s.trim();
        if s == "inf" || s == "+inf" || s == "∞" {
            return Ok(Slope::Infinity);
        }
        let bad = |expected: &str| Error::Parse {
            pos: 0,
            expected: expected.into(),
            found: s.into(),
        };
        match s.split_once('/') {
            Some((d, h)) => {
                let d: i64 = d.trim().parse().map_err(|_| bad("integer numerator"))?;
                let h: i64 = h.trim().parse().map_err(|_| bad("positive denominator"))?;
                reduce(d, h)
            }
            None => Ok(Slope::integer(
                s.parse().map_err(|_| bad("slope d/h or inf"))?,
            )),
        }
    }
}

/// `gcd(|d|, h)` for callers that need the split of a non-reduced pair.
pub fn split_gcd(d: i64, h: i64) -> i64 {
    d.gcd(&h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(d: i64, h: i64) -> Slope {
        Slope::new(d, h).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(s(2, 4), Slope::Finite(Rational64::new(1, 2)));
        assert_eq!(s(0, 5).rank(), Some(1));
        assert_eq!(s(0, 5).degree(), Some(0));
        assert_eq!(s(-3, 2).degree(), Some(-3));
        assert_eq!(s(-3, 2).rank(), Some(2));
        assert_eq!(Slope::new(1, 0), Err(Error::NonPositiveDenominator(0)));
        assert!(Slope::new(1, -2).is_err());
    }

    #[test]
    fn hom_slope_examples() {
        let r = |d, h| Rational64::new(d, h);
        assert_eq!(hom_slope_data(s(0, 1), s(1, 1)).unwrap(), (r(1, 1), 1));
        assert_eq!(hom_slope_data(s(1, 2), s(1, 2)).unwrap(), (r(0, 1), 4));
        assert_eq!(hom_slope_data(s(1, 2), s(1, 3)).unwrap(), (r(-1, 6), 1));
        assert!(hom_slope_data(Slope::Infinity, s(1, 1)).is_err());
    }

    #[test]
    fn infinity_is_maximal() {
        assert!(Slope::Infinity > s(1000, 1));
        assert!(s(-1, 2) < s(0, 1));
        assert!(s(1, 3) < s(1, 2));
    }

    #[test]
    fn text_syntax() {
        assert_eq!("2/4".parse::<Slope>().unwrap(), s(1, 2));
        assert_eq!("inf".parse::<Slope>().unwrap(), Slope::Infinity);
        assert_eq!("∞".parse::<Slope>().unwrap(), Slope::Infinity);
        assert_eq!(s(-3, 1).to_string(), "-3");
        assert_eq!(s(3, 6).to_string(), "1/2");
        assert!("1/0".parse::<Slope>().is_err());
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(d in -50i64..50, h in 1i64..50) {
            let a = s(d, h);
            let b = s(a.degree().unwrap(), a.rank().unwrap());
            prop_assert_eq!(a, b);
            prop_assert_eq!(split_gcd(a.degree().unwrap(), a.rank().unwrap()), 1);
        }

        #[test]
        fn hom_rank_and_degree_identities(d1 in -12i64..=12, h1 in 1i64..=12, d2 in -12i64..=12, h2 in 1i64..=12) {
            let (l, m) = (s(d1, h1), s(d2, h2));
            let (nu, mult) = hom_slope_data(l, m).unwrap();
            let (hl, hm) = (l.rank().unwrap(), m.rank().unwrap());
            prop_assert_eq!(hl * hm, mult * nu.denom());
            let diff = m.as_ratio().unwrap() - l.as_ratio().unwrap();
            prop_assert_eq!(diff * Rational64::from_integer(hl * hm), Rational64::from_integer(mult * nu.numer()));
        }

        #[test]
        fn hom_of_self_is_trivial_slope(d in -12i64..=12, h in 1i64..=12) {
            let l = s(d, h);
            let hl = l.rank().unwrap();
            prop_assert_eq!(hom_slope_data(l, l).unwrap(), (Rational64::from_integer(0), hl * hl));
        }
    }
}
