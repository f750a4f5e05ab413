//! Exact Euclidean coefficient domains.
//!
//! Three domains are supported: the integers, the rationals and the
//! univariate polynomial ring `Q[t]`. All matrix and complex routines in
//! this crate are generic over [`Euclidean`].

mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use poly::QPoly;

/// A Euclidean domain with exact arithmetic.
pub trait Euclidean:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Quotient and remainder with `size(r) < size(d)` or `r = 0`.
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self);

    /// Compares the Euclidean size of two non-zero elements.
    fn size_cmp(&self, other: &Self) -> Ordering;

    fn is_unit(&self) -> bool;

    /// A unit `u` such that `u * self` is the canonical associate.
    fn normal_unit(&self) -> Self;

    /// Parses the textual element syntax used by the JSON complex format.
    fn parse_elem(s: &str) -> Result<Self>;

    fn domain() -> CoeffDomain;

    fn normalized(&self) -> Self {
        if self.is_zero() {
            Self::zero()
        } else {
            self.normal_unit() * self.clone()
        }
    }

    fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return if self.is_zero() {
                Some(Self::zero())
            } else {
                None
            };
        }
        let (q, r) = self.div_rem_euclid(d);
        r.is_zero().then_some(q)
    }

    fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    fn pow_u32(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem_euclid(&b);
            a = b;
            b = r;
        }
        a.normalized()
    }
}

/// The three supported coefficient domains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffDomain {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Q[t]")]
    PolyOverRationals,
}

impl CoeffDomain {
    pub fn name(self) -> &'static str {
        match self {
            CoeffDomain::Integers => "Z",
            CoeffDomain::Rationals => "Q",
            CoeffDomain::PolyOverRationals => "Q[t]",
        }
    }
}

impl fmt::Display for CoeffDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CoeffDomain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" | "int" | "integers" => Ok(CoeffDomain::Integers),
            "Q" | "rat" | "rationals" => Ok(CoeffDomain::Rationals),
            "Q[t]" | "poly" => Ok(CoeffDomain::PolyOverRationals),
            other => Err(Error::Parse {
                pos: 0,
                expected: "one of Z, Q, Q[t]".into(),
                found: other.into(),
            }),
        }
    }
}

impl Euclidean for BigInt {
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        let r = num_integer::Integer::mod_floor(self, d);
        let q = (self - &r) / d;
        (q, r)
    }

    fn size_cmp(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }

    fn normal_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn parse_elem(s: &str) -> Result<Self> {
        s.trim().parse::<BigInt>().map_err(|_| Error::Parse {
            pos: 0,
            expected: "integer".into(),
            found: s.into(),
        })
    }

    fn domain() -> CoeffDomain {
        CoeffDomain::Integers
    }
}

impl Euclidean for BigRational {
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        (self / d, BigRational::zero())
    }

    fn size_cmp(&self, _other: &Self) -> Ordering {
        Ordering::Equal
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn normal_unit(&self) -> Self {
        self.recip()
    }

    fn parse_elem(s: &str) -> Result<Self> {
        parse_rational(s.trim())
    }

    fn domain() -> CoeffDomain {
        CoeffDomain::Rationals
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse {
        pos: 0,
        expected: "rational p/q".into(),
        found: s.into(),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            s.trim().parse().map_err(|_| err())?,
        )),
    }
}

/// Small integer embedding, used by generators and tests.
pub trait FromSmall: Euclidean {
    fn from_i64(v: i64) -> Self;
}

impl FromSmall for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl FromSmall for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl FromSmall for QPoly {
    fn from_i64(v: i64) -> Self {
        QPoly::constant(BigRational::from_integer(BigInt::from(v)))
    }
}
