use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{parse_rational, CoeffDomain, Euclidean};
use crate::error::{Error, Result};

/// Univariate polynomial over the rationals in the variable `t`.
///
/// Coefficients are stored lowest degree first with no trailing zeros, so
/// the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl Zero for QPoly {
    fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for QPoly {
    fn one() -> Self {
        Self::from_ints(&[1])
    }
}

impl Add for QPoly {
    type Output = QPoly;

    fn add(self, rhs: QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        QPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for QPoly {
    type Output = QPoly;

    fn sub(self, rhs: QPoly) -> QPoly {
        self + (-rhs)
    }
}

impl Neg for QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for QPoly {
    type Output = QPoly;

    fn mul(self, rhs: QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Euclidean for QPoly {
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        let dl = d
            .leading()
            .expect("division by the zero polynomial")
            .clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &dl;
            for (i, b) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * b;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    fn size_cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len())
    }

    fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    fn normal_unit(&self) -> Self {
        match self.leading() {
            Some(l) => QPoly::constant(l.recip()),
            None => QPoly::one(),
        }
    }

    fn parse_elem(s: &str) -> Result<Self> {
        parse_poly(s)
    }

    fn domain() -> CoeffDomain {
        CoeffDomain::PolyOverRationals
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if var.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{a}*{var}")?;
            }
        }
        Ok(())
    }
}

fn parse_poly(src: &str) -> Result<QPoly> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |pos: usize, expected: &str| Error::Parse {
        pos,
        expected: expected.into(),
        found: src.into(),
    };
    if s.is_empty() {
        return Err(err(0, "polynomial in t"));
    }
    let bytes = s.as_bytes();
    let mut acc = QPoly::zero();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigRational::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        } else if i > 0 {
            return Err(err(i, "'+' or '-'"));
        }
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
            i += 1;
        }
        let coef = if i > start {
            parse_rational(&s[start..i]).map_err(|_| err(start, "rational coefficient"))?
        } else {
            BigRational::one()
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
            if i >= bytes.len() || bytes[i] != b't' {
                return Err(err(i, "'t' after '*'"));
            }
        }
        let mut exp = 0usize;
        if i < bytes.len() && bytes[i] == b't' {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                exp = s[es..i].parse().map_err(|_| err(es, "exponent"))?;
            }
        } else if i == start {
            return Err(err(i, "coefficient or 't'"));
        }
        let mut coeffs = vec![BigRational::zero(); exp + 1];
        coeffs[exp] = sign * coef;
        acc = acc + QPoly::new(coeffs);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_division_reconstructs_dividend() {
        let a = QPoly::from_ints(&[3, -1, 0, 2, 5]);
        let d = QPoly::from_ints(&[1, 2]);
        let (q, r) = a.div_rem_euclid(&d);
        assert_eq!(q * d.clone() + r.clone(), a);
        assert!(r.degree().unwrap_or(0) < d.degree().unwrap());
    }

    #[test]
    fn display_and_parse_agree() {
        let cases = ["t^2 - 3*t + 1/2", "-t", "0", "7", "-1/3*t^4 + t"];
        for c in cases {
            let p = QPoly::parse_elem(c).unwrap();
            assert_eq!(p.to_string(), c);
        }
        assert_eq!(QPoly::parse_elem("2t").unwrap(), QPoly::from_ints(&[0, 2]));
        assert!(QPoly::parse_elem("t^").is_err());
        assert!(QPoly::parse_elem("x").is_err());
    }

    #[test]
    fn gcd_is_monic() {
        let a = QPoly::from_ints(&[0, 2]) * QPoly::from_ints(&[1, 1]);
        let b = QPoly::from_ints(&[0, 0, 3]);
        assert_eq!(a.gcd(&b), QPoly::t());
    }
}
