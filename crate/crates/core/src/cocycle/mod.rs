//! Functions on `G^k` used as cochains on the truncated Eilenberg-MacLane
//! resolution, in either the monomial or the Mahler basis.

mod checks;
mod pullback;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use checks::{
    hom_column_checks, mahler_middle_homology, symmetric_2cocycle_quotient, CocycleQuotient,
    HomColumnReport, SpotHomology,
};
pub use pullback::{pullback_d1, pullback_d2, pullback_d3, D2Image, D3Image};

type Q = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Monomials `x^a`.
    Poly,
    /// Products of binomial functions `C(x_1, a_1) ... C(x_k, a_k)`.
    Mahler,
}

/// A finite linear combination of basis functions in `arity` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Func {
    kind: Kind,
    arity: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Compositions of `total` into `parts` non-negative parts.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `C(x, a)` for an arbitrary integer `x`.
pub fn binomial(x: &BigInt, a: u32) -> Q {
    let mut num = BigInt::one();
    for i in 0..a {
        num *= x - BigInt::from(i);
    }
    Q::new(num, factorial(a))
}

impl Func {
    pub fn zero(kind: Kind, arity: usize) -> Func {
        Func {
            kind,
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// A single basis element.
    pub fn basis(kind: Kind, exponents: Vec<u32>) -> Func {
        let mut f = Func::zero(kind, exponents.len());
        f.terms.insert(exponents, Q::one());
        f
    }

    pub fn constant(kind: Kind, arity: usize, c: Q) -> Func {
        let mut f = Func::zero(kind, arity);
        f.add_term(vec![0; arity], c);
        f
    }

    pub fn from_terms(
        kind: Kind,
        arity: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Q)>,
    ) -> Result<Func> {
        let mut f = Func::zero(kind, arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::Arity {
                    expected: arity,
                    got: e.len(),
                });
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree of a basis element; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scaled(&self, c: &Q) -> Func {
        let mut f = Func::zero(self.kind, self.arity);
        for (e, v) in &self.terms {
            f.add_term(e.clone(), v * c);
        }
        f
    }

    pub fn add(&self, other: &Func) -> Func {
        assert_eq!(
            (self.kind, self.arity),
            (other.kind, other.arity),
            "mismatched function spaces"
        );
        let mut f = self.clone();
        for (e, v) in &other.terms {
            f.add_term(e.clone(), v.clone());
        }
        f
    }

    pub fn sub(&self, other: &Func) -> Func {
        self.add(&other.scaled(&-Q::one()))
    }

    /// Product of two functions of the same variables.
    pub fn mul(&self, other: &Func) -> Func {
        assert_eq!(
            (self.kind, self.arity),
            (other.kind, other.arity),
            "mismatched function spaces"
        );
        let mut f = Func::zero(self.kind, self.arity);
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let coeff = u * v;
                match self.kind {
                    Kind::Poly => {
                        let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        f.add_term(e, coeff);
                    }
                    Kind::Mahler => {
                        for (e, c) in mahler_product(a, b) {
                            f.add_term(e, &coeff * c);
                        }
                    }
                }
            }
        }
        f
    }

    /// `(Σ_{v ∈ vars} x_v)^a` or `C(Σ_{v ∈ vars} x_v, a)` in `arity`
    /// variables.
    fn of_sum(kind: Kind, arity: usize, vars: &[usize], a: u32) -> Func {
        // Vandermonde only splits over distinct variables.
        if kind == Kind::Mahler && has_repeats(vars) {
            return mahler_sum_with_repeats(arity, vars, a);
        }
        let mut f = Func::zero(kind, arity);
        for comp in compositions(a, vars.len()) {
            let mut e = vec![0; arity];
            for (v, c) in vars.iter().zip(&comp) {
                e[*v] += c;
            }
            let coeff = match kind {
                Kind::Poly => {
                    let denom = comp
                        .iter()
                        .fold(BigInt::one(), |acc, &c| acc * factorial(c));
                    Q::new(factorial(a), denom)
                }
                Kind::Mahler => Q::one(),
            };
            f.add_term(e, coeff);
        }
        f
    }

    /// `f(L_1, ..., L_k)` where `L_j` is the sum of the variables in
    /// `args[j]`, as a function of `arity` variables.
    pub fn precompose(&self, args: &[Vec<usize>], arity: usize) -> Result<Func> {
        if args.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: args.len(),
            });
        }
        if args.iter().flatten().any(|&v| v >= arity) {
            return Err(Error::Arity {
                expected: arity,
                got: args.iter().flatten().max().map_or(0, |v| v + 1),
            });
        }
        let mut out = Func::zero(self.kind, arity);
        for (e, c) in &self.terms {
            let mut prod = Func::constant(self.kind, arity, c.clone());
            for (j, &a) in e.iter().enumerate() {
                if a > 0 {
                    prod = prod.mul(&Func::of_sum(self.kind, arity, &args[j], a));
                }
            }
            out = out.add(&prod);
        }
        Ok(out)
    }

    /// Value at an integer point.
    pub fn eval(&self, point: &[BigInt]) -> Result<Q> {
        if point.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: point.len(),
            });
        }
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &a) in point.iter().zip(e) {
                term *= match self.kind {
                    Kind::Poly => Q::from_integer(num_traits::pow(x.clone(), a as usize)),
                    Kind::Mahler => binomial(x, a),
                };
            }
            acc += term;
        }
        Ok(acc)
    }
}

fn has_repeats(vars: &[usize]) -> bool {
    vars.iter().enumerate().any(|(i, v)| vars[..i].contains(v))
}

fn mahler_sum_with_repeats(arity: usize, vars: &[usize], a: u32) -> Func {
    let distinct_arity = vars.len();
    let spread: Vec<usize> = (0..distinct_arity).collect();
    let wide = Func::of_sum(Kind::Mahler, distinct_arity, &spread, a);
    let args: Vec<Vec<usize>> = vars.iter().map(|&v| vec![v]).collect();
    wide.precompose(&args, arity).expect("arity checked")
}

/// `C(x, m) C(x, n) = Σ_k (m+n-k)! / (k! (m-k)! (n-k)!) C(x, m+n-k)`,
/// applied variable by variable.
fn mahler_product(a: &[u32], b: &[u32]) -> Vec<(Vec<u32>, Q)> {
    let mut acc: Vec<(Vec<u32>, Q)> = vec![(Vec::new(), Q::one())];
    for (&m, &n) in a.iter().zip(b) {
        let mut next = Vec::new();
        for k in 0..=m.min(n) {
            let c = Q::new(
                factorial(m + n - k),
                factorial(k) * factorial(m - k) * factorial(n - k),
            );
            for (e, v) in &acc {
                let mut e = e.clone();
                e.push(m + n - k);
                next.push((e, v * &c));
            }
        }
        acc = next;
    }
    acc
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        const NAMES: [&str; 4] = ["x", "y", "z", "w"];
        let var = |i: usize| {
            NAMES
                .get(i)
                .map_or_else(|| format!("x{i}"), |s| s.to_string())
        };
        let mut order: Vec<_> = self.terms.iter().collect();
        order.sort_by(|a, b| {
            let deg = |e: &[u32]| e.iter().sum::<u32>();
            (deg(b.0), b.0).cmp(&(deg(a.0), a.0))
        });
        let mut first = true;
        for (e, c) in order {
            let mut factors = Vec::new();
            for (i, &a) in e.iter().enumerate() {
                match (self.kind, a) {
                    (_, 0) => {}
                    (Kind::Poly, 1) => factors.push(var(i)),
                    (Kind::Poly, a) => factors.push(format!("{}^{a}", var(i))),
                    (Kind::Mahler, a) => factors.push(format!("C({},{a})", var(i))),
                }
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let body = factors.join("*");
            match (mag.is_one(), body.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&body)?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{body}")?,
            }
        }
        Ok(())
    }
}
