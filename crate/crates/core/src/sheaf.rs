//! Coherent sheaves on the curve in slope normal form.
//!
//! Every coherent sheaf splits as a vector bundle plus a torsion sheaf, and
//! every bundle is a direct sum of stables `O(λ)`. A normal form therefore
//! records the multiplicity of each slope together with, for each closed
//! point, the invariant factors of the torsion stalk (a finite-length module
//! over a discrete valuation ring).

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::slope::{self, hom_slope_data, reduce, Slope};

/// Label of a closed point carrying torsion.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point(String);

impl Point {
    pub fn new(label: impl Into<String>) -> Point {
        let label = label.into();
        if label == "∞" {
            Point("inf".into())
        } else {
            Point(label)
        }
    }

    pub fn infinity() -> Point {
        Point("inf".into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Default for Point {
    fn default() -> Self {
        Point::infinity()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Colmez's (dimension, height) pair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BcInvariant {
    pub dim: i64,
    pub ht: i64,
}

impl BcInvariant {
    pub const ZERO: BcInvariant = BcInvariant { dim: 0, ht: 0 };

    pub const fn new(dim: i64, ht: i64) -> BcInvariant {
        BcInvariant { dim, ht }
    }
}

impl Add for BcInvariant {
    type Output = BcInvariant;
    fn add(self, o: BcInvariant) -> BcInvariant {
        BcInvariant::new(self.dim + o.dim, self.ht + o.ht)
    }
}

impl Sub for BcInvariant {
    type Output = BcInvariant;
    fn sub(self, o: BcInvariant) -> BcInvariant {
        BcInvariant::new(self.dim - o.dim, self.ht - o.ht)
    }
}

impl Neg for BcInvariant {
    type Output = BcInvariant;
    fn neg(self) -> BcInvariant {
        BcInvariant::new(-self.dim, -self.ht)
    }
}

impl Mul<i64> for BcInvariant {
    type Output = BcInvariant;
    fn mul(self, k: i64) -> BcInvariant {
        BcInvariant::new(self.dim * k, self.ht * k)
    }
}

impl Sum for BcInvariant {
    fn sum<I: Iterator<Item = BcInvariant>>(iter: I) -> BcInvariant {
        iter.fold(BcInvariant::ZERO, Add::add)
    }
}

impl fmt::Display for BcInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dim, self.ht)
    }
}

/// Class `a[O] + b[O(1)]` in the Grothendieck group.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct K0Class {
    pub a: i64,
    pub b: i64,
}

impl K0Class {
    pub fn from_rank_degree(rank: i64, degree: i64) -> K0Class {
        K0Class {
            a: rank - degree,
            b: degree,
        }
    }

    pub fn rank(&self) -> i64 {
        self.a + self.b
    }

    pub fn degree(&self) -> i64 {
        self.b
    }

    /// `χ(RHom(self, other))` as a (dim, ht) pair, computed from classes alone.
    pub fn euler_form(&self, other: &K0Class) -> BcInvariant {
        let (r1, d1) = (self.rank(), self.degree());
        let (r2, d2) = (other.rank(), other.degree());
        BcInvariant::new(r1 * d2 - d1 * r2, r1 * r2)
    }
}

impl Add for K0Class {
    type Output = K0Class;
    fn add(self, o: K0Class) -> K0Class {
        K0Class {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl Sub for K0Class {
    type Output = K0Class;
    fn sub(self, o: K0Class) -> K0Class {
        K0Class {
            a: self.a - o.a,
            b: self.b - o.b,
        }
    }
}

impl Neg for K0Class {
    type Output = K0Class;
    fn neg(self) -> K0Class {
        K0Class {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Sum for K0Class {
    fn sum<I: Iterator<Item = K0Class>>(iter: I) -> K0Class {
        iter.fold(K0Class::default(), Add::add)
    }
}

/// Unnormalized input for [`normalize`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawSheaf {
    /// `(d, h, multiplicity)` for each `O(d/h)^m` summand.
    pub bundles: Vec<(i64, i64, i64)>,
    /// `(label, lengths)` for each torsion summand.
    pub torsion: Vec<(String, Vec<i64>)>,
}

/// A coherent sheaf in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CoherentSheaf {
    bundle: BTreeMap<Rational64, u32>,
    torsion: BTreeMap<Point, Vec<u32>>,
}

/// A single summand of a normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom<'a> {
    Stable {
        slope: Rational64,
        mult: i64,
    },
    Torsion {
        point: &'a Point,
        factors: &'a [u32],
    },
}

/// Rank, degree and slope of a sheaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NumericInvariants {
    pub rank: i64,
    pub degree: i64,
    pub slope: Option<Slope>,
}

/// One step of the Harder-Narasimhan filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnPiece {
    pub slope: Slope,
    pub piece: CoherentSheaf,
}

pub fn normalize(raw: &RawSheaf) -> Result<CoherentSheaf> {
    let mut out = CoherentSheaf::zero();
    for &(d, h, m) in &raw.bundles {
        if m <= 0 {
            return Err(Error::NonPositive(m));
        }
        let r = match reduce(d, h)? {
            Slope::Finite(r) => r,
            Slope::Infinity => unreachable!(),
        };
        *out.bundle.entry(r).or_insert(0) += m as u32;
    }
    for (label, factors) in &raw.torsion {
        if factors.is_empty() {
            return Err(Error::OutOfRange("torsion factor list is empty".into()));
        }
        let entry = out.torsion.entry(Point::new(label.clone())).or_default();
        for &k in factors {
            if k <= 0 {
                return Err(Error::NonPositive(k));
            }
            entry.push(k as u32);
        }
        entry.sort_unstable_by(|a, b| b.cmp(a));
    }
    Ok(out)
}

impl CoherentSheaf {
    pub fn zero() -> CoherentSheaf {
        CoherentSheaf::default()
    }

    /// `O(d/h)`.
    pub fn stable(d: i64, h: i64) -> Result<CoherentSheaf> {
        CoherentSheaf::stable_pow(d, h, 1)
    }

    /// `O(d/h)^m`.
    pub fn stable_pow(d: i64, h: i64, m: i64) -> Result<CoherentSheaf> {
        normalize(&RawSheaf {
            bundles: vec![(d, h, m)],
            torsion: vec![],
        })
    }

    /// `O(d)` for an integer twist.
    pub fn line(d: i64) -> CoherentSheaf {
        CoherentSheaf::stable(d, 1).expect("h = 1 is valid")
    }

    /// `O_X^m`.
    pub fn trivial(m: i64) -> CoherentSheaf {
        if m == 0 {
            return CoherentSheaf::zero();
        }
        CoherentSheaf::stable_pow(0, 1, m).expect("m > 0")
    }

    pub(crate) fn from_ratio(r: Rational64, m: u32) -> CoherentSheaf {
        let mut out = CoherentSheaf::zero();
        if m > 0 {
            out.bundle.insert(r, m);
        }
        out
    }

    /// Torsion sheaf at `point` with the given lengths.
    pub fn torsion(point: &str, factors: &[i64]) -> Result<CoherentSheaf> {
        normalize(&RawSheaf {
            bundles: vec![],
            torsion: vec![(point.to_string(), factors.to_vec())],
        })
    }

    pub fn is_zero(&self) -> bool {
        self.bundle.is_empty() && self.torsion.is_empty()
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion.is_empty()
    }

    pub fn is_bundle(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Bundle slopes with multiplicities, descending.
    pub fn bundle_parts(&self) -> impl Iterator<Item = (Rational64, u32)> + '_ {
        self.bundle.iter().rev().map(|(r, m)| (*r, *m))
    }

    pub fn torsion_parts(&self) -> impl Iterator<Item = (&Point, &[u32])> + '_ {
        self.torsion.iter().map(|(p, f)| (p, f.as_slice()))
    }

    /// Summands: torsion first (slope +inf), then stables by decreasing slope.
    pub fn atoms(&self) -> Vec<Atom<'_>> {
        let mut out: Vec<Atom<'_>> = self
            .torsion
            .iter()
            .map(|(point, f)| Atom::Torsion {
                point,
                factors: f.as_slice(),
            })
            .collect();
        out.extend(self.bundle_parts().map(|(slope, m)| Atom::Stable {
            slope,
            mult: m as i64,
        }));
        out
    }

    pub fn direct_sum(&self, other: &CoherentSheaf) -> CoherentSheaf {
        let mut out = self.clone();
        for (r, m) in &other.bundle {
            *out.bundle.entry(*r).or_insert(0) += m;
        }
        for (p, f) in &other.torsion {
            let e = out.torsion.entry(p.clone()).or_default();
            e.extend_from_slice(f);
            e.sort_unstable_by(|a, b| b.cmp(a));
        }
        out
    }

    /// `self^{⊕k}`.
    pub fn power(&self, k: u32) -> CoherentSheaf {
        (0..k).fold(CoherentSheaf::zero(), |acc, _| acc.direct_sum(self))
    }

    /// Part with slopes satisfying `keep`; torsion is kept iff `keep(+inf)`.
    pub fn filter_slopes(&self, keep: impl Fn(Slope) -> bool) -> CoherentSheaf {
        let bundle = self
            .bundle
            .iter()
            .filter(|(r, _)| keep(Slope::Finite(**r)))
            .map(|(r, m)| (*r, *m))
            .collect();
        let torsion = if keep(Slope::Infinity) {
            self.torsion.clone()
        } else {
            BTreeMap::new()
        };
        CoherentSheaf { bundle, torsion }
    }

    pub fn torsion_part(&self) -> CoherentSheaf {
        CoherentSheaf {
            bundle: BTreeMap::new(),
            torsion: self.torsion.clone(),
        }
    }

    pub fn bundle_part(&self) -> CoherentSheaf {
        CoherentSheaf {
            bundle: self.bundle.clone(),
            torsion: BTreeMap::new(),
        }
    }

    /// Finite slopes present, descending.
    pub fn slopes(&self) -> Vec<Slope> {
        let mut out = Vec::new();
        if self.has_torsion() {
            out.push(Slope::Infinity);
        }
        out.extend(self.bundle.keys().rev().map(|r| Slope::Finite(*r)));
        out
    }

    pub fn max_slope(&self) -> Option<Slope> {
        self.slopes().first().copied()
    }

    pub fn min_slope(&self) -> Option<Slope> {
        self.slopes().last().copied()
    }

    pub fn rank(&self) -> i64 {
        self.bundle.iter().map(|(r, m)| r.denom() * *m as i64).sum()
    }

    pub fn degree(&self) -> i64 {
        let b: i64 = self.bundle.iter().map(|(r, m)| r.numer() * *m as i64).sum();
        b + self.torsion_length()
    }

    pub fn torsion_length(&self) -> i64 {
        self.torsion
            .values()
            .flat_map(|f| f.iter())
            .map(|&k| k as i64)
            .sum()
    }

    pub fn numeric_invariants(&self) -> NumericInvariants {
        let (rank, degree) = (self.rank(), self.degree());
        let slope = if rank > 0 {
            Some(Slope::new(degree, rank).expect("rank > 0"))
        } else if self.has_torsion() {
            Some(Slope::Infinity)
        } else {
            None
        };
        NumericInvariants {
            rank,
            degree,
            slope,
        }
    }

    pub fn slope(&self) -> Result<Slope> {
        self.numeric_invariants()
            .slope
            .ok_or(Error::ZeroObject("slope"))
    }

    /// Harder-Narasimhan filtration; on this curve it splits, so the pieces
    /// are the isotypic components in decreasing slope order.
    pub fn hn(&self) -> Result<Vec<HnPiece>> {
        if self.is_zero() {
            return Err(Error::ZeroObject("hn"));
        }
        let mut out = Vec::new();
        if self.has_torsion() {
            out.push(HnPiece {
                slope: Slope::Infinity,
                piece: self.torsion_part(),
            });
        }
        for (r, m) in self.bundle_parts() {
            out.push(HnPiece {
                slope: Slope::Finite(r),
                piece: CoherentSheaf::from_ratio(r, m),
            });
        }
        Ok(out)
    }

    pub fn is_semistable(&self) -> bool {
        self.slopes().len() == 1
    }

    pub fn h0(&self) -> BcInvariant {
        self.atoms().iter().map(atom_h0).sum()
    }

    pub fn h1(&self) -> BcInvariant {
        self.atoms().iter().map(atom_h1).sum()
    }

    /// `h0 - h1`. Equals `(degree, rank)`.
    pub fn chi(&self) -> BcInvariant {
        self.h0() - self.h1()
    }

    pub fn k0_class(&self) -> K0Class {
        self.atoms()
            .iter()
            .map(|a| match a {
                Atom::Stable { slope, mult } => {
                    let (d, h) = (*slope.numer(), *slope.denom());
                    K0Class { a: h - d, b: d } * *mult
                }
                Atom::Torsion { factors, .. } => {
                    let k: i64 = factors.iter().map(|&k| k as i64).sum();
                    K0Class { a: -k, b: k }
                }
            })
            .sum()
    }

    /// Dual of a vector bundle.
    pub fn dual(&self) -> Result<CoherentSheaf> {
        if self.has_torsion() {
            return Err(Error::TorsionUnsupported("dual"));
        }
        Ok(CoherentSheaf {
            bundle: self.bundle.iter().map(|(r, m)| (-*r, *m)).collect(),
            torsion: BTreeMap::new(),
        })
    }

    /// Tensor product of vector bundles.
    pub fn tensor(&self, other: &CoherentSheaf) -> Result<CoherentSheaf> {
        if self.has_torsion() || other.has_torsion() {
            return Err(Error::TorsionUnsupported("tensor"));
        }
        let mut out = CoherentSheaf::zero();
        for (l, a) in &self.bundle {
            for (m, b) in &other.bundle {
                let (nu, k) = slope::tensor_slope_data(*l, *m);
                *out.bundle.entry(nu).or_insert(0) += (k as u32) * a * b;
            }
        }
        Ok(out)
    }
}

impl Mul<i64> for K0Class {
    type Output = K0Class;
    fn mul(self, k: i64) -> K0Class {
        K0Class {
            a: self.a * k,
            b: self.b * k,
        }
    }
}

fn stable_h0(r: Rational64) -> BcInvariant {
    let (d, h) = (*r.numer(), *r.denom());
    match d.signum() {
        1 => BcInvariant::new(d, h),
        0 => BcInvariant::new(0, 1),
        _ => BcInvariant::ZERO,
    }
}

fn stable_h1(r: Rational64) -> BcInvariant {
    let (d, h) = (*r.numer(), *r.denom());
    if d < 0 {
        BcInvariant::new(-d, -h)
    } else {
        BcInvariant::ZERO
    }
}

fn atom_h0(a: &Atom<'_>) -> BcInvariant {
    match a {
        Atom::Stable { slope, mult } => stable_h0(*slope) * *mult,
        Atom::Torsion { factors, .. } => {
            BcInvariant::new(factors.iter().map(|&k| k as i64).sum(), 0)
        }
    }
}

fn atom_h1(a: &Atom<'_>) -> BcInvariant {
    match a {
        Atom::Stable { slope, mult } => stable_h1(*slope) * *mult,
        Atom::Torsion { .. } => BcInvariant::ZERO,
    }
}

fn atom_rank(a: &Atom<'_>) -> i64 {
    match a {
        Atom::Stable { slope, mult } => slope.denom() * mult,
        Atom::Torsion { .. } => 0,
    }
}

fn atom_length(a: &Atom<'_>) -> i64 {
    match a {
        Atom::Stable { .. } => 0,
        Atom::Torsion { factors, .. } => factors.iter().map(|&k| k as i64).sum(),
    }
}

/// `(Hom, Ext¹)` between two summands.
fn atom_hom_ext(x: &Atom<'_>, y: &Atom<'_>) -> (BcInvariant, BcInvariant) {
    match (x, y) {
        (Atom::Stable { slope: l, mult: a }, Atom::Stable { slope: m, mult: b }) => {
            let (nu, k) =
                hom_slope_data(Slope::Finite(*l), Slope::Finite(*m)).expect("finite slopes");
            let w = k * a * b;
            (stable_h0(nu) * w, stable_h1(nu) * w)
        }
        (Atom::Stable { .. }, Atom::Torsion { .. }) => (
            BcInvariant::new(atom_rank(x) * atom_length(y), 0),
            BcInvariant::ZERO,
        ),
        (Atom::Torsion { .. }, Atom::Stable { .. }) => (
            BcInvariant::ZERO,
            BcInvariant::new(atom_length(x) * atom_rank(y), 0),
        ),
        (
            Atom::Torsion {
                point: p,
                factors: f,
            },
            Atom::Torsion {
                point: q,
                factors: g,
            },
        ) => {
            if p != q {
                return (BcInvariant::ZERO, BcInvariant::ZERO);
            }
            let n: i64 = f
                .iter()
                .flat_map(|&a| g.iter().map(move |&b| a.min(b) as i64))
                .sum();
            (BcInvariant::new(n, 0), BcInvariant::new(n, 0))
        }
    }
}

fn bilinear(
    f: &CoherentSheaf,
    g: &CoherentSheaf,
    pick: impl Fn((BcInvariant, BcInvariant)) -> BcInvariant,
) -> BcInvariant {
    let (fa, ga) = (f.atoms(), g.atoms());
    fa.iter()
        .flat_map(|x| ga.iter().map(move |y| (x, y)))
        .map(|(x, y)| pick(atom_hom_ext(x, y)))
        .sum()
}

pub fn hom(f: &CoherentSheaf, g: &CoherentSheaf) -> BcInvariant {
    bilinear(f, g, |(h, _)| h)
}

pub fn ext1(f: &CoherentSheaf, g: &CoherentSheaf) -> BcInvariant {
    bilinear(f, g, |(_, e)| e)
}

/// Always zero: the curve is regular of dimension one.
pub fn ext2(_f: &CoherentSheaf, _g: &CoherentSheaf) -> BcInvariant {
    BcInvariant::ZERO
}

/// `Ext^i` for any integer `i`; zero outside `0..=1`.
pub fn ext(i: i64, f: &CoherentSheaf, g: &CoherentSheaf) -> BcInvariant {
    match i {
        0 => hom(f, g),
        1 => ext1(f, g),
        _ => BcInvariant::ZERO,
    }
}

/// Pushforward of the line bundle `O(d)` from the degree-`h` cover `X_h`.
///
/// With `g = gcd(d, h)` and `d/h = d'/h'` reduced this is `O(d'/h')^g`.
pub fn pushforward_from_level(d: i64, h: i64) -> Result<CoherentSheaf> {
    if h <= 0 {
        return Err(Error::NonPositiveDenominator(h));
    }
    let g = slope::split_gcd(d, h);
    CoherentSheaf::stable_pow(d, h, g)
}

impl fmt::Display for CoherentSheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_sheaf(self))
    }
}
