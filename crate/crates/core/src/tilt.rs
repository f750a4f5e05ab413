//! The tilted heart `Coh_X⁻` and the double tilt back to `Coh_X`.
//!
//! The torsion pair at slope 0 splits every sheaf into a part with slopes
//! `< 0` and a part with slopes `>= 0`. An object of the tilted heart has
//! cohomology only in degrees -1 and 0, and since `Ext²` vanishes on the
//! curve it is determined by the pair `(H⁻¹, H⁰)`; this module stores
//! exactly that pair.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sheaf::{self, BcInvariant, CoherentSheaf, K0Class};
use crate::slope::{fmt_ratio, Slope};

/// An object `neg[1] ⊕ pos` of `Coh_X⁻`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TiltedObject {
    neg: CoherentSheaf,
    pos: CoherentSheaf,
}

impl TiltedObject {
    /// `neg` must be a bundle with all slopes `< 0`; `pos` must have all
    /// slopes `>= 0` (torsion allowed).
    pub fn new(neg: CoherentSheaf, pos: CoherentSheaf) -> Result<TiltedObject> {
        if neg.has_torsion() {
            return Err(Error::SlopeCondition(format!(
                "degree -1 part `{neg}` contains torsion"
            )));
        }
        if neg.max_slope().is_some_and(|s| s >= Slope::zero()) {
            return Err(Error::SlopeCondition(format!(
                "degree -1 part `{neg}` must have slopes < 0"
            )));
        }
        if pos.min_slope().is_some_and(|s| s < Slope::zero()) {
            return Err(Error::SlopeCondition(format!(
                "degree 0 part `{pos}` must have slopes >= 0"
            )));
        }
        Ok(TiltedObject { neg, pos })
    }

    pub fn zero() -> TiltedObject {
        TiltedObject::default()
    }

    /// `F[1]` for a bundle `F` with negative slopes.
    pub fn shifted(neg: CoherentSheaf) -> Result<TiltedObject> {
        TiltedObject::new(neg, CoherentSheaf::zero())
    }

    /// A sheaf with non-negative slopes, placed in degree 0.
    pub fn unshifted(pos: CoherentSheaf) -> Result<TiltedObject> {
        TiltedObject::new(CoherentSheaf::zero(), pos)
    }

    pub fn neg(&self) -> &CoherentSheaf {
        &self.neg
    }

    pub fn pos(&self) -> &CoherentSheaf {
        &self.pos
    }

    pub fn is_zero(&self) -> bool {
        self.neg.is_zero() && self.pos.is_zero()
    }

    pub fn direct_sum(&self, other: &TiltedObject) -> TiltedObject {
        TiltedObject {
            neg: self.neg.direct_sum(&other.neg),
            pos: self.pos.direct_sum(&other.pos),
        }
    }

    pub fn power(&self, k: u32) -> TiltedObject {
        TiltedObject {
            neg: self.neg.power(k),
            pos: self.pos.power(k),
        }
    }

    /// `[H⁰] - [H⁻¹]`.
    pub fn k0_class(&self) -> K0Class {
        self.pos.k0_class() - self.neg.k0_class()
    }

    /// Rank and degree of the class, extended additively to the derived
    /// category.
    pub fn rank_degree(&self) -> (i64, i64) {
        let c = self.k0_class();
        (c.rank(), c.degree())
    }
}

impl fmt::Display for TiltedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_tilted(self))
    }
}

/// Splits `F` into `(slopes < 0, slopes >= 0)`.
pub fn split_torsion_pair(f: &CoherentSheaf) -> (CoherentSheaf, CoherentSheaf) {
    let zero = Slope::zero();
    (
        f.filter_slopes(|s| s < zero),
        f.filter_slopes(|s| s >= zero),
    )
}

/// Places the negative part of `F` in degree -1.
pub fn tilt(f: &CoherentSheaf) -> TiltedObject {
    let (neg, pos) = split_torsion_pair(f);
    TiltedObject { neg, pos }
}

/// The functor `ι`: unshifts the degree -1 part and adds the two halves.
pub fn double_tilt(a: &TiltedObject) -> CoherentSheaf {
    a.neg.direct_sum(&a.pos)
}

/// Value of `μ⁻ = -rg/deg`; `-inf` when the degree vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TiltedSlope {
    NegInfinity,
    Finite(Rational64),
}

impl fmt::Display for TiltedSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TiltedSlope::NegInfinity => f.write_str("-inf"),
            TiltedSlope::Finite(r) => f.write_str(&fmt_ratio(r)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltedInvariants {
    pub deg_minus: i64,
    pub rg_minus: i64,
    pub mu_minus: Option<TiltedSlope>,
}

fn mu_minus_of(rank: i64, degree: i64) -> Option<TiltedSlope> {
    match (rank, degree) {
        (0, 0) => None,
        (_, 0) => Some(TiltedSlope::NegInfinity),
        (r, d) => Some(TiltedSlope::Finite(Rational64::new(-r, d))),
    }
}

/// `deg⁻ = -rg`, `rg⁻ = deg`, `μ⁻ = -rg/deg`.
pub fn tilted_invariants(t: &TiltedObject) -> TiltedInvariants {
    let (r, d) = t.rank_degree();
    TiltedInvariants {
        deg_minus: -r,
        rg_minus: d,
        mu_minus: mu_minus_of(r, d),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnMinusPiece {
    pub mu_minus: TiltedSlope,
    pub piece: TiltedObject,
}

/// Harder-Narasimhan filtration of a tilted object for `μ⁻`.
pub fn hn_minus(t: &TiltedObject) -> Result<Vec<HnMinusPiece>> {
    if t.is_zero() {
        return Err(Error::ZeroObject("hn_minus"));
    }
    let mut pieces: Vec<HnMinusPiece> = Vec::new();
    let mut push =
        |mu: TiltedSlope, piece: TiltedObject| match pieces.iter_mut().find(|p| p.mu_minus == mu) {
            Some(p) => p.piece = p.piece.direct_sum(&piece),
            None => pieces.push(HnMinusPiece {
                mu_minus: mu,
                piece,
            }),
        };
    for (lambda, m) in t.neg.bundle_parts() {
        let atom = TiltedObject {
            neg: CoherentSheaf::from_ratio(lambda, m),
            pos: CoherentSheaf::zero(),
        };
        push(TiltedSlope::Finite(-lambda.recip()), atom);
    }
    if t.pos.has_torsion() {
        push(
            TiltedSlope::Finite(Rational64::from_integer(0)),
            TiltedObject {
                neg: CoherentSheaf::zero(),
                pos: t.pos.torsion_part(),
            },
        );
    }
    for (lambda, m) in t.pos.bundle_parts() {
        let mu = if *lambda.numer() == 0 {
            TiltedSlope::NegInfinity
        } else {
            TiltedSlope::Finite(-lambda.recip())
        };
        push(
            mu,
            TiltedObject {
                neg: CoherentSheaf::zero(),
                pos: CoherentSheaf::from_ratio(lambda, m),
            },
        );
    }
    pieces.sort_by_key(|p| std::cmp::Reverse(p.mu_minus));
    Ok(pieces)
}

/// A sheaf placed in a given cohomological shift, `sheaf[shift]`.
#[derive(Clone, Copy, Debug)]
pub struct Shifted<'a> {
    pub sheaf: &'a CoherentSheaf,
    pub shift: i64,
}

/// `Hom_{D^b}(X[a], Y[b]) = Ext^{b-a}(X, Y)`.
pub fn derived_hom(x: Shifted<'_>, y: Shifted<'_>) -> BcInvariant {
    sheaf::ext(y.shift - x.shift, x.sheaf, y.sheaf)
}

/// Hom between split pairs, as a triangular 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomMatrix {
    pub entries: [[BcInvariant; 2]; 2],
    pub total: BcInvariant,
}

impl HomMatrix {
    fn from_entries(entries: [[BcInvariant; 2]; 2]) -> HomMatrix {
        let total = entries.iter().flatten().copied().sum();
        HomMatrix { entries, total }
    }
}

/// Hom in `Coh_X⁻` between `A = (F', F'')` and `B = (G', G'')`:
/// `[[Hom(F',G'), Ext¹(F'',G')], [0, Hom(F'',G'')]]`.
pub fn hom_tilted(a: &TiltedObject, b: &TiltedObject) -> HomMatrix {
    HomMatrix::from_entries([
        [sheaf::hom(&a.neg, &b.neg), sheaf::ext1(&a.pos, &b.neg)],
        [BcInvariant::ZERO, sheaf::hom(&a.pos, &b.pos)],
    ])
}

/// `Ext¹` in `Coh_X⁻`, read as `Hom_{D^b}(A, B[1])`.
pub fn ext1_tilted(a: &TiltedObject, b: &TiltedObject) -> BcInvariant {
    let pieces_a = [
        Shifted {
            sheaf: &a.neg,
            shift: 1,
        },
        Shifted {
            sheaf: &a.pos,
            shift: 0,
        },
    ];
    let pieces_b = [
        Shifted {
            sheaf: &b.neg,
            shift: 2,
        },
        Shifted {
            sheaf: &b.pos,
            shift: 1,
        },
    ];
    pieces_a
        .iter()
        .flat_map(|x| pieces_b.iter().map(move |y| derived_hom(*x, *y)))
        .sum()
}

/// Hom in `Coh_X` between sheaves split as `(slopes < 0, slopes >= 0)`:
/// `[[Hom(F',G'), 0], [Hom(F',G''), Hom(F'',G'')]]`.
pub fn hom_coh_split(f: &CoherentSheaf, g: &CoherentSheaf) -> HomMatrix {
    let (fn_, fp) = split_torsion_pair(f);
    let (gn, gp) = split_torsion_pair(g);
    HomMatrix::from_entries([
        [sheaf::hom(&fn_, &gn), BcInvariant::ZERO],
        [sheaf::hom(&fn_, &gp), sheaf::hom(&fp, &gp)],
    ])
}

/// Hom in the second tilt `(Coh_X⁻)⁺`, at `μ⁻ = 0` with the `(T⁺, T'⁺)`
/// convention.
///
/// The second tilt splits `A` into its `μ⁻ <= 0` part (the sheaf `pos`, in
/// degree 0) and its `μ⁻ > 0` part (`neg[1]`, moved to degree 1). Each entry
/// is computed as a Hom or `Ext¹` inside `Coh_X⁻`, i.e. as a derived Hom
/// between shifted sheaves.
pub fn hom_double_tilted(a: &TiltedObject, b: &TiltedObject) -> HomMatrix {
    let f_low = Shifted {
        sheaf: &a.pos,
        shift: 0,
    };
    let f_high = Shifted {
        sheaf: &a.neg,
        shift: 1,
    };
    let g_low = Shifted {
        sheaf: &b.pos,
        shift: 0,
    };
    let g_high = Shifted {
        sheaf: &b.neg,
        shift: 1,
    };
    HomMatrix::from_entries([
        [
            derived_hom(f_low, g_low),
            derived_hom(f_high, Shifted { shift: 1, ..g_low }),
        ],
        [BcInvariant::ZERO, derived_hom(f_high, g_high)],
    ])
}

/// `(deg⁺, rg⁺)` of `A` viewed in `(Coh_X⁻)⁺`, with `deg⁺ = rg⁻` and
/// `rg⁺ = -deg⁻` applied to the class `[F'] - [F'']`.
pub fn double_tilted_invariants(a: &TiltedObject) -> (i64, i64) {
    let low = TiltedObject {
        neg: CoherentSheaf::zero(),
        pos: a.pos.clone(),
    };
    let high = TiltedObject {
        neg: a.neg.clone(),
        pos: CoherentSheaf::zero(),
    };
    let class = low.k0_class() - high.k0_class();
    let deg_minus = -class.rank();
    let rg_minus = class.degree();
    (rg_minus, -deg_minus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(d: i64, h: i64) -> CoherentSheaf {
        CoherentSheaf::stable(d, h).unwrap()
    }

    fn t(k: &[i64]) -> CoherentSheaf {
        CoherentSheaf::torsion("inf", k).unwrap()
    }

    fn tilted(neg: CoherentSheaf, pos: CoherentSheaf) -> TiltedObject {
        TiltedObject::new(neg, pos).unwrap()
    }

    #[test]
    fn split_examples() {
        let f = CoherentSheaf::line(1).direct_sum(&CoherentSheaf::line(-1));
        assert_eq!(
            split_torsion_pair(&f),
            (CoherentSheaf::line(-1), CoherentSheaf::line(1))
        );
        assert_eq!(
            split_torsion_pair(&t(&[2])),
            (CoherentSheaf::zero(), t(&[2]))
        );
        let g = CoherentSheaf::stable_pow(-1, 2, 2).unwrap();
        assert_eq!(split_torsion_pair(&g), (g.clone(), CoherentSheaf::zero()));
    }

    #[test]
    fn tilt_examples() {
        assert_eq!(
            tilt(&CoherentSheaf::line(-1)),
            tilted(CoherentSheaf::line(-1), CoherentSheaf::zero())
        );
        let f = CoherentSheaf::line(0).direct_sum(&t(&[1]));
        assert_eq!(tilt(&f), tilted(CoherentSheaf::zero(), f.clone()));
        let g = o(-1, 2).direct_sum(&o(1, 2));
        assert_eq!(tilt(&g), tilted(o(-1, 2), o(1, 2)));
    }

    #[test]
    fn constructor_rejects_bad_slopes() {
        assert!(TiltedObject::new(CoherentSheaf::line(1), CoherentSheaf::zero()).is_err());
        assert!(TiltedObject::new(CoherentSheaf::line(0), CoherentSheaf::zero()).is_err());
        assert!(TiltedObject::new(t(&[1]), CoherentSheaf::zero()).is_err());
        assert!(TiltedObject::new(CoherentSheaf::zero(), o(-1, 3)).is_err());
    }

    #[test]
    fn invariant_examples() {
        let inv = tilted_invariants(&tilt(&CoherentSheaf::line(0)));
        assert_eq!(inv.mu_minus, Some(TiltedSlope::NegInfinity));
        let inv = tilted_invariants(&tilt(&t(&[5])));
        assert_eq!((inv.deg_minus, inv.rg_minus), (0, 5));
        assert_eq!(
            inv.mu_minus,
            Some(TiltedSlope::Finite(Rational64::from_integer(0)))
        );
        let inv = tilted_invariants(&tilted(CoherentSheaf::line(-1), CoherentSheaf::zero()));
        assert_eq!((inv.deg_minus, inv.rg_minus), (1, 1));
        assert_eq!(
            inv.mu_minus,
            Some(TiltedSlope::Finite(Rational64::from_integer(1)))
        );
        assert_eq!(tilted_invariants(&TiltedObject::zero()).mu_minus, None);
    }

    #[test]
    fn hn_minus_examples() {
        let a = tilted(
            o(-1, 2).direct_sum(&CoherentSheaf::line(-2)),
            CoherentSheaf::zero(),
        );
        let hn = hn_minus(&a).unwrap();
        let mus: Vec<_> = hn.iter().map(|p| p.mu_minus).collect();
        assert_eq!(
            mus,
            vec![
                TiltedSlope::Finite(Rational64::from_integer(2)),
                TiltedSlope::Finite(Rational64::new(1, 2))
            ]
        );
        assert_eq!(hn[0].piece.neg(), &o(-1, 2));

        let b = tilted(
            CoherentSheaf::zero(),
            t(&[1]).direct_sum(&CoherentSheaf::line(2)),
        );
        let hn = hn_minus(&b).unwrap();
        assert_eq!(hn[0].piece.pos(), &t(&[1]));
        assert_eq!(hn[1].mu_minus, TiltedSlope::Finite(Rational64::new(-1, 2)));

        let c = tilt(&o(3, 4));
        assert_eq!(hn_minus(&c).unwrap().len(), 1);
        assert!(hn_minus(&TiltedObject::zero()).is_err());
    }

    #[test]
    fn hom_tilted_examples() {
        let a = tilted(CoherentSheaf::line(-1), CoherentSheaf::line(0));
        let m = hom_tilted(&a, &a);
        assert_eq!(m.entries[0][0], BcInvariant::new(0, 1));
        assert_eq!(m.entries[0][1], BcInvariant::new(1, -1));
        assert_eq!(m.entries[1][0], BcInvariant::ZERO);
        assert_eq!(m.entries[1][1], BcInvariant::new(0, 1));
        assert_eq!(m.total, BcInvariant::new(1, 1));

        let ga = tilt(&t(&[1]));
        let qp = tilt(&CoherentSheaf::line(0));
        assert_eq!(hom_tilted(&ga, &qp).total, BcInvariant::ZERO);
        assert_eq!(hom_tilted(&qp, &ga).total, BcInvariant::new(1, 0));
    }

    #[test]
    fn hom_tilted_matches_derived_hom() {
        let a = tilted(
            CoherentSheaf::line(-1).direct_sum(&o(-2, 3)),
            o(1, 2).direct_sum(&t(&[2])),
        );
        let b = tilted(
            o(-1, 2),
            CoherentSheaf::line(0).direct_sum(&CoherentSheaf::line(3)),
        );
        let pieces = |x: &TiltedObject| {
            [
                Shifted {
                    sheaf: x.neg(),
                    shift: 1,
                },
                Shifted {
                    sheaf: x.pos(),
                    shift: 0,
                },
            ]
            .map(|s| (s.sheaf.clone(), s.shift))
        };
        let total: BcInvariant = pieces(&a)
            .iter()
            .flat_map(|x| pieces(&b).map(move |y| (x.clone(), y)))
            .map(|((xs, xa), (ys, yb))| {
                derived_hom(
                    Shifted {
                        sheaf: &xs,
                        shift: xa,
                    },
                    Shifted {
                        sheaf: &ys,
                        shift: yb,
                    },
                )
            })
            .sum();
        assert_eq!(hom_tilted(&a, &b).total, total);
    }

    #[test]
    fn single_tilt_hom_differs_from_sheaf_hom() {
        let a = tilted(CoherentSheaf::line(-1), CoherentSheaf::line(0));
        let f = double_tilt(&a);
        assert_eq!(hom_tilted(&a, &a).total, BcInvariant::new(1, 1));
        assert_eq!(sheaf::hom(&f, &f), BcInvariant::new(1, 3));
        assert_eq!(hom_double_tilted(&a, &a).total, BcInvariant::new(1, 3));
    }

    #[test]
    fn double_tilt_examples() {
        let a = tilted(CoherentSheaf::line(-1), CoherentSheaf::line(0));
        assert_eq!(
            double_tilt(&a),
            CoherentSheaf::line(-1).direct_sum(&CoherentSheaf::line(0))
        );
        assert_eq!(
            double_tilt(&tilt(&CoherentSheaf::line(2))),
            CoherentSheaf::line(2)
        );
        let f = double_tilt(&a);
        assert_eq!(double_tilted_invariants(&a), (f.degree(), f.rank()));
    }
}
