//! Banach-Colmez spaces as seen through `R⁰τ_*` on normal forms.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequences::{se1, se2_at, se3, SesTag, ShortExactSequence};
use crate::sheaf::{self, pushforward_from_level, BcInvariant, CoherentSheaf};
use crate::slope::{fmt_ratio, Slope};
use crate::tilt::{tilted_invariants, TiltedObject};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BcAtom {
    /// `Q_p^n`, the image of `O^n`.
    Qp { n: u32 },
    /// Unipotent `G_a`-type atom from torsion at `point`.
    Ga { point: String, lengths: Vec<u32> },
    /// `U_λ^m` for `λ = d/h > 0`.
    U { d: i64, h: i64, mult: u32 },
    /// `O(d/h)^m[1]` with `d < 0`, a cokernel of `H¹` type.
    Coker { d: i64, h: i64, mult: u32 },
}

impl BcAtom {
    pub fn invariant(&self) -> BcInvariant {
        match self {
            BcAtom::Qp { n } => BcInvariant::new(0, *n as i64),
            BcAtom::Ga { lengths, .. } => {
                BcInvariant::new(lengths.iter().map(|&k| k as i64).sum(), 0)
            }
            BcAtom::U { d, h, mult } => BcInvariant::new(*d, *h) * (*mult as i64),
            BcAtom::Coker { d, h, mult } => BcInvariant::new(-d, -h) * (*mult as i64),
        }
    }
}

impl fmt::Display for BcAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pow = |m: u32| {
            if m == 1 {
                String::new()
            } else {
                format!("^{m}")
            }
        };
        match self {
            BcAtom::Qp { n } => write!(f, "QP({n})"),
            BcAtom::Ga { point, lengths } => {
                let ks: Vec<String> = lengths.iter().map(u32::to_string).collect();
                write!(f, "GA({point},[{}])", ks.join(","))
            }
            BcAtom::U { d, h, mult } => write!(f, "U({d},{h}){}", pow(*mult)),
            BcAtom::Coker { d, h, mult } => write!(f, "COKER({d},{h}){}", pow(*mult)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BcDescriptor {
    pub atoms: Vec<BcAtom>,
    pub invariant: BcInvariant,
}

impl fmt::Display for BcDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.atoms.iter().map(BcAtom::to_string).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `R⁰τ_*` on a tilted object, atom by atom.
pub fn r0tau(t: &TiltedObject) -> BcDescriptor {
    let mut atoms = Vec::new();
    for (point, lengths) in t.pos().torsion_parts() {
        atoms.push(BcAtom::Ga {
            point: point.to_string(),
            lengths: lengths.to_vec(),
        });
    }
    for (lambda, m) in t.pos().bundle_parts() {
        let (d, h) = (*lambda.numer(), *lambda.denom());
        atoms.push(if d == 0 {
            BcAtom::Qp { n: m }
        } else {
            BcAtom::U { d, h, mult: m }
        });
    }
    for (lambda, m) in t.neg().bundle_parts() {
        atoms.push(BcAtom::Coker {
            d: *lambda.numer(),
            h: *lambda.denom(),
            mult: m,
        });
    }
    let invariant = atoms.iter().map(BcAtom::invariant).sum();
    BcDescriptor { atoms, invariant }
}

/// `(dim, ht) = (rg⁻, -deg⁻)`.
pub fn dim_ht(t: &TiltedObject) -> BcInvariant {
    let inv = tilted_invariants(t);
    BcInvariant::new(inv.rg_minus, -inv.deg_minus)
}

/// Hom, `Ext¹` and `Ext²` between `G_a` and `Q_p`, rows and columns ordered
/// `(G_a, Q_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreenTables {
    pub hom: [[BcInvariant; 2]; 2],
    pub ext1: [[BcInvariant; 2]; 2],
    pub ext2: [[BcInvariant; 2]; 2],
}

pub fn breen_tables() -> BreenTables {
    let ga = CoherentSheaf::torsion("inf", &[1]).expect("length 1");
    let qp = CoherentSheaf::line(0);
    let objs = [&ga, &qp];
    let table = |i: i64| {
        let mut t = [[BcInvariant::ZERO; 2]; 2];
        for (r, a) in objs.iter().enumerate() {
            for (c, b) in objs.iter().enumerate() {
                t[r][c] = sheaf::ext(i, a, b);
            }
        }
        t
    };
    BreenTables {
        hom: table(0),
        ext1: table(1),
        ext2: table(2),
    }
}

/// One summand of `T` together with the chain of sequences presenting it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomPresentation {
    pub atom: String,
    /// Cover level the chain was built on; 1 means `X` itself.
    pub level: i64,
    pub multiplicity: u32,
    /// Elementary sequences for a single copy, spliced in order.
    pub steps: Vec<ShortExactSequence>,
    /// Resulting `0 → O^a → F' → atom → 0` on `X_level` for one copy.
    pub spliced: ShortExactSequence,
    /// The sequence on `X` for all copies.
    pub result: ShortExactSequence,
}

/// `0 → O^a → F' → T → 0` with every slope of `F'` in `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub target: TiltedObject,
    pub kernel_rank: i64,
    pub middle: CoherentSheaf,
    pub pieces: Vec<AtomPresentation>,
    pub total: ShortExactSequence,
}

fn unshifted(f: CoherentSheaf) -> TiltedObject {
    TiltedObject::unshifted(f).expect("non-negative slopes")
}

fn spliced(a: i64, middle: CoherentSheaf, right: TiltedObject) -> ShortExactSequence {
    ShortExactSequence::new(
        unshifted(CoherentSheaf::trivial(a)),
        unshifted(middle),
        right,
        SesTag::Composite,
    )
}

fn se1_chain(d: i64) -> Vec<ShortExactSequence> {
    (2..=d).rev().map(|k| se1(k).expect("k > 1")).collect()
}

/// Presentation of `O(d)` for integer `d > 1` and of `T_x(k)`, on one level.
fn line_chain(d: i64) -> (Vec<ShortExactSequence>, ShortExactSequence) {
    let steps = se1_chain(d);
    let seq = spliced(
        d - 1,
        CoherentSheaf::line(1).power(d as u32),
        unshifted(CoherentSheaf::line(d)),
    );
    (steps, seq)
}

fn torsion_chain(point: &str, k: i64) -> (Vec<ShortExactSequence>, ShortExactSequence) {
    let mut steps = vec![se2_at(point, k).expect("k > 0")];
    steps.extend(se1_chain(k));
    let right = unshifted(CoherentSheaf::torsion(point, &[k]).expect("k > 0"));
    (
        steps,
        spliced(k, CoherentSheaf::line(1).power(k as u32), right),
    )
}

fn shifted_chain(k: i64) -> (Vec<ShortExactSequence>, ShortExactSequence) {
    let mut steps = vec![se3(k).expect("k > 0"), se2_at("inf", k).expect("k > 0")];
    steps.extend(se1_chain(k));
    let right = TiltedObject::shifted(CoherentSheaf::line(-k)).expect("negative slope");
    (
        steps,
        spliced(k + 1, CoherentSheaf::line(1).power(k as u32), right),
    )
}

/// `π_*` from `X_h` of a sheaf whose slopes are integers.
fn pushforward_sheaf(f: &CoherentSheaf, h: i64) -> Result<CoherentSheaf> {
    if f.has_torsion() {
        return Err(Error::TorsionUnsupported("pushforward_sheaf"));
    }
    let mut out = CoherentSheaf::zero();
    for (lambda, m) in f.bundle_parts() {
        if *lambda.denom() != 1 {
            return Err(Error::OutOfRange(format!(
                "slope {} is not integral",
                fmt_ratio(&lambda)
            )));
        }
        out = out.direct_sum(&pushforward_from_level(*lambda.numer(), h)?.power(m));
    }
    Ok(out)
}

fn pushforward_tilted(t: &TiltedObject, h: i64) -> Result<TiltedObject> {
    TiltedObject::new(
        pushforward_sheaf(t.neg(), h)?,
        pushforward_sheaf(t.pos(), h)?,
    )
}

fn pushforward_sequence(s: &ShortExactSequence, h: i64) -> Result<ShortExactSequence> {
    Ok(ShortExactSequence {
        left: pushforward_tilted(&s.left, h)?,
        middle: pushforward_tilted(&s.middle, h)?,
        right: pushforward_tilted(&s.right, h)?,
        tag: SesTag::Pushforward,
        level: Some(h),
    })
}

fn present_stable(lambda: Rational64, m: u32, shifted: bool) -> Result<AtomPresentation> {
    let (d, h) = (*lambda.numer(), *lambda.denom());
    let label = if shifted {
        format!("O({})[1]", fmt_ratio(&lambda))
    } else {
        format!("O({})", fmt_ratio(&lambda))
    };
    let atom_sheaf = CoherentSheaf::from_ratio(lambda, 1);
    let trivial = |level: i64| {
        let right = unshifted(atom_sheaf.clone());
        let seq = spliced(0, atom_sheaf.clone(), right);
        Ok(AtomPresentation {
            atom: label.clone(),
            level,
            multiplicity: m,
            steps: Vec::new(),
            spliced: seq.clone(),
            result: seq.power(m),
        })
    };
    if !shifted && lambda <= Rational64::from_integer(1) {
        return trivial(1);
    }
    let (steps, seq) = if shifted {
        shifted_chain(-d)
    } else {
        line_chain(d)
    };
    let result = if h == 1 {
        seq.clone()
    } else {
        pushforward_sequence(&seq, h)?
    };
    let seq = if h == 1 { seq } else { seq.at_level(h) };
    let steps = if h == 1 {
        steps
    } else {
        steps.into_iter().map(|s| s.at_level(h)).collect()
    };
    Ok(AtomPresentation {
        atom: label,
        level: h,
        multiplicity: m,
        steps,
        spliced: seq,
        result: result.power(m),
    })
}

/// Builds `0 → O^a → F' → T → 0` by splicing the elementary sequences.
pub fn effective_presentation(t: &TiltedObject) -> Result<Presentation> {
    let mut pieces = Vec::new();
    for (point, lengths) in t.pos().torsion_parts() {
        for &k in lengths {
            let (steps, seq) = torsion_chain(point.as_str(), k as i64);
            pieces.push(AtomPresentation {
                atom: format!("T({point},[{k}])"),
                level: 1,
                multiplicity: 1,
                steps,
                spliced: seq.clone(),
                result: seq,
            });
        }
    }
    for (lambda, m) in t.pos().bundle_parts() {
        pieces.push(present_stable(lambda, m, false)?);
    }
    for (lambda, m) in t.neg().bundle_parts() {
        pieces.push(present_stable(lambda, m, true)?);
    }
    let mut total = ShortExactSequence::new(
        TiltedObject::zero(),
        TiltedObject::zero(),
        TiltedObject::zero(),
        SesTag::Composite,
    );
    for p in &pieces {
        total = total.direct_sum(&p.result, SesTag::Composite);
    }
    let presentation = Presentation {
        target: t.clone(),
        kernel_rank: total.left.pos().rank(),
        middle: total.middle.pos().clone(),
        pieces,
        total,
    };
    presentation.verify()?;
    Ok(presentation)
}

impl Presentation {
    /// Re-checks every step, every splice and the final shape.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Certificate(msg));
        for p in &self.pieces {
            for s in &p.steps {
                s.check()?;
            }
            p.spliced.check()?;
            p.result.check()?;
            let step_kernel: i64 = p.steps.iter().map(|s| s.left.pos().rank()).sum();
            if p.spliced.left.pos().rank() != step_kernel {
                return fail(format!("{}: kernel rank does not match its steps", p.atom));
            }
            if p.level > 1
                && pushforward_sequence(&p.spliced, p.level)?.power(p.multiplicity) != p.result
            {
                return fail(format!("{}: pushed-forward sequence mismatch", p.atom));
            }
        }
        self.total.check()?;
        if self.total.right != self.target {
            return fail(format!(
                "presentation ends at {} instead of {}",
                self.total.right, self.target
            ));
        }
        let kernel = &self.total.left;
        if !kernel.neg().is_zero() || *kernel.pos() != CoherentSheaf::trivial(self.kernel_rank) {
            return fail(format!("kernel {kernel} is not trivial"));
        }
        if !self.total.middle.neg().is_zero() || self.middle != *self.total.middle.pos() {
            return fail("middle term is not a sheaf".into());
        }
        let (lo, hi) = (Slope::zero(), Slope::integer(1));
        if self.middle.slopes().iter().any(|s| *s < lo || *s > hi) {
            return fail(format!(
                "middle term {} has slopes outside [0,1]",
                self.middle
            ));
        }
        let lhs = self.middle.k0_class();
        let rhs = CoherentSheaf::trivial(self.kernel_rank).k0_class() + self.target.k0_class();
        if lhs != rhs {
            return fail("class identity [F'] = a[O] + [T] fails".into());
        }
        Ok(())
    }

    pub fn step_count(&self) -> usize {
        self.pieces.iter().map(|p| p.steps.len()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tilt::tilt;

    const C: BcInvariant = BcInvariant::new(1, 0);
    const QP: BcInvariant = BcInvariant::new(0, 1);
    const Z: BcInvariant = BcInvariant::ZERO;

    #[test]
    fn r0tau_examples() {
        let d = r0tau(&tilt(&CoherentSheaf::line(0)));
        assert_eq!(d.atoms, vec![BcAtom::Qp { n: 1 }]);
        assert_eq!(d.invariant, QP);
        let d = r0tau(&tilt(&CoherentSheaf::line(1)));
        assert_eq!(d.to_string(), "U(1,1)");
        assert_eq!(d.invariant, BcInvariant::new(1, 1));
        let d = r0tau(&TiltedObject::shifted(CoherentSheaf::line(-1)).unwrap());
        assert_eq!(d.invariant, BcInvariant::new(1, -1));
        assert_eq!(d.invariant, CoherentSheaf::line(-1).h1());
    }

    #[test]
    fn dim_ht_examples() {
        for k in 1..6 {
            let t = tilt(&CoherentSheaf::torsion("inf", &[k]).unwrap());
            assert_eq!(dim_ht(&t), BcInvariant::new(k, 0));
        }
        assert_eq!(dim_ht(&tilt(&CoherentSheaf::line(0))), QP);
        let t = TiltedObject::shifted(CoherentSheaf::stable(-2, 3).unwrap()).unwrap();
        assert_eq!(dim_ht(&t), BcInvariant::new(2, -3));
        assert_eq!(dim_ht(&t), r0tau(&t).invariant);
    }

    #[test]
    fn breen_entries() {
        let b = breen_tables();
        assert_eq!(b.hom, [[C, Z], [C, QP]]);
        assert_eq!(b.ext1, [[C, C], [Z, Z]]);
        assert_eq!(b.ext2, [[Z, Z], [Z, Z]]);
    }

    #[test]
    fn presentation_of_o2() {
        let p = effective_presentation(&tilt(&CoherentSheaf::line(2))).unwrap();
        assert_eq!(p.kernel_rank, 1);
        assert_eq!(p.middle, CoherentSheaf::line(1).power(2));
        assert_eq!(p.step_count(), 1);
        assert_eq!(p.pieces[0].steps[0], se1(2).unwrap());
    }

    #[test]
    fn presentation_of_torsion_and_shift() {
        let t = tilt(&CoherentSheaf::torsion("inf", &[1]).unwrap());
        let p = effective_presentation(&t).unwrap();
        assert_eq!(p.pieces[0].steps, vec![se2_at("inf", 1).unwrap()]);
        assert_eq!(p.middle, CoherentSheaf::line(1));

        let t = TiltedObject::shifted(CoherentSheaf::line(-1)).unwrap();
        let p = effective_presentation(&t).unwrap();
        assert_eq!(p.pieces[0].steps[0], se3(1).unwrap());
        assert_eq!(p.kernel_rank, 2);
        assert_eq!(p.middle, CoherentSheaf::line(1));
    }

    #[test]
    fn presentation_of_fractional_slopes() {
        let t = tilt(&CoherentSheaf::stable(5, 2).unwrap());
        let p = effective_presentation(&t).unwrap();
        assert_eq!(p.pieces[0].level, 2);
        assert_eq!(p.kernel_rank, 8);
        assert_eq!(p.middle, CoherentSheaf::stable_pow(1, 2, 5).unwrap());

        let t = TiltedObject::shifted(CoherentSheaf::stable_pow(-2, 3, 2).unwrap()).unwrap();
        let p = effective_presentation(&t).unwrap();
        assert_eq!(p.kernel_rank, 2 * 3 * 3);
        assert_eq!(p.middle, CoherentSheaf::stable_pow(1, 3, 4).unwrap());
    }

    #[test]
    fn presentation_of_small_slopes_is_trivial() {
        let f = CoherentSheaf::line(0).direct_sum(&CoherentSheaf::stable(2, 3).unwrap());
        let p = effective_presentation(&tilt(&f)).unwrap();
        assert_eq!(p.kernel_rank, 0);
        assert_eq!(p.middle, f);
        assert_eq!(
            effective_presentation(&TiltedObject::zero())
                .unwrap()
                .kernel_rank,
            0
        );
    }
}
