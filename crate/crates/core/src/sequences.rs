//! Certified short exact sequences in `Coh_X⁻`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sheaf::{CoherentSheaf, K0Class};
use crate::tilt::TiltedObject;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SesTag {
    Se1,
    Se2,
    Se3,
    Composite,
    Pushforward,
}

/// `0 → left → middle → right → 0`, with terms in `Coh_X⁻`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence {
    pub left: TiltedObject,
    pub middle: TiltedObject,
    pub right: TiltedObject,
    pub tag: SesTag,
    /// Level `h` of the cover `X_h` the sequence lives on; `None` for `X`.
    pub level: Option<i64>,
}

impl ShortExactSequence {
    pub fn new(left: TiltedObject, middle: TiltedObject, right: TiltedObject, tag: SesTag) -> Self {
        ShortExactSequence {
            left,
            middle,
            right,
            tag,
            level: None,
        }
    }

    pub fn at_level(mut self, h: i64) -> Self {
        self.level = Some(h);
        self
    }

    /// Additivity of the class: `[middle] = [left] + [right]`.
    pub fn check(&self) -> Result<()> {
        let (l, m, r) = (
            self.left.k0_class(),
            self.middle.k0_class(),
            self.right.k0_class(),
        );
        if m != l + r {
            return Err(Error::Certificate(format!(
                "{:?}: [{}] != [{}] + [{}]",
                self.tag, self.middle, self.left, self.right
            )));
        }
        Ok(())
    }

    pub fn classes(&self) -> (K0Class, K0Class, K0Class) {
        (
            self.left.k0_class(),
            self.middle.k0_class(),
            self.right.k0_class(),
        )
    }

    pub fn power(&self, k: u32) -> ShortExactSequence {
        ShortExactSequence {
            left: self.left.power(k),
            middle: self.middle.power(k),
            right: self.right.power(k),
            tag: self.tag,
            level: self.level,
        }
    }

    pub fn direct_sum(&self, other: &ShortExactSequence, tag: SesTag) -> ShortExactSequence {
        ShortExactSequence {
            left: self.left.direct_sum(&other.left),
            middle: self.middle.direct_sum(&other.middle),
            right: self.right.direct_sum(&other.right),
            tag,
            level: None,
        }
    }
}

fn unshifted(f: CoherentSheaf) -> TiltedObject {
    TiltedObject::unshifted(f).expect("non-negative slopes")
}

/// `0 → O → O(1) ⊕ O(d-1) → O(d) → 0` for `d > 1`.
pub fn se1(d: i64) -> Result<ShortExactSequence> {
    if d <= 1 {
        return Err(Error::OutOfRange(format!("se1 needs d > 1, got {d}")));
    }
    Ok(ShortExactSequence::new(
        unshifted(CoherentSheaf::line(0)),
        unshifted(CoherentSheaf::line(1).direct_sum(&CoherentSheaf::line(d - 1))),
        unshifted(CoherentSheaf::line(d)),
        SesTag::Se1,
    ))
}

/// `0 → O → O(k) → T(∞,[k]) → 0` for `k > 0`.
pub fn se2(k: i64) -> Result<ShortExactSequence> {
    se2_at("inf", k)
}

/// [`se2`] with the torsion supported at `point`.
pub fn se2_at(point: &str, k: i64) -> Result<ShortExactSequence> {
    if k <= 0 {
        return Err(Error::OutOfRange(format!("se2 needs k > 0, got {k}")));
    }
    Ok(ShortExactSequence::new(
        unshifted(CoherentSheaf::line(0)),
        unshifted(CoherentSheaf::line(k)),
        unshifted(CoherentSheaf::torsion(point, &[k])?),
        SesTag::Se2,
    ))
}

/// `0 → O → T(∞,[k]) → O(-k)[1] → 0` for `k > 0`.
pub fn se3(k: i64) -> Result<ShortExactSequence> {
    if k <= 0 {
        return Err(Error::OutOfRange(format!("se3 needs k > 0, got {k}")));
    }
    Ok(ShortExactSequence::new(
        unshifted(CoherentSheaf::line(0)),
        unshifted(CoherentSheaf::torsion("inf", &[k])?),
        TiltedObject::shifted(CoherentSheaf::line(-k))?,
        SesTag::Se3,
    ))
}
