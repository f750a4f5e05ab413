//! Seeded random sheaves and tilted objects.
//!
//! Every item of a batch draws from its own ChaCha stream, so batches are
//! reproducible and identical under both execution modes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::par::Execution;
use crate::sheaf::CoherentSheaf;
use crate::slope::Slope;
use crate::tilt::{split_torsion_pair, TiltedObject};

/// Bounds for generated objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// `|d|` and `h` of every stable summand are at most this.
    pub max_dh: i64,
    pub max_torsion_length: i64,
    pub max_summands: usize,
    pub max_multiplicity: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_dh: 12,
            max_torsion_length: 8,
            max_summands: 3,
            max_multiplicity: 2,
        }
    }
}

pub const LABELS: [&str; 3] = ["inf", "x", "y"];

/// The generator for item `index` of the batch with this `seed`.
pub fn item_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// `f(rng, i)` for `i < n`, each with its own stream.
pub fn batch<U, F>(seed: u64, n: usize, exec: Execution, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> U + Sync + Send,
{
    exec.map_range(n, |i| f(&mut item_rng(seed, i), i))
}

/// A reduced slope `d/h` with `|d|, h <= bound`.
pub fn random_slope<R: Rng>(rng: &mut R, bound: i64) -> (i64, i64) {
    let d = rng.gen_range(-bound..=bound);
    let h = rng.gen_range(1..=bound);
    (d, h)
}

pub fn random_stable<R: Rng>(rng: &mut R, bounds: &Bounds) -> CoherentSheaf {
    let (d, h) = random_slope(rng, bounds.max_dh);
    let m = rng.gen_range(1..=bounds.max_multiplicity);
    CoherentSheaf::stable_pow(d, h, m).expect("h > 0, m > 0")
}

pub fn random_torsion<R: Rng>(rng: &mut R, bounds: &Bounds) -> CoherentSheaf {
    let label = LABELS.choose(rng).expect("non-empty");
    let count = rng.gen_range(1..=2);
    let factors: Vec<i64> = (0..count)
        .map(|_| rng.gen_range(1..=bounds.max_torsion_length))
        .collect();
    CoherentSheaf::torsion(label, &factors).expect("positive lengths")
}

/// A possibly zero sheaf with a few stable summands and torsion.
pub fn random_sheaf<R: Rng>(rng: &mut R, bounds: &Bounds) -> CoherentSheaf {
    let mut f = CoherentSheaf::zero();
    for _ in 0..rng.gen_range(0..=bounds.max_summands) {
        f = f.direct_sum(&random_stable(rng, bounds));
    }
    if rng.gen_bool(0.4) {
        f = f.direct_sum(&random_torsion(rng, bounds));
    }
    f
}

/// A nonzero sheaf.
pub fn random_nonzero_sheaf<R: Rng>(rng: &mut R, bounds: &Bounds) -> CoherentSheaf {
    loop {
        let f = random_sheaf(rng, bounds);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_bundle_with<R: Rng>(
    rng: &mut R,
    bounds: &Bounds,
    keep: impl Fn(Slope) -> bool,
) -> CoherentSheaf {
    random_sheaf(rng, bounds).bundle_part().filter_slopes(keep)
}

/// A tilted object whose two halves are drawn independently.
pub fn random_tilted<R: Rng>(rng: &mut R, bounds: &Bounds) -> TiltedObject {
    let (neg, _) = split_torsion_pair(&random_sheaf(rng, bounds).bundle_part());
    let (_, pos) = split_torsion_pair(&random_sheaf(rng, bounds));
    TiltedObject::new(neg, pos).expect("halves respect the slope condition")
}

pub fn random_nonzero_tilted<R: Rng>(rng: &mut R, bounds: &Bounds) -> TiltedObject {
    loop {
        let t = random_tilted(rng, bounds);
        if !t.is_zero() {
            return t;
        }
    }
}
