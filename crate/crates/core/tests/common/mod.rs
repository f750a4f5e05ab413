#![allow(dead_code)]

use courbe::sheaf::CoherentSheaf;
use courbe::tilt::TiltedObject;
use proptest::prelude::*;

pub fn slope() -> impl Strategy<Value = (i64, i64)> {
    (-12i64..=12, 1i64..=12)
}

pub fn stable() -> impl Strategy<Value = CoherentSheaf> {
    (slope(), 1i64..=2).prop_map(|((d, h), m)| CoherentSheaf::stable_pow(d, h, m).unwrap())
}

pub fn torsion() -> impl Strategy<Value = CoherentSheaf> {
    (
        prop::sample::select(vec!["inf", "x", "y"]),
        prop::collection::vec(1i64..=8, 1..=2),
    )
        .prop_map(|(p, ks)| CoherentSheaf::torsion(p, &ks).unwrap())
}

pub fn sheaf() -> impl Strategy<Value = CoherentSheaf> {
    (
        prop::collection::vec(stable(), 0..=3),
        prop::option::weighted(0.4, torsion()),
    )
        .prop_map(|(bundles, t)| {
            let mut f = t.unwrap_or_default();
            for b in bundles {
                f = f.direct_sum(&b);
            }
            f
        })
}

pub fn bundle_with(keep: fn(i64) -> bool) -> impl Strategy<Value = CoherentSheaf> {
    prop::collection::vec(
        (
            (-12i64..=12).prop_filter("sign", move |d| keep(*d)),
            1i64..=12,
            1i64..=2,
        ),
        0..=3,
    )
    .prop_map(|parts| {
        parts
            .into_iter()
            .fold(CoherentSheaf::zero(), |acc, (d, h, m)| {
                acc.direct_sum(&CoherentSheaf::stable_pow(d, h, m).unwrap())
            })
    })
}

pub fn tilted() -> impl Strategy<Value = TiltedObject> {
    (
        bundle_with(|d| d < 0),
        bundle_with(|d| d >= 0),
        prop::option::weighted(0.4, torsion()),
    )
        .prop_map(|(neg, pos, t)| {
            TiltedObject::new(neg, pos.direct_sum(&t.unwrap_or_default())).unwrap()
        })
}

/// `(rank, degree)` summed directly over the bundle and torsion parts.
pub fn rank_degree(f: &CoherentSheaf) -> (i64, i64) {
    let mut r = 0;
    let mut d = 0;
    for (s, m) in f.bundle_parts() {
        r += *s.denom() * m as i64;
        d += *s.numer() * m as i64;
    }
    for (_, ks) in f.torsion_parts() {
        d += ks.iter().map(|&k| k as i64).sum::<i64>();
    }
    (r, d)
}
