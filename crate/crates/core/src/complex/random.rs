//! Random complexes and quasi-isomorphisms for property sweeps.
//!
//! A source complex is a direct sum of elementary pieces `R`, `R --g--> R`
//! and `R --u--> R` (u a unit) in a random basis. The target adds further
//! acyclic pieces, so the inclusion is a quasi-isomorphism by construction.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::{BoundedComplex, ChainMap, ShiftProfile};
use crate::matrix::Matrix;
use crate::ring::{FromSmall, QPoly};

/// Coefficient domains that can produce small random elements.
pub trait Sample: FromSmall {
    /// A small element, possibly zero.
    fn small<G: Rng + ?Sized>(rng: &mut G) -> Self;

    /// A unit.
    fn unit<G: Rng + ?Sized>(rng: &mut G) -> Self;

    fn small_nonzero<G: Rng + ?Sized>(rng: &mut G) -> Self {
        loop {
            let x = Self::small(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

impl Sample for BigInt {
    fn small<G: Rng + ?Sized>(rng: &mut G) -> Self {
        BigInt::from(rng.gen_range(-3i64..=3))
    }

    fn unit<G: Rng + ?Sized>(rng: &mut G) -> Self {
        BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 })
    }
}

impl Sample for BigRational {
    fn small<G: Rng + ?Sized>(rng: &mut G) -> Self {
        let n = rng.gen_range(-3i64..=3);
        let d = rng.gen_range(1i64..=3);
        BigRational::new(n.into(), d.into())
    }

    fn unit<G: Rng + ?Sized>(rng: &mut G) -> Self {
        Self::small_nonzero(rng)
    }
}

impl Sample for QPoly {
    fn small<G: Rng + ?Sized>(rng: &mut G) -> Self {
        let deg = rng.gen_range(0..=1);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-2i64..=2)).collect();
        QPoly::from_ints(&coeffs)
    }

    fn unit<G: Rng + ?Sized>(rng: &mut G) -> Self {
        QPoly::from_i64(if rng.gen_bool(0.5) {
            rng.gen_range(1..=3)
        } else {
            -rng.gen_range(1..=3)
        })
    }
}

fn single<R: Sample>(lowest: i64, len: usize, at: usize) -> BoundedComplex<R> {
    let ranks = (0..len).map(|k| usize::from(k == at)).collect();
    let diffs = (1..len)
        .map(|k| Matrix::zeros(usize::from(k == at), usize::from(k - 1 == at)))
        .collect();
    BoundedComplex::new(lowest, ranks, diffs).expect("single term")
}

fn arrow<R: Sample>(lowest: i64, len: usize, at: usize, g: R) -> BoundedComplex<R> {
    let ranks = (0..len)
        .map(|k| usize::from(k == at || k == at + 1))
        .collect();
    let diffs = (1..len)
        .map(|k| {
            let (src, dst) = (k - 1, k);
            let rows = usize::from(dst == at || dst == at + 1);
            let cols = usize::from(src == at || src == at + 1);
            if src == at {
                Matrix::from_rows(1, 1, vec![g.clone()]).expect("1x1")
            } else {
                Matrix::zeros(rows, cols)
            }
        })
        .collect();
    BoundedComplex::new(lowest, ranks, diffs).expect("two-term complex")
}

/// A random unimodular matrix and its inverse.
pub fn random_unimodular<R: Sample, G: Rng + ?Sized>(
    rng: &mut G,
    n: usize,
) -> (Matrix<R>, Matrix<R>) {
    let mut p = Matrix::identity(n);
    let mut p_inv = Matrix::identity(n);
    if n < 2 {
        if n == 1 {
            let u = R::unit(rng);
            let u_inv = R::one().exact_div(&u).expect("unit");
            p[(0, 0)] = u;
            p_inv[(0, 0)] = u_inv;
        }
        return (p, p_inv);
    }
    for _ in 0..3 * n {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        let c = R::small(rng);
        // P <- P (I + c e_ab); P^{-1} <- (I - c e_ab) P^{-1}.
        let mut e = Matrix::identity(n);
        e[(a, b)] = c.clone();
        let mut e_inv = Matrix::identity(n);
        e_inv[(a, b)] = -c;
        p = &p * &e;
        p_inv = &e_inv * &p_inv;
    }
    (p, p_inv)
}

/// A random complex on `len` consecutive degrees starting at `lowest`, with
/// free terms; arrows carry `f^a · s` for small `a` and random `s`.
pub fn random_complex<R: Sample, G: Rng + ?Sized>(
    rng: &mut G,
    f: &R,
    lowest: i64,
    len: usize,
) -> BoundedComplex<R> {
    let mut c = BoundedComplex::zero(lowest, len);
    let pieces = rng.gen_range(1..=len + 2);
    for _ in 0..pieces {
        let at = rng.gen_range(0..len);
        let piece = if at + 1 < len && rng.gen_bool(0.7) {
            let g = if rng.gen_bool(0.2) {
                R::unit(rng)
            } else {
                let s = if rng.gen_bool(0.5) {
                    R::one()
                } else {
                    R::small_nonzero(rng)
                };
                f.pow_u32(rng.gen_range(0..=2)) * s
            };
            arrow(lowest, len, at, g)
        } else {
            single(lowest, len, at)
        };
        c = c.direct_sum(&piece);
    }
    c
}

fn random_acyclic<R: Sample, G: Rng + ?Sized>(
    rng: &mut G,
    lowest: i64,
    len: usize,
) -> BoundedComplex<R> {
    let mut c = BoundedComplex::zero(lowest, len);
    if len < 2 {
        return c;
    }
    for _ in 0..rng.gen_range(1..=len) {
        let at = rng.gen_range(0..len - 1);
        c = c.direct_sum(&arrow(lowest, len, at, R::unit(rng)));
    }
    c
}

/// A quasi-isomorphism `C → D` between randomly presented complexes.
pub fn random_quasi_iso<R: Sample, G: Rng + ?Sized>(rng: &mut G, f: &R, len: usize) -> ChainMap<R> {
    let lowest = rng.gen_range(-1i64..=1);
    let base = random_complex(rng, f, lowest, len);
    let extra = random_acyclic(rng, lowest, len);
    let bigger = base.direct_sum(&extra);
    let (pc, pc_inv): (Vec<_>, Vec<_>) = base
        .ranks()
        .iter()
        .map(|&n| random_unimodular(rng, n))
        .unzip();
    let (pd, pd_inv): (Vec<_>, Vec<_>) = bigger
        .ranks()
        .iter()
        .map(|&n| random_unimodular(rng, n))
        .unzip();
    let c = base.change_basis(&pc, &pc_inv);
    let d = bigger.change_basis(&pd, &pd_inv);
    let maps = base
        .ranks()
        .iter()
        .zip(bigger.ranks())
        .enumerate()
        .map(|(k, (&n, &m))| {
            let incl = Matrix::from_fn(m, n, |i, j| if i == j { R::one() } else { R::zero() });
            &(&pd[k] * &incl) * &pc_inv[k]
        })
        .collect();
    ChainMap::new(c, d, maps).expect("inclusion of a summand is a chain map")
}

/// A random non-decreasing profile covering `[lowest - 1, lowest + len]`.
pub fn random_profile<G: Rng + ?Sized>(rng: &mut G, lowest: i64, len: usize) -> ShiftProfile {
    let mut v = rng.gen_range(0..=1u32);
    let values = (0..len + 2)
        .map(|_| {
            let cur = v;
            v += rng.gen_range(0..=2u32);
            cur
        })
        .collect();
    ShiftProfile::new(lowest - 1, values).expect("non-empty")
}
