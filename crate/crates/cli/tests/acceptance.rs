//! End-to-end acceptance checks. Runs without the test harness so every
//! criterion prints a single `PASS` or `FAIL` line; exits non-zero if any
//! criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use courbe::bc::{breen_tables, dim_ht, effective_presentation, r0tau};
use courbe::cocycle::{hom_column_checks, pullback_d1, symmetric_2cocycle_quotient, Func, Kind};
use courbe::complex::random::{random_profile, random_quasi_iso, Sample};
use courbe::complex::{decalage, decalage_map, is_quasi_iso, koszul, ShiftProfile};
use courbe::derham::{apply_d, integrate_monomial, qp_cohomology, GradedDeRham};
use courbe::par::Execution;
use courbe::ring::QPoly;
use courbe::sample::{batch, random_sheaf, random_tilted, Bounds};
use courbe::sequences::{se1, se2_at, se3, ShortExactSequence};
use courbe::sheaf::{ext, ext1, ext2, hom, BcInvariant, CoherentSheaf};
use courbe::slope::{reduce, Slope};
use courbe::syntax::{
    parse_object, parse_sheaf, parse_tilted, print_sheaf, print_tilted, print_tilted_shifted,
};
use courbe::tilt::{
    double_tilt, hom_double_tilted, hom_tilted, tilt, tilted_invariants, TiltedObject,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

const SEED: u64 = 20_240_601;
const PAR: Execution = Execution::Parallel;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= budget, || format!("took {t:.2?}, budget {budget:?}"))
}

fn bc(dim: i64, ht: i64) -> BcInvariant {
    BcInvariant::new(dim, ht)
}

/// `(rank, degree)` read off the normal form.
fn rank_degree(f: &CoherentSheaf) -> (i64, i64) {
    let mut r = 0;
    let mut d = 0;
    for (s, m) in f.bundle_parts() {
        r += *s.denom() * i64::from(m);
        d += *s.numer() * i64::from(m);
    }
    for (_, ks) in f.torsion_parts() {
        d += ks.iter().map(|&k| i64::from(k)).sum::<i64>();
    }
    (r, d)
}

/// `(deg⁻, rg⁻)` from the class `[pos] - [neg]`.
fn minus_invariants(t: &TiltedObject) -> (i64, i64) {
    let (rp, dp) = rank_degree(t.pos());
    let (rn, dn) = rank_degree(t.neg());
    (rn - rp, dp - dn)
}

/// Hom and Ext¹ between `O(d/h)` and `O(d'/h')` from the Hom bundle of rank
/// `h h'` and degree `h d' - d h'`.
fn stable_oracle(d: i64, h: i64, d2: i64, h2: i64) -> (BcInvariant, BcInvariant) {
    let (rank, degree) = (h * h2, h * d2 - d * h2);
    match degree.signum() {
        1 => (bc(degree, rank), BcInvariant::ZERO),
        0 => (bc(0, rank), BcInvariant::ZERO),
        _ => (BcInvariant::ZERO, bc(-degree, -rank)),
    }
}

/// Hom between sheaves, summand by summand.
fn hom_oracle(f: &CoherentSheaf, g: &CoherentSheaf) -> BcInvariant {
    let mut total = BcInvariant::ZERO;
    for (s, m) in f.bundle_parts() {
        for (t, n) in g.bundle_parts() {
            let (h0, _) = stable_oracle(*s.numer(), *s.denom(), *t.numer(), *t.denom());
            total = total + bc(h0.dim * i64::from(m * n), h0.ht * i64::from(m * n));
        }
        for (_, ls) in g.torsion_parts() {
            let length: i64 = ls.iter().map(|&l| i64::from(l)).sum();
            total = total + bc(*s.denom() * i64::from(m) * length, 0);
        }
    }
    for (p, ks) in f.torsion_parts() {
        for (q, ls) in g.torsion_parts() {
            if p == q {
                let overlap: i64 = ks
                    .iter()
                    .flat_map(|&k| ls.iter().map(move |&l| i64::from(k.min(l))))
                    .sum();
                total = total + bc(overlap, 0);
            }
        }
    }
    total
}

fn run_json(args: &[&str]) -> Result<Value, String> {
    let mut argv = vec!["courbe", "--json"];
    argv.extend_from_slice(args);
    courbe_cli::run(argv)
        .map(|r| r.to_json())
        .map_err(|e| format!("{args:?}: {e}"))
}

// 1
fn breen() -> Outcome {
    let start = Instant::now();
    let (c, qp, z) = (bc(1, 0), bc(0, 1), BcInvariant::ZERO);
    let hom = [[c, z], [c, qp]];
    let ext1 = [[c, c], [z, z]];
    let ext2 = [[z, z], [z, z]];
    let t = breen_tables();
    ensure(t.hom == hom, || format!("Hom table {:?}", t.hom))?;
    ensure(t.ext1 == ext1, || format!("Ext1 table {:?}", t.ext1))?;
    ensure(t.ext2 == ext2, || format!("Ext2 table {:?}", t.ext2))?;
    let doc = run_json(&["breen"])?;
    let cli: [[[BcInvariant; 2]; 2]; 3] = [
        serde_json::from_value(doc["hom"].clone()).map_err(|e| e.to_string())?,
        serde_json::from_value(doc["ext1"].clone()).map_err(|e| e.to_string())?,
        serde_json::from_value(doc["ext2"].clone()).map_err(|e| e.to_string())?,
    ];
    ensure(cli == [hom, ext1, ext2], || "CLI tables differ".into())?;
    within(start, Duration::from_secs(1))?;
    Ok("12/12 entries".into())
}

// 2
fn euler_characteristic() -> Outcome {
    let start = Instant::now();
    let n = 1000;
    let bounds = Bounds::default();
    let bad: Vec<String> = batch(SEED, n, PAR, |rng, _| random_sheaf(rng, &bounds))
        .into_iter()
        .filter(|f| {
            let (r, d) = rank_degree(f);
            f.chi() != bc(d, r)
        })
        .map(|f| f.to_string())
        .collect();
    ensure(bad.is_empty(), || {
        format!("{} mismatches, first {}", bad.len(), bad[0])
    })?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("{n} sheaves"))
}

// 3
fn ext_vanishing() -> Outcome {
    let mut slopes = Vec::new();
    for h in 1..=12 {
        for d in -12..=12 {
            let s = reduce(d, h).map_err(|e| e.to_string())?;
            if *s.as_ratio().unwrap().denom() == h {
                slopes.push((d, h));
            }
        }
    }
    let mut pairs = 0;
    for &(d, h) in &slopes {
        let f = CoherentSheaf::stable(d, h).map_err(|e| e.to_string())?;
        for &(d2, h2) in &slopes {
            let g = CoherentSheaf::stable(d2, h2).map_err(|e| e.to_string())?;
            let e1 = ext1(&f, &g);
            if d * h2 <= d2 * h {
                ensure(e1 == BcInvariant::ZERO, || format!("Ext1({f}, {g}) = {e1}"))?;
            } else {
                ensure(e1 == stable_oracle(d, h, d2, h2).1, || {
                    format!("Ext1({f}, {g}) = {e1}")
                })?;
            }
            ensure(ext2(&f, &g) == BcInvariant::ZERO, || {
                format!("Ext2({f}, {g}) nonzero")
            })?;
            pairs += 1;
        }
    }
    let bounds = Bounds::default();
    let random = batch(SEED + 3, 500, PAR, |rng, _| {
        (random_sheaf(rng, &bounds), random_sheaf(rng, &bounds))
    });
    for (f, g) in &random {
        ensure(ext2(f, g) == BcInvariant::ZERO, || {
            format!("Ext2({f}, {g}) nonzero")
        })?;
    }
    Ok(format!(
        "{pairs} stable pairs, {} random pairs",
        random.len()
    ))
}

// 4
fn double_tilt_equivalence() -> Outcome {
    let bounds = Bounds::default();
    let n = 500;
    let sheaves = batch(SEED + 4, n, PAR, |rng, _| random_sheaf(rng, &bounds));
    for f in &sheaves {
        ensure(double_tilt(&tilt(f)) == *f, || {
            format!("round trip fails on {f}")
        })?;
    }
    let tilted = batch(SEED + 40, n, PAR, |rng, _| random_tilted(rng, &bounds));
    for t in &tilted {
        ensure(tilt(&double_tilt(t)) == *t, || {
            format!("round trip fails on {t}")
        })?;
    }
    let pairs = batch(SEED + 41, n, PAR, |rng, _| {
        (random_tilted(rng, &bounds), random_tilted(rng, &bounds))
    });
    for (a, b) in &pairs {
        let total = hom_double_tilted(a, b).total;
        let expected = hom_oracle(&double_tilt(a), &double_tilt(b));
        ensure(total == expected, || {
            format!("Hom({a}, {b}) = {total}, expected {expected}")
        })?;
        ensure(hom(&double_tilt(a), &double_tilt(b)) == expected, || {
            format!("Coh Hom({a}, {b})")
        })?;
        let derived = [(a.neg(), 1), (a.pos(), 0)]
            .iter()
            .flat_map(|&(x, sx)| {
                [(b.neg(), 1), (b.pos(), 0)].map(move |(y, sy)| ext(sy - sx, x, y))
            })
            .fold(BcInvariant::ZERO, |acc, v| acc + v);
        ensure(hom_tilted(a, b).total == derived, || {
            format!("heart Hom({a}, {b})")
        })?;
    }
    Ok(format!("{n} sheaves, {n} tilted objects, {n} pairs"))
}

fn certificates() -> Result<Vec<ShortExactSequence>, String> {
    let mut out = Vec::new();
    for d in 2..=12 {
        out.push(se1(d).map_err(|e| e.to_string())?);
    }
    for k in 1..=8 {
        for label in ["inf", "x", "y"] {
            out.push(se2_at(label, k).map_err(|e| e.to_string())?);
        }
        out.push(se3(k).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

// 5
fn bc_consistency() -> Outcome {
    let bounds = Bounds::default();
    let n = 1000;
    for t in batch(SEED + 5, n, PAR, |rng, _| random_tilted(rng, &bounds)) {
        let (dm, rm) = minus_invariants(&t);
        let inv = tilted_invariants(&t);
        ensure((inv.deg_minus, inv.rg_minus) == (dm, rm), || {
            format!("minus invariants of {t}")
        })?;
        ensure(dim_ht(&t) == bc(rm, -dm), || {
            format!("dim_ht({t}) = {}", dim_ht(&t))
        })?;
        ensure(r0tau(&t).invariant == bc(rm, -dm), || format!("r0tau({t})"))?;
    }
    let certs = certificates()?;
    for s in &certs {
        let sum = dim_ht(&s.left) + dim_ht(&s.right);
        ensure(dim_ht(&s.middle) == sum, || {
            format!("not additive on {}", print_tilted(&s.middle))
        })?;
    }
    Ok(format!("{n} objects, {} certificates", certs.len()))
}

// 6
fn presentations() -> Outcome {
    let bounds = Bounds::default();
    let n = 200;
    let additive = |s: &ShortExactSequence| {
        let (l, m, r) = (
            minus_invariants(&s.left),
            minus_invariants(&s.middle),
            minus_invariants(&s.right),
        );
        m == (l.0 + r.0, l.1 + r.1)
    };
    let mut splices = 0;
    for t in batch(SEED + 6, n, PAR, |rng, _| random_tilted(rng, &bounds)) {
        let p = effective_presentation(&t).map_err(|e| format!("{t}: {e}"))?;
        ensure(p.total.left.neg().is_zero(), || {
            format!("{t}: kernel not a sheaf")
        })?;
        ensure(
            *p.total.left.pos() == CoherentSheaf::trivial(p.kernel_rank),
            || format!("{t}: kernel not O^a"),
        )?;
        ensure(p.total.right == t, || format!("{t}: wrong target"))?;
        ensure(
            p.middle
                .slopes()
                .iter()
                .all(|s| *s >= Slope::zero() && *s <= Slope::integer(1)),
            || format!("{t}: middle {}", p.middle),
        )?;
        for piece in &p.pieces {
            for s in piece.steps.iter().chain([&piece.spliced, &piece.result]) {
                ensure(additive(s), || {
                    format!("{t}: splice {} not additive", print_tilted(&s.middle))
                })?;
                splices += 1;
            }
        }
        ensure(additive(&p.total), || format!("{t}: total not additive"))?;
        p.verify().map_err(|e| format!("{t}: {e}"))?;
    }
    Ok(format!("{n} presentations, {splices} splices"))
}

fn koszul_divisible<R: Sample>(seed: u64, f: &R, n: usize) -> bool {
    let mut rng = courbe::sample::item_rng(seed, n);
    let g: Vec<R> = (0..n).map(|_| R::small_nonzero(&mut rng)).collect();
    let fg: Vec<R> = g.iter().map(|x| f.clone() * x.clone()).collect();
    let (Ok(source), Ok(reference)) = (koszul(&fg), koszul(&g)) else {
        return false;
    };
    decalage(&source, f, &ShiftProfile::identity(-1, n as i64 + 1))
        .map(|d| d.complex.cohomology() == reference.cohomology())
        .unwrap_or(false)
}

// 7
fn koszul_decalage() -> Outcome {
    let t = QPoly::t();
    let mut checked = 0;
    for seed in 0..30 {
        for n in 1..=3 {
            ensure(koszul_divisible(SEED + seed, &t, n), || {
                format!("divisible Koszul, seed {seed}, n {n}")
            })?;
            let mut rng = courbe::sample::item_rng(SEED + seed, 100 + n);
            let mut g: Vec<QPoly> = (0..n).map(|_| QPoly::small_nonzero(&mut rng)).collect();
            g[seed as usize % n] = QPoly::from_ints(&[1]);
            // A unit divides t; so does t itself.
            for unit_or_t in [QPoly::from_ints(&[1]), t.clone()] {
                g[seed as usize % n] = unit_or_t;
                let k = koszul(&g).map_err(|e| e.to_string())?;
                let d = decalage(&k, &t, &ShiftProfile::identity(-1, n as i64 + 1))
                    .map_err(|e| e.to_string())?;
                ensure(d.complex.is_acyclic(), || {
                    format!("divisor case not acyclic, seed {seed}")
                })?;
            }
            let k = koszul(&g).map_err(|e| e.to_string())?;
            let id = decalage(&k, &t, &ShiftProfile::constant(0)).map_err(|e| e.to_string())?;
            ensure(id.complex.differentials() == k.differentials(), || {
                "zero profile changed the complex".into()
            })?;
            checked += 1;
        }
    }
    let instances = 100;
    let bad = batch(SEED + 7, instances, PAR, |rng, _| {
        let map = random_quasi_iso::<QPoly, _>(rng, &t, 4);
        let delta = random_profile(rng, map.source().lowest(), 4);
        is_quasi_iso(&map)
            && decalage_map(&map, &t, &delta)
                .map(|m| is_quasi_iso(&m))
                .unwrap_or(false)
    })
    .into_iter()
    .filter(|ok| !ok)
    .count();
    ensure(bad == 0, || {
        format!("{bad} of {instances} quasi-isomorphisms lost")
    })?;
    Ok(format!(
        "{checked} Koszul cases, {instances} quasi-isomorphisms"
    ))
}

// 8
fn de_rham() -> Outcome {
    let start = Instant::now();
    let trunc = 8;
    let mut interior = 0;
    for n in 1..=3 {
        let c = GradedDeRham::build(n, trunc).map_err(|e| e.to_string())?;
        let table = qp_cohomology(n, trunc).map_err(|e| e.to_string())?;
        for p in &table.pieces {
            let (i, e) = (p.form_degree, p.coeff_degree);
            ensure(c.d_squared_vanishes(i, e), || {
                format!("d∘d ≠ 0 at n={n} i={i} e={e}")
            })?;
            ensure(p.kernel + p.rank_d == p.dim, || {
                format!("rank-nullity at n={n} i={i} e={e}")
            })?;
            if p.boundary {
                continue;
            }
            interior += 1;
            if i == 0 {
                ensure(p.kernel == usize::from(e == 0), || {
                    format!("H0 at n={n} e={e}")
                })?;
            } else {
                ensure(p.kernel == p.image, || {
                    format!("Ker ≠ Im at n={n} i={i} e={e}")
                })?;
            }
        }
    }
    let c = GradedDeRham::build(1, trunc).map_err(|e| e.to_string())?;
    let h1 = qp_cohomology(1, trunc)
        .map_err(|e| e.to_string())?
        .kernel_dims(1);
    ensure(h1.iter().all(|&k| k == 1), || format!("n=1 H1 dims {h1:?}"))?;
    for k in 0..trunc as u32 {
        let (e, coeff) = integrate_monomial(k);
        let back = apply_d(&c, 0, e as usize, &[coeff]).map_err(|e| e.to_string())?;
        ensure(back == vec![BigRational::from_integer(1.into())], || {
            format!("∫ x^{k} dx")
        })?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{interior} interior pieces, n=1 H1 dims {h1:?}"))
}

// 9
fn cocycles() -> Outcome {
    for q in 2..=8 {
        let r = symmetric_2cocycle_quotient(q);
        ensure(r.cocycle_dim == 1 && r.quotient_dim == 0, || {
            format!(
                "q={q}: cocycles {}, quotient {}",
                r.cocycle_dim, r.quotient_dim
            )
        })?;
        let generator = r.generator.ok_or("missing generator")?;
        let expected = pullback_d1(&Func::basis(Kind::Poly, vec![q])).map_err(|e| e.to_string())?;
        // Proportional: compare at two points.
        let pts = [
            [BigInt::from(2), BigInt::from(3)],
            [BigInt::from(-1), BigInt::from(4)],
        ];
        let v: Vec<(BigRational, BigRational)> = pts
            .iter()
            .map(|p| (expected.eval(p).unwrap(), generator.eval(p).unwrap()))
            .collect();
        ensure(
            v[0].0.clone() * v[1].1.clone() == v[1].0.clone() * v[0].1.clone(),
            || format!("q={q}: generator {generator} not proportional to the coboundary"),
        )?;
    }
    let r = hom_column_checks(6, 4, PAR);
    ensure(r.poly_kernel_dim == 1 && r.poly_kernel_is_identity, || {
        "poly kernel".into()
    })?;
    ensure(r.passes(), || format!("report fails: {r:?}"))?;
    Ok("q = 2..=8, poly degree <= 6, Mahler degree <= 4".into())
}

#[allow(dead_code)]
mod schema {
    use super::*;

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Bc {
        dim: i64,
        ht: i64,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Invariants {
        rank: i64,
        degree: i64,
        slope: Option<String>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Piece {
        object: String,
        slope: String,
        rank: Option<i64>,
        degree: Option<i64>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct TiltedInvariants {
        deg_minus: i64,
        rg_minus: i64,
        mu_minus: Option<String>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Info {
        schema: String,
        command: String,
        object: String,
        kind: String,
        invariants: Invariants,
        bc: Bc,
        pieces: Vec<Piece>,
        tilted: Option<TiltedInvariants>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Hn {
        schema: String,
        command: String,
        object: String,
        pieces: Vec<Piece>,
        polygon: Vec<(i64, i64)>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Hom {
        schema: String,
        command: String,
        category: String,
        source: String,
        target: String,
        value: Bc,
        matrix: [[Bc; 2]; 2],
        double_tilted: Option<[[Bc; 2]; 2]>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Ext {
        schema: String,
        command: String,
        category: String,
        degree: i64,
        source: String,
        target: String,
        value: Bc,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Chi {
        schema: String,
        command: String,
        object: String,
        other: Option<String>,
        value: Bc,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct K0Basis {
        #[serde(rename = "O")]
        o: i64,
        #[serde(rename = "O(1)")]
        o1: i64,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct K0 {
        schema: String,
        command: String,
        object: String,
        rank: i64,
        degree: i64,
        basis: K0Basis,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Tilt {
        schema: String,
        command: String,
        source: String,
        object: String,
        shifted: String,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Untilt {
        schema: String,
        command: String,
        source: String,
        object: String,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct MinusPiece {
        object: String,
        mu_minus: String,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct HnMinus {
        schema: String,
        command: String,
        object: String,
        pieces: Vec<MinusPiece>,
    }

    #[derive(Deserialize)]
    #[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
    pub enum Atom {
        Qp { n: u32 },
        Ga { point: String, lengths: Vec<u32> },
        U { d: i64, h: i64, mult: u32 },
        Coker { d: i64, h: i64, mult: u32 },
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct BcDoc {
        schema: String,
        command: String,
        object: String,
        descriptor: String,
        atoms: Vec<Atom>,
        bc: Bc,
        dim_ht: Bc,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Ses {
        left: String,
        middle: String,
        right: String,
        tag: String,
        level: Option<i64>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct AtomPresentation {
        atom: String,
        level: i64,
        multiplicity: i64,
        steps: Vec<Ses>,
        spliced: Ses,
        result: Ses,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Present {
        schema: String,
        command: String,
        object: String,
        kernel_rank: i64,
        middle: String,
        pieces: Vec<AtomPresentation>,
        total: Ses,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Breen {
        schema: String,
        command: String,
        order: [String; 2],
        hom: [[Bc; 2]; 2],
        ext1: [[Bc; 2]; 2],
        ext2: [[Bc; 2]; 2],
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Cohomology {
        degree: i64,
        display: String,
        free_rank: usize,
        torsion: Vec<String>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Complex {
        domain: String,
        lowest_degree: i64,
        ranks: Vec<usize>,
        differentials: Vec<Vec<Vec<String>>>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Koszul {
        schema: String,
        command: String,
        ring: String,
        elements: Vec<String>,
        complex: Complex,
        cohomology: Vec<Cohomology>,
        acyclic: bool,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Eta {
        schema: String,
        command: String,
        ring: String,
        f: String,
        elements: Option<Vec<String>>,
        complex: Option<Complex>,
        cohomology: Option<Vec<Cohomology>>,
        acyclic: Option<bool>,
        matches: Option<bool>,
        source_cohomology: Option<Vec<Cohomology>>,
        reference_cohomology: Option<Vec<Cohomology>>,
        seed: Option<u64>,
        instances: Option<usize>,
        quasi_isomorphisms: Option<usize>,
        all_quasi_isomorphisms: Option<bool>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Cohom {
        schema: String,
        command: String,
        ring: String,
        cohomology: Vec<Cohomology>,
        acyclic: bool,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct QpPiece {
        form_degree: usize,
        coeff_degree: usize,
        dim: usize,
        rank_d: usize,
        kernel: usize,
        image: usize,
        boundary: bool,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Derham {
        schema: String,
        command: String,
        n: usize,
        trunc: usize,
        dims: Vec<Vec<usize>>,
        cohomology: Vec<Vec<usize>>,
        pieces: Vec<QpPiece>,
        exact: bool,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Quotient {
        degree: u32,
        cocycle_dim: usize,
        coboundary_dim: usize,
        quotient_dim: usize,
        generator: Option<String>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Spot {
        trunc: u32,
        kernel_dim: usize,
        image_dim: usize,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct ColumnReport {
        poly_trunc: u32,
        mahler_trunc: u32,
        poly_kernel_dim: usize,
        poly_kernel_is_identity: bool,
        d1_on_constants: String,
        d2_kills_constants: bool,
        d3_on_constants: Vec<[i64; 2]>,
        d3_constants_rank: usize,
        mahler_first: Vec<Spot>,
        mahler_middle: Vec<Spot>,
        mahler_next: Vec<Spot>,
        passes: bool,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Cocycle {
        schema: String,
        command: String,
        degrees: Option<Vec<Quotient>>,
        report: Option<ColumnReport>,
    }
}

fn validate<T: DeserializeOwned>(doc: &Value) -> Result<(), String> {
    serde_json::from_value::<T>(doc.clone())
        .map(|_| ())
        .map_err(|e| e.to_string())
}

fn validate_document(doc: &Value) -> Result<(), String> {
    use schema::*;
    ensure(doc["schema"] == courbe_cli::SCHEMA, || {
        format!("schema tag {}", doc["schema"])
    })?;
    let command = doc["command"].as_str().ok_or("missing command")?;
    match command {
        "info" => validate::<Info>(doc),
        "hn" => validate::<Hn>(doc),
        "hom" => validate::<Hom>(doc),
        "ext1" | "ext2" => validate::<Ext>(doc),
        "chi" => validate::<Chi>(doc),
        "k0" => validate::<K0>(doc),
        "tilt" => validate::<Tilt>(doc),
        "untilt" => validate::<Untilt>(doc),
        "hnminus" => validate::<HnMinus>(doc),
        "bc" => validate::<BcDoc>(doc),
        "present" => validate::<Present>(doc),
        "breen" => validate::<Breen>(doc),
        "koszul" => validate::<Koszul>(doc),
        "eta" => validate::<Eta>(doc),
        "cohom" => validate::<Cohom>(doc),
        "derham" => validate::<Derham>(doc),
        "cocycle" => validate::<Cocycle>(doc),
        other => Err(format!("unknown command {other}")),
    }
    .map_err(|e| format!("{command}: {e}"))
}

// 10
fn cli_round_trip() -> Outcome {
    let bounds = Bounds::default();
    let n = 1000;
    let exprs = batch(SEED + 10, n, PAR, |rng, i| {
        if i % 2 == 0 {
            let f = random_sheaf(rng, &bounds);
            (print_sheaf(&f), None, Some(f))
        } else {
            let t = random_tilted(rng, &bounds);
            (print_tilted(&t), Some(t), None)
        }
    });
    for (text, t, f) in &exprs {
        if let Some(f) = f {
            ensure(parse_sheaf(text).as_ref() == Ok(f), || {
                format!("sheaf round trip on {text}")
            })?;
        }
        if let Some(t) = t {
            ensure(parse_tilted(text).as_ref() == Ok(t), || {
                format!("tilted round trip on {text}")
            })?;
            let shifted = print_tilted_shifted(t);
            ensure(parse_tilted(&shifted).as_ref() == Ok(t), || {
                format!("shifted round trip on {shifted}")
            })?;
        }
        ensure(parse_object(text).is_ok(), || {
            format!("parse_object on {text}")
        })?;
    }

    let dir = std::env::temp_dir().join(format!("courbe-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let complex = dir.join("complex.json");
    let k = run_json(&["koszul", "t", "t^2"])?;
    std::fs::write(&complex, k["complex"].to_string()).map_err(|e| e.to_string())?;
    let complex = complex.to_string_lossy().into_owned();

    let mut invocations: Vec<Vec<&str>> = vec![
        vec!["breen"],
        vec!["hom", "O(1/2)", "O(2)"],
        vec!["hom", "tilted(O(-1); O)", "tilted(O(-1/2); T(x,[2]))"],
        vec!["ext1", "O(2)", "O(1)"],
        vec!["ext1", "tilted(O(-1); 0)", "tilted(0; O)"],
        vec!["ext2", "O", "T(inf,[1])"],
        vec!["chi", "O(2/3)"],
        vec!["chi", "O(1)", "O(-1/2)"],
        vec!["koszul", "t", "t^2"],
        vec!["koszul", "--ring", "Z", "4", "6", "10"],
        vec!["koszul", "--seed", "3"],
        vec!["eta", "t^2", "t^3"],
        vec!["eta", "--ring", "Z", "--f", "2", "4", "6"],
        vec!["eta", "--seed", "5", "--count", "5"],
        vec!["eta", "--file", &complex],
        vec!["cohom", &complex],
        vec!["derham", "--n", "2", "--trunc", "4"],
        vec!["cocycle", "5"],
        vec!["cocycle", "--trunc", "4"],
        vec!["cocycle", "--report", "--trunc", "3", "--mahler", "2"],
        vec!["hnminus", "tilted(0; 0)"],
    ];
    let samples: Vec<String> = exprs.iter().take(40).map(|(s, _, _)| s.clone()).collect();
    for (i, s) in samples.iter().enumerate() {
        if i % 2 == 0 {
            for verb in ["info", "hn", "k0", "tilt"] {
                invocations.push(vec![verb, s]);
            }
        } else {
            for verb in ["info", "untilt", "hnminus", "bc", "present"] {
                invocations.push(vec![verb, s]);
            }
        }
    }
    let mut seen = BTreeMap::new();
    for args in &invocations {
        let doc = run_json(args)?;
        validate_document(&doc).map_err(|e| format!("{args:?}: {e}"))?;
        *seen
            .entry(doc["command"].as_str().unwrap_or_default().to_string())
            .or_insert(0) += 1;
    }
    let _ = std::fs::remove_dir_all(&dir);
    ensure(seen.len() == 18, || {
        format!("only {} verbs exercised: {:?}", seen.len(), seen.keys())
    })?;
    Ok(format!(
        "{n} expressions, {} documents over {} verbs",
        invocations.len(),
        seen.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("breen tables", breen),
        ("euler characteristic", euler_characteristic),
        ("ext vanishing", ext_vanishing),
        ("double tilt equivalence", double_tilt_equivalence),
        ("bc functor consistency", bc_consistency),
        ("effective presentation", presentations),
        ("koszul and decalage", koszul_decalage),
        ("de rham", de_rham),
        ("cocycles", cocycles),
        ("cli round trip and schema", cli_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({t:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({t:.2?})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
