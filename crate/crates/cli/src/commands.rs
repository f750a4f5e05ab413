use std::fmt::Write;
use std::fs;
use std::path::Path;

use courbe::bc::{breen_tables, dim_ht, effective_presentation, r0tau};
use courbe::cocycle::{hom_column_checks, symmetric_2cocycle_quotient};
use courbe::complex::random::{random_profile, random_quasi_iso, Sample};
use courbe::complex::{
    decalage, decalage_map, is_quasi_iso, koszul, BoundedComplex, Cohomology, ComplexData,
    ShiftProfile,
};
use courbe::derham::{ga_cohomology, qp_cohomology_with};
use courbe::par::Execution;
use courbe::ring::{CoeffDomain, Euclidean, QPoly};
use courbe::sample::{batch, item_rng};
use courbe::sequences::ShortExactSequence;
use courbe::sheaf::{self, BcInvariant, CoherentSheaf};
use courbe::syntax::{
    parse_object, parse_sheaf, parse_tilted, print_sheaf, print_tilted, print_tilted_shifted,
    Object,
};
use courbe::tilt::{
    derived_hom, double_tilt, ext1_tilted, hn_minus, hom_coh_split, hom_double_tilted, hom_tilted,
    tilt, tilted_invariants, HomMatrix, Shifted, TiltedObject,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::{svg, Cli, Command, InputError, Report};

type Out = Result<Report, InputError>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn body(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("bodies are objects"),
    }
}

fn report(command: &'static str, text: String, v: Value) -> Report {
    Report {
        command,
        text,
        body: body(v),
        svg: None,
    }
}

fn bc_json(b: BcInvariant) -> Value {
    json!({ "dim": b.dim, "ht": b.ht })
}

fn matrix_json(m: &HomMatrix) -> Value {
    Value::Array(
        m.entries
            .iter()
            .map(|row| Value::Array(row.iter().map(|&b| bc_json(b)).collect()))
            .collect(),
    )
}

fn print_object(o: &Object) -> String {
    match o {
        Object::Sheaf(f) => print_sheaf(f),
        Object::Tilted(t) => print_tilted(t),
    }
}

/// Interprets an object as a tilted one; plain sheaves must have slopes ≥ 0.
fn as_tilted(o: &Object, src: &str) -> Result<TiltedObject, InputError> {
    match o {
        Object::Tilted(t) => Ok(t.clone()),
        Object::Sheaf(_) => Ok(parse_tilted(src)?),
    }
}

pub fn execute(cli: &Cli) -> Out {
    let name = cli.command.name();
    let mut rep = match &cli.command {
        Command::Info { expr } => info(expr),
        Command::Hn { expr } => hn(expr, cli.svg.is_some()),
        Command::Hom { source, target } => hom(source, target),
        Command::Ext1 { source, target } => ext(1, source, target),
        Command::Ext2 { source, target } => ext(2, source, target),
        Command::Chi { expr, other } => chi(expr, other.as_deref()),
        Command::K0 { expr } => k0(expr),
        Command::Tilt { expr } => tilt_cmd(expr),
        Command::Untilt { expr } => untilt(expr),
        Command::Hnminus { expr } => hnminus(expr),
        Command::Bc { expr } => bc(expr),
        Command::Present { expr } => present(expr),
        Command::Breen => Ok(breen()),
        Command::Koszul {
            ring,
            count,
            elements,
        } => koszul_cmd(*ring, elements, cli.seed, *count),
        Command::Eta {
            ring,
            f,
            delta,
            file,
            count,
            elements,
        } => eta(
            *ring,
            f,
            delta.as_deref(),
            file.as_deref(),
            elements,
            cli.seed,
            *count,
        ),
        Command::Cohom { file } => cohom(file),
        Command::Derham { n } => derham(*n, cli.trunc.unwrap_or(8)),
        Command::Cocycle { q, report, mahler } => cocycle(*q, *report, cli.trunc, *mahler),
    }?;
    rep.command = name;
    if cli.svg.is_some() && rep.svg.is_none() {
        return Err(InputError(format!("--svg is not supported by `{name}`")));
    }
    Ok(rep)
}

// ---- sheaves and tilted objects -------------------------------------------

fn sheaf_pieces(f: &CoherentSheaf) -> Vec<Value> {
    if f.is_zero() {
        return Vec::new();
    }
    f.hn()
        .expect("non-zero")
        .iter()
        .map(|p| {
            json!({
                "slope": p.slope.to_string(),
                "rank": p.piece.rank(),
                "degree": p.piece.degree(),
                "object": print_sheaf(&p.piece),
            })
        })
        .collect()
}

fn info(expr: &str) -> Out {
    let obj = parse_object(expr)?;
    let mut text = String::new();
    let v = match &obj {
        Object::Sheaf(f) => {
            let inv = f.numeric_invariants();
            let slope = inv.slope.map(|s| s.to_string());
            let chi = f.chi();
            let pieces = sheaf_pieces(f);
            let _ = writeln!(text, "object  {}", print_sheaf(f));
            let _ = writeln!(text, "rank    {}", inv.rank);
            let _ = writeln!(text, "degree  {}", inv.degree);
            let _ = writeln!(text, "slope   {}", slope.as_deref().unwrap_or("undefined"));
            let _ = writeln!(text, "chi     {chi}");
            let hn: Vec<&str> = pieces.iter().filter_map(|p| p["object"].as_str()).collect();
            let _ = writeln!(
                text,
                "hn      {}",
                if hn.is_empty() {
                    "-".into()
                } else {
                    hn.join(" | ")
                }
            );
            json!({
                "object": print_sheaf(f),
                "kind": "sheaf",
                "invariants": { "rank": inv.rank, "degree": inv.degree, "slope": slope },
                "bc": bc_json(chi),
                "pieces": pieces,
            })
        }
        Object::Tilted(t) => {
            let (rank, degree) = t.rank_degree();
            // The class can have negative rank.
            let class_slope = match rank.signum() {
                0 if degree != 0 => Some("inf".to_string()),
                0 => None,
                sign => Some(courbe::slope::reduce(sign * degree, sign * rank)?.to_string()),
            };
            let ti = tilted_invariants(t);
            let mu = ti.mu_minus.map(|m| m.to_string());
            let pieces: Vec<Value> = if t.is_zero() {
                Vec::new()
            } else {
                hn_minus(t)?
                    .iter()
                    .map(|p| json!({ "slope": p.mu_minus.to_string(), "object": print_tilted(&p.piece) }))
                    .collect()
            };
            let bc = dim_ht(t);
            let _ = writeln!(text, "object  {}", print_tilted(t));
            let _ = writeln!(text, "class   rank {rank}, degree {degree}");
            let _ = writeln!(text, "deg-    {}", ti.deg_minus);
            let _ = writeln!(text, "rg-     {}", ti.rg_minus);
            let _ = writeln!(text, "mu-     {}", mu.as_deref().unwrap_or("undefined"));
            let _ = writeln!(text, "bc      {bc}");
            json!({
                "object": print_tilted(t),
                "kind": "tilted",
                "invariants": { "rank": rank, "degree": degree, "slope": class_slope },
                "tilted": { "deg_minus": ti.deg_minus, "rg_minus": ti.rg_minus, "mu_minus": mu },
                "bc": bc_json(bc),
                "pieces": pieces,
            })
        }
    };
    Ok(report("info", text, v))
}

/// Vertices of the HN polygon, starting at the origin.
pub(crate) fn hn_vertices(f: &CoherentSheaf) -> Vec<(i64, i64)> {
    let mut v = vec![(0, 0)];
    if f.is_zero() {
        return v;
    }
    let (mut x, mut y) = (0, 0);
    for p in f.hn().expect("non-zero") {
        x += p.piece.rank();
        y += p.piece.degree();
        v.push((x, y));
    }
    v
}

fn hn(expr: &str, want_svg: bool) -> Out {
    let f = parse_sheaf(expr)?;
    let pieces = sheaf_pieces(&f);
    let vertices = hn_vertices(&f);
    let mut text = String::new();
    for p in &pieces {
        let _ = writeln!(
            text,
            "{:>6}  {}",
            p["slope"].as_str().unwrap_or(""),
            p["object"].as_str().unwrap_or("")
        );
    }
    let poly: Vec<String> = vertices.iter().map(|(x, y)| format!("({x},{y})")).collect();
    let _ = writeln!(text, "polygon {}", poly.join(" "));
    let v = json!({
        "object": print_sheaf(&f),
        "pieces": pieces,
        "polygon": vertices.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
    });
    let mut rep = report("hn", text, v);
    if want_svg {
        rep.svg = Some(svg::hn_polygon_svg(&vertices));
    }
    Ok(rep)
}

fn hom(source: &str, target: &str) -> Out {
    let (a, b) = (parse_object(source)?, parse_object(target)?);
    let v = match (&a, &b) {
        (Object::Sheaf(f), Object::Sheaf(g)) => {
            let value = sheaf::hom(f, g);
            json!({
                "source": print_sheaf(f),
                "target": print_sheaf(g),
                "category": "coh",
                "value": bc_json(value),
                "matrix": matrix_json(&hom_coh_split(f, g)),
            })
        }
        _ => {
            let (ta, tb) = (as_tilted(&a, source)?, as_tilted(&b, target)?);
            let m = hom_tilted(&ta, &tb);
            json!({
                "source": print_tilted(&ta),
                "target": print_tilted(&tb),
                "category": "coh-",
                "value": bc_json(m.total),
                "matrix": matrix_json(&m),
                "double_tilted": matrix_json(&hom_double_tilted(&ta, &tb)),
            })
        }
    };
    let text = format!("{}\n", bc_from(&v["value"]));
    Ok(report("hom", text, v))
}

fn bc_from(v: &Value) -> BcInvariant {
    BcInvariant::new(
        v["dim"].as_i64().unwrap_or(0),
        v["ht"].as_i64().unwrap_or(0),
    )
}

/// `Hom_{D^b}(A, B[i])` for tilted `A`, `B`.
fn ext_tilted(i: i64, a: &TiltedObject, b: &TiltedObject) -> BcInvariant {
    if i == 1 {
        return ext1_tilted(a, b);
    }
    let pa = [
        Shifted {
            sheaf: a.neg(),
            shift: 1,
        },
        Shifted {
            sheaf: a.pos(),
            shift: 0,
        },
    ];
    let pb = [
        Shifted {
            sheaf: b.neg(),
            shift: 1 + i,
        },
        Shifted {
            sheaf: b.pos(),
            shift: i,
        },
    ];
    pa.iter()
        .flat_map(|x| pb.iter().map(move |y| derived_hom(*x, *y)))
        .sum()
}

fn ext(i: i64, source: &str, target: &str) -> Out {
    let (a, b) = (parse_object(source)?, parse_object(target)?);
    let (value, src, tgt, category) = match (&a, &b) {
        (Object::Sheaf(f), Object::Sheaf(g)) => {
            (sheaf::ext(i, f, g), print_sheaf(f), print_sheaf(g), "coh")
        }
        _ => {
            let (ta, tb) = (as_tilted(&a, source)?, as_tilted(&b, target)?);
            (
                ext_tilted(i, &ta, &tb),
                print_tilted(&ta),
                print_tilted(&tb),
                "coh-",
            )
        }
    };
    let v = json!({ "source": src, "target": tgt, "category": category, "degree": i, "value": bc_json(value) });
    Ok(report(
        if i == 1 { "ext1" } else { "ext2" },
        format!("{value}\n"),
        v,
    ))
}

fn k0_of(o: &Object) -> courbe::K0Class {
    match o {
        Object::Sheaf(f) => f.k0_class(),
        Object::Tilted(t) => t.k0_class(),
    }
}

fn chi(expr: &str, other: Option<&str>) -> Out {
    let a = parse_object(expr)?;
    let ca = k0_of(&a);
    let (value, v) = match other {
        None => {
            let value = BcInvariant::new(ca.degree(), ca.rank());
            (
                value,
                json!({ "object": print_object(&a), "value": bc_json(value) }),
            )
        }
        Some(o) => {
            let b = parse_object(o)?;
            let value = ca.euler_form(&k0_of(&b));
            (
                value,
                json!({ "object": print_object(&a), "other": print_object(&b), "value": bc_json(value) }),
            )
        }
    };
    Ok(report("chi", format!("{value}\n"), v))
}

fn k0(expr: &str) -> Out {
    let a = parse_object(expr)?;
    let c = k0_of(&a);
    let text = format!(
        "rank {}, degree {}  =  {}[O] + {}[O(1)]\n",
        c.rank(),
        c.degree(),
        c.a,
        c.b
    );
    let v = json!({
        "object": print_object(&a),
        "rank": c.rank(),
        "degree": c.degree(),
        "basis": { "O": c.a, "O(1)": c.b },
    });
    Ok(report("k0", text, v))
}

fn tilt_cmd(expr: &str) -> Out {
    let f = parse_sheaf(expr)?;
    let t = tilt(&f);
    let v = json!({ "source": print_sheaf(&f), "object": print_tilted(&t), "shifted": print_tilted_shifted(&t) });
    Ok(report("tilt", format!("{}\n", print_tilted(&t)), v))
}

fn untilt(expr: &str) -> Out {
    let t = parse_tilted(expr)?;
    let f = double_tilt(&t);
    let v = json!({ "source": print_tilted(&t), "object": print_sheaf(&f) });
    Ok(report("untilt", format!("{}\n", print_sheaf(&f)), v))
}

fn hnminus(expr: &str) -> Out {
    let t = parse_tilted(expr)?;
    // The zero object has an empty filtration, as in `hn`.
    let pieces = if t.is_zero() {
        Vec::new()
    } else {
        hn_minus(&t)?
    };
    let mut text = String::new();
    for p in &pieces {
        let _ = writeln!(
            text,
            "{:>6}  {}",
            p.mu_minus.to_string(),
            print_tilted(&p.piece)
        );
    }
    let v = json!({
        "object": print_tilted(&t),
        "pieces": pieces
            .iter()
            .map(|p| json!({ "mu_minus": p.mu_minus.to_string(), "object": print_tilted(&p.piece) }))
            .collect::<Vec<_>>(),
    });
    Ok(report("hnminus", text, v))
}

fn bc(expr: &str) -> Out {
    let t = parse_tilted(expr)?;
    let d = r0tau(&t);
    let dh = dim_ht(&t);
    let text = format!("{d}\n(dim, ht) = {dh}\n");
    let v = json!({
        "object": print_tilted(&t),
        "descriptor": d.to_string(),
        "atoms": to_value(&d.atoms),
        "bc": bc_json(d.invariant),
        "dim_ht": bc_json(dh),
    });
    Ok(report("bc", text, v))
}

fn ses_json(s: &ShortExactSequence) -> Value {
    json!({
        "left": print_tilted_shifted(&s.left),
        "middle": print_tilted_shifted(&s.middle),
        "right": print_tilted_shifted(&s.right),
        "tag": to_value(&s.tag),
        "level": s.level,
    })
}

fn ses_text(s: &ShortExactSequence) -> String {
    format!(
        "0 -> {} -> {} -> {} -> 0",
        print_tilted_shifted(&s.left),
        print_tilted_shifted(&s.middle),
        print_tilted_shifted(&s.right)
    )
}

fn present(expr: &str) -> Out {
    let t = parse_tilted(expr)?;
    let p = effective_presentation(&t)?;
    let mut text = String::new();
    let _ = writeln!(text, "{}", ses_text(&p.total));
    for piece in &p.pieces {
        let _ = writeln!(
            text,
            "  {} (level {}, x{})",
            piece.atom, piece.level, piece.multiplicity
        );
        for s in &piece.steps {
            let _ = writeln!(text, "    {}", ses_text(s));
        }
    }
    let v = json!({
        "object": print_tilted(&t),
        "kernel_rank": p.kernel_rank,
        "middle": print_sheaf(&p.middle),
        "total": ses_json(&p.total),
        "pieces": p.pieces.iter().map(|a| json!({
            "atom": a.atom,
            "level": a.level,
            "multiplicity": a.multiplicity,
            "steps": a.steps.iter().map(ses_json).collect::<Vec<_>>(),
            "spliced": ses_json(&a.spliced),
            "result": ses_json(&a.result),
        })).collect::<Vec<_>>(),
    });
    Ok(report("present", text, v))
}

fn breen_label(b: BcInvariant) -> String {
    match (b.dim, b.ht) {
        (0, 0) => "0".into(),
        (1, 0) => "C".into(),
        (0, 1) => "Q_p".into(),
        _ => b.to_string(),
    }
}

fn breen() -> Report {
    let t = breen_tables();
    let mut text = String::new();
    for (name, table) in [("Hom", &t.hom), ("Ext1", &t.ext1), ("Ext2", &t.ext2)] {
        let _ = writeln!(text, "{name:<5} {:>5} {:>5}", "G_a", "Q_p");
        for (row, label) in table.iter().zip(["G_a", "Q_p"]) {
            let _ = writeln!(
                text,
                "{label:<5} {:>5} {:>5}",
                breen_label(row[0]),
                breen_label(row[1])
            );
        }
    }
    let grid = |m: &[[BcInvariant; 2]; 2]| -> Value {
        Value::Array(
            m.iter()
                .map(|r| Value::Array(r.iter().map(|&b| bc_json(b)).collect()))
                .collect(),
        )
    };
    let v = json!({
        "order": ["G_a", "Q_p"],
        "hom": grid(&t.hom),
        "ext1": grid(&t.ext1),
        "ext2": grid(&t.ext2),
    });
    report("breen", text, v)
}

// ---- homological engine ---------------------------------------------------

fn cohomology_json<R: Euclidean>(h: &[Cohomology<R>]) -> Value {
    Value::Array(
        h.iter()
            .map(|c| {
                json!({
                    "degree": c.degree,
                    "free_rank": c.free_rank,
                    "torsion": c.torsion.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                    "display": c.to_string(),
                })
            })
            .collect(),
    )
}

fn cohomology_text<R: Euclidean>(h: &[Cohomology<R>]) -> String {
    let mut s = String::new();
    for c in h {
        let _ = writeln!(s, "H^{} = {}", c.degree, c);
    }
    s
}

fn parse_elems<R: Euclidean>(elements: &[String]) -> Result<Vec<R>, InputError> {
    elements
        .iter()
        .map(|e| R::parse_elem(e).map_err(InputError::from))
        .collect()
}

fn koszul_generic<R: Sample>(elements: &[String], seed: Option<u64>, count: usize) -> Out {
    let g: Vec<R> = match (elements.is_empty(), seed) {
        (true, Some(s)) => {
            let mut rng = item_rng(s, 0);
            (0..count).map(|_| R::small_nonzero(&mut rng)).collect()
        }
        (true, None) => return Err(InputError("koszul needs elements or --seed".into())),
        _ => parse_elems(elements)?,
    };
    let k = koszul(&g)?;
    let h = k.cohomology();
    let v = json!({
        "ring": R::domain().name(),
        "elements": g.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "complex": to_value(&k.to_data()),
        "cohomology": cohomology_json(&h),
        "acyclic": k.is_acyclic(),
    });
    Ok(report("koszul", cohomology_text(&h), v))
}

fn koszul_cmd(ring: CoeffDomain, elements: &[String], seed: Option<u64>, count: usize) -> Out {
    match ring {
        CoeffDomain::Integers => koszul_generic::<BigInt>(elements, seed, count),
        CoeffDomain::Rationals => koszul_generic::<BigRational>(elements, seed, count),
        CoeffDomain::PolyOverRationals => koszul_generic::<QPoly>(elements, seed, count),
    }
}

/// `start:v0,v1,...` or `v0,v1,...` (starting at 0).
fn parse_profile(s: &str) -> Result<ShiftProfile, InputError> {
    let (start, values) = match s.split_once(':') {
        Some((a, b)) => (
            a.trim()
                .parse::<i64>()
                .map_err(|_| InputError(format!("bad profile start `{a}`")))?,
            b,
        ),
        None => (0, s),
    };
    let values = values
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<u32>()
                .map_err(|_| InputError(format!("bad profile value `{v}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ShiftProfile::new(start, values)?)
}

fn read_complex<R: Euclidean>(path: &Path) -> Result<BoundedComplex<R>, InputError> {
    let data = read_data(path)?;
    Ok(BoundedComplex::from_data(&data)?)
}

fn read_data(path: &Path) -> Result<ComplexData, InputError> {
    let s = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

struct EtaArgs<'a> {
    f: &'a str,
    delta: Option<&'a str>,
    file: Option<&'a Path>,
    elements: &'a [String],
    seed: Option<u64>,
    count: usize,
}

fn eta_generic<R: Sample>(a: EtaArgs<'_>) -> Out {
    let f: R = R::parse_elem(a.f)?;
    if let Some(seed) = a.seed {
        let results = batch(seed, a.count, Execution::Parallel, |rng, _| {
            let len = 3;
            let map = random_quasi_iso::<R, _>(rng, &f, len);
            let delta = random_profile(rng, map.source().lowest(), len);
            decalage_map(&map, &f, &delta).map(|m| is_quasi_iso(&m))
        });
        let ok = results.iter().filter(|r| matches!(r, Ok(true))).count();
        let v = json!({
            "ring": R::domain().name(),
            "f": f.to_string(),
            "seed": seed,
            "instances": a.count,
            "quasi_isomorphisms": ok,
            "all_quasi_isomorphisms": ok == a.count,
        });
        let text = format!("{ok}/{} décalage images are quasi-isomorphisms\n", a.count);
        return Ok(report("eta", text, v));
    }
    if let Some(path) = a.file {
        let c: BoundedComplex<R> = read_complex(path)?;
        let delta = match a.delta {
            Some(s) => parse_profile(s)?,
            None => ShiftProfile::identity(c.lowest() - 1, c.end() + 1),
        };
        let d = decalage(&c, &f, &delta)?;
        let h = d.complex.cohomology();
        let v = json!({
            "ring": R::domain().name(),
            "f": f.to_string(),
            "complex": to_value(&d.complex.to_data()),
            "cohomology": cohomology_json(&h),
            "acyclic": d.complex.is_acyclic(),
        });
        return Ok(report("eta", cohomology_text(&h), v));
    }
    if a.elements.is_empty() {
        return Err(InputError("eta needs elements, --file or --seed".into()));
    }
    let g: Vec<R> = parse_elems(a.elements)?;
    let fg: Vec<R> = g.iter().map(|x| f.clone() * x.clone()).collect();
    let source = koszul(&fg)?;
    let delta = match a.delta {
        Some(s) => parse_profile(s)?,
        None => ShiftProfile::identity(-1, g.len() as i64 + 1),
    };
    let d = decalage(&source, &f, &delta)?;
    let reference = koszul(&g)?;
    let (h, h_ref) = (d.complex.cohomology(), reference.cohomology());
    let matches = h == h_ref;
    let mut text = cohomology_text(&h);
    let _ = writeln!(text, "matches Koszul(g): {matches}");
    let v = json!({
        "ring": R::domain().name(),
        "f": f.to_string(),
        "elements": g.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "source_cohomology": cohomology_json(&source.cohomology()),
        "cohomology": cohomology_json(&h),
        "reference_cohomology": cohomology_json(&h_ref),
        "matches": matches,
        "acyclic": d.complex.is_acyclic(),
    });
    Ok(report("eta", text, v))
}

fn eta(
    ring: CoeffDomain,
    f: &str,
    delta: Option<&str>,
    file: Option<&Path>,
    elements: &[String],
    seed: Option<u64>,
    count: usize,
) -> Out {
    let a = EtaArgs {
        f,
        delta,
        file,
        elements,
        seed,
        count,
    };
    match ring {
        CoeffDomain::Integers => eta_generic::<BigInt>(a),
        CoeffDomain::Rationals => eta_generic::<BigRational>(a),
        CoeffDomain::PolyOverRationals => eta_generic::<QPoly>(a),
    }
}

fn cohom_generic<R: Euclidean>(data: &ComplexData) -> Out {
    let c = BoundedComplex::<R>::from_data(data)?;
    let h = c.cohomology();
    let v = json!({ "ring": R::domain().name(), "cohomology": cohomology_json(&h), "acyclic": c.is_acyclic() });
    Ok(report("cohom", cohomology_text(&h), v))
}

fn cohom(path: &Path) -> Out {
    let data = read_data(path)?;
    match data.domain {
        CoeffDomain::Integers => cohom_generic::<BigInt>(&data),
        CoeffDomain::Rationals => cohom_generic::<BigRational>(&data),
        CoeffDomain::PolyOverRationals => cohom_generic::<QPoly>(&data),
    }
}

// ---- de Rham and cocycles -------------------------------------------------

fn derham(n: usize, trunc: usize) -> Out {
    let dims = ga_cohomology(n, trunc)?;
    let table = qp_cohomology_with(n, trunc, Execution::Parallel)?;
    let exact = table.verify().is_ok();
    let mut text = String::new();
    let _ = writeln!(text, "n = {n}, weight <= {trunc}");
    for (i, row) in dims.dims.iter().enumerate() {
        let ks = table.kernel_dims(i);
        let _ = writeln!(text, "Omega^{i}: dims {row:?}, ker d {ks:?}");
    }
    let _ = writeln!(text, "exact away from degree 0: {exact}");
    let h: Vec<Vec<usize>> = (0..=n)
        .map(|i| {
            table
                .pieces
                .iter()
                .filter(|p| p.form_degree == i)
                .map(|p| p.kernel - p.image)
                .collect()
        })
        .collect();
    let v = json!({
        "n": n,
        "trunc": trunc,
        "dims": dims.dims,
        "pieces": to_value(&table.pieces),
        "cohomology": h,
        "exact": exact,
    });
    Ok(report("derham", text, v))
}

fn cocycle(q: Option<u32>, want_report: bool, trunc: Option<usize>, mahler: u32) -> Out {
    if want_report {
        let poly = trunc.unwrap_or(6) as u32;
        let r = hom_column_checks(poly, mahler, Execution::Parallel);
        let text = format!(
            "ker d1* (poly, deg <= {poly}): dim {} {}\n\
             d1* on constants: {}\n\
             d3* on constants: {:?} (rank {})\n\
             Mahler homology through degree {mahler}: {:?} / {:?} / {:?}\n\
             passes: {}\n",
            r.poly_kernel_dim,
            if r.poly_kernel_is_identity {
                "(span of x)"
            } else {
                ""
            },
            r.d1_on_constants,
            r.d3_on_constants,
            r.d3_constants_rank,
            r.mahler_first
                .iter()
                .map(|h| h.homology_dim())
                .collect::<Vec<_>>(),
            r.mahler_middle
                .iter()
                .map(|h| h.homology_dim())
                .collect::<Vec<_>>(),
            r.mahler_next
                .iter()
                .map(|h| h.homology_dim())
                .collect::<Vec<_>>(),
            r.passes(),
        );
        let mut v = to_value(&r);
        v["passes"] = Value::from(r.passes());
        return Ok(report("cocycle", text, json!({ "report": v })));
    }
    let degrees: Vec<u32> = match q {
        Some(0) => return Err(InputError("cocycle degree must be at least 1".into())),
        Some(q) => vec![q],
        None => (1..=trunc.unwrap_or(8) as u32).collect(),
    };
    let rows = Execution::Parallel.map(&degrees, |&q| symmetric_2cocycle_quotient(q));
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(
            text,
            "q = {}: cocycles {}, coboundaries {}, quotient {}{}",
            r.degree,
            r.cocycle_dim,
            r.coboundary_dim,
            r.quotient_dim,
            r.generator
                .as_ref()
                .map(|g| format!("  [{g}]"))
                .unwrap_or_default()
        );
    }
    Ok(report(
        "cocycle",
        text,
        json!({ "degrees": to_value(&rows) }),
    ))
}
