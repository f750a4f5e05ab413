//! Exact linear algebra on truncated cochain spaces.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{pullback_d1, pullback_d2, pullback_d3, Func, Kind};
use crate::matrix::Matrix;
use crate::par::Execution;

type Q = BigRational;

/// Exponent vectors of `arity` variables with total degree exactly `deg`.
fn monomials(arity: usize, deg: u32) -> Vec<Vec<u32>> {
    if arity == 0 {
        return if deg == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in monomials(arity - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn basis_up_to(kind: Kind, arity: usize, trunc: u32) -> Vec<Func> {
    (0..=trunc)
        .flat_map(|d| monomials(arity, d))
        .map(|e| Func::basis(kind, e))
        .collect()
}

/// Matrix of a linear map given by its values on a list of inputs. Each
/// image is a tuple of functions; rows are indexed by (component, basis
/// element).
fn matrix_of(images: &[Vec<Func>]) -> Matrix<Q> {
    let mut rows: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    for img in images {
        for (c, f) in img.iter().enumerate() {
            for e in f.terms().keys() {
                let n = rows.len();
                rows.entry((c, e.clone())).or_insert(n);
            }
        }
    }
    let mut m = Matrix::zeros(rows.len(), images.len());
    let mut data = vec![vec![Q::zero(); images.len()]; rows.len()];
    for (j, img) in images.iter().enumerate() {
        for (c, f) in img.iter().enumerate() {
            for (e, v) in f.terms() {
                data[rows[&(c, e.clone())]][j] = v.clone();
            }
        }
    }
    if !rows.is_empty() {
        m = Matrix::from_fn(rows.len(), images.len(), |i, j| data[i][j].clone());
    }
    m
}

fn combination(inputs: &[Func], coeffs: &[Q]) -> Func {
    let mut out = Func::zero(inputs[0].kind(), inputs[0].arity());
    for (f, c) in inputs.iter().zip(coeffs) {
        out = out.add(&f.scaled(c));
    }
    out
}

fn d2_images(inputs: &[Func]) -> Vec<Vec<Func>> {
    inputs
        .iter()
        .map(|f| {
            let d = pullback_d2(f).expect("arity 2");
            vec![d.g3, d.g2]
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleQuotient {
    pub degree: u32,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub quotient_dim: usize,
    /// A spanning cocycle, normalised so its leading coefficient is 1.
    #[serde(serialize_with = "display_opt")]
    pub generator: Option<Func>,
}

fn display_opt<S: serde::Serializer>(f: &Option<Func>, s: S) -> Result<S::Ok, S::Error> {
    match f {
        Some(f) => s.serialize_some(&f.to_string()),
        None => s.serialize_none(),
    }
}

/// Homogeneous polynomial 2-cocycles of degree `q` (both the associativity
/// and the symmetry condition) modulo coboundaries.
pub fn symmetric_2cocycle_quotient(q: u32) -> CocycleQuotient {
    let inputs: Vec<Func> = monomials(2, q)
        .into_iter()
        .map(|e| Func::basis(Kind::Poly, e))
        .collect();
    let kernel = matrix_of(&d2_images(&inputs)).kernel();
    let cocycle_dim = kernel.cols();
    let generator = (cocycle_dim > 0).then(|| {
        let f = combination(&inputs, &kernel.column(0));
        let lead = f
            .terms()
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(Q::one);
        f.scaled(&(Q::one() / lead))
    });
    let coboundary = pullback_d1(&Func::basis(Kind::Poly, vec![q])).expect("arity 1");
    let coboundary_dim = usize::from(!coboundary.is_zero());
    CocycleQuotient {
        degree: q,
        cocycle_dim,
        coboundary_dim,
        quotient_dim: cocycle_dim - coboundary_dim,
        generator,
    }
}

/// Kernel and image dimensions at one spot of a truncated complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpotHomology {
    pub trunc: u32,
    pub kernel_dim: usize,
    pub image_dim: usize,
}

impl SpotHomology {
    pub fn homology_dim(&self) -> usize {
        self.kernel_dim - self.image_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomColumnReport {
    pub poly_trunc: u32,
    pub mahler_trunc: u32,
    /// Kernel of ∂₁* on one-variable polynomials.
    pub poly_kernel_dim: usize,
    pub poly_kernel_is_identity: bool,
    /// ∂₁* on constants is multiplication by this scalar.
    #[serde(serialize_with = "display_q")]
    pub d1_on_constants: Q,
    pub d2_kills_constants: bool,
    /// ∂₃* of the constant pair (x, y), one (coeff of x, coeff of y) per
    /// component.
    pub d3_on_constants: Vec<[i64; 2]>,
    pub d3_constants_rank: usize,
    /// Homology at C⁰(Z_p): kernel of ∂₁* against the line of the identity.
    pub mahler_first: Vec<SpotHomology>,
    /// Homology at C⁰(Z_p²).
    pub mahler_middle: Vec<SpotHomology>,
    /// Homology at C⁰(Z_p³) ⊕ C⁰(Z_p²).
    pub mahler_next: Vec<SpotHomology>,
}

fn display_q<S: serde::Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl HomColumnReport {
    pub fn passes(&self) -> bool {
        let exact = |v: &[SpotHomology]| v.iter().all(|h| h.homology_dim() == 0);
        self.poly_kernel_dim == 1
            && self.poly_kernel_is_identity
            && self.d1_on_constants == -Q::one()
            && self.d2_kills_constants
            && self.d3_constants_rank == 2
            && exact(&self.mahler_first)
            && exact(&self.mahler_middle)
            && exact(&self.mahler_next)
    }
}

fn kernel_of_d1(kind: Kind, trunc: u32) -> (usize, bool) {
    let inputs = basis_up_to(kind, 1, trunc);
    let images: Vec<Vec<Func>> = inputs
        .iter()
        .map(|f| vec![pullback_d1(f).expect("arity 1")])
        .collect();
    let k = matrix_of(&images).kernel();
    let is_identity = k.cols() == 1 && {
        let f = combination(&inputs, &k.column(0));
        f.terms().len() == 1 && f.terms().contains_key(&vec![1])
    };
    (k.cols(), is_identity)
}

/// Homology of the Mahler-truncated complex
/// `Q → C⁰(Z_p) → C⁰(Z_p²) → C⁰(Z_p³) ⊕ C⁰(Z_p²) → C⁰(Z_p⁴) ⊕ ...`
/// at its three inner spots, for every truncation up to `trunc`.
pub fn mahler_middle_homology(trunc: u32, exec: Execution) -> [Vec<SpotHomology>; 3] {
    let per = exec.map_range(trunc as usize + 1, |t| {
        let t = t as u32;
        let c1 = basis_up_to(Kind::Mahler, 1, t);
        let c2 = basis_up_to(Kind::Mahler, 2, t);
        let c3 = basis_up_to(Kind::Mahler, 3, t);
        let d1: Vec<Vec<Func>> = c1
            .iter()
            .map(|f| vec![pullback_d1(f).expect("arity 1")])
            .collect();
        let d1m = matrix_of(&d1);
        let d2m = matrix_of(&d2_images(&c2));
        // C⁻² is the direct sum: inputs are (f, 0) then (0, g).
        let zero3 = Func::zero(Kind::Mahler, 3);
        let zero2 = Func::zero(Kind::Mahler, 2);
        let d3: Vec<Vec<Func>> = c3
            .iter()
            .map(|f| (f.clone(), zero2.clone()))
            .chain(c2.iter().map(|g| (zero3.clone(), g.clone())))
            .map(|(f, g)| {
                let img = pullback_d3(&f, &g).expect("arity");
                img.components().into_iter().cloned().collect()
            })
            .collect();
        let d3m = matrix_of(&d3);
        let rank1 = d1m.rank();
        let rank2 = d2m.rank();
        let rank3 = d3m.rank();
        // The identity function spans the image of Q whenever t ≥ 1.
        let first = SpotHomology {
            trunc: t,
            kernel_dim: c1.len() - rank1,
            image_dim: usize::from(t >= 1),
        };
        let middle = SpotHomology {
            trunc: t,
            kernel_dim: c2.len() - rank2,
            image_dim: rank1,
        };
        let next = SpotHomology {
            trunc: t,
            kernel_dim: c3.len() + c2.len() - rank3,
            image_dim: rank2,
        };
        (first, middle, next)
    });
    let mut out = [Vec::new(), Vec::new(), Vec::new()];
    for (a, b, c) in per {
        out[0].push(a);
        out[1].push(b);
        out[2].push(c);
    }
    out
}

pub fn hom_column_checks(poly_trunc: u32, mahler_trunc: u32, exec: Execution) -> HomColumnReport {
    let (poly_kernel_dim, poly_kernel_is_identity) = kernel_of_d1(Kind::Poly, poly_trunc);
    let one = |a| Func::constant(Kind::Poly, a, Q::one());
    let zero = |a| Func::zero(Kind::Poly, a);
    let d1c = pullback_d1(&one(1)).expect("arity 1");
    let d1_on_constants = d1c
        .terms()
        .get(&vec![0, 0])
        .cloned()
        .unwrap_or_else(Q::zero);
    let d2_kills_constants = pullback_d2(&one(2)).expect("arity 2").is_zero();
    let ix = pullback_d3(&one(3), &zero(2)).expect("arity");
    let iy = pullback_d3(&zero(3), &one(2)).expect("arity");
    let scalar = |f: &Func| -> i64 {
        let v = f.terms().values().next().cloned().unwrap_or_else(Q::zero);
        v.to_integer().try_into().expect("small")
    };
    let d3_on_constants: Vec<[i64; 2]> = ix
        .components()
        .iter()
        .zip(iy.components())
        .map(|(a, b)| [scalar(a), scalar(b)])
        .collect();
    let d3_constants_rank =
        Matrix::from_fn(5, 2, |i, j| Q::from_integer(d3_on_constants[i][j].into())).rank();
    let [mahler_first, mahler_middle, mahler_next] = mahler_middle_homology(mahler_trunc, exec);
    HomColumnReport {
        poly_trunc,
        mahler_trunc,
        poly_kernel_dim,
        poly_kernel_is_identity,
        d1_on_constants,
        d2_kills_constants,
        d3_on_constants,
        d3_constants_rank,
        mahler_first,
        mahler_middle,
        mahler_next,
    }
}
