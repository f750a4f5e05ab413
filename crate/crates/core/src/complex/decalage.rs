use serde::{Deserialize, Serialize};

use super::{BoundedComplex, ChainMap};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Euclidean;

/// `δ : Z → N` given on a window `[start, start + len)` and constant outside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftProfile {
    start: i64,
    values: Vec<u32>,
}

impl ShiftProfile {
    pub fn new(start: i64, values: Vec<u32>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::OutOfRange(
                "shift profile needs at least one value".into(),
            ));
        }
        Ok(ShiftProfile { start, values })
    }

    pub fn constant(c: u32) -> Self {
        ShiftProfile {
            start: 0,
            values: vec![c],
        }
    }

    /// `δ(j) = max(j, 0)` on `[lo, hi]`.
    pub fn identity(lo: i64, hi: i64) -> Self {
        let values = (lo..=hi.max(lo)).map(|j| j.max(0) as u32).collect();
        ShiftProfile { start: lo, values }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn at(&self, j: i64) -> u32 {
        let k = (j - self.start).clamp(0, self.values.len() as i64 - 1);
        self.values[k as usize]
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

/// `η_{δ,f} C` together with the bases realizing each term inside `C^j`:
/// term `j` is `f^{δ(j)} · bases[j] · R^{n_j}`.
#[derive(Clone, Debug)]
pub struct Decalage<R> {
    pub complex: BoundedComplex<R>,
    pub bases: Vec<Matrix<R>>,
}

/// `{y : D y ∈ f^e R^m}` as a square lower-triangular basis matrix.
fn saturation<R: Euclidean>(d: &Matrix<R>, fe: &R) -> Result<Matrix<R>> {
    let (m, n) = (d.rows(), d.cols());
    if m == 0 || fe.is_unit() {
        return Ok(Matrix::identity(n));
    }
    let a = d.hstack(&Matrix::identity(m).scaled(fe))?;
    let kernel = a.kernel();
    let gens = kernel.submatrix(0..n, 0..kernel.cols());
    let h = gens.column_basis();
    if h.cols() != n || !h.is_lower_triangular() {
        return Err(Error::Certificate(
            "saturated lattice is not of full rank".into(),
        ));
    }
    Ok(h)
}

pub fn decalage<R: Euclidean>(
    c: &BoundedComplex<R>,
    f: &R,
    delta: &ShiftProfile,
) -> Result<Decalage<R>> {
    if f.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let bases = c
        .degrees()
        .map(|j| {
            let e = delta.at(j + 1).saturating_sub(delta.at(j));
            saturation(&c.diff_at(j), &f.pow_u32(e))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut diffs = Vec::new();
    for (k, j) in c.degrees().enumerate().take(bases.len().saturating_sub(1)) {
        let mut m = &c.diff_at(j) * &bases[k];
        let (a, b) = (delta.at(j), delta.at(j + 1));
        if a >= b {
            m = m.scaled(&f.pow_u32(a - b));
        } else {
            m = m.exact_div(&f.pow_u32(b - a)).ok_or_else(|| {
                Error::Certificate(format!("image at degree {j} is not divisible"))
            })?;
        }
        let x = bases[k + 1]
            .solve_lower(&m)
            .ok_or_else(|| Error::Certificate(format!("image at degree {j} leaves the lattice")))?;
        diffs.push(x);
    }
    let complex = BoundedComplex::new(c.lowest(), c.ranks().to_vec(), diffs)?;
    Ok(Decalage { complex, bases })
}

/// `η_{δ,f}` applied to a chain map.
pub fn decalage_map<R: Euclidean>(
    map: &ChainMap<R>,
    f: &R,
    delta: &ShiftProfile,
) -> Result<ChainMap<R>> {
    let src = decalage(map.source(), f, delta)?;
    let dst = decalage(map.target(), f, delta)?;
    let maps = map
        .maps()
        .iter()
        .enumerate()
        .map(|(k, fk)| {
            let m = fk * &src.bases[k];
            dst.bases[k]
                .solve_lower(&m)
                .ok_or_else(|| Error::Certificate("chain map leaves the décalage lattice".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    ChainMap::new(src.complex, dst.complex, maps)
}
