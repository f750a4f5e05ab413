//! Polynomial de Rham complex of affine `n`-space, graded by coefficient
//! degree.
//!
//! The piece `Ω^i_e` is spanned by `x^a dx_I` with `|a| = e` and `|I| = i`.
//! The exterior derivative maps `Ω^i_e` to `Ω^{i+1}_{e-1}`, so the weight
//! `e + i` is preserved and truncating by weight keeps every differential
//! inside the truncation.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::par::Execution;

type Q = BigRational;

/// A monomial form `x^a dx_I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialForm {
    pub exponents: Vec<u32>,
    pub indices: Vec<usize>,
}

fn monomials(n: usize, e: usize) -> Vec<Vec<u32>> {
    fn go(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k + 1 == cur.len() {
            cur[k] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[k] = a;
            go(k + 1, left - a, cur, out);
        }
    }
    let mut out = Vec::new();
    go(0, e as u32, &mut vec![0; n], &mut out);
    out
}

fn index_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out.sort();
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of monomial forms in `Ω^i_e`.
pub fn piece_dim(n: usize, i: usize, e: usize) -> usize {
    binomial(n, i) * binomial(e + n - 1, n - 1)
}

/// One graded piece with the matrix of `d : Ω^i_e → Ω^{i+1}_{e-1}`.
#[derive(Clone, Debug)]
pub struct Piece {
    pub form_degree: usize,
    pub coeff_degree: usize,
    pub basis: Vec<MonomialForm>,
    pub differential: Matrix<Q>,
}

#[derive(Clone, Debug)]
pub struct GradedDeRham {
    n: usize,
    trunc: usize,
    pieces: HashMap<(usize, usize), Piece>,
}

fn basis(n: usize, i: usize, e: usize) -> Vec<MonomialForm> {
    let mons = monomials(n, e);
    let mut out = Vec::new();
    for idx in index_sets(n, i) {
        for a in &mons {
            out.push(MonomialForm {
                exponents: a.clone(),
                indices: idx.clone(),
            });
        }
    }
    out
}

fn exterior_derivative(n: usize, i: usize, e: usize, src: &[MonomialForm]) -> Matrix<Q> {
    if i == n || e == 0 {
        return Matrix::zeros(0, src.len());
    }
    let dst = basis(n, i + 1, e - 1);
    let pos: HashMap<&MonomialForm, usize> = dst.iter().enumerate().map(|(k, f)| (f, k)).collect();
    let mut m: Matrix<Q> = Matrix::zeros(dst.len(), src.len());
    for (c, form) in src.iter().enumerate() {
        for k in 0..n {
            if form.indices.contains(&k) || form.exponents[k] == 0 {
                continue;
            }
            let mut exps = form.exponents.clone();
            exps[k] -= 1;
            let mut idx = form.indices.clone();
            idx.push(k);
            idx.sort_unstable();
            let before = form.indices.iter().filter(|&&j| j < k).count();
            let coeff = Q::from_integer(BigInt::from(form.exponents[k]));
            let coeff = if before % 2 == 0 { coeff } else { -coeff };
            let r = pos[&MonomialForm {
                exponents: exps,
                indices: idx,
            }];
            m[(r, c)] = m[(r, c)].clone() + coeff;
        }
    }
    m
}

impl GradedDeRham {
    /// All pieces `Ω^i_e` with weight `e + i <= trunc`.
    pub fn build(n: usize, trunc: usize) -> Result<Self> {
        Self::build_with(n, trunc, Execution::Sequential)
    }

    pub fn build_with(n: usize, trunc: usize, exec: Execution) -> Result<Self> {
        if n == 0 || trunc == 0 {
            return Err(Error::OutOfRange(format!(
                "need n >= 1 and D >= 1, got n={n}, D={trunc}"
            )));
        }
        let keys: Vec<(usize, usize)> = (0..=n)
            .flat_map(|i| (0..=trunc.saturating_sub(i)).map(move |e| (i, e)))
            .filter(|(i, e)| i + e <= trunc)
            .collect();
        let built = exec.map(&keys, |&(i, e)| {
            let b = basis(n, i, e);
            let d = exterior_derivative(n, i, e, &b);
            Piece {
                form_degree: i,
                coeff_degree: e,
                basis: b,
                differential: d,
            }
        });
        let pieces = keys.into_iter().zip(built).collect();
        Ok(GradedDeRham { n, trunc, pieces })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn piece(&self, i: usize, e: usize) -> Option<&Piece> {
        self.pieces.get(&(i, e))
    }

    pub fn dim(&self, i: usize, e: usize) -> usize {
        self.piece(i, e).map_or(0, |p| p.basis.len())
    }

    /// Coefficient degrees present for forms of degree `i`.
    pub fn coeff_degrees(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        if i > self.n || i > self.trunc {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        0..=self.trunc - i
    }

    /// True if `d` into or out of the piece would leave the truncation.
    pub fn touches_boundary(&self, i: usize, e: usize) -> bool {
        let out_missing = i < self.n && e >= 1 && self.piece(i + 1, e - 1).is_none();
        let in_missing = i >= 1 && self.piece(i - 1, e + 1).is_none();
        out_missing || in_missing
    }

    /// `d_{i+1} ∘ d_i = 0` on the piece `Ω^i_e`.
    pub fn d_squared_vanishes(&self, i: usize, e: usize) -> bool {
        let (Some(p), Some(q)) = (
            self.piece(i, e),
            e.checked_sub(1).and_then(|e1| self.piece(i + 1, e1)),
        ) else {
            return true;
        };
        (&q.differential * &p.differential).is_zero()
    }

    pub fn rank_d(&self, i: usize, e: usize) -> usize {
        self.piece(i, e).map_or(0, |p| p.differential.rank())
    }
}

/// `dims[i][e]` for the coefficient degrees present in each form degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    pub n: usize,
    pub trunc: usize,
    pub dims: Vec<Vec<usize>>,
}

/// Dimensions of `Ω^i` per graded piece.
pub fn ga_cohomology(n: usize, trunc: usize) -> Result<DimTable> {
    let c = GradedDeRham::build(n, trunc)?;
    let dims = (0..=n)
        .map(|i| c.coeff_degrees(i).map(|e| c.dim(i, e)).collect())
        .collect();
    Ok(DimTable { n, trunc, dims })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QpPiece {
    pub form_degree: usize,
    pub coeff_degree: usize,
    pub dim: usize,
    pub rank_d: usize,
    pub kernel: usize,
    /// Rank of `d_{i-1}` landing in this piece.
    pub image: usize,
    pub boundary: bool,
}

impl QpPiece {
    pub fn exact(&self) -> bool {
        self.form_degree == 0 || self.kernel == self.image
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QpTable {
    pub n: usize,
    pub trunc: usize,
    pub pieces: Vec<QpPiece>,
}

impl QpTable {
    /// `H^i` dimensions per coefficient degree: `ker d_0` for `i = 0` and
    /// `ker d_i` for `i >= 1`.
    pub fn kernel_dims(&self, i: usize) -> Vec<usize> {
        self.pieces
            .iter()
            .filter(|p| p.form_degree == i)
            .map(|p| p.kernel)
            .collect()
    }

    /// Checks exactness on every piece away from the boundary.
    pub fn verify(&self) -> Result<()> {
        for p in self.pieces.iter().filter(|p| !p.boundary) {
            if !p.exact() {
                return Err(Error::Certificate(format!(
                    "ker d_{i} != im d_{} on the piece of coefficient degree {}",
                    p.form_degree.saturating_sub(1),
                    p.coeff_degree,
                    i = p.form_degree
                )));
            }
        }
        Ok(())
    }
}

pub fn qp_cohomology(n: usize, trunc: usize) -> Result<QpTable> {
    qp_cohomology_with(n, trunc, Execution::Sequential)
}

pub fn qp_cohomology_with(n: usize, trunc: usize, exec: Execution) -> Result<QpTable> {
    let c = GradedDeRham::build_with(n, trunc, exec)?;
    let keys: Vec<(usize, usize)> = (0..=n)
        .flat_map(|i| c.coeff_degrees(i).map(move |e| (i, e)))
        .collect();
    let ranks: HashMap<(usize, usize), usize> = keys
        .iter()
        .copied()
        .zip(exec.map(&keys, |&(i, e)| c.rank_d(i, e)))
        .collect();
    let pieces = keys
        .iter()
        .map(|&(i, e)| {
            let dim = c.dim(i, e);
            let rank_d = ranks[&(i, e)];
            let image = if i == 0 {
                0
            } else {
                ranks.get(&(i - 1, e + 1)).copied().unwrap_or(0)
            };
            QpPiece {
                form_degree: i,
                coeff_degree: e,
                dim,
                rank_d,
                kernel: dim - rank_d,
                image,
                boundary: c.touches_boundary(i, e),
            }
        })
        .collect();
    Ok(QpTable { n, trunc, pieces })
}

/// `∫ x^k dx = x^{k+1}/(k+1)`: the primitive vanishing at 0 of a one-variable
/// form, returned as `(exponent, coefficient)`.
pub fn integrate_monomial(k: u32) -> (u32, Q) {
    (k + 1, Q::new(BigInt::one(), BigInt::from(k + 1)))
}

/// Applies `d` to a form given as coefficients on the basis of `Ω^i_e`.
pub fn apply_d(c: &GradedDeRham, i: usize, e: usize, v: &[Q]) -> Result<Vec<Q>> {
    let p = c
        .piece(i, e)
        .ok_or_else(|| Error::OutOfRange(format!("no piece Ω^{i}_{e}")))?;
    if v.len() != p.basis.len() {
        return Err(Error::Shape(format!(
            "expected {} coefficients",
            p.basis.len()
        )));
    }
    let col = Matrix::from_columns(v.len(), &[v.to_vec()]);
    let out = &p.differential * &col;
    Ok((0..out.rows()).map(|r| out[(r, 0)].clone()).collect())
}
