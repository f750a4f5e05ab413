//! Bounded cochain complexes of finite free modules.

mod decalage;
pub mod random;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{CoeffDomain, Euclidean};

pub use decalage::{decalage, decalage_map, Decalage, ShiftProfile};

/// `C^lo → C^{lo+1} → ... → C^hi`, zero outside `[lo, hi]`.
///
/// `diffs[k]` is the matrix of `C^{lo+k} → C^{lo+k+1}` acting on column
/// vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundedComplex<R> {
    lowest: i64,
    ranks: Vec<usize>,
    diffs: Vec<Matrix<R>>,
}

/// `H^j` as `R^free ⊕ ⨁ R/(e)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cohomology<R> {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<R>,
}

impl<R: Euclidean> Cohomology<R> {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl<R: Euclidean> fmt::Display for Cohomology<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = R::domain().name();
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(ring.to_string()),
            r => parts.push(format!("{ring}^{r}")),
        }
        for e in &self.torsion {
            let s = e.to_string();
            if s.chars().all(|c| c.is_ascii_digit()) {
                parts.push(format!("{ring}/{s}"));
            } else {
                parts.push(format!("{ring}/({s})"));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl<R: Euclidean> BoundedComplex<R> {
    pub fn new(lowest: i64, ranks: Vec<usize>, diffs: Vec<Matrix<R>>) -> Result<Self> {
        if diffs.len() != ranks.len().saturating_sub(1) {
            return Err(Error::Shape(format!(
                "{} terms need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[k + 1] || d.cols() != ranks[k] {
                return Err(Error::Shape(format!(
                    "differential at degree {} is {}x{}, expected {}x{}",
                    lowest + k as i64,
                    d.rows(),
                    d.cols(),
                    ranks[k + 1],
                    ranks[k]
                )));
            }
        }
        for k in 1..diffs.len() {
            if !(&diffs[k] * &diffs[k - 1]).is_zero() {
                return Err(Error::NotAComplex(lowest + k as i64 - 1));
            }
        }
        Ok(BoundedComplex {
            lowest,
            ranks,
            diffs,
        })
    }

    pub fn zero(lowest: i64, len: usize) -> Self {
        BoundedComplex {
            lowest,
            ranks: vec![0; len],
            diffs: (1..len).map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    /// One past the top degree.
    pub fn end(&self) -> i64 {
        self.lowest + self.ranks.len() as i64
    }

    pub fn degrees(&self) -> std::ops::Range<i64> {
        self.lowest..self.end()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank_at(&self, j: i64) -> usize {
        if self.degrees().contains(&j) {
            self.ranks[(j - self.lowest) as usize]
        } else {
            0
        }
    }

    /// `d^j : C^j → C^{j+1}`, zero matrices outside the stored range.
    pub fn diff_at(&self, j: i64) -> Matrix<R> {
        let k = j - self.lowest;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            Matrix::zeros(self.rank_at(j + 1), self.rank_at(j))
        }
    }

    pub fn differentials(&self) -> &[Matrix<R>] {
        &self.diffs
    }

    pub fn cohomology_at(&self, j: i64) -> Cohomology<R> {
        let out = self.diff_at(j).rank();
        let incoming = self.diff_at(j - 1).invariant_factors();
        Cohomology {
            degree: j,
            free_rank: self.rank_at(j) - out - incoming.len(),
            torsion: incoming.into_iter().filter(|e| !e.is_unit()).collect(),
        }
    }

    pub fn cohomology(&self) -> Vec<Cohomology<R>> {
        self.degrees().map(|j| self.cohomology_at(j)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|j| self.cohomology_at(j).is_zero())
    }

    /// Extends the stored range with zero terms so it covers `[lo, end)`.
    pub fn padded(&self, lo: i64, end: i64) -> Self {
        let lo = lo.min(self.lowest);
        let end = end.max(self.end());
        let ranks: Vec<usize> = (lo..end).map(|j| self.rank_at(j)).collect();
        let diffs = (lo..end - 1).map(|j| self.diff_at(j)).collect();
        BoundedComplex {
            lowest: lo,
            ranks,
            diffs,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let lo = self.lowest.min(other.lowest);
        let end = self.end().max(other.end());
        let ranks = (lo..end)
            .map(|j| self.rank_at(j) + other.rank_at(j))
            .collect();
        let diffs = (lo..end - 1)
            .map(|j| {
                let (a, b) = (self.diff_at(j), other.diff_at(j));
                let ur = Matrix::zeros(a.rows(), b.cols());
                let ll = Matrix::zeros(b.rows(), a.cols());
                Matrix::block(&a, &ur, &ll, &b).expect("block shapes")
            })
            .collect();
        BoundedComplex {
            lowest: lo,
            ranks,
            diffs,
        }
    }

    /// The same complex in new bases: `d'^j = P^{j+1} d^j (P^j)^{-1}`.
    pub fn change_basis(&self, p: &[Matrix<R>], p_inv: &[Matrix<R>]) -> Self {
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| &(&p[k + 1] * d) * &p_inv[k])
            .collect();
        BoundedComplex {
            lowest: self.lowest,
            ranks: self.ranks.clone(),
            diffs,
        }
    }

    pub fn to_data(&self) -> ComplexData {
        ComplexData {
            domain: R::domain(),
            lowest_degree: self.lowest,
            ranks: self.ranks.clone(),
            differentials: self.diffs.iter().map(Matrix::to_strings).collect(),
        }
    }

    pub fn from_data(data: &ComplexData) -> Result<Self> {
        if data.domain != R::domain() {
            return Err(Error::Shape(format!(
                "complex is over {}, expected {}",
                data.domain,
                R::domain()
            )));
        }
        if data.differentials.len() != data.ranks.len().saturating_sub(1) {
            return Err(Error::Shape("wrong number of differentials".into()));
        }
        let diffs = data
            .differentials
            .iter()
            .enumerate()
            .map(|(k, m)| Matrix::from_strings(data.ranks[k + 1], data.ranks[k], m))
            .collect::<Result<Vec<_>>>()?;
        BoundedComplex::new(data.lowest_degree, data.ranks.clone(), diffs)
    }
}

/// Serialized form of a complex: ranks plus row-major string matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexData {
    pub domain: CoeffDomain,
    pub lowest_degree: i64,
    pub ranks: Vec<usize>,
    pub differentials: Vec<Vec<Vec<String>>>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Koszul complex of `g_1..g_n` in degrees `0..=n`.
///
/// Degree `k` has the `k`-subsets as basis, in lexicographic order. The
/// coefficient of `e_J` in `d e_I` for `J = I ∪ {j}` is `(-1)^{m-1} g_j`,
/// where `m` is the position of `j` in `J`.
pub fn koszul<R: Euclidean>(g: &[R]) -> Result<BoundedComplex<R>> {
    let n = g.len();
    if n == 0 {
        return Err(Error::OutOfRange(
            "koszul needs at least one element".into(),
        ));
    }
    let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| subsets(n, k)).collect();
    let ranks = bases.iter().map(Vec::len).collect();
    let diffs = (0..n)
        .map(|k| {
            let (src, dst) = (&bases[k], &bases[k + 1]);
            Matrix::from_fn(dst.len(), src.len(), |r, c| {
                let (j_set, i_set) = (&dst[r], &src[c]);
                if !i_set.iter().all(|i| j_set.contains(i)) {
                    return R::zero();
                }
                let m = j_set
                    .iter()
                    .position(|j| !i_set.contains(j))
                    .expect("one new index");
                let gj = g[j_set[m]].clone();
                if m % 2 == 0 {
                    gj
                } else {
                    -gj
                }
            })
        })
        .collect();
    BoundedComplex::new(0, ranks, diffs)
}

/// A morphism of complexes over the same degree range.
#[derive(Clone, Debug)]
pub struct ChainMap<R> {
    source: BoundedComplex<R>,
    target: BoundedComplex<R>,
    maps: Vec<Matrix<R>>,
}

impl<R: Euclidean> ChainMap<R> {
    /// `maps[k]` is `C^{lo+k} → D^{lo+k}`; both complexes are padded to a
    /// common range first.
    pub fn new(
        source: BoundedComplex<R>,
        target: BoundedComplex<R>,
        maps: Vec<Matrix<R>>,
    ) -> Result<Self> {
        if source.lowest != target.lowest || source.ranks.len() != target.ranks.len() {
            return Err(Error::Shape(
                "chain map needs complexes on the same degree range".into(),
            ));
        }
        if maps.len() != source.ranks.len() {
            return Err(Error::Shape("one component per degree".into()));
        }
        for (k, f) in maps.iter().enumerate() {
            if f.rows() != target.ranks[k] || f.cols() != source.ranks[k] {
                return Err(Error::Shape(format!("component {k} has the wrong shape")));
            }
        }
        for k in 1..maps.len() {
            let j = source.lowest + k as i64 - 1;
            if &target.diff_at(j) * &maps[k - 1] != &maps[k] * &source.diff_at(j) {
                return Err(Error::Shape(format!(
                    "chain map does not commute at degree {j}"
                )));
            }
        }
        Ok(ChainMap {
            source,
            target,
            maps,
        })
    }

    pub fn identity(c: &BoundedComplex<R>) -> Self {
        let maps = c.ranks.iter().map(|&r| Matrix::identity(r)).collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    pub fn source(&self) -> &BoundedComplex<R> {
        &self.source
    }

    pub fn target(&self) -> &BoundedComplex<R> {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix<R>] {
        &self.maps
    }

    fn map_at(&self, j: i64) -> Matrix<R> {
        let k = j - self.source.lowest;
        if k >= 0 && (k as usize) < self.maps.len() {
            self.maps[k as usize].clone()
        } else {
            Matrix::zeros(self.target.rank_at(j), self.source.rank_at(j))
        }
    }
}

/// `cone^j = C^{j+1} ⊕ D^j` with `d(c, x) = (-d_C c, f(c) + d_D x)`.
pub fn mapping_cone<R: Euclidean>(f: &ChainMap<R>) -> BoundedComplex<R> {
    let (c, d) = (&f.source, &f.target);
    let lo = c.lowest - 1;
    let end = c.end();
    let ranks = (lo..end).map(|j| c.rank_at(j + 1) + d.rank_at(j)).collect();
    let diffs = (lo..end - 1)
        .map(|j| {
            Matrix::block(
                &c.diff_at(j + 1).neg(),
                &Matrix::zeros(c.rank_at(j + 2), d.rank_at(j)),
                &f.map_at(j + 1),
                &d.diff_at(j),
            )
            .expect("cone block shapes")
        })
        .collect();
    BoundedComplex::new(lo, ranks, diffs).expect("the cone of a chain map is a complex")
}

/// True iff the map induces isomorphisms on all cohomology.
pub fn is_quasi_iso<R: Euclidean>(f: &ChainMap<R>) -> bool {
    mapping_cone(f).is_acyclic()
}
