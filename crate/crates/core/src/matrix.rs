//! Dense matrices over a Euclidean domain.

use std::cmp::Ordering;
use std::ops::{Index, IndexMut, Mul};

use crate::error::{Error, Result};
use crate::ring::Euclidean;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Euclidean> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scaled(&self, c: &R) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c.clone() * x.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-R::one())
    }

    /// Divides every entry by `c`, failing if some entry is not divisible.
    pub fn exact_div(&self, c: &R) -> Option<Self> {
        let data = self
            .data
            .iter()
            .map(|x| x.exact_div(c))
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    acc = acc + a.clone() * other[(k, j)].clone();
                }
            }
            acc
        }))
    }

    /// `[A | B]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::Shape("block sizes do not fit".into()));
        }
        let (r0, c0) = (a.rows, a.cols);
        Ok(Self::from_fn(
            a.rows + c.rows,
            a.cols + b.cols,
            |i, j| match (i < r0, j < c0) {
                (true, true) => a[(i, j)].clone(),
                (true, false) => b[(i, j - c0)].clone(),
                (false, true) => c[(i - r0, j)].clone(),
                (false, false) => d[(i - r0, j - c0)].clone(),
            },
        ))
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows.start + i, cols.start + j)].clone()
        })
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<R>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// column `dst += c * column src`.
    fn add_col(&mut self, dst: usize, src: usize, c: &R) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)].clone();
            if !v.is_zero() {
                self[(i, dst)] = self[(i, dst)].clone() + c.clone() * v;
            }
        }
    }

    /// row `dst += c * row src`.
    fn add_row(&mut self, dst: usize, src: usize, c: &R) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self[(src, j)].clone();
            if !v.is_zero() {
                self[(dst, j)] = self[(dst, j)].clone() + c.clone() * v;
            }
        }
    }

    fn scale_col(&mut self, j: usize, u: &R) {
        for i in 0..self.rows {
            self[(i, j)] = u.clone() * self[(i, j)].clone();
        }
    }

    /// Non-zero invariant factors, normalized, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<R> {
        let mut a = self.clone();
        let mut diag = Vec::new();
        let mut k = 0;
        while k < a.rows.min(a.cols) {
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..a.rows {
                for j in k..a.cols {
                    let v = &a[(i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    let better = match pivot {
                        None => true,
                        Some(p) => v.size_cmp(&a[p]) == Ordering::Less,
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            let mut clean = true;
            for i in k + 1..a.rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let (q, r) = a[(i, k)].div_rem_euclid(&a[(k, k)]);
                a.add_row(i, k, &-q);
                clean &= r.is_zero();
            }
            for j in k + 1..a.cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let (q, r) = a[(k, j)].div_rem_euclid(&a[(k, k)]);
                a.add_col(j, k, &-q);
                clean &= r.is_zero();
            }
            if clean {
                diag.push(a[(k, k)].normalized());
                k += 1;
            }
        }
        // gcd/lcm passes turn a diagonal form into the divisibility chain.
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                let g = diag[i].gcd(&diag[j]);
                let l = (diag[i].clone() * diag[j].clone())
                    .exact_div(&g)
                    .expect("gcd divides")
                    .normalized();
                diag[i] = g;
                diag[j] = l;
            }
        }
        diag
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Column Hermite form `H = A U` with `U` unimodular.
    ///
    /// The non-zero columns of `H` come first and are in echelon form with
    /// normalized pivots and reduced entries to the left of each pivot; the
    /// remaining columns of `U` span the kernel of `A`.
    pub fn column_hermite(&self) -> (Self, Self, usize) {
        let mut h = self.clone();
        let mut u = Self::identity(self.cols);
        let mut p = 0;
        for i in 0..h.rows {
            if p == h.cols {
                break;
            }
            loop {
                let mut best: Option<usize> = None;
                for j in p..h.cols {
                    if h[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|b| h[(i, j)].size_cmp(&h[(i, b)]) == Ordering::Less) {
                        best = Some(j);
                    }
                }
                let Some(b) = best else { break };
                h.swap_cols(p, b);
                u.swap_cols(p, b);
                let mut done = true;
                for j in p + 1..h.cols {
                    if h[(i, j)].is_zero() {
                        continue;
                    }
                    let (q, r) = h[(i, j)].div_rem_euclid(&h[(i, p)]);
                    h.add_col(j, p, &-q.clone());
                    u.add_col(j, p, &-q);
                    done &= r.is_zero();
                }
                if done {
                    break;
                }
            }
            if h[(i, p)].is_zero() {
                continue;
            }
            let unit = h[(i, p)].normal_unit();
            h.scale_col(p, &unit);
            u.scale_col(p, &unit);
            for j in 0..p {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let (q, _) = h[(i, j)].div_rem_euclid(&h[(i, p)]);
                h.add_col(j, p, &-q.clone());
                u.add_col(j, p, &-q);
            }
            p += 1;
        }
        (h, u, p)
    }

    /// A basis of the kernel, as columns.
    pub fn kernel(&self) -> Self {
        let (_, u, r) = self.column_hermite();
        u.submatrix(0..self.cols, r..self.cols)
    }

    /// A basis of the lattice spanned by the columns, in Hermite form.
    pub fn column_basis(&self) -> Self {
        let (h, _, r) = self.column_hermite();
        h.submatrix(0..self.rows, 0..r)
    }

    /// Solves `L x = b` for square lower-triangular `L` with exact division.
    pub fn solve_lower(&self, b: &Self) -> Option<Self> {
        let n = self.rows;
        let mut x = Self::zeros(n, b.cols);
        for c in 0..b.cols {
            for i in 0..n {
                let mut acc = b[(i, c)].clone();
                for k in 0..i {
                    acc = acc - self[(i, k)].clone() * x[(k, c)].clone();
                }
                x[(i, c)] = acc.exact_div(&self[(i, i)])?;
            }
        }
        Some(x)
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                !self[(i, i)].is_zero() && (i + 1..self.cols).all(|j| self[(i, j)].is_zero())
            })
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
            .collect()
    }

    pub fn from_strings(rows: usize, cols: usize, cells: &[Vec<String>]) -> Result<Self> {
        if cells.len() != rows || cells.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!("expected a {rows}x{cols} matrix")));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in cells {
            for cell in row {
                data.push(R::parse_elem(cell)?);
            }
        }
        Ok(Matrix { rows, cols, data })
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;

    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Euclidean> Mul for &Matrix<R> {
    type Output = Matrix<R>;

    fn mul(self, rhs: &Matrix<R>) -> Matrix<R> {
        self.checked_mul(rhs).expect("matrix shapes agree")
    }
}
