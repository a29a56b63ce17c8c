use std::ops::{Index, IndexMut};

use crate::error::{check_dim, Error, Result};

/// Column-major dense `rows x cols` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_col_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        check_dim("DenseMatrix::from_col_major", rows * cols, data.len())?;
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from row-major entries, which is how literals read in source.
    pub fn from_row_major(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        check_dim("DenseMatrix::from_row_major", rows * cols, entries.len())?;
        Ok(Self::from_fn(rows, cols, |i, j| entries[i * cols + j]))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<f64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * columns.len());
        for c in columns {
            check_dim("DenseMatrix::from_columns", rows, c.len())?;
            data.extend_from_slice(c);
        }
        Ok(Self {
            rows,
            cols: columns.len(),
            data,
        })
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { 0.0 })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Mutable access to two distinct columns at once.
    pub(crate) fn col_pair_mut(&mut self, a: usize, b: usize) -> (&mut [f64], &mut [f64]) {
        assert!(a < b && b < self.cols);
        let r = self.rows;
        let (lo, hi) = self.data.split_at_mut(b * r);
        (&mut lo[a * r..(a + 1) * r], &mut hi[..r])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Copy of columns `range`.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Self {
        let data = self.data[range.start * self.rows..range.end * self.rows].to_vec();
        Self {
            rows: self.rows,
            cols: range.len(),
            data,
        }
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    /// `self * other`.
    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        check_dim("matmul", self.cols, other.rows)?;
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let oc = out.col_mut(j);
            for p in 0..self.cols {
                let b = other[(p, j)];
                if b == 0.0 {
                    continue;
                }
                let ac = &self.data[p * self.rows..(p + 1) * self.rows];
                for (o, &a) in oc.iter_mut().zip(ac) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ * other`.
    pub fn t_matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        check_dim("t_matmul", self.rows, other.rows)?;
        Ok(DenseMatrix::from_fn(self.cols, other.cols, |i, j| {
            dot(self.col(i), other.col(j))
        }))
    }

    /// `self * v`.
    pub fn matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_dim("matvec", self.cols, v.len())?;
        let mut out = vec![0.0; self.rows];
        for (p, &b) in v.iter().enumerate() {
            axpy(b, self.col(p), &mut out);
        }
        Ok(out)
    }

    /// `selfᵀ * v`.
    pub fn t_matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_dim("t_matvec", self.rows, v.len())?;
        Ok((0..self.cols).map(|j| dot(self.col(j), v)).collect())
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        check_dim("sub (rows)", self.rows, other.rows)?;
        check_dim("sub (cols)", self.cols, other.cols)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale_columns(&mut self, factors: &[f64]) {
        for (j, &f) in factors.iter().enumerate().take(self.cols) {
            self.col_mut(j).iter_mut().for_each(|x| *x *= f);
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i + j * self.rows]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i + j * self.rows]
    }
}

/// Triangle selector for symmetric storage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Uplo {
    #[default]
    Upper,
    Lower,
}

/// Symmetric `n x n` matrix with one authoritative triangle.
///
/// The other triangle is kept zeroed and never read.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymmetric {
    n: usize,
    uplo: Uplo,
    data: Vec<f64>,
}

impl DenseSymmetric {
    /// Takes the `uplo` triangle of a square matrix. The rest is discarded.
    pub fn from_dense(m: &DenseMatrix, uplo: Uplo) -> Result<Self> {
        check_dim("DenseSymmetric::from_dense", m.rows(), m.cols())?;
        if m.rows() == 0 {
            return Err(Error::InvalidArgument(
                "symmetric matrix must have n >= 1".into(),
            ));
        }
        Ok(Self::from_fn(m.rows(), uplo, |i, j| m[(i, j)]))
    }

    /// `f(i, j)` is only evaluated on the authoritative triangle.
    pub fn from_fn(n: usize, uplo: Uplo, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for j in 0..n {
            let rows = match uplo {
                Uplo::Upper => 0..j + 1,
                Uplo::Lower => j..n,
            };
            for i in rows {
                data[i + j * n] = f(i, j);
            }
        }
        Self { n, uplo, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![1.0; n])
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        Self::from_fn(
            diag.len(),
            Uplo::Upper,
            |i, j| if i == j { diag[i] } else { 0.0 },
        )
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn uplo(&self) -> Uplo {
        self.uplo
    }

    /// Logical entry `(i, j)`, read from the authoritative triangle.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (r, c) = match self.uplo {
            Uplo::Upper if i > j => (j, i),
            Uplo::Lower if i < j => (j, i),
            _ => (i, j),
        };
        self.data[r + c * self.n]
    }

    /// Raw column-major storage; only the authoritative triangle is meaningful.
    pub fn raw(&self) -> &[f64] {
        &self.data
    }

    /// Full matrix by mirror fill of the authoritative triangle.
    pub fn materialize(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn check_finite(&self) -> Result<()> {
        for j in 0..self.n {
            for i in 0..self.n {
                if !self.get(i, j).is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        Ok(())
    }
}

/// `M * v` reading only the authoritative triangle of `M` (2n² flops).
pub fn sym_matvec(m: &DenseSymmetric, v: &[f64]) -> Result<Vec<f64>> {
    let mut out = vec![0.0; m.n];
    sym_matvec_into(m, v, &mut out)?;
    Ok(out)
}

/// As [`sym_matvec`], writing into `out`.
pub fn sym_matvec_into(m: &DenseSymmetric, v: &[f64], out: &mut [f64]) -> Result<()> {
    let n = m.n;
    check_dim("sym_matvec (vector)", n, v.len())?;
    check_dim("sym_matvec (output)", n, out.len())?;
    out.iter_mut().for_each(|x| *x = 0.0);
    match m.uplo {
        Uplo::Upper => {
            for j in 0..n {
                let col = &m.data[j * n..j * n + j + 1];
                let xj = v[j];
                let mut t = 0.0;
                for i in 0..j {
                    out[i] += col[i] * xj;
                    t += col[i] * v[i];
                }
                out[j] += t + col[j] * xj;
            }
        }
        Uplo::Lower => {
            for j in 0..n {
                let col = &m.data[j * n..(j + 1) * n];
                let xj = v[j];
                let mut t = 0.0;
                for i in j + 1..n {
                    out[i] += col[i] * xj;
                    t += col[i] * v[i];
                }
                out[j] += t + col[j] * xj;
            }
        }
    }
    Ok(())
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

#[inline]
pub(crate) fn norm2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}
