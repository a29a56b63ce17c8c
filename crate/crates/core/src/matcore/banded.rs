use crate::error::{check_dim, Error, Result};
use crate::matcore::dense::{DenseMatrix, DenseSymmetric};

/// Symmetric band matrix with semibandwidth `w` in compact lower storage:
/// subdiagonal `d` of column `j` lives at row offset `d`, i.e.
/// `data[d + j * (w + 1)] = A(j + d, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedSymmetric {
    n: usize,
    w: usize,
    data: Vec<f64>,
}

impl BandedSymmetric {
    pub fn zeros(n: usize, w: usize) -> Result<Self> {
        if n == 0 || w >= n.max(2) || (w == 0 && n > 1) {
            return Err(Error::InvalidBandwidth { w, n });
        }
        Ok(Self {
            n,
            w,
            data: vec![0.0; (w + 1) * n],
        })
    }

    /// Copies the band of `m`; entries outside it are dropped.
    pub fn from_symmetric(m: &DenseSymmetric, w: usize) -> Result<Self> {
        let mut b = Self::zeros(m.n(), w)?;
        for j in 0..b.n {
            for d in 0..=w.min(b.n - 1 - j) {
                b.data[d + j * (w + 1)] = m.get(j + d, j);
            }
        }
        Ok(b)
    }

    /// Copies the lower band of a full (symmetric) matrix.
    pub(crate) fn from_dense_lower(m: &DenseMatrix, w: usize) -> Result<Self> {
        let mut b = Self::zeros(m.rows(), w)?;
        for j in 0..b.n {
            for d in 0..=w.min(b.n - 1 - j) {
                b.data[d + j * (w + 1)] = m[(j + d, j)];
            }
        }
        Ok(b)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn w(&self) -> usize {
        self.w
    }

    pub fn raw(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        let d = r - c;
        if d > self.w {
            0.0
        } else {
            self.data[d + c * (self.w + 1)]
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        let d = r - c;
        if d > self.w || r >= self.n {
            return Err(Error::InvalidArgument(format!(
                "({i}, {j}) lies outside the band of width {}",
                self.w
            )));
        }
        self.data[d + c * (self.w + 1)] = value;
        Ok(())
    }

    pub fn materialize(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }
}

/// Symmetric tridiagonal matrix: diagonal `α` and off-diagonal `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidArgument(
                "tridiagonal matrix must have n >= 1".into(),
            ));
        }
        check_dim("SymTridiagonal offdiag", diag.len() - 1, offdiag.len())?;
        Ok(Self { diag, offdiag })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<f64>) {
        (self.diag, self.offdiag)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.abs_diff(j) {
            0 => self.diag[i],
            1 => self.offdiag[i.min(j)],
            _ => 0.0,
        }
    }

    pub fn to_banded(&self) -> BandedSymmetric {
        let n = self.n();
        let w = usize::from(n > 1);
        let mut b = BandedSymmetric::zeros(n, w).expect("valid tridiagonal band");
        for j in 0..n {
            b.data[j * (w + 1)] = self.diag[j];
            if j + 1 < n {
                b.data[1 + j * (w + 1)] = self.offdiag[j];
            }
        }
        b
    }

    pub fn materialize(&self) -> DenseMatrix {
        let n = self.n();
        DenseMatrix::from_fn(n, n, |i, j| self.get(i, j))
    }

    /// `T * v`.
    pub fn matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        let n = self.n();
        check_dim("SymTridiagonal::matvec", n, v.len())?;
        Ok((0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * v[i + 1];
                }
                s
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::Uplo;

    #[test]
    fn band_rejects_bad_width() {
        assert!(BandedSymmetric::zeros(4, 4).is_err());
        assert!(BandedSymmetric::zeros(4, 0).is_err());
        assert!(BandedSymmetric::zeros(1, 0).is_ok());
        assert!(BandedSymmetric::zeros(4, 3).is_ok());
    }

    #[test]
    fn full_bandwidth_roundtrip_is_exact() {
        let s = DenseSymmetric::from_fn(6, Uplo::Upper, |i, j| {
            1.0 / (1.0 + i as f64 + 2.0 * j as f64)
        });
        let b = BandedSymmetric::from_symmetric(&s, 5).unwrap();
        assert_eq!(b.materialize(), s.materialize());
    }

    #[test]
    fn entries_outside_band_are_zero() {
        let s = DenseSymmetric::from_fn(6, Uplo::Lower, |_, _| 1.0);
        let b = BandedSymmetric::from_symmetric(&s, 2).unwrap();
        let m = b.materialize();
        for i in 0..6usize {
            for j in 0..6 {
                let expect = if i.abs_diff(j) <= 2 { 1.0 } else { 0.0 };
                assert_eq!(m[(i, j)], expect);
            }
        }
        assert!(b.clone().set(0, 4, 1.0).is_err());
    }

    #[test]
    fn tridiagonal_matches_band() {
        let t = SymTridiagonal::new(vec![1.0, 2.0, 3.0, 4.0], vec![0.5, -0.5, 0.25]).unwrap();
        assert_eq!(t.materialize(), t.to_banded().materialize());
        let one = SymTridiagonal::new(vec![7.0], vec![]).unwrap();
        assert_eq!(one.to_banded().materialize(), one.materialize());
    }
}
