//! Householder reflectors `H = I - τ v vᵀ` and their compact WY aggregation
//! `H₁ H₂ ⋯ H_b = I - V T Vᵀ` with `T` upper triangular.

use crate::error::{check_dim, Result};
use crate::matcore::{axpy, dot, norm2, DenseMatrix, Side};

/// A reflector acting on indices `offset .. offset + v.len()`, with `v[0] = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reflector {
    pub offset: usize,
    pub v: Vec<f64>,
    pub tau: f64,
}

impl Reflector {
    /// Reflector mapping `x` onto `β e₁`. Returns the reflector and `β`.
    ///
    /// When `x[1..]` is already zero the reflector is the identity (`τ = 0`).
    pub fn annihilating(offset: usize, x: &[f64]) -> (Self, f64) {
        let mut v = x.to_vec();
        let alpha = v[0];
        let xnorm = norm2(&v[1..]);
        if xnorm == 0.0 {
            v[1..].iter_mut().for_each(|e| *e = 0.0);
            v[0] = 1.0;
            return (
                Self {
                    offset,
                    v,
                    tau: 0.0,
                },
                alpha,
            );
        }
        let beta = -alpha.hypot(xnorm).copysign(alpha);
        let tau = (beta - alpha) / beta;
        let scale = 1.0 / (alpha - beta);
        v[1..].iter_mut().for_each(|e| *e *= scale);
        v[0] = 1.0;
        (Self { offset, v, tau }, beta)
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn end(&self) -> usize {
        self.offset + self.v.len()
    }

    /// `H x` on a full-length vector.
    pub fn apply_vec(&self, x: &mut [f64]) {
        if self.tau == 0.0 {
            return;
        }
        let seg = &mut x[self.offset..self.end()];
        let t = self.tau * dot(&self.v, seg);
        axpy(-t, &self.v, seg);
    }

    /// `H M` restricted to columns `cols`.
    pub(crate) fn apply_left(&self, m: &mut DenseMatrix, cols: std::ops::Range<usize>) {
        if self.tau == 0.0 {
            return;
        }
        for c in cols {
            self.apply_vec(m.col_mut(c));
        }
    }

    /// `M H` restricted to rows `rows`.
    pub(crate) fn apply_right(&self, m: &mut DenseMatrix, rows: std::ops::Range<usize>) {
        if self.tau == 0.0 {
            return;
        }
        let mut u = vec![0.0; rows.len()];
        for (k, &vk) in self.v.iter().enumerate() {
            let col = &m.col(self.offset + k)[rows.clone()];
            axpy(vk, col, &mut u);
        }
        for (k, &vk) in self.v.iter().enumerate() {
            let col = &mut m.col_mut(self.offset + k)[rows.clone()];
            axpy(-self.tau * vk, &u, col);
        }
    }
}

/// Aggregated block `I - V T Vᵀ` of consecutive reflectors, with `V` stored
/// densely over the row span `lo .. lo + V.rows()`.
#[derive(Debug, Clone)]
pub(crate) struct WyBlock {
    lo: usize,
    v: DenseMatrix,
    t: DenseMatrix,
}

impl WyBlock {
    /// Forward, columnwise block form of `H₀ H₁ ⋯ H_{b-1}`.
    pub(crate) fn new(reflectors: &[Reflector]) -> Self {
        let b = reflectors.len();
        let lo = reflectors.iter().map(|r| r.offset).min().unwrap_or(0);
        let hi = reflectors.iter().map(Reflector::end).max().unwrap_or(lo);
        let mut v = DenseMatrix::zeros(hi - lo, b);
        for (p, r) in reflectors.iter().enumerate() {
            let start = r.offset - lo;
            v.col_mut(p)[start..start + r.len()].copy_from_slice(&r.v);
        }
        let mut t = DenseMatrix::zeros(b, b);
        for i in 0..b {
            let tau = reflectors[i].tau;
            t[(i, i)] = tau;
            if tau == 0.0 || i == 0 {
                continue;
            }
            // t[0..i, i] = -tau * T[0..i, 0..i] * (V[:, 0..i]ᵀ v_i)
            let vi = v.col(i);
            let w: Vec<f64> = (0..i).map(|p| dot(v.col(p), vi)).collect();
            for r in 0..i {
                let mut s = 0.0;
                for c in r..i {
                    s += t[(r, c)] * w[c];
                }
                t[(r, i)] = -tau * s;
            }
        }
        Self { lo, v, t }
    }

    pub(crate) fn rows(&self) -> std::ops::Range<usize> {
        self.lo..self.lo + self.v.rows()
    }

    // w := op(T) w  for a b-vector
    #[allow(clippy::needless_range_loop)]
    fn t_apply(&self, w: &mut [f64], transpose: bool) {
        let b = w.len();
        if transpose {
            for i in (0..b).rev() {
                let mut s = 0.0;
                for r in 0..=i {
                    s += self.t[(r, i)] * w[r];
                }
                w[i] = s;
            }
        } else {
            for i in 0..b {
                let mut s = 0.0;
                for c in i..b {
                    s += self.t[(i, c)] * w[c];
                }
                w[i] = s;
            }
        }
    }

    /// `Z := (I - V op(T) Vᵀ) Z` over columns `cols`.
    pub(crate) fn apply_left(
        &self,
        z: &mut DenseMatrix,
        transpose: bool,
        cols: std::ops::Range<usize>,
    ) {
        let span = self.rows();
        let b = self.v.cols();
        let mut w = vec![0.0; b];
        for c in cols {
            let zc = &mut z.col_mut(c)[span.clone()];
            for (p, wp) in w.iter_mut().enumerate() {
                *wp = dot(self.v.col(p), zc);
            }
            self.t_apply(&mut w, transpose);
            for (p, &wp) in w.iter().enumerate() {
                if wp != 0.0 {
                    axpy(-wp, self.v.col(p), zc);
                }
            }
        }
    }

    /// `Z := Z (I - V op(T) Vᵀ)` over rows `rows`.
    pub(crate) fn apply_right(
        &self,
        z: &mut DenseMatrix,
        transpose: bool,
        rows: std::ops::Range<usize>,
    ) {
        let b = self.v.cols();
        let len = rows.len();
        // W = Z[rows, span] V
        let mut w = DenseMatrix::zeros(len, b);
        for p in 0..b {
            let vp = self.v.col(p);
            let wp = w.col_mut(p);
            for (k, &vk) in vp.iter().enumerate() {
                if vk != 0.0 {
                    axpy(vk, &z.col(self.lo + k)[rows.clone()], wp);
                }
            }
        }
        // W := W op(T), i.e. each row r of W is replaced by op(T)ᵀ applied to it
        let mut row = vec![0.0; b];
        for r in 0..len {
            for (p, x) in row.iter_mut().enumerate() {
                *x = w[(r, p)];
            }
            self.t_apply(&mut row, !transpose);
            for (p, &x) in row.iter().enumerate() {
                w[(r, p)] = x;
            }
        }
        // Z[rows, span] -= W Vᵀ
        for k in 0..self.v.rows() {
            let zc = &mut z.col_mut(self.lo + k)[rows.clone()];
            for p in 0..b {
                let vk = self.v[(k, p)];
                if vk != 0.0 {
                    axpy(-vk, w.col(p), zc);
                }
            }
        }
    }
}

/// Where a reflector set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectorLayout {
    /// Reflectors of direct tridiagonalization; reflector `i` acts on `i+1..n`.
    TridiagImplicit,
    /// Panel reflectors of the dense-to-band reduction.
    BandStage,
}

/// Orthogonal `Q = H₀ H₁ ⋯ H_{k-1}` held as its reflectors.
#[derive(Debug, Clone)]
pub struct ReflectorSet {
    n: usize,
    reflectors: Vec<Reflector>,
    block_size: usize,
    layout: ReflectorLayout,
}

pub const DEFAULT_WY_BLOCK: usize = 32;

impl ReflectorSet {
    pub fn new(n: usize, layout: ReflectorLayout) -> Self {
        Self {
            n,
            reflectors: Vec::new(),
            block_size: DEFAULT_WY_BLOCK,
            layout,
        }
    }

    pub fn with_block_size(mut self, block_size: usize) -> Self {
        self.block_size = block_size.max(1);
        self
    }

    pub fn push(&mut self, r: Reflector) {
        debug_assert!(r.end() <= self.n);
        self.reflectors.push(r);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.reflectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reflectors.is_empty()
    }

    pub fn reflectors(&self) -> &[Reflector] {
        &self.reflectors
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn layout(&self) -> ReflectorLayout {
        self.layout
    }

    fn blocks(&self) -> Vec<WyBlock> {
        self.reflectors
            .chunks(self.block_size)
            .map(WyBlock::new)
            .collect()
    }

    /// Explicit `Q`.
    pub fn to_dense(&self) -> DenseMatrix {
        apply_q(self, &DenseMatrix::identity(self.n), Side::Left, false)
            .expect("identity has matching shape")
    }
}

/// Multiplies `Z` by the implicit `Q` (or `Qᵀ` when `transpose`) from `side`,
/// one WY block at a time.
pub fn apply_q(
    r: &ReflectorSet,
    z: &DenseMatrix,
    side: Side,
    transpose: bool,
) -> Result<DenseMatrix> {
    let mut out = z.clone();
    apply_q_in_place(r, &mut out, side, transpose)?;
    Ok(out)
}

pub fn apply_q_in_place(
    r: &ReflectorSet,
    z: &mut DenseMatrix,
    side: Side,
    transpose: bool,
) -> Result<()> {
    match side {
        Side::Left => check_dim("apply_q (rows)", r.n, z.rows())?,
        Side::Right => check_dim("apply_q (cols)", r.n, z.cols())?,
    }
    if r.is_empty() {
        return Ok(());
    }
    let blocks = r.blocks();
    let (rows, cols) = (z.rows(), z.cols());
    // Q Z and Z Qᵀ consume blocks last-to-first; Qᵀ Z and Z Q first-to-last.
    let reverse = matches!((side, transpose), (Side::Left, false) | (Side::Right, true));
    let order: Box<dyn Iterator<Item = &WyBlock>> = if reverse {
        Box::new(blocks.iter().rev())
    } else {
        Box::new(blocks.iter())
    };
    for b in order {
        match side {
            Side::Left => b.apply_left(z, transpose, 0..cols),
            Side::Right => b.apply_right(z, transpose, 0..rows),
        }
    }
    Ok(())
}
