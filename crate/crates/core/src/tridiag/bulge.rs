use crate::error::Result;
use crate::matcore::{DenseMatrix, SymTridiagonal};
use crate::tridiag::band::BandReductionResult;
use crate::tridiag::householder::{Reflector, WyBlock};
use crate::tridiag::{QFactor, TridiagResult};

/// Band-to-tridiagonal reduction by bulge chasing, accumulating `Q₂` into `Q₁`.
///
/// Sweep `j` annihilates column `j` below the subdiagonal with a reflector of
/// length `w`, then chases the resulting bulge down the band: each further
/// reflector clears the first column of the bulge left by the previous one.
/// Reflectors within a sweep act on disjoint windows.
///
/// Updates to `Q` are delayed and applied `w` sweeps at a time. Reflector `k`
/// of sweep `j + 1` commutes with reflectors `0..k` of sweep `j`, so a batch
/// factors into groups by chain position, each group spanning fewer than `2w`
/// rows. Groups are applied as WY blocks, deepest chain position first.
pub fn band_to_tridiagonal(r: &BandReductionResult) -> Result<TridiagResult> {
    let band = &r.w;
    let n = band.n();
    let w = band.w();
    let mut q = r.q1.clone();

    if w <= 1 || n <= 2 {
        let diag = (0..n).map(|i| band.get(i, i)).collect();
        let off = (1..n).map(|i| band.get(i, i - 1)).collect();
        return Ok(TridiagResult {
            t: SymTridiagonal::new(diag, off)?,
            q: QFactor::Explicit(q),
        });
    }

    let mut a = band.materialize();
    let margin = 2 * w + 1;
    let mut pending: Vec<Vec<Reflector>> = Vec::new();

    for j in 0..n - 2 {
        let mut col = j;
        let mut p = j + 1;
        let mut k = 0;
        while p < n {
            let qend = (p + w - 1).min(n - 1);
            if qend <= p {
                break;
            }
            let (h, beta) = Reflector::annihilating(p, &a.col(col)[p..=qend]);
            {
                let c = a.col_mut(col);
                c[p] = beta;
                c[p + 1..=qend].iter_mut().for_each(|x| *x = 0.0);
            }
            a[(col, p)] = beta;
            for i in p + 1..=qend {
                a[(col, i)] = 0.0;
            }
            if h.tau != 0.0 {
                let lo = p.saturating_sub(margin);
                let hi = (qend + margin + 1).min(n);
                h.apply_left(&mut a, lo..col);
                h.apply_left(&mut a, col + 1..hi);
                h.apply_right(&mut a, lo..col);
                h.apply_right(&mut a, col + 1..hi);
            }
            if pending.len() <= k {
                pending.resize_with(k + 1, Vec::new);
            }
            pending[k].push(h);

            col = p;
            p = qend + 1;
            k += 1;
        }
        if (j + 1) % w == 0 {
            flush(&mut pending, &mut q);
        }
    }
    flush(&mut pending, &mut q);

    let diag = (0..n).map(|i| a[(i, i)]).collect();
    let off = (0..n - 1).map(|i| a[(i + 1, i)]).collect();
    Ok(TridiagResult {
        t: SymTridiagonal::new(diag, off)?,
        q: QFactor::Explicit(q),
    })
}

fn flush(pending: &mut [Vec<Reflector>], q: &mut DenseMatrix) {
    let rows = q.rows();
    for group in pending.iter_mut().rev() {
        if group.iter().any(|h| h.tau != 0.0) {
            WyBlock::new(group).apply_right(q, false, 0..rows);
        }
        group.clear();
    }
}
