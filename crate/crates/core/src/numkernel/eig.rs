//! Complex Schur decomposition and eigenvectors of general square matrices.
//!
//! Householder reduction to Hessenberg form followed by implicit single-shift
//! QR sweeps (Wilkinson shifts, exceptional shifts every tenth iteration on a
//! stalled window). Eigenvectors are back-substituted from the triangular
//! factor and mapped back through the accumulated unitary.

use nalgebra::DMatrix;

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

const MAX_ITER_PER_EIGENVALUE: usize = 60;

/// Eigenvalues and unit-norm right eigenvectors (as columns).
///
/// The order of eigenvalues is whatever the QR iteration produced; callers
/// that need a layout must sort explicitly.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<C64>,
    pub vectors: ComplexMatrix,
}

/// Unitary `q` and upper-triangular `t` with `m = q·t·q†`.
#[derive(Debug, Clone)]
pub struct Schur {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
}

fn givens(x: C64, y: C64) -> (f64, C64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, ZERO);
    }
    if ax == 0.0 {
        return (0.0, ONE);
    }
    let r = ax.hypot(ay);
    (ax / r, (x / ax) * y.conj() / r)
}

#[inline]
fn rotate_rows(h: &mut DMatrix<C64>, i: usize, c: f64, s: C64, cols: std::ops::Range<usize>) {
    for k in cols {
        let a = h[(i, k)];
        let b = h[(i + 1, k)];
        h[(i, k)] = a * c + s * b;
        h[(i + 1, k)] = -s.conj() * a + b * c;
    }
}

#[inline]
fn rotate_cols(h: &mut DMatrix<C64>, j: usize, c: f64, s: C64, rows: std::ops::Range<usize>) {
    for k in rows {
        let a = h[(k, j)];
        let b = h[(k, j + 1)];
        h[(k, j)] = a * c + s.conj() * b;
        h[(k, j + 1)] = -s * a + b * c;
    }
}

fn hessenberg(h: &mut DMatrix<C64>, q: &mut DMatrix<C64>) {
    let n = h.nrows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let len = n - k - 1;
        let x: Vec<C64> = (0..len).map(|i| h[(k + 1 + i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 { ONE } else { x[0] / x[0].norm() };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H ← P·H on rows k+1.., P = I − 2vv†
        for j in k..n {
            let mut s = ZERO;
            for i in 0..len {
                s += v[i].conj() * h[(k + 1 + i, j)];
            }
            for i in 0..len {
                h[(k + 1 + i, j)] -= v[i] * s * 2.0;
            }
        }
        // H ← H·P and Q ← Q·P on columns k+1..
        for mat in [&mut *h, &mut *q] {
            for r in 0..n {
                let mut s = ZERO;
                for i in 0..len {
                    s += mat[(r, k + 1 + i)] * v[i];
                }
                for i in 0..len {
                    mat[(r, k + 1 + i)] -= s * v[i].conj() * 2.0;
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let p = (a - d) * 0.5;
    let bc = b * c;
    let disc = (p * p + bc).sqrt();
    let plus = p + disc;
    let minus = p - disc;
    let den = if plus.norm() >= minus.norm() { plus } else { minus };
    if den.norm() == 0.0 {
        d
    } else {
        d - bc / den
    }
}

/// Complex Schur decomposition.
pub fn schur(m: &ComplexMatrix) -> Result<Schur> {
    let n = m.ensure_square()?;
    let mut h = m.as_dmatrix().clone();
    let mut q = DMatrix::<C64>::identity(n, n);
    hessenberg(&mut h, &mut q);

    let eps = f64::EPSILON;
    let scale = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut hi = n.saturating_sub(1);
    let mut iter = 0usize;
    let mut total = 0usize;
    let budget = MAX_ITER_PER_EIGENVALUE * n.max(1);

    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == 0.0 {
                s = scale;
            }
            if h[(l, l - 1)].norm() <= eps * s || h[(l, l - 1)].norm() < f64::MIN_POSITIVE {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > MAX_ITER_PER_EIGENVALUE || total > budget {
            return Err(Error::NumericalFailure(format!(
                "QR iteration did not converge (window {l}..={hi}, {total} sweeps)"
            )));
        }
        let shift = if iter % 10 == 0 {
            h[(hi, hi)] + h[(hi, hi - 1)].norm() * 0.75
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        for k in l..hi {
            let (x, y) = if k == l {
                (h[(l, l)] - shift, h[(l + 1, l)])
            } else {
                (h[(k, k - 1)], h[(k + 1, k - 1)])
            };
            let (c, s) = givens(x, y);
            let start = if k > l { k - 1 } else { k };
            rotate_rows(&mut h, k, c, s, start..n);
            if k > l {
                h[(k + 1, k - 1)] = ZERO;
            }
            rotate_cols(&mut h, k, c, s, 0..(k + 3).min(hi + 1));
            rotate_cols(&mut q, k, c, s, 0..n);
        }
    }

    // Clear the strictly lower part left at rounding level.
    for j in 0..n {
        for i in j + 1..n {
            h[(i, j)] = ZERO;
        }
    }
    Ok(Schur {
        q: ComplexMatrix::wrap(q),
        t: ComplexMatrix::wrap(h),
    })
}

// Rotate v so that its largest-magnitude component is real and positive.
pub(crate) fn normalize_phase(v: &mut [C64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return;
    }
    let mut best = 0;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > v[best].norm() {
            best = i;
        }
    }
    let phase = v[best].conj() / v[best].norm();
    for z in v.iter_mut() {
        *z = *z * phase / norm;
    }
}

/// Eigenvalues and right eigenvectors of a square matrix.
///
/// Each eigenvector has unit 2-norm and its largest component real positive,
/// so the output is deterministic for a fixed input.
pub fn eig(m: &ComplexMatrix) -> Result<Eigen> {
    let n = m.ensure_square()?;
    let Schur { q, t } = schur(m)?;
    let t = t.as_dmatrix();
    let tnorm = t.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let small = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE);

    let values: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();
    let mut vectors = DMatrix::<C64>::zeros(n, n);
    for k in 0..n {
        let mut y = vec![ZERO; n];
        y[k] = ONE;
        for j in (0..k).rev() {
            let mut s = ZERO;
            for i in j + 1..=k {
                s += t[(j, i)] * y[i];
            }
            let mut den = t[(j, j)] - values[k];
            if den.norm() < small {
                den = C64::new(small, 0.0);
            }
            y[j] = -s / den;
            let big = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if big > 1e100 {
                for z in y.iter_mut() {
                    *z /= big;
                }
            }
        }
        let mut v: Vec<C64> = (0..n)
            .map(|r| (0..=k).map(|i| q[(r, i)] * y[i]).sum())
            .collect();
        normalize_phase(&mut v);
        for (r, z) in v.into_iter().enumerate() {
            vectors[(r, k)] = z;
        }
    }
    Ok(Eigen {
        values,
        vectors: ComplexMatrix::wrap(vectors),
    })
}
