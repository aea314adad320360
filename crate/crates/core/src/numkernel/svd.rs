use nalgebra::{DMatrix, SVD};

use super::matrix::{ComplexMatrix, C64};
use super::tolerance::Tolerance;

struct SortedSvd {
    sigma: Vec<f64>,
    // Right singular vectors as columns, ordered like `sigma`. Square, cols × cols.
    v: DMatrix<C64>,
}

// Full right-singular basis. Wide inputs are padded with zero rows so the
// nalgebra thin SVD still yields all `cols` right singular vectors.
fn sorted_svd(m: &ComplexMatrix) -> SortedSvd {
    let (rows, cols) = m.shape();
    let work = if rows < cols {
        let mut padded = DMatrix::zeros(cols, cols);
        padded.view_mut((0, 0), (rows, cols)).copy_from(m.as_dmatrix());
        padded
    } else {
        m.as_dmatrix().clone()
    };
    let svd = SVD::new(work, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let sigma = order.iter().map(|&i| svd.singular_values[i]).collect();
    let v = DMatrix::from_fn(cols, order.len(), |r, c| v_t[(order[c], r)].conj());
    SortedSvd { sigma, v }
}

/// Singular values in descending order (`min(rows, cols)` of them).
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    let mut s = SVD::new(m.as_dmatrix().clone(), false, false)
        .singular_values
        .as_slice()
        .to_vec();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    s
}

/// `σ_max / σ_min`; infinite for singular or non-square input.
pub fn condition_number(m: &ComplexMatrix) -> f64 {
    if !m.is_square() || m.rows() == 0 {
        return f64::INFINITY;
    }
    let s = singular_values(m);
    let min = *s.last().unwrap();
    if min == 0.0 {
        f64::INFINITY
    } else {
        s[0] / min
    }
}

fn cutoff_for(m: &ComplexMatrix, sigma: &[f64], tol: &Tolerance) -> f64 {
    tol.rank_cutoff(m.rows(), m.cols(), sigma.first().copied().unwrap_or(0.0))
}

/// Numerical rank: singular values above `max(atol, max(rows, cols)·rtol·σ_max)`.
pub fn rank(m: &ComplexMatrix, tol: &Tolerance) -> usize {
    let sigma = singular_values(m);
    let cut = cutoff_for(m, &sigma, tol);
    sigma.iter().filter(|&&s| s > cut).count()
}

/// Orthonormal basis of the numerical kernel, one column per null direction.
///
/// Uses the same cutoff as [`rank`], so `rank + kernel columns = cols` always.
pub fn kernel_basis(m: &ComplexMatrix, tol: &Tolerance) -> ComplexMatrix {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return ComplexMatrix::zeros(0, 0);
    }
    if rows == 0 {
        return ComplexMatrix::identity(cols);
    }
    let svd = sorted_svd(m);
    // Only the first min(rows, cols) values are genuine; padding contributes zeros.
    let genuine = &svd.sigma[..rows.min(cols)];
    let cut = cutoff_for(m, genuine, tol);
    let r = genuine.iter().filter(|&&s| s > cut).count();
    ComplexMatrix::wrap(svd.v.columns(r, cols - r).into_owned())
}

/// The `count` right singular vectors with the smallest singular values, and
/// the largest of those singular values.
pub(crate) fn smallest_right_singular(m: &ComplexMatrix, count: usize) -> (ComplexMatrix, f64) {
    let cols = m.cols();
    let svd = sorted_svd(m);
    let start = cols - count;
    let worst = if count == 0 { 0.0 } else { svd.sigma[start] };
    (
        ComplexMatrix::wrap(svd.v.columns(start, count).into_owned()),
        worst,
    )
}

/// Orthonormal basis for the column space of `m` (rank decided by `tol`).
pub fn range_basis(m: &ComplexMatrix, tol: &Tolerance) -> ComplexMatrix {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return ComplexMatrix::zeros(rows, 0);
    }
    let adj = m.adjoint();
    // Left singular vectors of m are right singular vectors of m†.
    let svd = sorted_svd(&adj);
    let genuine = &svd.sigma[..rows.min(cols)];
    let cut = cutoff_for(m, genuine, tol);
    let r = genuine.iter().filter(|&&s| s > cut).count();
    ComplexMatrix::wrap(svd.v.columns(0, r).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let z = ComplexMatrix::zeros(2, 2);
        let tol = Tolerance::default();
        assert_eq!(rank(&z, &tol), 0);
        let k = kernel_basis(&z, &tol);
        assert_eq!(k.shape(), (2, 2));
        assert!((k.adjoint() * &k).approx_eq(&ComplexMatrix::identity(2), 1e-14));
    }

    #[test]
    fn diag_zero_one_kernel_is_first_axis() {
        let m = ComplexMatrix::from_real_diagonal(&[0.0, 1.0]);
        let k = kernel_basis(&m, &Tolerance::default());
        assert_eq!(k.cols(), 1);
        assert!((k[(0, 0)].norm() - 1.0).abs() < 1e-14);
        assert!(k[(1, 0)].norm() < 1e-14);
    }

    #[test]
    fn identity_and_outer_product_rank() {
        let tol = Tolerance::default();
        assert_eq!(rank(&ComplexMatrix::identity(3), &tol), 3);
        let outer = ComplexMatrix::outer(&[c(1.0, 2.0), c(0.5, 0.0), c(0.0, -1.0)], &[c(3.0, 0.0), c(0.0, 1.0)]);
        assert_eq!(rank(&outer, &tol), 1);
        assert_eq!(kernel_basis(&outer, &tol).cols(), 1);
    }

    #[test]
    fn wide_matrix_kernel_uses_all_columns() {
        // 2x4 with rank 2: kernel of dimension 2 must still be found.
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 0.0, 2.0, 0.0], &[0.0, 1.0, 0.0, 3.0]]).unwrap();
        let tol = Tolerance::default();
        let k = kernel_basis(&m, &tol);
        assert_eq!(k.cols(), 2);
        assert!((&m * &k).max_abs() < 1e-14);
        assert_eq!(rank(&m, &tol) + k.cols(), 4);
    }

    #[test]
    fn empty_shapes() {
        let tol = Tolerance::default();
        let m = ComplexMatrix::zeros(0, 3);
        assert_eq!(rank(&m, &tol), 0);
        assert_eq!(kernel_basis(&m, &tol).cols(), 3);
        let m = ComplexMatrix::zeros(3, 0);
        assert_eq!(kernel_basis(&m, &tol).cols(), 0);
    }

    #[test]
    fn range_basis_spans_columns() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0], &[0.0, 0.0]]).unwrap();
        let r = range_basis(&m, &Tolerance::default());
        assert_eq!(r.cols(), 1);
        let proj = &r * &r.adjoint();
        assert!((&proj * &m - &m).max_abs() < 1e-13);
    }
}
