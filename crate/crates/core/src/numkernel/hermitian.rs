use nalgebra::SymmetricEigen;

use super::matrix::ComplexMatrix;

/// Eigenvalues of the Hermitian part `(M + M†)/2`, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    if m.rows() == 0 {
        return Vec::new();
    }
    let sym = (m.as_dmatrix() + m.as_dmatrix().adjoint()) * nalgebra::Complex::new(0.5, 0.0);
    let mut values: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    values
}
