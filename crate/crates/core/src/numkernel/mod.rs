//! Dense complex linear algebra: matrices, eigendecomposition, SVD-based rank
//! and kernels, all under one explicit [`Tolerance`] policy.

mod eig;
mod hermitian;
mod matrix;
mod svd;
mod tolerance;

pub use eig::{eig, schur, Eigen, Schur};
pub(crate) use eig::normalize_phase;
pub use hermitian::hermitian_eigenvalues;
pub use matrix::{ComplexMatrix, C64};
pub use svd::{condition_number, kernel_basis, range_basis, rank, singular_values};
pub(crate) use svd::smallest_right_singular;
pub use tolerance::Tolerance;
