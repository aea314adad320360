//! Pseudo-Hermitian Hamiltonians and pseudo-supersymmetry for finite-dimensional,
//! diagonalizable operators.

pub mod check;
pub mod cli;
pub mod error;
pub mod intertwiner;
pub mod numkernel;
pub mod pseudoherm;
pub mod psusy;
pub mod spectral;
pub mod twolevel;

pub use check::Check;
pub use error::{Error, Result};
pub use numkernel::{ComplexMatrix, Tolerance, C64};
