use thiserror::Error;

/// Failures reported by the numerical and structural routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("matrix is not diagonalizable: {0}")]
    NonDiagonalizable(String),

    #[error("spectrum is not real or conjugate-paired: {0}")]
    NotPseudoHermitian(String),

    #[error("operation requires a real spectrum")]
    RealSpectrumRequired,

    #[error("invalid metric operator: {0}")]
    InvalidEta(String),

    #[error("spectra are not isospectral: {0}")]
    NotIsospectral(String),

    #[error("two-level Hamiltonian is degenerate (E = 0)")]
    DegenerateTwoLevel,

    #[error("two-level Hamiltonian has a non-real determinant (E = {re} + {im}i)")]
    NonRealDeterminant { re: f64, im: f64 },

    #[error("invalid sign assignment: {0}")]
    InvalidSigns(String),

    #[error("matrix is singular")]
    Singular,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
