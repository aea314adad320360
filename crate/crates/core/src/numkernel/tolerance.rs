use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerance policy shared by every routine.
///
/// * `rtol` scales with the norm of the operator under test.
/// * `atol` is an absolute floor, used when the relative cutoff would vanish.
/// * `cond_max` bounds the condition number of an eigenvector matrix before a
///   matrix is declared numerically non-diagonalizable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
    pub cond_max: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rtol: 1e-8,
            atol: 1e-12,
            cond_max: 1e12,
        }
    }
}

impl Tolerance {
    pub fn new(rtol: f64, atol: f64, cond_max: f64) -> Result<Self> {
        let tol = Self {
            rtol,
            atol,
            cond_max,
        };
        tol.validate()?;
        Ok(tol)
    }

    /// Default policy with a different relative tolerance.
    pub fn with_rtol(rtol: f64) -> Result<Self> {
        Self::new(rtol, Self::default().atol, Self::default().cond_max)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rtol", self.rtol),
            ("atol", self.atol),
            ("cond_max", self.cond_max),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// `max(atol, rtol·scale)`: eigenvalues closer than this are one cluster.
    pub fn cluster(&self, scale: f64) -> f64 {
        self.atol.max(self.rtol * scale)
    }

    /// Singular-value cutoff for numerical rank of a `rows × cols` matrix.
    pub fn rank_cutoff(&self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        self.atol
            .max(rows.max(cols) as f64 * self.rtol * sigma_max)
    }
}
