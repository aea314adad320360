use serde::Serialize;

/// A residual together with the threshold it was judged against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Check {
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `residual <= threshold`. A NaN residual never passes.
    pub fn new(residual: f64, threshold: f64) -> Self {
        Self {
            residual,
            threshold,
            pass: residual <= threshold,
        }
    }
}
