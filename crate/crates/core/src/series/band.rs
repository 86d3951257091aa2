//! Bands `σ` of the fattened diagonal annulus.

use crate::error::{Error, Result};

/// A width `σ ∈ (0,1)` with its annulus radius `ρ = 1/(σ+√(1+σ²))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Band {
    pub sigma: f64,
    pub rho: f64,
}

impl Band {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma < 1.0) {
            return Err(Error::Usage(format!("band width σ = {sigma} not in (0,1)")));
        }
        Ok(Band {
            sigma,
            rho: 1.0 / (sigma + (1.0 + sigma * sigma).sqrt()),
        })
    }

    /// Band used for tail bookkeeping when no other band is specified.
    pub fn reference() -> Self {
        Band::new(0.1).expect("valid constant")
    }

    /// Half-width of the annulus in `log|ζ|`, equal to `asinh σ`.
    pub fn log_width(&self) -> f64 {
        -self.rho.ln()
    }

    /// Upper bound of `|1 − ζη|` on the fattened diagonal: `4σ/ρ`.
    pub fn transverse_bound(&self) -> f64 {
        4.0 * self.sigma / self.rho
    }
}
