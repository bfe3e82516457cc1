//! Special functions and precision handling.

mod erf;
mod gamma;
mod hyp1f1;
mod hyp2f1;
mod scaled;
pub mod xfloat;

use serde::{Deserialize, Serialize};

pub use erf::{erfcx, erfcx_big};
pub use gamma::{cospi, gamma, gamma_big, rgamma, sinpi};
pub use hyp1f1::{hyp1f1, hyp1f1_asym, hyp1f1_big, hyp1f1_direct, AsymExpansion, HypergeoParams};
pub use hyp2f1::hyp2f1_series;
pub use scaled::{ScaledComplex, ScaledReal};
pub use xfloat::XFloat;

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    /// Decimal digits carried by extended-precision evaluations.
    pub working_digits: u32,
    pub target_rel_tol: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig { working_digits: 60, target_rel_tol: 1e-12 }
    }
}

impl PrecisionConfig {
    pub fn new(working_digits: u32, target_rel_tol: f64) -> Result<Self> {
        let c = PrecisionConfig { working_digits, target_rel_tol };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.working_digits < 16 {
            return domain(format!("working_digits must be >= 16, got {}", self.working_digits));
        }
        if !(self.target_rel_tol > 0.0) {
            return domain("target_rel_tol must be positive");
        }
        Ok(())
    }

    pub fn bits(&self) -> usize {
        xfloat::bits_for_digits(self.working_digits)
    }
}
