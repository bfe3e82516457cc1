//! Singular and distributional integration on the real line.

mod endpoint;
pub mod gk;
mod oracle;
mod pairing;
mod singular;
mod testfn;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

pub use endpoint::{endpoint_regularized_quad, weighted_line_quad, Region, RegionWeights};
pub use oracle::{eps_extrapolation_oracle, OracleResult};
pub use pairing::{fp_pairing, pv_pairing, sokhotski_pairing, Side};
pub(crate) use singular::{integrate_with_sites, Site};
pub use singular::{window_integral, PhaseWeight, SingularPoint};
pub use testfn::{taylor_coeffs, Derivative, FnTest, GaussianPhase, TestFunction, MAX_FD_ORDER};

use crate::error::{domain, Result};
use crate::numkernel::ScaledComplex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    /// Tolerance relative to `∫|f|`.
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Gaussian truncation radius in units of `√2·width`.
    pub tail_sigmas: f64,
    pub max_subdivisions: usize,
    /// Half-width of the Taylor window around a singular point.
    pub endpoint_window: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 1e-10, tail_sigmas: 8.0, max_subdivisions: 2000, endpoint_window: 0.1 }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.endpoint_window > 0.0;
        if !positive || self.max_subdivisions == 0 {
            return domain(format!("quadrature tolerances and budgets must be positive: {self:?}"));
        }
        if !(self.tail_sigmas >= 6.0) {
            return domain(format!("tail_sigmas must be at least 6, got {}", self.tail_sigmas));
        }
        Ok(())
    }
}

/// `∫ f(v) dv` over the Gaussian window around `center`; `f` must be regular there.
pub fn gauss_window_quad(
    f: &(dyn Fn(f64) -> C64 + Sync),
    center: f64,
    width: f64,
    cfg: &QuadConfig,
) -> Result<C64> {
    cfg.validate()?;
    if !(width > 0.0) {
        return domain(format!("window width must be positive, got {width}"));
    }
    let r = cfg.tail_sigmas * std::f64::consts::SQRT_2 * width;
    Ok(gk::integrate(f, &[center - r, center, center + r], cfg)?.value)
}

/// `∫ e^{−(v−c)²/(2w²) − iωv} h(v) dv` for `h` analytic in the strip down to
/// `Im v = −ω w²`, evaluated on the shifted contour so the `e^{−ω²w²/2}`
/// factor is carried as a log scale instead of emerging from cancellation.
pub fn gauss_window_quad_shifted(
    h: &(dyn Fn(C64) -> C64 + Sync),
    center: f64,
    width: f64,
    omega: f64,
    cfg: &QuadConfig,
) -> Result<ScaledComplex> {
    let w2 = width * width;
    let shift = C64::new(center, -omega * w2);
    let f = |u: f64| (-u * u / (2.0 * w2)).exp() * h(shift + u);
    let inner = gauss_window_quad(&f, 0.0, width, cfg)?;
    let phase = C64::from_polar(1.0, -omega * center);
    Ok(ScaledComplex::new(inner * phase, -0.5 * omega * omega * w2))
}
