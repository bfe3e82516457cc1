//! Density-matrix elements of two detectors and the assembled state.
//!
//! Lengths are in units of the switching width `T`; every element is quoted
//! per unit `λ̄²`.

mod laa;
mod offdiag;
mod state;

use serde::{Deserialize, Serialize};

pub use laa::{laa_closed, laa_numeric, laa_numeric_route, laa_special, LaaRoute, CONTOUR_THRESHOLD};
pub use offdiag::{
    lab, lab_contour_coefficients, lab_route, lab_routes, m_element, m_element_with, m_pm, LabReport, LabRoute,
    MRoute,
};
pub use state::{rho_ab, TwoQubitState};

use crate::correlator::unitarity_warning;
use crate::distquad::QuadConfig;
use crate::error::{domain, Result};
use crate::numkernel::{PrecisionConfig, ScaledComplex, ScaledReal};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolParams {
    pub delta_dim: f64,
    pub t_omega: f64,
    pub lbar: f64,
    pub dbar: f64,
    pub lambda_bar: f64,
    /// Spacetime dimension, consulted only for the unitarity warning.
    pub d: Option<u32>,
}

impl Default for ProtocolParams {
    fn default() -> Self {
        Self { delta_dim: 1.0, t_omega: 10.0, lbar: 10.0, dbar: 0.0, lambda_bar: 1e-3, d: None }
    }
}

impl ProtocolParams {
    pub fn new(delta_dim: f64, t_omega: f64, lbar: f64, dbar: f64) -> Self {
        Self { delta_dim, t_omega, lbar, dbar, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta_dim > 0.0) || !self.delta_dim.is_finite() {
            return domain(format!("scaling dimension must be positive, got {}", self.delta_dim));
        }
        if !(self.t_omega > 0.0) || !self.t_omega.is_finite() {
            return domain(format!("TΩ must be positive, got {}", self.t_omega));
        }
        if !(self.lbar >= 0.0) || !self.lbar.is_finite() {
            return domain(format!("L/T must be non-negative, got {}", self.lbar));
        }
        if !self.dbar.is_finite() {
            return domain(format!("δ/T must be finite, got {}", self.dbar));
        }
        if !(self.lambda_bar >= 0.0) || !self.lambda_bar.is_finite() {
            return domain(format!("λ̄ must be non-negative, got {}", self.lambda_bar));
        }
        Ok(())
    }

    /// Soft checks: unitarity bound and smallness of `λ̄² L_AA`.
    pub fn warnings(&self, laa: Option<f64>) -> Vec<String> {
        let mut w = Vec::new();
        if let Some(d) = self.d {
            w.extend(unitarity_warning(self.delta_dim, d));
        }
        if let Some(l) = laa {
            let x = self.lambda_bar * self.lambda_bar * l;
            if x > 0.1 {
                w.push(format!("λ̄²·L_AA = {x:.3e} exceeds 0.1; second-order state is unreliable"));
            }
        }
        w
    }
}

/// All second-order elements per unit `λ̄²`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixElements {
    pub laa: ScaledReal,
    pub lab: ScaledComplex,
    pub m: ScaledComplex,
    pub m_plus: ScaledComplex,
    pub m_minus: ScaledComplex,
}

impl MatrixElements {
    pub fn compute(p: &ProtocolParams, prec: &PrecisionConfig, cfg: &QuadConfig) -> Result<Self> {
        let laa = laa_closed(p, prec)?;
        let lab = lab(p, cfg)?;
        let m = m_element(p, cfg)?;
        let (m_plus, m_minus) = m_pm(p, cfg)?;
        Ok(Self { laa, lab, m, m_plus, m_minus })
    }

    /// `|M⁺ + M⁻ − M| / |M|`.
    pub fn split_defect(&self) -> f64 {
        let sum = self.m_plus + self.m_minus;
        let d = (sum - self.m).abs();
        (d.ln_abs() - self.m.ln_abs()).exp()
    }
}
