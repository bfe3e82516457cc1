//! Principal value, Hadamard finite part and boundary-value pairings at a pole.

use num_complex::Complex64 as C64;

use super::singular::{integrate_with_sites, PhaseWeight, SingularPoint, Site};
use super::testfn::{taylor_coeffs, Derivative, TestFunction};
use super::QuadConfig;
use crate::error::{domain, Result};

/// Sign of the imaginary shift in `(x − pole ± iε)^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

fn support(phi: &dyn TestFunction, pole: f64, cfg: &QuadConfig) -> (f64, f64) {
    phi.window(cfg.tail_sigmas).unwrap_or((pole - 50.0 * phi.scale(), pole + 50.0 * phi.scale()))
}

fn window(phi: &dyn TestFunction, cfg: &QuadConfig) -> f64 {
    let w = cfg.endpoint_window * phi.scale();
    if phi.max_order() == usize::MAX {
        w
    } else {
        w.min(0.05 * phi.scale())
    }
}

/// `PV ∫ φ(v)/(v − pole) dv`.
pub fn pv_pairing(phi: &dyn TestFunction, pole: f64, cfg: &QuadConfig) -> Result<C64> {
    cfg.validate()?;
    let point = SingularPoint {
        at: pole,
        exponent: 1.0,
        right: PhaseWeight::one(),
        left: PhaseWeight::constant(C64::new(-1.0, 0.0)),
    };
    let cofactor = move |n: usize| taylor_coeffs(phi, pole, n.min(phi.max_order()));
    let sites = [Site { point, cofactor: Box::new(cofactor) }];
    let (lo, hi) = support(phi, pole, cfg);
    let f = |v: f64| phi.eval(v) / (v - pole);
    integrate_with_sites(&f, lo, hi, &sites, window(phi, cfg), cfg)
}

/// `⟨FP 1/(x − pole)^m, φ⟩ = ⟨PV 1/(x − pole), φ^{(m−1)}⟩ / (m−1)!`.
pub fn fp_pairing(phi: &dyn TestFunction, pole: f64, m: u32, cfg: &QuadConfig) -> Result<C64> {
    if m == 0 {
        return domain("finite-part order must be positive");
    }
    let order = (m - 1) as usize;
    if order == 0 {
        return pv_pairing(phi, pole, cfg);
    }
    let d = Derivative { base: phi, order };
    let fact: f64 = (1..=order).map(|k| k as f64).product();
    Ok(pv_pairing(&d, pole, cfg)? / fact)
}

/// `lim_{ε→0⁺} ∫ φ(v)/(v − pole ± iε)^m dv`.
///
/// `1/(x ± i0)^m = FP 1/x^m ∓ iπ δ^{(m−1)}(x) (−1)^{m−1}/(m−1)!`, and pairing the
/// derivative of δ contributes another `(−1)^{m−1}`, so the delta term is
/// `∓ iπ φ^{(m−1)}(pole)/(m−1)!` for every `m`.
pub fn sokhotski_pairing(phi: &dyn TestFunction, pole: f64, m: u32, side: Side, cfg: &QuadConfig) -> Result<C64> {
    let fp = fp_pairing(phi, pole, m, cfg)?;
    Ok(fp + delta_term(phi, pole, m, side)?)
}

pub(crate) fn delta_term(phi: &dyn TestFunction, pole: f64, m: u32, side: Side) -> Result<C64> {
    let order = (m - 1) as usize;
    let c = taylor_coeffs(phi, pole, order)?[order];
    let s = match side {
        Side::Plus => -1.0,
        Side::Minus => 1.0,
    };
    Ok(C64::new(0.0, s * std::f64::consts::PI) * c)
}
