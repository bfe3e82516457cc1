//! Cross terms: the Wightman overlap `L_AB` and the Feynman-ordered `M`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::ProtocolParams;
use crate::correlator::cispi;
use crate::distquad::{
    gauss_window_quad_shifted, gk, weighted_line_quad, GaussianPhase, PhaseWeight, QuadConfig, RegionWeights, TestFunction,
};
use crate::error::{domain, HarvestError, Result};
use crate::numkernel::ScaledComplex;

const SQRT_PI_OVER_2: f64 = 1.253_314_137_315_500_3;

fn require_separation(p: &ProtocolParams) -> Result<()> {
    p.validate()?;
    if !(p.lbar > 0.0) {
        return domain("cross terms need a non-zero spatial separation L > 0");
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LabRoute {
    Contour,
    RealLine,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabReport {
    pub chosen: LabRoute,
    pub contour: Option<ScaledComplex>,
    pub real_line: Option<ScaledComplex>,
    /// Relative spread between the two routes when both succeeded.
    pub spread: Option<f64>,
}

/// `D` and `C` of the shifted-contour quadratic `D + C s − s²`.
pub fn lab_contour_coefficients(p: &ProtocolParams) -> (C64, C64) {
    let (l, d, w) = (p.lbar, p.dbar, p.t_omega);
    (C64::new(l * l - d * d + w * w, -2.0 * w * d), C64::new(2.0 * d, 2.0 * w))
}

pub fn lab_route(p: &ProtocolParams) -> LabRoute {
    let (d, c) = lab_contour_coefficients(p);
    if d.norm() >= 4.0 * c.norm() {
        LabRoute::Contour
    } else {
        LabRoute::RealLine
    }
}

fn lab_contour(p: &ProtocolParams, cfg: &QuadConfig) -> Result<ScaledComplex> {
    let (l2, delta) = (p.lbar * p.lbar, p.delta_dim);
    let h = |z: C64| (l2 - z * z).powf(-delta);
    let r = gauss_window_quad_shifted(&h, -p.dbar, 1.0, p.t_omega, cfg)?;
    Ok(r.scale_by(C64::new(SQRT_PI_OVER_2, 0.0)))
}

fn wightman_weights() -> RegionWeights {
    RegionWeights { interior: PhaseWeight::one(), right: PhaseWeight::cispi(-1.0), left: PhaseWeight::cispi(1.0) }
}

fn lab_real_line(p: &ProtocolParams, cfg: &QuadConfig) -> Result<ScaledComplex> {
    let g = GaussianPhase::new(-p.dbar, 1.0, p.t_omega);
    let v = weighted_line_quad(&g, p.lbar, p.delta_dim, &wightman_weights(), cfg)?;
    Ok(ScaledComplex::new(v * SQRT_PI_OVER_2, 0.0))
}

/// Both evaluation strategies for `L_AB`, with the one selected by `|D| ≥ 4|C|`.
pub fn lab_routes(p: &ProtocolParams, cfg: &QuadConfig) -> Result<LabReport> {
    require_separation(p)?;
    let chosen = lab_route(p);
    let contour = lab_contour(p, cfg);
    let real_line = lab_real_line(p, cfg);
    let spread = match (&contour, &real_line) {
        (Ok(a), Ok(b)) => Some(a.rel_diff(b)),
        _ => None,
    };
    if let (Err(a), Err(b)) = (&contour, &real_line) {
        return Err(HarvestError::Numeric(format!("L_AB failed on both routes: contour: {a}; real line: {b}")));
    }
    Ok(LabReport { chosen, contour: contour.ok(), real_line: real_line.ok(), spread })
}

/// `√(π/2) ∫ e^{−(v+δ)²/2 − iΩv} (L² − (v − i0)²)^{−Δ} dv`.
///
/// The contour route moves to `Im v = −Ω`, below both branch points, where the
/// integrand is smooth. Falls back to the other route if the chosen one fails.
pub fn lab(p: &ProtocolParams, cfg: &QuadConfig) -> Result<ScaledComplex> {
    require_separation(p)?;
    let (first, second): (fn(&ProtocolParams, &QuadConfig) -> Result<ScaledComplex>, _) = match lab_route(p) {
        LabRoute::Contour => (lab_contour, lab_real_line as fn(&ProtocolParams, &QuadConfig) -> Result<ScaledComplex>),
        LabRoute::RealLine => (lab_real_line, lab_contour as fn(&ProtocolParams, &QuadConfig) -> Result<ScaledComplex>),
    };
    match first(p, cfg) {
        Ok(v) => Ok(v),
        Err(e1) => second(p, cfg).map_err(|e2| {
            HarvestError::Numeric(format!("L_AB failed on both routes: {e1}; then {e2}"))
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum MRoute {
    /// Real segments plus semicircles that step around `v = ±L` on the side
    /// the Feynman prescription allows.
    #[default]
    ContourDetour,
    /// Finite-part windows at `v = ±L` on the real line.
    EndpointFinitePart,
}

fn m_prefactor(p: &ProtocolParams) -> ScaledComplex {
    let w = p.t_omega;
    ScaledComplex::new(C64::from_polar(SQRT_PI_OVER_2, w * p.dbar), -0.5 * w * w)
}

fn feynman_weights() -> RegionWeights {
    RegionWeights { interior: PhaseWeight::one(), right: PhaseWeight::cispi(-1.0), left: PhaseWeight::cispi(-1.0) }
}

fn detour_integral(p: &ProtocolParams, cfg: &QuadConfig) -> Result<C64> {
    let (l, delta, dbar) = (p.lbar, p.delta_dim, p.dbar);
    let g = GaussianPhase::new(-dbar, 1.0, 0.0);
    let r = (0.5 * l).min(1.0);
    let ext = cispi(-delta);
    let f = |v: f64| {
        let w = if v.abs() < l { C64::new(1.0, 0.0) } else { ext };
        g.eval(v) * w * (l * l - v * v).abs().powf(-delta)
    };
    let reach = cfg.tail_sigmas * std::f64::consts::SQRT_2;
    let (lo, hi) = (-dbar - reach, -dbar + reach);
    let mut total = C64::default();
    for (a, b) in [(f64::NEG_INFINITY, -l - r), (-l + r, l - r), (l + r, f64::INFINITY)] {
        let (a, b) = (a.max(lo), b.min(hi));
        if b > a {
            total += gk::integrate(&f, &[a, b], cfg)?.value;
        }
    }
    // above −L (θ: π → 0) and below +L (θ: −π → 0)
    for (centre, start) in [(-l, std::f64::consts::PI), (l, -std::f64::consts::PI)] {
        if centre + r < lo || centre - r > hi {
            continue;
        }
        let arc = |t: f64| {
            let theta = start * (1.0 - t / std::f64::consts::PI);
            let e = C64::from_polar(r, theta);
            let z = centre + e;
            let dz = C64::new(0.0, 1.0) * e * (-start / std::f64::consts::PI);
            g.eval_complex(z) * (l * l - z * z).powf(-delta) * dz
        };
        total += gk::integrate(&arc, &[0.0, std::f64::consts::PI], cfg)?.value;
    }
    Ok(total)
}

/// `M = −√(π/2) e^{−Ω²/2 + iΩδ} ∫ e^{−(v+δ)²/2} (L² − v² + i0|v|)^{−Δ} dv`.
pub fn m_element_with(p: &ProtocolParams, route: MRoute, cfg: &QuadConfig) -> Result<ScaledComplex> {
    require_separation(p)?;
    let integral = match route {
        MRoute::ContourDetour => detour_integral(p, cfg)?,
        MRoute::EndpointFinitePart => {
            let g = GaussianPhase::new(-p.dbar, 1.0, 0.0);
            weighted_line_quad(&g, p.lbar, p.delta_dim, &feynman_weights(), cfg)?
        }
    };
    Ok(m_prefactor(p).scale_by(-integral))
}

pub fn m_element(p: &ProtocolParams, cfg: &QuadConfig) -> Result<ScaledComplex> {
    m_element_with(p, MRoute::default(), cfg)
}

/// `(M⁺, M⁻)`: interior plus `cos(πΔ)`-weighted exterior, and the
/// `sin(πΔ)`-weighted exterior, each as a finite part at `v = ±L`.
///
/// At integer `Δ` the exterior weight vanishes away from the lightcone but the
/// windows keep the continuous limit, a residue-like term at each endpoint.
pub fn m_pm(p: &ProtocolParams, cfg: &QuadConfig) -> Result<(ScaledComplex, ScaledComplex)> {
    require_separation(p)?;
    let g = GaussianPhase::new(-p.dbar, 1.0, 0.0);
    let plus_w = RegionWeights { interior: PhaseWeight::one(), right: PhaseWeight::cos_pi(), left: PhaseWeight::cos_pi() };
    let minus_w = RegionWeights { interior: PhaseWeight::zero(), right: PhaseWeight::sin_pi(), left: PhaseWeight::sin_pi() };
    let ip = weighted_line_quad(&g, p.lbar, p.delta_dim, &plus_w, cfg)?;
    let im = weighted_line_quad(&g, p.lbar, p.delta_dim, &minus_w, cfg)?;
    let pref = m_prefactor(p);
    Ok((pref.scale_by(-ip), pref.scale_by(C64::new(0.0, 1.0) * im)))
}
