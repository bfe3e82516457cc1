//! Closed-form asymptotics of the matrix elements and measures, with the
//! regime guards under which each expansion is meant to hold.
//!
//! Every approximation is evaluated even off-regime; `regime_ok` says whether
//! the guard held. "≫" means a ratio of at least [`RegimeFlags::ratio`].

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, SQRT_2};

use crate::densmat::{lab_contour_coefficients, ProtocolParams};
use crate::error::{domain, Result};
use crate::measures::mi_bracket;
use crate::numkernel::{cospi, gamma, sinpi, ScaledComplex, ScaledReal};

pub const DEFAULT_RATIO: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeFlags {
    /// `TΩ ≫ 1`.
    pub t_omega_large: bool,
    /// `|D| ≫ |C|` and `|D| ≫ 1`.
    pub d_large: bool,
    /// `|D̃| ≫ 2|δ̄|` and `|D̃| ≫ 1`.
    pub dtilde_large: bool,
    /// `C̃ ≫ 1` and `C̃ ≫ |D̃|`.
    pub near_lightcone: bool,
    /// `L̄² − δ̄² ≫ 1`.
    pub far_spacelike: bool,
    /// `δ̄² − L̄² ≫ 1`.
    pub far_timelike: bool,
    pub ratio: f64,
}

impl RegimeFlags {
    pub fn evaluate(p: &ProtocolParams, ratio: f64) -> Self {
        let (d, c) = lab_contour_coefficients(p);
        let dt = dtilde(p);
        let ct = ctilde(p);
        Self {
            t_omega_large: p.t_omega >= ratio,
            d_large: d.norm() >= ratio * c.norm() && d.norm() >= ratio,
            dtilde_large: dt.abs() >= ratio * 2.0 * p.dbar.abs() && dt.abs() >= ratio,
            near_lightcone: ct >= ratio && ct >= ratio * dt.abs(),
            far_spacelike: dt >= ratio,
            far_timelike: -dt >= ratio,
            ratio,
        }
    }
}

impl From<&ProtocolParams> for RegimeFlags {
    fn from(p: &ProtocolParams) -> Self {
        Self::evaluate(p, DEFAULT_RATIO)
    }
}

/// `L̄² − δ̄²`.
pub fn dtilde(p: &ProtocolParams) -> f64 {
    p.lbar * p.lbar - p.dbar * p.dbar
}

/// `2|δ̄|`.
pub fn ctilde(p: &ProtocolParams) -> f64 {
    2.0 * p.dbar.abs()
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ApproxReport {
    pub value: ScaledComplex,
    pub order: u8,
    pub regime_ok: bool,
    pub rel_error_vs_numeric: Option<f64>,
}

impl ApproxReport {
    fn new(value: ScaledComplex, order: u8, regime_ok: bool) -> Self {
        Self { value, order, regime_ok, rel_error_vs_numeric: None }
    }

    fn real(mantissa: f64, log_scale: f64, order: u8, regime_ok: bool) -> Self {
        Self::new(ScaledComplex::new(C64::new(mantissa, 0.0), log_scale), order, regime_ok)
    }

    /// Records `|approx − reference| / |reference|`.
    pub fn with_reference(mut self, reference: &ScaledComplex) -> Self {
        let s = reference.log_scale;
        let den = reference.mantissa.norm();
        self.rel_error_vs_numeric = Some((self.value.at_scale(-s) - reference.mantissa).norm() / den);
        self
    }

    pub fn abs(&self) -> ScaledReal {
        self.value.abs()
    }
}

fn check_order(order: u8, max: u8) -> Result<()> {
    if order == 0 && max < 2 || order > max {
        return domain(format!("order must lie in 1..={max}, got {order}"));
    }
    Ok(())
}

/// `e^{−T²Ω²/2}` as a log-scale.
fn gap_scale(p: &ProtocolParams) -> f64 {
    -0.5 * p.t_omega * p.t_omega
}

fn phase(p: &ProtocolParams) -> C64 {
    C64::from_polar(1.0, p.t_omega * p.dbar)
}

/// `(TΩ)^{−2Δ}` and the second-order factor `1 − 2Δ(Δ+½)/(TΩ)²`.
fn laa_terms(p: &ProtocolParams, order: u8) -> (f64, f64) {
    let (delta, w) = (p.delta_dim, p.t_omega);
    let head = w.powf(-2.0 * delta);
    let corr = if order >= 2 { 1.0 - 2.0 * delta * (delta + 0.5) / (w * w) } else { 1.0 };
    (head, corr)
}

/// `π (TΩ)^{−2Δ} e^{−T²Ω²/2} [1 − 2Δ(Δ+½)/(TΩ)²]`.
pub fn laa_asym(p: &ProtocolParams, order: u8) -> Result<ApproxReport> {
    p.validate()?;
    check_order(order, 2)?;
    let (head, corr) = laa_terms(p, order);
    let ok = RegimeFlags::from(p).t_omega_large;
    Ok(ApproxReport::real(PI * head * corr, gap_scale(p), order, ok))
}

/// `π D^{−Δ} e^{−T²Ω²/2 + iΩδ} [1 + Δ(D + ½(Δ+1)C²)/D²]`.
pub fn lab_asym(p: &ProtocolParams, order: u8) -> Result<ApproxReport> {
    p.validate()?;
    check_order(order, 2)?;
    let delta = p.delta_dim;
    let (d, c) = lab_contour_coefficients(p);
    let mut v = d.powf(-delta) * PI * phase(p);
    if order >= 2 {
        v *= 1.0 + delta * (d + 0.5 * (delta + 1.0) * c * c) / (d * d);
    }
    let ok = RegimeFlags::from(p).d_large;
    Ok(ApproxReport::new(ScaledComplex::new(v, gap_scale(p)), order, ok))
}

/// `(D̃ + i0)^{−Δ}` with the Feynman side: phase `e^{−iπΔ}` when `D̃ < 0`.
fn dtilde_power(dt: f64, delta: f64) -> C64 {
    let mag = dt.abs().powf(-delta);
    if dt >= 0.0 {
        C64::new(mag, 0.0)
    } else {
        C64::new(cospi(delta), -sinpi(delta)) * mag
    }
}

/// `1 + Δ/D̃ + 2Δ(Δ+1)δ̄²/D̃²`.
fn dtilde_correction(p: &ProtocolParams) -> f64 {
    let (delta, dt) = (p.delta_dim, dtilde(p));
    1.0 + delta / dt + 2.0 * delta * (delta + 1.0) * p.dbar * p.dbar / (dt * dt)
}

/// `−π D̃^{−Δ} e^{−T²Ω²/2 + iΩδ} [1 + Δ(D̃ + 2(Δ+1)δ̄²)/D̃²]`, `D̃ = L̄² − δ̄²`.
///
/// For timelike `D̃ < 0` the power takes the phase of `L² − v² + i0`.
pub fn m_asym_far(p: &ProtocolParams, order: u8) -> Result<ApproxReport> {
    p.validate()?;
    check_order(order, 2)?;
    let dt = dtilde(p);
    let mut v = -PI * dtilde_power(dt, p.delta_dim) * phase(p);
    if order >= 2 {
        v *= dtilde_correction(p);
    }
    let ok = RegimeFlags::from(p).dtilde_large;
    Ok(ApproxReport::new(ScaledComplex::new(v, gap_scale(p)), order, ok))
}

/// `Γ((1+Δ)/2)/Γ(1+Δ/2)`.
fn gamma_ratio(delta: f64) -> Result<f64> {
    Ok(gamma(0.5 * (1.0 + delta))? / gamma(1.0 + 0.5 * delta)?)
}

/// `π^{3/2} / (2^{Δ/2} Γ((1+Δ)/2)) C̃^{−Δ}`.
fn near_lc_head(p: &ProtocolParams) -> Result<f64> {
    let delta = p.delta_dim;
    Ok(PI.powf(1.5) / (2f64.powf(0.5 * delta) * gamma(0.5 * (1.0 + delta))?) * ctilde(p).powf(-delta))
}

/// Near-lightcone expansion in `1/C̃`, orders 0 through 2.
///
/// The head carries `e^{−iπΔ/2}`: near `v = −L` the Feynman kernel is
/// `(C̃(u + i0))^{−Δ}`, and pairing that with a Gaussian gives
/// `(1 + e^{−iπΔ}) ∫₀^∞`. The first correction is `+i(…)` relative to it.
pub fn m_asym_near_lc(p: &ProtocolParams, order: u8) -> Result<ApproxReport> {
    p.validate()?;
    check_order(order, 2)?;
    let delta = p.delta_dim;
    let (ct, dt) = (ctilde(p), dtilde(p));
    if ct == 0.0 {
        return domain("near-lightcone expansion needs δ̄ ≠ 0");
    }
    let mut bracket = C64::new(1.0, 0.0);
    if order >= 1 {
        bracket += C64::new(0.0, delta / (SQRT_2 * ct) * gamma_ratio(delta)? * (dt + delta));
    }
    if order >= 2 {
        bracket += delta * (delta + 1.0) / (2.0 * ct * ct) * ((1.0 - delta) - 2.0 * dt - dt * dt / (1.0 + delta));
    }
    let v = -near_lc_head(p)? * C64::new(cospi(0.5 * delta), -sinpi(0.5 * delta)) * phase(p) * bracket;
    let ok = RegimeFlags::from(p).near_lightcone;
    Ok(ApproxReport::new(ScaledComplex::new(v, gap_scale(p)), order, ok))
}

/// Magnitude form of [`m_asym_near_lc`], with the first-order phase folded
/// into the `1/C̃²` term.
pub fn m_abs_near_lc(p: &ProtocolParams, order: u8) -> Result<ApproxReport> {
    p.validate()?;
    check_order(order, 2)?;
    let delta = p.delta_dim;
    let (ct, dt) = (ctilde(p), dtilde(p));
    if ct == 0.0 {
        return domain("near-lightcone expansion needs δ̄ ≠ 0");
    }
    let mut factor = 1.0;
    if order >= 2 {
        let shift = delta * gamma_ratio(delta)? * (dt + delta);
        factor += (-0.5 * delta * (dt * dt + 2.0 * (delta + 1.0) * dt + (delta * delta - 1.0)) + 0.25 * shift * shift)
            / (ct * ct);
    }
    let ok = RegimeFlags::from(p).near_lightcone;
    Ok(ApproxReport::real(near_lc_head(p)? * factor, gap_scale(p), order, ok))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitRegion {
    Spacelike,
    Timelike,
}

/// Two-endpoint estimate of `M⁻` in the spacelike regime.
fn m_minus_spacelike(p: &ProtocolParams) -> Result<C64> {
    let (delta, l, d) = (p.delta_dim, p.lbar, p.dbar.abs());
    let pref = PI.powf(1.5) / (2f64.powf(delta + 0.5) * gamma(delta)?) / l;
    let end = |s: f64| (-0.5 * s * s).exp() * (s / l).powf(delta - 1.0);
    Ok(C64::new(0.0, pref * (end(l - d) + end(l + d))) * phase(p))
}

/// `(M⁺, M⁻)` in the far-spacelike or far-timelike regime.
///
/// Spacelike: `M⁺` follows [`m_asym_far`] and `M⁻` comes from the two lightcone
/// endpoints (a single formula, independent of `order`). Timelike: `cos(πΔ)`
/// and `−i sin(πΔ)` times the far-field `M` of magnitude `|D̃|^{−Δ}`.
pub fn m_pm_asym(p: &ProtocolParams, region: SplitRegion, order: u8) -> Result<(ApproxReport, ApproxReport)> {
    p.validate()?;
    check_order(order, 2)?;
    let flags = RegimeFlags::from(p);
    let dt = dtilde(p);
    let corr = if order >= 2 { dtilde_correction(p) } else { 1.0 };
    let m1 = -PI * dt.abs().powf(-p.delta_dim) * phase(p) * corr;
    let s = gap_scale(p);
    match region {
        SplitRegion::Spacelike => {
            if !(p.lbar > p.dbar.abs()) {
                return domain("spacelike split needs L̄ > |δ̄|");
            }
            let ok = flags.far_spacelike;
            let minus = m_minus_spacelike(p)?;
            Ok((
                ApproxReport::new(ScaledComplex::new(m1, s), order, ok),
                ApproxReport::new(ScaledComplex::new(minus, s), order, ok),
            ))
        }
        SplitRegion::Timelike => {
            let ok = flags.far_timelike;
            let (c, sn) = (cospi(p.delta_dim), sinpi(p.delta_dim));
            Ok((
                ApproxReport::new(ScaledComplex::new(m1 * c, s), order, ok),
                ApproxReport::new(ScaledComplex::new(m1 * C64::new(0.0, -sn), s), order, ok),
            ))
        }
    }
}

/// Lightcone-endpoint estimate of `M⁺` just inside the timelike region:
/// `−√(π/2) e^{−T²Ω²/2 + iΩδ} Γ(1−Δ) (2L̄)^{−Δ} (δ̄ − L̄)^{Δ−1} e^{−(δ̄−L̄)²/2}`.
///
/// The last factor is the Gaussian's height at the endpoint; the Laplace
/// integral `∫ s^{−Δ} e^{−(δ̄−L̄)s} ds` only supplies the power law.
pub fn m_endpoint_asym(p: &ProtocolParams) -> Result<ApproxReport> {
    p.validate()?;
    let delta = p.delta_dim;
    if delta == delta.round() {
        return domain(format!("endpoint form has a Γ(1−Δ) pole at integer Δ = {delta}"));
    }
    let gap = p.dbar.abs() - p.lbar;
    if !(gap > 0.0) {
        return domain("endpoint form needs |δ̄| > L̄");
    }
    let mag = (0.5 * PI).sqrt() * gamma(1.0 - delta)? * (2.0 * p.lbar).powf(-delta) * gap.powf(delta - 1.0);
    let ok = gap <= 3.0 && cospi(delta).abs() * DEFAULT_RATIO <= 1.0;
    Ok(ApproxReport::new(ScaledComplex::new(-mag * phase(p), gap_scale(p) - 0.5 * gap * gap), 1, ok))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NegativityVariant {
    /// Leading far-from-lightcone terms.
    Far1,
    /// Far-from-lightcone with first corrections to both terms.
    Far2,
    /// Near-lightcone magnitude against the leading `L_AA`.
    NearLc,
}

fn clamp_report(m_mantissa: f64, laa_mantissa: f64, s: f64, order: u8, ok: bool) -> ApproxReport {
    ApproxReport::real((m_mantissa - laa_mantissa).max(0.0), s, order, ok)
}

/// Negativity per unit `λ̄²` from the matching `M` and `L_AA` expansions.
pub fn negativity_asym(p: &ProtocolParams, variant: NegativityVariant) -> Result<ApproxReport> {
    p.validate()?;
    let flags = RegimeFlags::from(p);
    let delta = p.delta_dim;
    let dt = dtilde(p);
    let s = gap_scale(p);
    let r = match variant {
        NegativityVariant::Far1 => {
            let (laa, _) = laa_terms(p, 1);
            clamp_report(PI * dt.abs().powf(-delta), PI * laa, s, 1, flags.dtilde_large && flags.t_omega_large)
        }
        NegativityVariant::Far2 => {
            let (laa, c) = laa_terms(p, 2);
            let m = PI * dt.abs().powf(-delta) * dtilde_correction(p);
            clamp_report(m, PI * laa * c, s, 2, flags.dtilde_large && flags.t_omega_large)
        }
        NegativityVariant::NearLc => {
            let m = m_abs_near_lc(p, 2)?;
            let (laa, _) = laa_terms(p, 1);
            clamp_report(m.value.at_scale(-s).re, PI * laa, s, 2, flags.near_lightcone && flags.t_omega_large)
        }
    };
    Ok(r)
}

/// `(𝒩⁺, 𝒩⁻)` per unit `λ̄²` in the far-spacelike or far-timelike regime.
pub fn npm_asym(p: &ProtocolParams, region: SplitRegion, order: u8) -> Result<(ApproxReport, ApproxReport)> {
    p.validate()?;
    check_order(order, 2)?;
    let delta = p.delta_dim;
    let dt = dtilde(p);
    let s = gap_scale(p);
    let (laa, lc) = laa_terms(p, order);
    let laa = PI * laa * lc;
    let corr = if order >= 2 { dtilde_correction(p) } else { 1.0 };
    let kernel = PI * dt.abs().powf(-delta) * corr;
    let flags = RegimeFlags::from(p);
    let ok = flags.t_omega_large
        && match region {
            SplitRegion::Spacelike => flags.far_spacelike,
            SplitRegion::Timelike => flags.far_timelike,
        };
    Ok(match region {
        SplitRegion::Spacelike => (clamp_report(kernel, laa, s, order, ok), ApproxReport::real(0.0, s, order, ok)),
        SplitRegion::Timelike => (
            clamp_report(cospi(delta).abs() * kernel, laa, s, order, ok),
            clamp_report(sinpi(delta).abs() * kernel, laa, s, order, ok),
        ),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryKind {
    /// Largest `L̄` with `𝒩 > 0` at `δ̄ = 0`.
    NVsL,
    /// Largest `δ̄` with `𝒩 > 0`.
    NVsDelta,
    /// Largest timelike `δ̄` with `𝒩⁺ > 0`.
    NplusTl,
    /// Largest timelike `δ̄` with `𝒩⁻ > 0`.
    NminusTl,
}

/// Where the negativity (or one of its split parts) vanishes. `None` where
/// the trigonometric weight vanishes and the curve is undefined.
pub fn boundary(kind: BoundaryKind, delta_dim: f64, lbar: f64, t_omega: f64, order: u8) -> Result<Option<f64>> {
    check_order(order, 2)?;
    if !(delta_dim > 0.0) || !(t_omega > 0.0) || !(lbar >= 0.0) {
        return domain("boundary needs Δ > 0, TΩ > 0, L̄ ≥ 0");
    }
    let (d, w) = (delta_dim, t_omega);
    let second = order >= 2;
    let weighted = |c: f64| -> Option<f64> {
        if c == 0.0 {
            return None;
        }
        let cw = c.powf(1.0 / d);
        let a2 = lbar * lbar + cw * w * w;
        let a = a2.sqrt();
        if !second {
            return Some(a);
        }
        Some((a * (1.0 + ((d + 0.5) * cw - 0.5) / a2 + (d + 1.0) / (cw * w * w))).max(0.0))
    };
    Ok(match kind {
        BoundaryKind::NVsL => Some(if second { w * (1.0 + (d + 1.0) / (w * w)) } else { w }),
        BoundaryKind::NVsDelta => {
            let a2 = lbar * lbar + w * w;
            let a = a2.sqrt();
            Some(if second { a * (1.0 + (d + 1.0) * (1.0 / a2 + 1.0 / (w * w))) } else { a })
        }
        BoundaryKind::NplusTl => weighted(cospi(d).abs()),
        BoundaryKind::NminusTl => weighted(sinpi(d).abs()),
    })
}

/// [`boundary`] sampled over a list of `Δ`.
pub fn boundary_curve(
    kind: BoundaryKind,
    deltas: &[f64],
    lbar: f64,
    t_omega: f64,
    order: u8,
) -> Result<Vec<(f64, Option<f64>)>> {
    deltas.iter().map(|&d| Ok((d, boundary(kind, d, lbar, t_omega, order)?))).collect()
}

/// `Δ` maximising the leading far-field negativity at `δ̄ = 0`:
/// `½ ln(ln TΩ / ln L̄) / ln(TΩ/L̄)`, for `1 < L̄ < TΩ`.
pub fn delta_max(lbar: f64, t_omega: f64) -> Result<f64> {
    if !(1.0 < lbar && lbar < t_omega) {
        return domain(format!("Δ_max needs 1 < L̄ < TΩ, got L̄ = {lbar}, TΩ = {t_omega}"));
    }
    Ok(0.5 * (t_omega.ln() / lbar.ln()).ln() / (t_omega / lbar).ln())
}

/// Gap maximising the negativity at fixed separation, `TΩ ≈ L̄ − Δ/L̄`.
pub fn omega_opt(lbar: f64, delta_dim: f64) -> f64 {
    lbar - delta_dim / lbar
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MiVariant {
    /// Log form with `r = (TΩ)^{2Δ}/|D|^Δ`.
    Full,
    /// `L̄ ≫ TΩ` limit, `π e^{−T²Ω²/2} (TΩ)^{2Δ}/|D|^{2Δ}`.
    BigL,
}

/// Mutual information per unit `λ̄²` from the leading `L_AA` and `L_AB`.
/// The full form is invalid for `r ≥ 1`; the value is then `NaN`.
pub fn mi_asym(p: &ProtocolParams, variant: MiVariant) -> Result<ApproxReport> {
    p.validate()?;
    let delta = p.delta_dim;
    let w = p.t_omega;
    let (d, _) = lab_contour_coefficients(p);
    let flags = RegimeFlags::from(p);
    let s = gap_scale(p);
    let log_r = 2.0 * delta * w.ln() - delta * d.norm().ln();
    Ok(match variant {
        MiVariant::Full => {
            let r = log_r.exp();
            let ok = flags.d_large && flags.t_omega_large && r < 1.0;
            let v = if r < 1.0 { PI * w.powf(-2.0 * delta) * mi_bracket(r) } else { f64::NAN };
            ApproxReport::real(v, s, 1, ok)
        }
        MiVariant::BigL => {
            let ok = flags.d_large && p.lbar >= flags.ratio * w;
            ApproxReport::real(PI * (2.0 * delta * w.ln() - 2.0 * delta * d.norm().ln()).exp(), s, 1, ok)
        }
    })
}
