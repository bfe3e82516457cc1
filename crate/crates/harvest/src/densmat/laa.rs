//! Single-detector excitation probability by three independent routes.

use num_complex::Complex64 as C64;

use super::ProtocolParams;
use crate::correlator::cispi;
use crate::distquad::{
    gauss_window_quad_shifted, integrate_with_sites, sokhotski_pairing, taylor_coeffs, GaussianPhase, PhaseWeight,
    QuadConfig, Side, SingularPoint, Site, TestFunction,
};
use crate::error::{domain, HarvestError, Result};
use crate::numkernel::xfloat::bits_for_digits;
use crate::numkernel::{erfcx_big, gamma_big, hyp1f1_big, PrecisionConfig, ScaledReal, XFloat};

const SQRT_PI_OVER_2: f64 = 1.253_314_137_315_500_3;

/// Above this `TΩ` the numeric route integrates on the shifted contour.
pub const CONTOUR_THRESHOLD: f64 = 3.5;

/// Kummer-transformed hypergeometric form, scale `e^{−T²Ω²/2}` factored out.
pub fn laa_closed(p: &ProtocolParams, prec: &PrecisionConfig) -> Result<ScaledReal> {
    p.validate()?;
    prec.validate()?;
    let bits = bits_for_digits(prec.working_digits);
    // Δ and Δ + ½ must differ by exactly ½ in binary: the bracket below
    // cancels ~T²Ω²/(2 ln 10) digits, which would amplify a rounded sum.
    let delta_half = p.delta_dim + 0.5;
    let delta = delta_half - 0.5;
    let t = p.t_omega;
    let x = XFloat::from_f64(t, bits);
    let x = (&x * &x).div_f64(2.0);
    let m1 = hyp1f1_big(delta, 0.5, &x, prec)?;
    let m2 = hyp1f1_big(delta_half, 1.5, &x, prec)?;
    let t1 = &m1 / &gamma_big(delta_half, bits)?;
    let t2 = &(&m2 * &(&XFloat::from_f64(t, bits) * &XFloat::from_f64(2.0, bits).sqrt())) / &gamma_big(delta, bits)?;
    let bracket = &t1 - &t2;
    let lost = (t1.ln_abs_f64().max(t2.ln_abs_f64()) - bracket.ln_abs_f64()).max(0.0) / std::f64::consts::LN_10;
    if bracket.is_zero() || lost > f64::from(prec.working_digits) - 12.0 {
        return Err(HarvestError::Precision { lost, working: prec.working_digits });
    }
    let pi = XFloat::pi(bits);
    let pref = &(&pi * &pi.sqrt()) / &XFloat::from_f64(2f64.powf(delta), bits);
    let mantissa = (&pref * &bracket).to_f64();
    Ok(ScaledReal::new(mantissa, -0.5 * t * t))
}

/// Polynomial coefficients (ascending) over a common denominator.
type Poly = (&'static [i64], i64);

const A: [Poly; 4] = [(&[1], 1), (&[1, 1], 3), (&[8, 18, 4], 120), (&[24, 87, 40, 4], 2520)];
const B: [Poly; 4] = [(&[1], 1), (&[3, 2], 6), (&[15, 20, 4], 120), (&[105, 210, 84, 8], 5040)];
// hat tables, without the common 1/√2
const AH: [Poly; 4] = [(&[0], 1), (&[1], 1), (&[5, 2], 12), (&[33, 28, 4], 360)];
const BH: [Poly; 4] = [(&[1], 1), (&[1, 2], 2), (&[3, 12, 4], 24), (&[15, 90, 60, 8], 720)];

fn poly(p: Poly, x: &XFloat) -> XFloat {
    let bits = x.precision();
    let mut acc = XFloat::zero(bits);
    for &c in p.0.iter().rev() {
        acc = (&acc * x).add_f64(c as f64);
    }
    acc.div_f64(p.1 as f64)
}

/// Closed forms for `2Δ ∈ {1, …, 8}` in terms of `erfcx`.
pub fn laa_special(p: &ProtocolParams) -> Result<ScaledReal> {
    p.validate()?;
    let two_delta = 2.0 * p.delta_dim;
    if two_delta != two_delta.round() || !(1.0..=8.0).contains(&two_delta) {
        return domain(format!("special forms cover Δ ∈ {{1/2, 1, …, 4}}, got Δ = {}", p.delta_dim));
    }
    let k = two_delta as usize;
    let bits = bits_for_digits(60);
    let t = p.t_omega;
    let x = XFloat::from_f64(t * t, bits).div_f64(2.0);
    let rx = x.sqrt();
    let pi = XFloat::pi(bits);
    let spi = pi.sqrt();
    let ex = erfcx_big(&rx)?;
    let bracket = if k % 2 == 0 {
        let n = k / 2;
        &poly(A[n - 1], &x) - &(&(&(&spi * &rx) * &poly(B[n - 1], &x)) * &ex)
    } else {
        let n = (k + 1) / 2;
        let r2 = XFloat::from_f64(2.0, bits).sqrt();
        let a = &(&rx * &poly(AH[n - 1], &x)) / &r2;
        let b = &(&(&spi * &poly(BH[n - 1], &x)) * &ex) / &r2;
        &b - &a
    };
    Ok(ScaledReal::new((&pi * &bracket).to_f64(), -0.5 * t * t))
}

/// Which numerical route [`laa_numeric`] takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaaRoute {
    Sokhotski,
    PhaseSplit,
    Contour,
}

pub fn laa_numeric_route(p: &ProtocolParams) -> LaaRoute {
    let two_delta = 2.0 * p.delta_dim;
    if p.t_omega > CONTOUR_THRESHOLD {
        LaaRoute::Contour
    } else if two_delta == two_delta.round() {
        LaaRoute::Sokhotski
    } else {
        LaaRoute::PhaseSplit
    }
}

/// `√(π/2) ⟨(−(v − i0)²)^{−Δ}, e^{−v²/2 − iTΩ v}⟩` by direct numerical pairing.
///
/// Half-integer and integer `Δ` use the boundary-value pairing of
/// `(v − i0)^{−2Δ}`, generic `Δ` a finite-part window at `v = 0` with side
/// phases `e^{∓iπΔ}`. For large `TΩ` the real-line integral is mostly
/// cancellation, so the contour is moved to `Im v = −TΩ` instead, where the
/// kernel is smooth and the `e^{−T²Ω²/2}` factor comes out exactly.
pub fn laa_numeric(p: &ProtocolParams, cfg: &QuadConfig) -> Result<ScaledReal> {
    p.validate()?;
    let delta = p.delta_dim;
    let phi = GaussianPhase::new(0.0, 1.0, p.t_omega);
    let value = match laa_numeric_route(p) {
        LaaRoute::Contour => {
            let h = |z: C64| (-(z * z)).powf(-delta);
            let r = gauss_window_quad_shifted(&h, 0.0, 1.0, p.t_omega, cfg)?;
            return Ok(ScaledReal::new(SQRT_PI_OVER_2 * r.mantissa.re, r.log_scale));
        }
        LaaRoute::Sokhotski => {
            let m = (2.0 * delta).round() as u32;
            cispi(-delta) * sokhotski_pairing(&phi, 0.0, m, Side::Minus, cfg)?
        }
        LaaRoute::PhaseSplit => phase_split(&phi, delta, cfg)?,
    };
    Ok(ScaledReal::new(SQRT_PI_OVER_2 * value.re, 0.0))
}

/// Window half-width around `v = 0`; the Gaussian cofactor is entire, so a
/// wide window keeps the outer integrand, and its cancellation, small.
const ORIGIN_WINDOW: f64 = 1.0;

fn phase_split(phi: &GaussianPhase, delta: f64, cfg: &QuadConfig) -> Result<C64> {
    let (wr, wl) = (cispi(-delta), cispi(delta));
    let f = |v: f64| phi.eval(v) * v.abs().powf(-2.0 * delta) * if v > 0.0 { wr } else { wl };
    let site = Site {
        point: SingularPoint {
            at: 0.0,
            exponent: 2.0 * delta,
            right: PhaseWeight::cispi(-0.5),
            left: PhaseWeight::cispi(0.5),
        },
        cofactor: Box::new(|n| taylor_coeffs(phi, 0.0, n)),
    };
    let (lo, hi) = phi.window(cfg.tail_sigmas).expect("gaussian has a window");
    integrate_with_sites(&f, lo, hi, &[site], ORIGIN_WINDOW, cfg)
}
