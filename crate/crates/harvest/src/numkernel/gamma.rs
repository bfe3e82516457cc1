use std::f64::consts::PI;

use super::xfloat::XFloat;
use crate::error::{domain, Result};

// Lanczos approximation, g = 607/128, 15 terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

/// `sin(pi x)` with exact zeros at the integers and exact +-1 at half-integers.
pub fn sinpi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        0.0
    } else if r == 0.5 {
        1.0
    } else if r == -0.5 {
        -1.0
    } else {
        (PI * r).sin()
    }
}

/// `cos(pi x)` with exact zeros at the half-integers.
pub fn cospi(x: f64) -> f64 {
    let r = (x - 2.0 * (x / 2.0).round()).abs();
    if r == 0.5 {
        0.0
    } else if r == 0.0 {
        1.0
    } else if r == 1.0 {
        -1.0
    } else {
        (PI * r).cos()
    }
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn lanczos_positive(x: f64) -> f64 {
    let z = x - 1.0;
    let mut s = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        s += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // Split the power so t^(z+1/2) does not overflow before e^-t pulls it back.
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * s
}

/// Euler gamma function. Poles are a domain error.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return domain(format!("gamma of non-finite {x}"));
    }
    if is_pole(x) {
        return domain(format!("gamma pole at {x}"));
    }
    if x < 0.5 {
        Ok(PI / (sinpi(x) * lanczos_positive(1.0 - x)))
    } else {
        Ok(lanczos_positive(x))
    }
}

/// `1/Gamma(x)`, an entire function; returns zero at the poles of gamma.
pub fn rgamma(x: f64) -> f64 {
    if is_pole(x) {
        0.0
    } else if x < 0.5 {
        sinpi(x) * lanczos_positive(1.0 - x) / PI
    } else {
        1.0 / lanczos_positive(x)
    }
}

/// Gamma at extended precision for `x > 0`.
///
/// Uses the lower incomplete gamma series `N^x e^-N sum_k N^k / (x)_(k+1)`;
/// the dropped upper tail is below `e^-N N^x`, and all terms are positive.
pub fn gamma_big(x: f64, p: usize) -> Result<XFloat> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("extended gamma needs x > 0, got {x}"));
    }
    let n = (1.1 * p as f64 * std::f64::consts::LN_2 + 2.0 * x + 20.0).ceil();
    let wp = p + 32;
    let xb = XFloat::from_f64(x, wp);
    let nb = XFloat::from_f64(n, wp);
    let mut term = xb.recip();
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term = &(&term * &nb) / &xb.add_f64(k as f64);
        sum = &sum + &term;
        if k as f64 > n {
            let ratio = (&term / &sum).ln_abs_f64();
            if ratio < -(wp as f64) * std::f64::consts::LN_2 {
                break;
            }
        }
        k += 1;
        if k > 100_000 {
            return crate::error::numeric("extended gamma series did not settle");
        }
    }
    let lnn = nb.ln();
    let pref = (&(&xb * &lnn) - &nb).exp();
    Ok((&pref * &sum).with_precision(p))
}
