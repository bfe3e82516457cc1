use serde::{Deserialize, Serialize};

use super::gamma::{cospi, gamma, rgamma};
use super::xfloat::{bits_for_digits, XFloat};
use super::PrecisionConfig;
use crate::error::{domain, HarvestError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypergeoParams {
    pub a: f64,
    pub b: f64,
    pub x: f64,
}

impl HypergeoParams {
    pub fn new(a: f64, b: f64, x: f64) -> Self {
        HypergeoParams { a, b, x }
    }

    fn check(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite() && self.x.is_finite()) {
            return domain("non-finite 1F1 parameter");
        }
        if self.b <= 0.0 && self.b == self.b.floor() {
            return domain(format!("1F1 lower parameter b = {} is a pole", self.b));
        }
        Ok(())
    }
}

/// Sum of the Kummer series together with the largest term seen, so that
/// callers can tell how much cancellation happened.
struct SeriesSum {
    sum: XFloat,
    max_term_ln: f64,
}

fn kummer_series(a: f64, b: f64, z: &XFloat, cap: usize) -> Result<SeriesSum> {
    let wp = z.precision();
    let limit = -(wp as f64) * std::f64::consts::LN_2;
    let zf = z.to_f64();
    let mut term = XFloat::one(wp);
    let mut sum = XFloat::one(wp);
    let mut max_term_ln = 0.0f64;
    let mut quiet = 0;
    for k in 0..cap {
        let kf = k as f64;
        let num = a + kf;
        if num == 0.0 {
            return Ok(SeriesSum { sum, max_term_ln });
        }
        term = &term * &pochhammer_step(a, b, kf, z);
        sum = &sum + &term;
        let tl = term.ln_abs_f64();
        max_term_ln = max_term_ln.max(tl);
        let past_peak = kf + 1.0 > zf.abs() && kf + 1.0 > a.abs();
        if past_peak && tl - sum.ln_abs_f64() < limit {
            quiet += 1;
            if quiet >= 2 {
                return Ok(SeriesSum { sum, max_term_ln });
            }
        } else {
            quiet = 0;
        }
    }
    Err(HarvestError::Numeric(format!(
        "1F1({a}; {b}; {zf}) series needs more than {cap} terms"
    )))
}

/// `(a+k) z / ((b+k)(k+1))` carried out entirely at the precision of `z`.
fn pochhammer_step(a: f64, b: f64, k: f64, z: &XFloat) -> XFloat {
    let wp = z.precision();
    let num = XFloat::from_f64(a, wp).add_f64(k);
    let den = XFloat::from_f64(b, wp).add_f64(k).mul_f64(k + 1.0);
    &(&num * z) / &den
}

/// Extended-precision `1F1(a; b; x)`, Kummer-transformed so the series runs
/// on a non-negative argument.
pub fn hyp1f1_big(a: f64, b: f64, x: &XFloat, prec: &PrecisionConfig) -> Result<XFloat> {
    HypergeoParams::new(a, b, x.to_f64()).check()?;
    let p = x.precision().max(bits_for_digits(prec.working_digits));
    let wp = p + 64;
    let cap = 10 * prec.working_digits as usize;
    let xb = x.with_precision(wp);
    let (sum, scale) = if xb.is_negative() {
        let z = -&xb;
        (kummer_series(b - a, b, &z, cap)?, Some(xb.exp()))
    } else {
        (kummer_series(a, b, &xb, cap)?, None)
    };
    let lost = (sum.max_term_ln - sum.sum.ln_abs_f64()).max(0.0) / std::f64::consts::LN_10;
    if lost > f64::from(prec.working_digits) - 12.0 {
        return Err(HarvestError::Precision { lost, working: prec.working_digits });
    }
    let r = match scale {
        Some(s) => &s * &sum.sum,
        None => sum.sum,
    };
    Ok(r.with_precision(p))
}

/// Confluent hypergeometric function `1F1(a; b; x)` rounded to `f64`.
pub fn hyp1f1(p: HypergeoParams, prec: &PrecisionConfig) -> Result<f64> {
    p.check()?;
    if p.x == 0.0 {
        return Ok(1.0);
    }
    let bits = bits_for_digits(prec.working_digits);
    let x = XFloat::from_f64(p.x, bits);
    Ok(hyp1f1_big(p.a, p.b, &x, prec)?.to_f64())
}

/// Direct summation of the Maclaurin series without the Kummer step.
///
/// For negative `x` the terms alternate and cancel by roughly `|x| log2 e`
/// bits, which are added as guard bits. Kept as an independent cross-check.
pub fn hyp1f1_direct(p: HypergeoParams, prec: &PrecisionConfig) -> Result<f64> {
    p.check()?;
    let guard = (2.0 * p.x.abs() * std::f64::consts::LOG2_E).ceil() as usize + 64;
    let wp = bits_for_digits(prec.working_digits) + guard;
    let limit = -(wp as f64) * std::f64::consts::LN_2;
    let x = XFloat::from_f64(p.x, wp);
    let mut term = XFloat::one(wp);
    let mut sum = XFloat::one(wp);
    let cap = 10 * prec.working_digits as usize + 4 * p.x.abs() as usize;
    for k in 0..cap {
        let kf = k as f64;
        if p.a + kf == 0.0 {
            return Ok(sum.to_f64());
        }
        term = &term * &pochhammer_step(p.a, p.b, kf, &x);
        sum = &sum + &term;
        if kf + 1.0 > p.x.abs() + p.a.abs() && term.ln_abs_f64() - sum.ln_abs_f64() < limit {
            return Ok(sum.to_f64());
        }
    }
    crate::error::numeric("direct 1F1 series exceeded its term budget")
}

/// Two-branch large-negative-argument expansion of `1F1(a; b; x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymExpansion {
    /// `power + cos(stokes_phase) * exponential`, the real-axis value.
    pub value: f64,
    /// `Gamma(b)/Gamma(b-a) |x|^-a sum_s (a)_s (a-b+1)_s / s! |x|^-s`.
    pub power: f64,
    /// `Gamma(b)/Gamma(a) e^x |x|^(a-b) sum_s (b-a)_s (1-a)_s / s! x^-s`.
    pub exponential: f64,
    /// `pi (b - a)`; the exponential branch enters with `e^(+-i phase)`.
    pub stokes_phase: f64,
    /// Magnitude of the first omitted terms of both branches.
    pub error_bound: f64,
}

/// Truncated asymptotic expansion for `x -> -inf`, keeping `order + 1`
/// terms of each branch.
pub fn hyp1f1_asym(p: HypergeoParams, order: usize) -> Result<AsymExpansion> {
    p.check()?;
    let (a, b) = (p.a, p.b);
    let scale = 1f64.max(a.abs()).max(b.abs());
    if !(p.x < 0.0) || p.x.abs() < 10.0 * scale {
        return Err(HarvestError::Regime(format!(
            "1F1 expansion needs x <= -10 max(1,|a|,|b|) = {}, got {}",
            -10.0 * scale,
            p.x
        )));
    }
    let y = -p.x;
    let gb = gamma(b)?;

    let (ps, p_next) = branch_sum(a, a - b + 1.0, 1.0 / y, order);
    let p_head = gb * rgamma(b - a) * y.powf(-a);
    let (es, e_next) = branch_sum(b - a, 1.0 - a, -1.0 / y, order);
    let e_head = gb * rgamma(a) * (-y).exp() * y.powf(a - b);

    let power = p_head * ps;
    let exponential = e_head * es;
    let c = cospi(b - a);
    Ok(AsymExpansion {
        value: power + c * exponential,
        power,
        exponential,
        stokes_phase: std::f64::consts::PI * (b - a),
        error_bound: (p_head * p_next).abs() + (c * e_head * e_next).abs(),
    })
}

/// Partial sum `sum_{s<=order} (u)_s (w)_s / s! t^s` and the next term.
fn branch_sum(u: f64, w: f64, t: f64, order: usize) -> (f64, f64) {
    let mut term = 1.0;
    let mut sum = 1.0;
    for s in 0..order {
        let sf = s as f64;
        term *= (u + sf) * (w + sf) / (sf + 1.0) * t;
        sum += term;
    }
    let sf = order as f64;
    let next = term * (u + sf) * (w + sf) / (sf + 1.0) * t;
    (sum, next)
}
