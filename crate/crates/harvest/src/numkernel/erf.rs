use super::xfloat::XFloat;
use crate::error::{numeric, Result};

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const SERIES_CUTOFF: f64 = 2.0;

/// Scaled complementary error function `e^(x^2) erfc(x)`.
///
/// Power series below `x = 2` (at most ~2.4 digits of cancellation there),
/// Laplace continued fraction above. Negative arguments use
/// `erfcx(-x) = 2 e^(x^2) - erfcx(x)`.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 * (x * x).exp() - erfcx(-x);
    }
    if x < SERIES_CUTOFF {
        erfcx_series(x)
    } else {
        erfcx_cf(x)
    }
}

fn erfcx_series(x: f64) -> f64 {
    // erf(x) e^(x^2) = (2/sqrt(pi)) sum_n 2^n x^(2n+1) / (2n+1)!!
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        term *= 2.0 * x2 / (2.0 * n + 3.0);
        sum += term;
        n += 1.0;
        if term <= 1e-17 * sum {
            break;
        }
    }
    x2.exp() - FRAC_2_SQRT_PI * sum
}

fn erfcx_cf(x: f64) -> f64 {
    // 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), modified Lentz.
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..20_000 {
        let a = 0.5 * f64::from(k);
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    0.5 * FRAC_2_SQRT_PI / f
}

/// Extended-precision `erfcx` for `x >= 0`.
pub fn erfcx_big(x: &XFloat) -> Result<XFloat> {
    let p = x.precision();
    let xf = x.to_f64();
    if xf < 0.0 {
        return crate::error::domain("erfcx_big needs x >= 0");
    }
    if xf < 6.0 {
        // e^(x^2) - erf(x) e^(x^2); the subtraction sheds ~x^2 log2(e) bits.
        let wp = p + (xf * xf * std::f64::consts::LOG2_E).ceil() as usize + 64;
        let xb = x.with_precision(wp);
        let x2 = &xb * &xb;
        let two_x2 = x2.mul_f64(2.0);
        let mut term = xb.clone();
        let mut sum = xb.clone();
        let limit = -(wp as f64) * std::f64::consts::LN_2;
        let mut n = 0u64;
        loop {
            term = &(&term * &two_x2) / &XFloat::from_f64(2.0 * n as f64 + 3.0, wp);
            sum = &sum + &term;
            n += 1;
            if (n as f64) > xf * xf && (&term / &sum).ln_abs_f64() < limit {
                break;
            }
            if n > 200_000 {
                return numeric("erfcx series did not converge");
            }
        }
        let two_over_sqrt_pi = XFloat::pi(wp).sqrt().recip().mul_f64(2.0);
        let r = &x2.exp() - &(&two_over_sqrt_pi * &sum);
        Ok(r.with_precision(p))
    } else {
        let wp = p + 32;
        let xb = x.with_precision(wp);
        let tiny = XFloat::from_f64(1e-300, wp);
        let mut f = xb.clone();
        let mut c = xb.clone();
        let mut d = XFloat::zero(wp);
        let limit = -(wp as f64) * std::f64::consts::LN_2;
        let mut k = 1u64;
        loop {
            let a = XFloat::from_f64(0.5 * k as f64, wp);
            d = &xb + &(&a * &d);
            if d.is_zero() {
                d = tiny.clone();
            }
            c = &xb + &(&a / &c);
            if c.is_zero() {
                c = tiny.clone();
            }
            d = d.recip();
            let delta = &c * &d;
            f = &f * &delta;
            if delta.add_f64(-1.0).ln_abs_f64() < limit {
                break;
            }
            k += 1;
            if k > 1_000_000 {
                return numeric("erfcx continued fraction did not converge");
            }
        }
        let inv_sqrt_pi = XFloat::pi(wp).sqrt().recip();
        Ok((&inv_sqrt_pi / &f).with_precision(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::xfloat::bits_for_digits;

    fn oracle(x: f64) -> f64 {
        erfcx_big(&XFloat::from_f64(x, 300)).unwrap().to_f64()
    }

    #[test]
    fn origin_and_tail() {
        assert_eq!(erfcx(0.0), 1.0);
        let x = 50.0;
        let lead = 1.0 / (x * std::f64::consts::PI.sqrt());
        assert!((erfcx(x) / lead - 1.0).abs() < 1e-3);
    }

    #[test]
    fn matches_extended_oracle() {
        for i in 0..200 {
            let x = 0.05 * f64::from(i) + 0.013;
            let (a, b) = (erfcx(x), oracle(x));
            assert!((a / b - 1.0).abs() < 1e-12, "x={x}: {a} vs {b}");
        }
        for &x in &[12.0, 25.0, 100.0, 1e4] {
            assert!((erfcx(x) / oracle(x) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn both_extended_branches_agree_at_the_switch() {
        let p = bits_for_digits(60);
        // Series at 5.999 versus fraction at 6.001, bridged by the derivative
        // erfcx'(x) = 2x erfcx(x) - 2/sqrt(pi).
        let lo = erfcx_big(&XFloat::from_f64(5.999, p)).unwrap().to_f64();
        let hi = erfcx_big(&XFloat::from_f64(6.001, p)).unwrap().to_f64();
        let mid = 0.5 * (lo + hi);
        let deriv = 2.0 * 6.0 * mid - FRAC_2_SQRT_PI;
        assert!(((hi - lo) / 0.002 - deriv).abs() < 1e-6 * mid.abs().max(1e-3));
    }

    #[test]
    fn reference_point() {
        // erfc(10/sqrt 2) e^50 at 60 digits, compared at f64 resolution.
        let x = 10.0 / 2f64.sqrt();
        let big = erfcx_big(&XFloat::from_f64(x, bits_for_digits(60))).unwrap();
        assert!((erfcx(x) / big.to_f64() - 1.0).abs() < 1e-13);
    }
}
