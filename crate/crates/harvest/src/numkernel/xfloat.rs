//! Thin arithmetic wrapper over `astro_float_num::BigFloat` that carries its
//! own precision and hides the rounding-mode and constant-cache plumbing.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float_num::{BigFloat, Consts, RoundingMode, Sign};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Bits of mantissa needed for `digits` decimal digits plus a guard word.
pub fn bits_for_digits(digits: u32) -> usize {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize + 64
}

#[derive(Clone)]
pub struct XFloat {
    v: BigFloat,
    p: usize,
}

impl XFloat {
    pub fn from_f64(x: f64, p: usize) -> Self {
        XFloat { v: BigFloat::from_f64(x, p), p }
    }

    pub fn from_i64(n: i64, p: usize) -> Self {
        XFloat { v: BigFloat::from_i64(n, p), p }
    }

    pub fn zero(p: usize) -> Self {
        Self::from_i64(0, p)
    }

    pub fn one(p: usize) -> Self {
        Self::from_i64(1, p)
    }

    pub fn pi(p: usize) -> Self {
        XFloat { v: with_consts(|cc| cc.pi(p, RM)), p }
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn with_precision(&self, p: usize) -> Self {
        let mut v = self.v.clone();
        // Widening never fails; narrowing rounds.
        let _ = v.set_precision(p, RM);
        XFloat { v, p }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative()
    }

    pub fn abs(&self) -> Self {
        XFloat { v: self.v.abs(), p: self.p }
    }

    pub fn sqrt(&self) -> Self {
        XFloat { v: self.v.sqrt(self.p, RM), p: self.p }
    }

    pub fn exp(&self) -> Self {
        let v = with_consts(|cc| self.v.exp(self.p, RM, cc));
        XFloat { v, p: self.p }
    }

    pub fn ln(&self) -> Self {
        let v = with_consts(|cc| self.v.ln(self.p, RM, cc));
        XFloat { v, p: self.p }
    }

    pub fn powf(&self, e: &XFloat) -> Self {
        let p = self.p.max(e.p);
        let v = with_consts(|cc| self.v.pow(&e.v, p, RM, cc));
        XFloat { v, p }
    }

    pub fn powi(&self, n: usize) -> Self {
        XFloat { v: self.v.powi(n, self.p, RM), p: self.p }
    }

    pub fn recip(&self) -> Self {
        XFloat { v: self.v.reciprocal(self.p, RM), p: self.p }
    }

    /// Binary exponent `e` with `|self| = 0.m * 2^e`, or `None` for zero.
    pub fn exponent(&self) -> Option<i64> {
        if self.v.is_zero() {
            None
        } else {
            self.v.exponent().map(i64::from)
        }
    }

    /// Nearest `f64`. Overflows to infinity and underflows to zero.
    pub fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf() {
            return if self.v.is_inf_pos() { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        let Some((words, _, sign, e, _)) = self.v.as_raw_parts() else {
            return f64::NAN;
        };
        let Some(&top) = words.last() else {
            return 0.0;
        };
        if top == 0 {
            return 0.0;
        }
        let m = top as f64;
        let r = ldexp(m, i64::from(e) - 64);
        if sign == Sign::Neg {
            -r
        } else {
            r
        }
    }

    /// Natural log of the absolute value, as an `f64`; usable far outside
    /// the `f64` exponent range.
    pub fn ln_abs_f64(&self) -> f64 {
        match self.exponent() {
            None => f64::NEG_INFINITY,
            Some(e) => {
                let mut m = self.abs();
                m.v.set_exponent(0);
                m.to_f64().ln() + e as f64 * std::f64::consts::LN_2
            }
        }
    }

    pub fn cmp_abs(&self, o: &XFloat) -> Ordering {
        match self.v.abs_cmp(&o.v) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    pub fn add_f64(&self, x: f64) -> Self {
        self + &XFloat::from_f64(x, self.p)
    }

    pub fn mul_f64(&self, x: f64) -> Self {
        self * &XFloat::from_f64(x, self.p)
    }

    pub fn div_f64(&self, x: f64) -> Self {
        self / &XFloat::from_f64(x, self.p)
    }
}

/// `m * 2^e` without intermediate overflow of the power of two.
pub fn ldexp(mut m: f64, mut e: i64) -> f64 {
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
        if m.is_infinite() {
            return m;
        }
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
        if m == 0.0 {
            return m;
        }
    }
    m * 2f64.powi(e as i32)
}

impl fmt::Debug for XFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XFloat({:e}, {} bits)", self.to_f64(), self.p)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&XFloat> for &XFloat {
            type Output = XFloat;
            fn $m(self, o: &XFloat) -> XFloat {
                let p = self.p.max(o.p);
                XFloat { v: self.v.$m(&o.v, p, RM), p }
            }
        }
        impl $tr<XFloat> for XFloat {
            type Output = XFloat;
            fn $m(self, o: XFloat) -> XFloat {
                (&self).$m(&o)
            }
        }
        impl $tr<&XFloat> for XFloat {
            type Output = XFloat;
            fn $m(self, o: &XFloat) -> XFloat {
                (&self).$m(o)
            }
        }
        impl $tr<XFloat> for &XFloat {
            type Output = XFloat;
            fn $m(self, o: XFloat) -> XFloat {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for XFloat {
    type Output = XFloat;
    fn neg(self) -> XFloat {
        XFloat { v: BigFloat::neg(&self.v), p: self.p }
    }
}

impl Neg for &XFloat {
    type Output = XFloat;
    fn neg(self) -> XFloat {
        XFloat { v: BigFloat::neg(&self.v), p: self.p }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_f64() {
        for &x in &[1.0, -3.25, 1e-300, 7.0e300, std::f64::consts::PI, -2.5e-10] {
            assert_eq!(XFloat::from_f64(x, 128).to_f64(), x);
        }
        assert_eq!(XFloat::zero(128).to_f64(), 0.0);
    }

    #[test]
    fn ln_abs_beyond_f64_range() {
        let big = XFloat::from_f64(1000.0, 200).exp();
        assert!(big.to_f64().is_infinite());
        assert!((big.ln_abs_f64() - 1000.0).abs() < 1e-12);
        let tiny = XFloat::from_f64(-1000.0, 200).exp();
        assert!((tiny.ln_abs_f64() + 1000.0).abs() < 1e-12);
    }

    #[test]
    fn arithmetic_carries_extra_digits() {
        let p = bits_for_digits(40);
        let one = XFloat::one(p);
        let tiny = XFloat::from_f64(1e-30, p);
        let back = (&(&one + &tiny) - &one) / &tiny;
        assert!((back.to_f64() - 1.0).abs() < 1e-8);
    }
}
