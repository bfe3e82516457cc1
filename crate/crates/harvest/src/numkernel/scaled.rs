use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const MANTISSA_LO: f64 = 1e-3;
const MANTISSA_HI: f64 = 1e3;

/// A real value `mantissa * e^log_scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledReal {
    pub mantissa: f64,
    pub log_scale: f64,
}

/// A complex value `mantissa * e^log_scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledComplex {
    pub mantissa: Complex64,
    pub log_scale: f64,
}

impl ScaledReal {
    pub fn new(mantissa: f64, log_scale: f64) -> Self {
        let mut s = ScaledReal { mantissa, log_scale };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let a = self.mantissa.abs();
        if a != 0.0 && a.is_finite() && !(MANTISSA_LO..=MANTISSA_HI).contains(&a) {
            self.log_scale += a.ln();
            self.mantissa = self.mantissa.signum();
        }
    }

    pub fn value(&self) -> f64 {
        self.mantissa * self.log_scale.exp()
    }

    /// Value with `e^shift` multiplied in; `at_scale(x)` undoes a factor `e^-x`.
    pub fn at_scale(&self, shift: f64) -> f64 {
        self.mantissa * (self.log_scale + shift).exp()
    }

    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.log_scale
    }

    pub fn to_complex(self) -> ScaledComplex {
        ScaledComplex::new(Complex64::new(self.mantissa, 0.0), self.log_scale)
    }
}

impl ScaledComplex {
    pub fn new(mantissa: Complex64, log_scale: f64) -> Self {
        let mut s = ScaledComplex { mantissa, log_scale };
        s.normalize();
        s
    }

    pub fn zero() -> Self {
        ScaledComplex { mantissa: Complex64::new(0.0, 0.0), log_scale: 0.0 }
    }

    fn normalize(&mut self) {
        let a = self.mantissa.norm();
        if a != 0.0 && a.is_finite() && !(MANTISSA_LO..=MANTISSA_HI).contains(&a) {
            self.log_scale += a.ln();
            self.mantissa /= a;
        }
    }

    pub fn value(&self) -> Complex64 {
        self.mantissa * self.log_scale.exp()
    }

    pub fn at_scale(&self, shift: f64) -> Complex64 {
        self.mantissa * (self.log_scale + shift).exp()
    }

    pub fn abs(&self) -> ScaledReal {
        ScaledReal::new(self.mantissa.norm(), self.log_scale)
    }

    pub fn ln_abs(&self) -> f64 {
        self.mantissa.norm().ln() + self.log_scale
    }

    pub fn conj(&self) -> Self {
        ScaledComplex { mantissa: self.mantissa.conj(), log_scale: self.log_scale }
    }

    pub fn scale_by(&self, c: Complex64) -> Self {
        ScaledComplex::new(self.mantissa * c, self.log_scale)
    }

    /// Relative distance `|a - b| / max(|a|, |b|)`, computed on a shared scale.
    pub fn rel_diff(&self, o: &ScaledComplex) -> f64 {
        let s = self.log_scale.max(o.log_scale);
        let a = self.at_scale(-s);
        let b = o.at_scale(-s);
        let den = a.norm().max(b.norm());
        if den == 0.0 {
            0.0
        } else {
            (a - b).norm() / den
        }
    }
}

impl Add for ScaledComplex {
    type Output = ScaledComplex;
    fn add(self, o: ScaledComplex) -> ScaledComplex {
        if self.mantissa.norm() == 0.0 {
            return o;
        }
        if o.mantissa.norm() == 0.0 {
            return self;
        }
        let s = self.log_scale.max(o.log_scale);
        ScaledComplex::new(self.at_scale(-s) + o.at_scale(-s), s)
    }
}

impl Neg for ScaledComplex {
    type Output = ScaledComplex;
    fn neg(self) -> ScaledComplex {
        ScaledComplex { mantissa: -self.mantissa, log_scale: self.log_scale }
    }
}

impl Sub for ScaledComplex {
    type Output = ScaledComplex;
    fn sub(self, o: ScaledComplex) -> ScaledComplex {
        self + (-o)
    }
}

impl Mul for ScaledComplex {
    type Output = ScaledComplex;
    fn mul(self, o: ScaledComplex) -> ScaledComplex {
        ScaledComplex::new(self.mantissa * o.mantissa, self.log_scale + o.log_scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn renormalizes_outside_band() {
        let s = ScaledComplex::new(Complex64::new(1e-8, 0.0), -50.0);
        assert!((s.mantissa.norm() - 1.0).abs() < 1e-15);
        assert!((s.log_scale - (-50.0 + (1e-8f64).ln())).abs() < 1e-12);
        let kept = ScaledComplex::new(Complex64::new(0.5, 0.1), -50.0);
        assert_eq!(kept.log_scale, -50.0);
    }

    #[test]
    fn survives_underflow() {
        let a = ScaledReal::new(3.0, -1000.0);
        assert_eq!(a.value(), 0.0);
        assert!((a.at_scale(1000.0) - 3.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn add_matches_plain_arithmetic(
            ar in -5.0f64..5.0, ai in -5.0f64..5.0, br in -5.0f64..5.0, bi in -5.0f64..5.0,
            sa in -40.0f64..0.0, sb in -40.0f64..0.0
        ) {
            let a = ScaledComplex::new(Complex64::new(ar, ai), sa);
            let b = ScaledComplex::new(Complex64::new(br, bi), sb);
            let plain = Complex64::new(ar, ai) * sa.exp() + Complex64::new(br, bi) * sb.exp();
            let got = (a + b).value();
            prop_assert!((got - plain).norm() <= 1e-12 * (plain.norm() + 1e-300) + 1e-300
                || (got - plain).norm() <= 1e-14 * (Complex64::new(ar, ai).norm() * sa.exp()
                    + Complex64::new(br, bi).norm() * sb.exp()));
        }
    }
}
