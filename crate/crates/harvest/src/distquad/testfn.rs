//! Test functions: smooth complex functions of one real variable with Taylor data.

use num_complex::Complex64 as C64;

use crate::error::{HarvestError, Result};

/// Highest Taylor order reachable by the finite-difference fallback.
pub const MAX_FD_ORDER: usize = 8;

pub trait TestFunction: Sync {
    fn eval(&self, v: f64) -> C64;

    /// Closed-form Taylor coefficients `φ⁽ᵏ⁾(v0)/k!` for `k = 0..=n`, if known.
    fn taylor(&self, _v0: f64, _n: usize) -> Option<Vec<C64>> {
        None
    }

    /// Interval outside which `|φ|` is below `e^{-tail²}` relative, if the
    /// function is localized.
    fn window(&self, _tail_sigmas: f64) -> Option<(f64, f64)> {
        None
    }

    /// Length scale used for finite-difference steps.
    fn scale(&self) -> f64 {
        1.0
    }

    /// Highest derivative order this function can supply.
    fn max_order(&self) -> usize {
        MAX_FD_ORDER
    }
}

/// Taylor coefficients at `v0`, analytic when available and otherwise from
/// Richardson-extrapolated central differences.
pub fn taylor_coeffs(phi: &dyn TestFunction, v0: f64, n: usize) -> Result<Vec<C64>> {
    if let Some(c) = phi.taylor(v0, n) {
        return Ok(c);
    }
    if n > phi.max_order() {
        return Err(HarvestError::Capability(format!(
            "derivative order {n} requested, test function supplies at most {}",
            phi.max_order()
        )));
    }
    let h0 = 0.25 * phi.scale();
    let mut out = Vec::with_capacity(n + 1);
    out.push(phi.eval(v0));
    let mut fact = 1.0;
    for k in 1..=n {
        fact *= k as f64;
        out.push(fd_derivative(phi, v0, k, h0) / fact);
    }
    Ok(out)
}

fn binom(n: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn central_difference(phi: &dyn TestFunction, v0: f64, k: usize, h: f64) -> C64 {
    let half = k as f64 / 2.0;
    let mut s = C64::default();
    for j in 0..=k {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        s += phi.eval(v0 + (half - j as f64) * h) * (sign * binom(k, j));
    }
    s / h.powi(k as i32)
}

fn fd_derivative(phi: &dyn TestFunction, v0: f64, k: usize, h0: f64) -> C64 {
    const LEVELS: usize = 4;
    let mut t: Vec<C64> = (0..LEVELS)
        .map(|i| central_difference(phi, v0, k, h0 / 2f64.powi(i as i32)))
        .collect();
    for m in 1..LEVELS {
        let f = 4f64.powi(m as i32);
        for i in (m..LEVELS).rev() {
            t[i] = (t[i] * f - t[i - 1]) / (f - 1.0);
        }
    }
    t[LEVELS - 1]
}

/// `amp · exp(−(v−center)²/(2 width²) − i ω v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPhase {
    pub amp: C64,
    pub center: f64,
    pub width: f64,
    pub omega: f64,
}

impl GaussianPhase {
    pub fn new(center: f64, width: f64, omega: f64) -> Self {
        Self { amp: C64::new(1.0, 0.0), center, width, omega }
    }

    pub fn eval_complex(&self, z: C64) -> C64 {
        let d = z - self.center;
        self.amp * (-(d * d) / (2.0 * self.width * self.width) - C64::new(0.0, self.omega) * z).exp()
    }
}

impl TestFunction for GaussianPhase {
    fn eval(&self, v: f64) -> C64 {
        let d = v - self.center;
        self.amp * C64::new(-d * d / (2.0 * self.width * self.width), -self.omega * v).exp()
    }

    fn taylor(&self, v0: f64, n: usize) -> Option<Vec<C64>> {
        // φ(v0+s) = φ(v0) exp(α s + β s²)
        let w2 = self.width * self.width;
        let alpha = C64::new(-(v0 - self.center) / w2, -self.omega);
        let two_beta = -1.0 / w2;
        let mut h = Vec::with_capacity(n + 1);
        h.push(C64::new(1.0, 0.0));
        if n >= 1 {
            h.push(alpha);
        }
        for k in 1..n {
            let next = (alpha * h[k] + h[k - 1] * two_beta) / (k + 1) as f64;
            h.push(next);
        }
        let f0 = self.eval(v0);
        Some(h.into_iter().map(|c| c * f0).collect())
    }

    fn window(&self, tail_sigmas: f64) -> Option<(f64, f64)> {
        let r = tail_sigmas * std::f64::consts::SQRT_2 * self.width;
        Some((self.center - r, self.center + r))
    }

    fn scale(&self) -> f64 {
        self.width
    }

    fn max_order(&self) -> usize {
        usize::MAX
    }
}

/// Wraps a closure; derivatives come from finite differences.
pub struct FnTest<F> {
    f: F,
    support: Option<(f64, f64)>,
    scale: f64,
    max_order: usize,
}

impl<F: Fn(f64) -> C64 + Sync> FnTest<F> {
    pub fn new(f: F) -> Self {
        Self { f, support: None, scale: 1.0, max_order: MAX_FD_ORDER }
    }

    pub fn with_support(mut self, lo: f64, hi: f64) -> Self {
        self.support = Some((lo, hi));
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_max_order(mut self, order: usize) -> Self {
        self.max_order = order.min(MAX_FD_ORDER);
        self
    }
}

impl<F: Fn(f64) -> C64 + Sync> TestFunction for FnTest<F> {
    fn eval(&self, v: f64) -> C64 {
        (self.f)(v)
    }
    fn window(&self, _tail_sigmas: f64) -> Option<(f64, f64)> {
        self.support
    }
    fn scale(&self) -> f64 {
        self.scale
    }
    fn max_order(&self) -> usize {
        self.max_order
    }
}

/// The `order`-th derivative of another test function.
pub struct Derivative<'a> {
    pub base: &'a dyn TestFunction,
    pub order: usize,
}

impl Derivative<'_> {
    fn factor(&self, k: usize) -> f64 {
        // (k+order)!/k!
        (1..=self.order).fold(1.0, |acc, j| acc * (k + j) as f64)
    }
}

impl TestFunction for Derivative<'_> {
    fn eval(&self, v: f64) -> C64 {
        if self.order == 0 {
            return self.base.eval(v);
        }
        match taylor_coeffs(self.base, v, self.order) {
            Ok(c) => c[self.order] * self.factor(0),
            Err(_) => C64::new(f64::NAN, f64::NAN),
        }
    }

    fn taylor(&self, v0: f64, n: usize) -> Option<Vec<C64>> {
        let c = self.base.taylor(v0, n + self.order)?;
        Some((0..=n).map(|k| c[k + self.order] * self.factor(k)).collect())
    }

    fn window(&self, tail_sigmas: f64) -> Option<(f64, f64)> {
        self.base.window(tail_sigmas)
    }

    fn scale(&self) -> f64 {
        self.base.scale()
    }

    fn max_order(&self) -> usize {
        self.base.max_order().saturating_sub(self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_taylor_matches_finite_differences() {
        let g = GaussianPhase::new(-0.7, 1.3, 2.0);
        let fd = FnTest::new(|v| g.eval(v)).with_scale(1.3);
        let exact = g.taylor(0.4, 6).unwrap();
        let approx = taylor_coeffs(&fd, 0.4, 6).unwrap();
        for k in 0..=6 {
            assert!((exact[k] - approx[k]).norm() < 1e-6, "k={k}: {} vs {}", exact[k], approx[k]);
        }
    }

    #[test]
    fn derivative_of_gaussian() {
        let g = GaussianPhase::new(0.0, 1.0, 0.0);
        let d = Derivative { base: &g, order: 1 };
        for &v in &[-1.2, 0.3, 2.0] {
            let exact = -v * (-v * v / 2.0f64).exp();
            assert!((d.eval(v).re - exact).abs() < 1e-15);
        }
        let d2 = Derivative { base: &g, order: 2 };
        let c = d2.taylor(0.5, 3).unwrap();
        assert!((c[0].re - (0.25 - 1.0) * (-0.125f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn order_beyond_capability() {
        let f = FnTest::new(|v: f64| C64::new(v.cos(), 0.0)).with_max_order(2);
        assert!(matches!(taylor_coeffs(&f, 0.0, 3), Err(HarvestError::Capability(_))));
    }
}
