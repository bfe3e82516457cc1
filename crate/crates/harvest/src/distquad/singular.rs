//! Finite-part integration across an algebraic singularity `|s|^{-μ}`.
//!
//! Inside a window `|s| < w` the smooth cofactor is expanded in Taylor series
//! and every monomial is integrated exactly, with `∫₀ʷ s^{k-μ} ds` continued
//! analytically in `μ`. Side weights may depend on the exponent, so at integer
//! `μ` the pole of the moment can cancel against a zero of the weights.

use num_complex::Complex64 as C64;

use super::gk;
use super::QuadConfig;
use crate::correlator::cispi;
use crate::error::{numeric, Result};

/// `Σ αⱼ e^{iπ tⱼ p}` as a function of the exponent `p`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PhaseWeight {
    terms: Vec<(C64, f64)>,
}

impl PhaseWeight {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C64) -> Self {
        Self { terms: vec![(c, 0.0)] }
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    /// `e^{iπ t p}`.
    pub fn cispi(t: f64) -> Self {
        Self { terms: vec![(C64::new(1.0, 0.0), t)] }
    }

    pub fn cos_pi() -> Self {
        Self { terms: vec![(C64::new(0.5, 0.0), 1.0), (C64::new(0.5, 0.0), -1.0)] }
    }

    pub fn sin_pi() -> Self {
        Self { terms: vec![(C64::new(0.0, -0.5), 1.0), (C64::new(0.0, 0.5), -1.0)] }
    }

    pub fn at(&self, p: f64) -> C64 {
        self.terms.iter().map(|&(a, t)| a * cispi(t * p)).sum()
    }

    fn norm1(&self) -> f64 {
        self.terms.iter().map(|(a, _)| a.norm()).sum()
    }

    /// `(W(p0+ε) − W(p0))/ε`, stable as `ε → 0`.
    fn diff_quot(&self, p0: f64, eps: f64) -> C64 {
        self.terms
            .iter()
            .map(|&(a, t)| {
                let x = std::f64::consts::PI * t * eps;
                let q = if eps == 0.0 {
                    C64::new(0.0, std::f64::consts::PI * t)
                } else {
                    // (e^{ix} − 1)/ε = 2i sin(x/2) e^{ix/2} / ε
                    C64::new(0.0, 2.0 * (0.5 * x).sin() / eps) * C64::from_polar(1.0, 0.5 * x)
                };
                a * cispi(t * p0) * q
            })
            .sum()
    }
}

/// A point `at` where the integrand is `W_±(μ) |s|^{-μ} c(s)`, `s = v − at`.
#[derive(Debug, Clone)]
pub struct SingularPoint {
    pub at: f64,
    pub exponent: f64,
    pub right: PhaseWeight,
    pub left: PhaseWeight,
}

/// Finite part of `∫_{-w}^{w}` around the point, given the cofactor's Taylor
/// coefficients. Returns the value and the size of the last retained term.
pub fn window_integral(sp: &SingularPoint, coeffs: &[C64], w: f64) -> (C64, f64) {
    let mu = sp.exponent;
    let lnw = w.ln();
    let mut sum = C64::default();
    let mut last = 0.0;
    for (k, &c) in coeffs.iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let e = (k + 1) as f64 - mu;
        let term = if e.abs() > 0.5 {
            let q = sp.right.at(mu) + sp.left.at(mu) * sign;
            c * q * ((e * lnw).exp() / e)
        } else {
            let p0 = (k + 1) as f64;
            let eps = mu - p0;
            let q0 = sp.right.at(p0) + sp.left.at(p0) * sign;
            let qd = sp.right.diff_quot(p0, eps) + sp.left.diff_quot(p0, eps) * sign;
            let scale = sp.right.norm1() + sp.left.norm1();
            let wpow = (-eps * lnw).exp();
            let pole = if q0.norm() <= 1e-14 * scale {
                C64::default()
            } else if eps == 0.0 {
                q0 * lnw
            } else {
                q0 * (wpow / -eps)
            };
            c * (pole - qd * wpow)
        };
        last = term.norm();
        sum += term;
    }
    (sum, last)
}

/// A singular point together with a source of cofactor Taylor coefficients.
pub struct Site<'a> {
    pub point: SingularPoint,
    pub cofactor: Box<dyn Fn(usize) -> Result<Vec<C64>> + 'a>,
}

/// Number of Taylor terms tried first, beyond the exponent itself.
const BASE_TERMS: usize = 40;
const MAX_TERMS: usize = 320;

pub(crate) fn site_contribution(site: &Site<'_>, w: f64) -> Result<C64> {
    let mut n = BASE_TERMS + site.point.exponent.ceil().max(0.0) as usize;
    loop {
        let coeffs = (site.cofactor)(n)?;
        let (val, last) = window_integral(&site.point, &coeffs, w);
        let short = coeffs.len() <= n;
        if short || last <= 1e-16 * val.norm().max(f64::MIN_POSITIVE) || last == 0.0 {
            return Ok(val);
        }
        if n >= MAX_TERMS {
            return numeric(format!(
                "Taylor window at v = {} not converged after {n} terms (last term {last:.3e})",
                site.point.at
            ));
        }
        n *= 2;
    }
}

/// Finite-part integral of `f` over `[lo, hi]`, where `f` is regular away from
/// the sites. Each site owns the window `[at − w, at + w]`.
pub(crate) fn integrate_with_sites(
    f: &(dyn Fn(f64) -> C64 + Sync),
    lo: f64,
    hi: f64,
    sites: &[Site<'_>],
    w: f64,
    cfg: &QuadConfig,
) -> Result<C64> {
    let mut total = C64::default();
    let mut cuts: Vec<(f64, f64)> = Vec::new();
    for s in sites {
        let p = s.point.at;
        if p + w < lo || p - w > hi {
            continue;
        }
        total += site_contribution(s, w)?;
        cuts.push((p - w, p + w));
    }
    cuts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut cursor = lo;
    let mut pieces: Vec<(f64, f64)> = Vec::new();
    for (a, b) in cuts {
        if a > cursor {
            pieces.push((cursor, a.min(hi)));
        }
        cursor = cursor.max(b);
    }
    if cursor < hi {
        pieces.push((cursor, hi));
    }
    for (a, b) in pieces {
        if b > a {
            let r = gk::integrate(f, &[a, b], cfg)?;
            total += r.value;
        }
    }
    Ok(total)
}
