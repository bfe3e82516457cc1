//! Integrals of `g(v)|v² − L²|^{-Δ}` with finite parts at `v = ±L`.

use num_complex::Complex64 as C64;

use super::singular::{integrate_with_sites, PhaseWeight, SingularPoint, Site};
use super::testfn::{taylor_coeffs, TestFunction};
use super::QuadConfig;
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Region {
    Interior,
    ExteriorLeft,
    ExteriorRight,
}

/// Weights multiplying `|v² − L²|^{-Δ}` on `|v| < L`, `v > L` and `v < −L`,
/// each a function of `Δ`.
#[derive(Debug, Clone, Default)]
pub struct RegionWeights {
    pub interior: PhaseWeight,
    pub right: PhaseWeight,
    pub left: PhaseWeight,
}

impl RegionWeights {
    pub fn only(region: Region) -> Self {
        let mut w = Self::default();
        match region {
            Region::Interior => w.interior = PhaseWeight::one(),
            Region::ExteriorRight => w.right = PhaseWeight::one(),
            Region::ExteriorLeft => w.left = PhaseWeight::one(),
        }
        w
    }
}

/// `(2L ± s)^{-Δ}` Taylor coefficients times those of `g` at `±L`.
fn cofactor(g: &dyn TestFunction, lbar: f64, delta: f64, at_plus: bool, n: usize) -> Result<Vec<C64>> {
    let v0 = if at_plus { lbar } else { -lbar };
    let gc = taylor_coeffs(g, v0, n.min(g.max_order()))?;
    let n = gc.len() - 1;
    let two_l = 2.0 * lbar;
    let dir = if at_plus { 1.0 } else { -1.0 };
    let mut b = Vec::with_capacity(n + 1);
    b.push(two_l.powf(-delta));
    for k in 0..n {
        let prev: f64 = b[k];
        b.push(prev * (-delta - k as f64) / ((k + 1) as f64 * two_l) * dir);
    }
    Ok((0..=n).map(|k| (0..=k).map(|j| gc[j] * b[k - j]).sum()).collect())
}

/// Finite-part value of `∫ g(v) W(v) |v² − L²|^{-Δ} dv` over the whole line.
pub fn weighted_line_quad(
    g: &dyn TestFunction,
    lbar: f64,
    delta: f64,
    weights: &RegionWeights,
    cfg: &QuadConfig,
) -> Result<C64> {
    cfg.validate()?;
    if !(lbar > 0.0) || !(delta > 0.0) {
        return domain(format!("endpoint quadrature needs L > 0 and Δ > 0 (L = {lbar}, Δ = {delta})"));
    }
    let (wi, wr, wl) = (weights.interior.at(delta), weights.right.at(delta), weights.left.at(delta));
    let f = move |v: f64| {
        let a = v.abs();
        let wt = if a < lbar {
            wi
        } else if v > 0.0 {
            wr
        } else {
            wl
        };
        if wt == C64::default() {
            return wt;
        }
        g.eval(v) * wt * (lbar * lbar - v * v).abs().powf(-delta)
    };
    let sites = [
        Site {
            point: SingularPoint {
                at: lbar,
                exponent: delta,
                right: weights.right.clone(),
                left: weights.interior.clone(),
            },
            cofactor: Box::new(move |n| cofactor(g, lbar, delta, true, n)),
        },
        Site {
            point: SingularPoint {
                at: -lbar,
                exponent: delta,
                right: weights.interior.clone(),
                left: weights.left.clone(),
            },
            cofactor: Box::new(move |n| cofactor(g, lbar, delta, false, n)),
        },
    ];
    let mut w = (cfg.endpoint_window * g.scale()).min(0.5 * lbar);
    if g.max_order() != usize::MAX {
        w = w.min(0.05 * g.scale());
    }
    let (mut lo, mut hi) = g.window(cfg.tail_sigmas).unwrap_or((-lbar, lbar));
    if weights.left == PhaseWeight::zero() {
        lo = lo.max(-lbar);
    }
    if weights.right == PhaseWeight::zero() {
        hi = hi.min(lbar);
    }
    if weights.interior == PhaseWeight::zero() {
        if lo >= -lbar && hi <= lbar {
            return Ok(C64::default());
        }
        // exterior only: integrate the two outer pieces separately
        let mut total = C64::default();
        if lo < -lbar {
            total += integrate_with_sites(&f, lo, -lbar, &sites[1..], w, cfg)?;
        }
        if hi > lbar {
            total += integrate_with_sites(&f, lbar, hi, &sites[..1], w, cfg)?;
        }
        return Ok(total);
    }
    integrate_with_sites(&f, lo, hi, &sites, w, cfg)
}

/// Finite-part value of `∫_region g(v)|v² − L²|^{-Δ} dv`.
///
/// At integer `Δ` the one-sided window keeps its `ln w` Hadamard term.
pub fn endpoint_regularized_quad(
    g: &dyn TestFunction,
    lbar: f64,
    delta: f64,
    region: Region,
    cfg: &QuadConfig,
) -> Result<C64> {
    weighted_line_quad(g, lbar, delta, &RegionWeights::only(region), cfg)
}
