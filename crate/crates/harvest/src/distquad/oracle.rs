//! Reference values from ε-regulated integrals, extrapolated to ε = 0.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::gk;
use super::QuadConfig;
use crate::correlator::neville_at_zero;
use crate::error::{domain, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: C64,
    /// Spread between the two highest-order extrapolants.
    pub residual: f64,
    pub reliable: bool,
    pub samples: Vec<(f64, C64)>,
}

/// Polynomial extrapolation in `ε^power` of `∫ f(v, ε) dv` over `[lo, hi]`.
///
/// `breakpoints` mark where the regulated integrand peaks; each gets extra
/// cuts at `±ε·{1, 10, 100}` so the adaptive rule starts resolved.
pub fn eps_extrapolation_oracle(
    f: &(dyn Fn(f64, f64) -> C64 + Sync),
    lo: f64,
    hi: f64,
    breakpoints: &[f64],
    eps_list: &[f64],
    power: i32,
    cfg: &QuadConfig,
) -> Result<OracleResult> {
    if eps_list.len() < 3 {
        return domain("ε list needs at least three entries");
    }
    if eps_list.windows(2).any(|w| !(w[1] < w[0]) || w[1] <= 0.0) {
        return domain("ε list must be positive and strictly decreasing");
    }
    let mut samples = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let mut pts = vec![lo, hi];
        for &b in breakpoints {
            for m in [0.0, 1.0, 10.0, 100.0, -1.0, -10.0, -100.0] {
                let p = b + m * eps;
                if p > lo && p < hi {
                    pts.push(p);
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let g = |v: f64| f(v, eps);
        samples.push((eps, gk::integrate(&g, &pts, cfg)?.value));
    }
    let xs: Vec<f64> = samples.iter().map(|(e, _)| e.powi(power)).collect();
    let extrapolate = |n: usize| {
        let re: Vec<f64> = samples[..n].iter().map(|s| s.1.re).collect();
        let im: Vec<f64> = samples[..n].iter().map(|s| s.1.im).collect();
        C64::new(neville_at_zero(&xs[..n], &re), neville_at_zero(&xs[..n], &im))
    };
    let ext: Vec<C64> = (1..=samples.len()).map(extrapolate).collect();
    let diffs: Vec<f64> = ext.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let reliable = diffs.windows(2).all(|d| d[1] <= d[0] * 1.5 + 1e-15 * ext[0].norm());
    let value = *ext.last().expect("non-empty");
    let residual = *diffs.last().expect("at least two extrapolants");
    Ok(OracleResult { value, residual, reliable, samples })
}
