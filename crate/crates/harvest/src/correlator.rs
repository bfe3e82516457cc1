//! Two-point kernels of a scalar primary with the `iε` limits resolved into
//! explicit phases, plus the bulk AdS Wightman function used for the
//! boundary-limit consistency check.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, HarvestError, Result};
use crate::numkernel::{cospi, gamma, hyp2f1_series, rgamma, sinpi};

/// Kernel argument in switching-width units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelPoint {
    /// Time difference `(t - t')/T`.
    pub v: f64,
    /// Spatial separation `L/T`.
    pub lbar: f64,
    pub delta_dim: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BulkPoint {
    pub xi: f64,
    pub delta_dim: f64,
    pub d: u32,
}

impl KernelPoint {
    pub fn new(v: f64, lbar: f64, delta_dim: f64) -> Self {
        KernelPoint { v, lbar, delta_dim }
    }

    fn validate(&self) -> Result<()> {
        if !(self.delta_dim > 0.0) {
            return domain(format!("scaling dimension must be positive, got {}", self.delta_dim));
        }
        if !(self.lbar >= 0.0) {
            return domain(format!("separation must be non-negative, got {}", self.lbar));
        }
        let gap = (self.v.abs() - self.lbar).abs();
        if gap <= 1e-13 * self.lbar.max(1.0) {
            return Err(HarvestError::Singularity { v: self.v, lbar: self.lbar });
        }
        Ok(())
    }

    fn magnitude(&self) -> f64 {
        let a = self.v.abs();
        ((self.lbar - a) * (self.lbar + a)).abs().powf(-self.delta_dim)
    }

    fn timelike(&self) -> bool {
        self.v.abs() > self.lbar
    }
}

/// Returns a warning when Δ sits below the unitarity bound `(d-2)/2`.
pub fn unitarity_warning(delta_dim: f64, d: u32) -> Option<String> {
    let bound = (f64::from(d) - 2.0) / 2.0;
    (delta_dim < bound).then(|| format!("Δ = {delta_dim} is below the unitarity bound {bound} for d = {d}"))
}

/// `e^(i pi s)` with exact values on the half-integer lattice.
pub fn cispi(s: f64) -> C64 {
    C64::new(cospi(s), sinpi(s))
}

/// Wightman kernel `lim (L^2 - (v - iε)^2)^-Δ`.
pub fn wightman_kernel(p: KernelPoint) -> Result<C64> {
    p.validate()?;
    let m = p.magnitude();
    if !p.timelike() {
        Ok(C64::new(m, 0.0))
    } else if p.v > 0.0 {
        Ok(cispi(-p.delta_dim) * m)
    } else {
        Ok(cispi(p.delta_dim) * m)
    }
}

/// Time-ordered kernel `lim (L^2 - v^2 + iε|v|)^-Δ`.
pub fn feynman_kernel(p: KernelPoint) -> Result<C64> {
    p.validate()?;
    let m = p.magnitude();
    if p.timelike() {
        Ok(cispi(-p.delta_dim) * m)
    } else {
        Ok(C64::new(m, 0.0))
    }
}

/// Anticommutator part, `Re W`.
pub fn kernel_sym(p: KernelPoint) -> Result<f64> {
    Ok(wightman_kernel(p)?.re)
}

/// Commutator part, `i Im W`.
pub fn kernel_asym(p: KernelPoint) -> Result<C64> {
    Ok(C64::new(0.0, wightman_kernel(p)?.im))
}

/// Bulk normalisation `2^Δ Γ(Δ) Γ(Δ-(d-1)/2) / ((4π)^((d+1)/2) Γ(2Δ-d+1))`.
///
/// Vanishes when `2Δ-d+1` is a non-positive integer (for example Δ=1, d=4).
pub fn bulk_normalization(delta_dim: f64, d: u32) -> Result<f64> {
    let df = f64::from(d);
    let g1 = gamma(delta_dim)?;
    let g2 = gamma(delta_dim - (df - 1.0) / 2.0)?;
    let four_pi = 4.0 * std::f64::consts::PI;
    Ok(2f64.powf(delta_dim) * g1 * g2 * rgamma(2.0 * delta_dim - df + 1.0)
        / four_pi.powf((df + 1.0) / 2.0))
}

fn bulk_shape(xi: f64, delta_dim: f64, d: u32) -> Result<f64> {
    let df = f64::from(d);
    let f = hyp2f1_series(
        delta_dim,
        delta_dim - df / 2.0 + 1.0,
        2.0 * delta_dim - df + 1.0,
        xi * xi,
        1e-15,
    )?;
    Ok(xi.powf(delta_dim) * f)
}

/// Bulk Wightman function `N_Δ ξ^Δ 2F1(Δ, Δ-d/2+1; 2Δ-d+1; ξ^2)`.
pub fn bulk_wightman(p: BulkPoint) -> Result<f64> {
    if !(p.xi > 0.0 && p.xi < 1.0) {
        return domain(format!("ξ must lie in (0,1), got {}", p.xi));
    }
    Ok(bulk_normalization(p.delta_dim, p.d)? * bulk_shape(p.xi, p.delta_dim, p.d)?)
}

/// Rescaled bulk function `2^-Δ h^-2Δ ξ^Δ 2F1(...)` at bulk depth `z = z' = h`,
/// i.e. the boundary-limit integrand with the normalisation divided out.
pub fn rescaled_bulk(v: f64, lbar: f64, delta_dim: f64, d: u32, h: f64) -> Result<f64> {
    let denom = 2.0 * h * h + (lbar - v) * (lbar + v);
    if !(denom > 0.0) {
        return domain("boundary-limit check needs spacelike separation");
    }
    let xi = 2.0 * h * h / denom;
    Ok(bulk_shape(xi, delta_dim, d)? * (2.0 * h * h).powf(-delta_dim))
}

/// Worst relative deviation between the `h -> 0` extrapolated rescaled bulk
/// function and the boundary Wightman kernel over spacelike `(v, lbar)` points.
///
/// Uses `h in {1e-2, 1e-3, 1e-4}` and polynomial extrapolation in `h^2`.
pub fn extrapolate_limit_check(delta_dim: f64, d: u32, points: &[(f64, f64)]) -> Result<f64> {
    let hs = [1e-2, 1e-3, 1e-4];
    let mut worst = 0.0f64;
    for &(v, lbar) in points {
        if v.abs() >= lbar {
            return domain(format!("point (v={v}, lbar={lbar}) is not spacelike"));
        }
        let xs: Vec<f64> = hs.iter().map(|h| h * h).collect();
        let ys = hs
            .iter()
            .map(|&h| rescaled_bulk(v, lbar, delta_dim, d, h))
            .collect::<Result<Vec<_>>>()?;
        let limit = neville_at_zero(&xs, &ys);
        let target = wightman_kernel(KernelPoint::new(v, lbar, delta_dim))?.re;
        worst = worst.max((limit / target - 1.0).abs());
    }
    Ok(worst)
}

/// Value at 0 of the interpolating polynomial through `(xs, ys)`.
pub(crate) fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = p.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i]);
        }
    }
    p[0]
}
