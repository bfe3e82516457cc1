//! Entanglement and correlation measures on the two-detector state.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::densmat::{MatrixElements, TwoQubitState};
use crate::error::{domain, numeric, HarvestError, Result};
use crate::numkernel::xfloat::bits_for_digits;
use crate::numkernel::{PrecisionConfig, ScaledComplex, ScaledReal, XFloat};

fn require_positive(laa: &ScaledReal) -> Result<()> {
    if !(laa.mantissa > 0.0) || !laa.log_scale.is_finite() {
        return domain(format!("L_AA must be positive, got {:e}·e^{}", laa.mantissa, laa.log_scale));
    }
    Ok(())
}

/// `max(0, |a| − b)` on a shared scale.
fn clamped_excess(a: &ScaledComplex, b: &ScaledReal) -> Result<ScaledReal> {
    if a.mantissa.norm() == 0.0 {
        return Ok(ScaledReal::new(0.0, 0.0));
    }
    let s = a.log_scale.max(b.log_scale);
    let x = a.mantissa.norm() * (a.log_scale - s).exp() - b.mantissa * (b.log_scale - s).exp();
    if !x.is_finite() {
        return numeric("negativity: scales not representable on a common exponent");
    }
    Ok(ScaledReal::new(x.max(0.0), s))
}

/// `max(0, |M| − L_AA)` per unit `λ̄²`.
pub fn negativity_pert(laa: ScaledReal, m: ScaledComplex) -> Result<ScaledReal> {
    require_positive(&laa)?;
    clamped_excess(&m, &laa)
}

/// Eigenvalues of the Hermitian block `[[a, b], [b*, c]]`, smaller first.
/// The smaller one is formed as `(ac − |b|²)/λ₊` so it keeps full relative
/// accuracy when it is tiny next to the larger.
fn block_eigs(a: f64, c: f64, b: C64) -> (f64, f64) {
    let mean = 0.5 * (a + c);
    let rad = (0.25 * (a - c) * (a - c) + b.norm_sqr()).sqrt();
    if mean >= 0.0 {
        let hi = mean + rad;
        let lo = if hi == 0.0 { 0.0 } else { (a * c - b.norm_sqr()) / hi };
        (lo, hi)
    } else {
        let lo = mean - rad;
        (lo, (a * c - b.norm_sqr()) / lo)
    }
}

fn is_x_shaped(r: &[[C64; 4]; 4]) -> bool {
    (0..4).all(|i| (0..4).all(|j| i == j || i + j == 3 || r[i][j] == C64::default()))
}

/// Eigenvalues of the partial transpose over the second qubit.
pub fn partial_transpose_spectrum(rho: &TwoQubitState) -> Result<[f64; 4]> {
    let scale = rho.rho.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    rho.check_hermitian(1e-12 * scale.max(f64::MIN_POSITIVE))?;
    let pt = rho.partial_transpose();
    let r = &pt.rho;
    let mut ev = if is_x_shaped(r) {
        let (a0, a1) = block_eigs(r[0][0].re, r[3][3].re, r[0][3]);
        let (b0, b1) = block_eigs(r[1][1].re, r[2][2].re, r[1][2]);
        [a0, a1, b0, b1]
    } else {
        let m = Matrix4::from_fn(|i, j| r[i][j]);
        let e = SymmetricEigen::new(m);
        [e.eigenvalues[0], e.eigenvalues[1], e.eigenvalues[2], e.eigenvalues[3]]
    };
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// `(‖ρ^{T_B}‖₁ − 1)/2`, i.e. the summed magnitude of negative eigenvalues.
pub fn negativity_exact(rho: &TwoQubitState) -> Result<f64> {
    let ev = partial_transpose_spectrum(rho)?;
    Ok(ev.iter().filter(|&&x| x < 0.0).map(|x| -x).sum())
}

/// Exact negativity of the second-order state, per unit `λ̄²`, split into the
/// perturbative part and the remainder.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CouplingExpansion {
    pub lambda_bar: f64,
    /// `𝒩(ρ_AB)/λ̄²`.
    pub per_coupling: ScaledReal,
    /// `𝒩(ρ_AB)/λ̄² − max(0, |M| − L_AA)`.
    pub residual: ScaledReal,
}

fn big_from_scaled(x: &ScaledReal, bits: usize) -> XFloat {
    &XFloat::from_f64(x.log_scale, bits).exp() * &XFloat::from_f64(x.mantissa, bits)
}

fn scaled_from_big(x: &XFloat) -> ScaledReal {
    if x.is_zero() {
        return ScaledReal::new(0.0, 0.0);
    }
    let k = x.ln_abs_f64().floor();
    let bits = x.precision();
    let m = (x * &XFloat::from_f64(-k, bits).exp()).to_f64();
    ScaledReal::new(m, k)
}

/// Exact negativity of [`rho_ab`](crate::densmat::rho_ab) evaluated in
/// extended precision.
///
/// With matrix elements of order `e^{−T²Ω²/2}` the quartic remainder sits some
/// thirty digits below the leading term, far past what an `f64` eigensolver
/// resolves. The partial transpose of this X-shaped state splits into a
/// `{gg, ee}` block and a `{ge, eg}` block whose eigenvalues are computed here
/// from the elements directly, carrying `prec.working_digits`.
pub fn negativity_exact_expansion(
    e: &MatrixElements,
    lambda_bar: f64,
    prec: &PrecisionConfig,
) -> Result<CouplingExpansion> {
    require_positive(&e.laa)?;
    prec.validate()?;
    if !(lambda_bar > 0.0) || !lambda_bar.is_finite() {
        return domain(format!("coupling must be positive, got {lambda_bar}"));
    }
    let bits = bits_for_digits(prec.working_digits);
    let l2 = XFloat::from_f64(lambda_bar, bits);
    let l2 = &l2 * &l2;
    let laa = big_from_scaled(&e.laa, bits);
    let m_abs = big_from_scaled(&e.m.abs(), bits);
    let lab_abs = big_from_scaled(&e.lab.abs(), bits);

    let ground = &XFloat::one(bits) - &(&l2 * &laa).mul_f64(2.0);
    if ground.is_negative() {
        return Err(HarvestError::Perturbativity((&l2 * &laa).to_f64()));
    }
    // {gg, ee}: [[ground, λ²L_AB], [λ²L_AB*, 0]], negative eigenvalue −|b|²/λ₊
    let b2 = &(&l2 * &lab_abs) * &(&l2 * &lab_abs);
    let hi = &(&ground + &(&(&ground * &ground) + &b2.mul_f64(4.0)).sqrt()).div_f64(2.0);
    let neg_pop = &b2 / hi;
    // {ge, eg}: λ²(L_AA ± |M|)
    let excess = &m_abs - &laa;
    let neg_coh = if excess.is_negative() { XFloat::zero(bits) } else { &l2 * &excess };

    let total = &neg_pop + &neg_coh;
    let per = &total / &l2;
    let pert = if excess.is_negative() { XFloat::zero(bits) } else { excess };
    let residual = &per - &pert;
    Ok(CouplingExpansion { lambda_bar, per_coupling: scaled_from_big(&per), residual: scaled_from_big(&residual) })
}

/// `(1+r)ln(1+r) + (1−r)ln(1−r)`, by its even series for small `r`.
pub fn mi_bracket(r: f64) -> f64 {
    if r < 1e-4 {
        let r2 = r * r;
        // Σ r^{2k} / (k(2k−1))
        r2 * (1.0 + r2 / 6.0 + r2 * r2 / 15.0)
    } else if r >= 1.0 {
        2.0 * std::f64::consts::LN_2
    } else {
        (1.0 + r) * r.ln_1p() + (1.0 - r) * (-r).ln_1p()
    }
}

/// Mutual information per unit `λ̄²`: `L_AA·[(1+r)ln(1+r) + (1−r)ln(1−r)]`
/// with `r = |L_AB|/L_AA`.
pub fn mutual_info(laa: ScaledReal, lab: ScaledComplex) -> Result<ScaledReal> {
    require_positive(&laa)?;
    if lab.mantissa.norm() == 0.0 {
        return Ok(ScaledReal::new(0.0, 0.0));
    }
    let r = (lab.ln_abs() - laa.ln_abs()).exp();
    if r > 1.0 + 1e-12 {
        return Err(HarvestError::PsdViolation(r));
    }
    Ok(ScaledReal::new(laa.mantissa * mi_bracket(r.min(1.0)), laa.log_scale))
}

/// `(𝒩⁺, 𝒩⁻) = (max(0, |M⁺| − L_AA), max(0, |M⁻| − L_AA))`.
pub fn n_pm(laa: ScaledReal, m_plus: ScaledComplex, m_minus: ScaledComplex) -> Result<(ScaledReal, ScaledReal)> {
    require_positive(&laa)?;
    Ok((clamped_excess(&m_plus, &laa)?, clamped_excess(&m_minus, &laa)?))
}

/// `𝒩⁻/𝒩`, absent when there is no entanglement to apportion. `𝒩⁺` and `𝒩⁻`
/// need not add up to `𝒩`, so this is not a fraction of a sum.
pub fn comm_ratio(n_minus: ScaledReal, n_total: ScaledReal) -> Option<f64> {
    if !(n_total.mantissa > 0.0) {
        return None;
    }
    if n_minus.mantissa == 0.0 {
        return Some(0.0);
    }
    Some(n_minus.mantissa / n_total.mantissa * (n_minus.log_scale - n_total.log_scale).exp())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub negativity: ScaledReal,
    /// Exact negativity of the second-order state per unit `λ̄²`.
    pub negativity_exact: ScaledReal,
    pub mutual_info: ScaledReal,
    pub n_plus: ScaledReal,
    pub n_minus: ScaledReal,
    pub comm_ratio: Option<f64>,
}

impl CorrelationReport {
    pub fn from_elements(e: &MatrixElements, lambda_bar: f64, prec: &PrecisionConfig) -> Result<Self> {
        let negativity = negativity_pert(e.laa, e.m)?;
        let exact = negativity_exact_expansion(e, lambda_bar, prec)?;
        let mi = mutual_info(e.laa, e.lab)?;
        let (n_plus, n_minus) = n_pm(e.laa, e.m_plus, e.m_minus)?;
        Ok(Self {
            negativity,
            negativity_exact: exact.per_coupling,
            mutual_info: mi,
            n_plus,
            n_minus,
            comm_ratio: comm_ratio(n_minus, negativity),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densmat::rho_ab;
    use std::f64::consts::LN_2;

    fn elements(laa: f64, lab: C64, m: C64, scale: f64) -> MatrixElements {
        MatrixElements {
            laa: ScaledReal::new(laa, scale),
            lab: ScaledComplex::new(lab, scale),
            m: ScaledComplex::new(m, scale),
            m_plus: ScaledComplex::new(m, scale),
            m_minus: ScaledComplex::zero(),
        }
    }

    #[test]
    fn bell_state_has_half() {
        let h = 0.5;
        let z = C64::default();
        let one = C64::new(h, 0.0);
        let rho = TwoQubitState { rho: [[one, z, z, one], [z, z, z, z], [z, z, z, z], [one, z, z, one]] };
        assert!((negativity_exact(&rho).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn product_state_has_none() {
        let e = elements(1.0, C64::new(0.3, 0.0), C64::new(2.0, 0.0), -50.0);
        let rho = rho_ab(&e, 0.0).unwrap();
        assert_eq!(negativity_exact(&rho).unwrap(), 0.0);
    }

    #[test]
    fn general_solver_matches_blocks() {
        // a rotated copy of an X state is no longer X-shaped
        let e = elements(0.2, C64::new(0.05, 0.02), C64::new(0.3, -0.1), 0.0);
        let rho = rho_ab(&e, 0.5).unwrap();
        let x = negativity_exact(&rho).unwrap();
        let u = {
            let (c, s) = (0.6f64, 0.8f64);
            let one = nalgebra::Matrix2::new(C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0));
            one.kronecker(&nalgebra::Matrix2::identity())
        };
        let rotated = TwoQubitState::from_matrix(&(u * rho.matrix() * u.adjoint()));
        assert!(!is_x_shaped(&rotated.partial_transpose().rho));
        // local unitaries preserve negativity
        assert!((negativity_exact(&rotated).unwrap() - x).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let z = C64::default();
        let mut r = [[z; 4]; 4];
        r[0][0] = C64::new(1.0, 0.0);
        r[0][1] = C64::new(0.1, 0.0);
        assert!(negativity_exact(&TwoQubitState { rho: r }).is_err());
    }

    #[test]
    fn perturbative_negativity_shares_scale() {
        let laa = ScaledReal::new(1.0, -700.0);
        let m = ScaledComplex::new(C64::new(0.0, 3.0), -700.0);
        let n = negativity_pert(laa, m).unwrap();
        assert!((n.at_scale(700.0) - 2.0).abs() < 1e-12);
        assert_eq!(negativity_pert(laa, ScaledComplex::zero()).unwrap().mantissa, 0.0);
        assert!(negativity_pert(ScaledReal::new(0.0, 0.0), m).is_err());
    }

    #[test]
    fn quartic_remainder_scales_with_coupling() {
        let e = elements(0.97, C64::new(0.8, 0.0), C64::new(3.9, 0.4), -50.0);
        let prec = PrecisionConfig::default();
        let a = negativity_exact_expansion(&e, 1e-3, &prec).unwrap();
        let b = negativity_exact_expansion(&e, 5e-4, &prec).unwrap();
        let ratio = (a.residual.ln_abs() - b.residual.ln_abs()).exp();
        assert!((ratio - 4.0).abs() < 1e-6, "{ratio}");
        // the leading term agrees with the f64 eigen route
        let rho = rho_ab(&e, 1e-3).unwrap();
        let direct = negativity_exact(&rho).unwrap() / 1e-6;
        assert!((direct / a.per_coupling.value() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mutual_info_limits() {
        let laa = ScaledReal::new(2.0, -50.0);
        assert_eq!(mutual_info(laa, ScaledComplex::zero()).unwrap().mantissa, 0.0);
        let full = mutual_info(laa, ScaledComplex::new(C64::new(0.0, 2.0), -50.0)).unwrap();
        assert!((full.at_scale(50.0) - 4.0 * LN_2).abs() < 1e-12);
        assert!(matches!(
            mutual_info(laa, ScaledComplex::new(C64::new(2.1, 0.0), -50.0)),
            Err(HarvestError::PsdViolation(_))
        ));
    }

    #[test]
    fn series_branch_matches_extended_precision() {
        let bits = bits_for_digits(50);
        for &r in &[1e-6, 5e-5, 9.9e-5, 1e-4, 1.01e-4, 1e-3] {
            let x = XFloat::from_f64(r, bits);
            let one = XFloat::one(bits);
            let p = &one + &x;
            let q = &one - &x;
            let exact = (&(&p * &p.ln()) + &(&q * &q.ln())).to_f64();
            assert!((mi_bracket(r) / exact - 1.0).abs() < 1e-10, "r={r}");
        }
    }

    #[test]
    fn ratio_absent_without_entanglement() {
        let zero = ScaledReal::new(0.0, 0.0);
        assert_eq!(comm_ratio(ScaledReal::new(1.0, -50.0), zero), None);
        let r = comm_ratio(ScaledReal::new(1.0, -51.0), ScaledReal::new(1.0, -50.0)).unwrap();
        assert!((r - (-1f64).exp()).abs() < 1e-15);
    }
}
