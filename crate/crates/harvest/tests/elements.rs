use harvest::densmat::{
    lab, lab_routes, laa_closed, laa_numeric, laa_special, m_element, m_pm, rho_ab, MatrixElements, ProtocolParams,
};
use harvest::distquad::QuadConfig;
use harvest::numkernel::{PrecisionConfig, ScaledComplex, ScaledReal};
use harvest::{HarvestError, C64};
use proptest::prelude::*;
use std::f64::consts::PI;

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

/// `Σ_k (−1)^k C(−2Δ, 2k) (2k−1)!! W^{−2k}` summed to its smallest term:
/// the Gaussian moments of `(1 + iu/W)^{−2Δ}`.
fn laa_moment_series(delta: f64, w: f64) -> f64 {
    let mut sum = 1.0;
    let mut term = 1.0f64;
    for k in 1..200 {
        let n = 2.0 * k as f64;
        // C(−2Δ, n)/C(−2Δ, n−2) times (n−1) from the moment, and −1/W²
        let next = -term * (2.0 * delta + n - 2.0) * (2.0 * delta + n - 1.0) / (n * w * w);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
    }
    sum
}

#[test]
fn laa_matches_moment_series_at_large_gap() {
    let prec = PrecisionConfig::default();
    // 0.05, 0.3, 0.45: Δ + ½ rounds in f64, which once broke the closed form
    for &delta in &[0.05, 0.3, 0.45, 0.7, 1.0, 1.3, 2.9, 3.5] {
        let p = ProtocolParams::new(delta, 10.0, 0.0, 0.0);
        let got = laa_closed(&p, &prec).unwrap().at_scale(50.0);
        let want = PI * 10f64.powf(-2.0 * delta) * laa_moment_series(delta, 10.0);
        assert!((got / want - 1.0).abs() < 1e-12, "Δ={delta}: {got:e} vs {want:e}");
    }
}

#[test]
fn laa_three_routes() {
    let prec = PrecisionConfig::default();
    for k in 1..=8 {
        let delta = 0.5 * k as f64;
        for &t in &[1.0, 3.0, 10.0] {
            let p = ProtocolParams::new(delta, t, 0.0, 0.0);
            let x = 0.5 * t * t;
            let c = laa_closed(&p, &prec).unwrap().at_scale(x);
            let s = laa_special(&p).unwrap().at_scale(x);
            let n = laa_numeric(&p, &cfg()).unwrap().at_scale(x);
            assert!((s / c - 1.0).abs() < 1e-8, "special Δ={delta} TΩ={t}");
            assert!((n / c - 1.0).abs() < 1e-8, "numeric Δ={delta} TΩ={t}");
        }
    }
}

/// `e^{−x²} ∫₀ˣ e^{t²} dt` by composite Simpson.
fn dawson(x: f64) -> f64 {
    let n = 20_000;
    let h = x / n as f64;
    let g = |t: f64| (t * t - x * x).exp();
    let mut s = g(0.0) + g(x);
    for k in 1..n {
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * g(k as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn unit_dimension_m_matches_free_field_form() {
    // 1/(L² − v² + i0) = PV − iπ δ(L² − v²)
    for &(l, t) in &[(1.0, 1.0), (3.0, 2.0), (10.0, 10.0)] {
        let p = ProtocolParams::new(1.0, t, l, 0.0);
        let got = m_element(&p, &cfg()).unwrap();
        let pv = 2.0 * PI.sqrt() / l * dawson(l / 2f64.sqrt());
        let delta = PI * (-0.5 * l * l).exp() / l;
        let want = ScaledComplex::new(-(PI / 2.0).sqrt() * C64::new(pv, -delta), -0.5 * t * t);
        assert!(got.rel_diff(&want) < 1e-9, "L={l}: {:?} vs {:?}", got, want);
    }
}

#[test]
fn lab_reflects_to_conjugate() {
    for &(delta, l, d, t) in &[(1.0, 3.0, 1.0, 1.0), (1.5, 10.0, 4.0, 10.0), (0.8, 2.0, 2.5, 3.0)] {
        let a = lab(&ProtocolParams::new(delta, t, l, d), &cfg()).unwrap();
        let b = lab(&ProtocolParams::new(delta, t, l, -d), &cfg()).unwrap();
        assert!(a.conj().rel_diff(&b) < 1e-8, "Δ={delta} L={l} δ={d}");
    }
}

#[test]
fn lab_routes_agree_where_both_apply() {
    for &(delta, l, d) in &[(1.0, 4.0, 0.0), (2.5, 3.0, 1.0), (0.6, 6.0, -2.0)] {
        let r = lab_routes(&ProtocolParams::new(delta, 2.0, l, d), &cfg()).unwrap();
        assert!(r.spread.unwrap() < 1e-7, "Δ={delta} L={l} δ={d}: {:?}", r.spread);
    }
}

#[test]
fn one_excitation_block_is_positive() {
    let prec = PrecisionConfig::default();
    for &delta in &[0.5, 1.0, 1.7, 2.5] {
        for &(l, d) in &[(0.5, 0.0), (2.0, 1.0), (10.0, 0.0), (10.0, 10.0), (10.0, 17.0)] {
            let p = ProtocolParams::new(delta, 10.0, l, d);
            let laa = laa_closed(&p, &prec).unwrap();
            let ab = lab(&p, &cfg()).unwrap().abs();
            assert!(ab.ln_abs() <= laa.ln_abs() + 1e-9, "Δ={delta} L={l} δ={d}");
        }
    }
}

#[test]
fn assembled_state_is_a_density_matrix() {
    let p = ProtocolParams::new(1.0, 2.0, 1.5, 0.5);
    let e = MatrixElements::compute(&p, &PrecisionConfig::default(), &cfg()).unwrap();
    let rho = rho_ab(&e, 0.1).unwrap();
    assert!((rho.trace() - 1.0).norm() < 1e-15);
    assert!(rho.hermiticity_defect() < 1e-15);
    let eig = rho.matrix().symmetric_eigen();
    // O(λ̄⁴) negative eigenvalues are allowed in a second-order state
    assert!(eig.eigenvalues.iter().all(|&x| x > -1e-3), "{:?}", eig.eigenvalues);
}

#[test]
fn large_coupling_is_rejected() {
    let e = MatrixElements {
        laa: ScaledReal::new(1.0, 0.0),
        lab: ScaledComplex::zero(),
        m: ScaledComplex::zero(),
        m_plus: ScaledComplex::zero(),
        m_minus: ScaledComplex::zero(),
    };
    assert!(matches!(rho_ab(&e, 1.0), Err(HarvestError::Perturbativity(_))));
}

#[test]
fn dimension_does_not_enter_elements() {
    let prec = PrecisionConfig::default();
    let base = ProtocolParams::new(1.5, 10.0, 10.0, 3.0);
    let a = MatrixElements::compute(&base, &prec, &cfg()).unwrap();
    for d in [3, 4, 6] {
        let b = MatrixElements::compute(&ProtocolParams { d: Some(d), ..base }, &prec, &cfg()).unwrap();
        assert_eq!(a.m.mantissa, b.m.mantissa);
        assert_eq!(a.lab.mantissa, b.lab.mantissa);
        assert_eq!(a.laa.mantissa, b.laa.mantissa);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn laa_closed_matches_numeric_at_any_dimension(delta in 0.02f64..4.0, t in 0.5f64..12.0) {
        let p = ProtocolParams::new(delta, t, 0.0, 0.0);
        let x = 0.5 * t * t;
        let c = laa_closed(&p, &PrecisionConfig::default()).unwrap().at_scale(x);
        let n = laa_numeric(&p, &cfg()).unwrap().at_scale(x);
        prop_assert!(c > 0.0 && (n / c - 1.0).abs() < 1e-8, "closed {c:e}, numeric {n:e}");
    }

    #[test]
    fn commutator_split_recombines(
        delta in 0.3f64..3.0,
        l in 0.5f64..15.0,
        ratio in 0.0f64..2.0,
    ) {
        let p = ProtocolParams::new(delta, 10.0, l, ratio * l);
        prop_assume!((ratio - 1.0).abs() > 1e-3);
        let m = m_element(&p, &cfg()).unwrap();
        let (mp, mm) = m_pm(&p, &cfg()).unwrap();
        let defect = (mp + mm - m).abs().ln_abs() - m.ln_abs();
        prop_assert!(defect < (1e-6f64).ln(), "defect e^{defect}");
    }
}
