use harvest::densmat::{lab_routes, m_element, ProtocolParams};
use harvest::distquad::{
    endpoint_regularized_quad, eps_extrapolation_oracle, fp_pairing, pv_pairing, sokhotski_pairing, weighted_line_quad,
    gk, FnTest, GaussianPhase, PhaseWeight, QuadConfig, Region, RegionWeights, Side, TestFunction,
};
use harvest::C64;
use std::f64::consts::PI;

const EPS: [f64; 6] = [0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625];

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1e-300)
}

fn i_eps(side: Side, eps: f64) -> C64 {
    match side {
        Side::Plus => C64::new(0.0, eps),
        Side::Minus => C64::new(0.0, -eps),
    }
}

#[test]
fn boundary_values_match_regulated_limit() {
    let phi = GaussianPhase::new(0.3, 1.0, 2.0);
    for m in 1..=4u32 {
        for side in [Side::Plus, Side::Minus] {
            let f = |v: f64, eps: f64| phi.eval(v) * (C64::new(v, 0.0) + i_eps(side, eps)).powi(-(m as i32));
            let oracle = eps_extrapolation_oracle(&f, -12.0, 12.0, &[0.0], &EPS, 1, &cfg()).unwrap();
            assert!(oracle.reliable, "m={m} {side:?}: oracle residual {}", oracle.residual);
            let got = sokhotski_pairing(&phi, 0.0, m, side, &cfg()).unwrap();
            assert!(close(got, oracle.value, 1e-6), "m={m} {side:?}: {got} vs {}", oracle.value);
        }
    }
}

#[test]
fn order_dependent_delta_sign_fails_at_even_order() {
    // Writing the delta term with an extra (−1)^{m−1} agrees at odd m only.
    let phi = GaussianPhase::new(0.3, 1.0, 2.0);
    for m in 1..=4u32 {
        let f = |v: f64, eps: f64| phi.eval(v) * C64::new(v, eps).powi(-(m as i32));
        let oracle = eps_extrapolation_oracle(&f, -12.0, 12.0, &[0.0], &EPS, 1, &cfg()).unwrap();
        let fp = fp_pairing(&phi, 0.0, m, &cfg()).unwrap();
        let correct = sokhotski_pairing(&phi, 0.0, m, Side::Plus, &cfg()).unwrap();
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let alternative = fp + (correct - fp) * sign;
        assert!(close(correct, oracle.value, 1e-6));
        assert_eq!(close(alternative, oracle.value, 1e-3), m % 2 == 1, "m={m}");
    }
}

#[test]
fn principal_value_matches_symmetric_regulator() {
    let phi = GaussianPhase::new(1.0, 1.0, 0.0);
    let f = |v: f64, eps: f64| phi.eval(v) * v / (v * v + eps * eps);
    let oracle = eps_extrapolation_oracle(&f, -12.0, 14.0, &[0.0], &EPS, 1, &cfg()).unwrap();
    let got = pv_pairing(&phi, 0.0, &cfg()).unwrap();
    assert!(close(got, oracle.value, 1e-7), "{got} vs {}", oracle.value);
}

#[test]
fn finite_part_matches_regulated_square() {
    let phi = GaussianPhase::new(0.0, 1.0, 0.0);
    let f = |v: f64, eps: f64| phi.eval(v) * (v * v - eps * eps) / (v * v + eps * eps).powi(2);
    let oracle = eps_extrapolation_oracle(&f, -12.0, 12.0, &[0.0], &EPS, 1, &cfg()).unwrap();
    let got = fp_pairing(&phi, 0.0, 2, &cfg()).unwrap();
    assert!(close(got, oracle.value, 1e-6), "{got} vs {}", oracle.value);
    assert!((got.re + (2.0 * PI).sqrt()).abs() < 1e-12);
}

#[test]
fn finite_part_is_mean_of_boundary_values() {
    let phi = GaussianPhase::new(-0.4, 0.8, 1.5);
    for m in 1..=4u32 {
        let f = |v: f64, eps: f64| {
            let z = C64::new(v, eps);
            phi.eval(v) * 0.5 * (z.powi(-(m as i32)) + z.conj().powi(-(m as i32)))
        };
        let oracle = eps_extrapolation_oracle(&f, -12.0, 12.0, &[0.0], &EPS, 1, &cfg()).unwrap();
        let got = fp_pairing(&phi, 0.0, m, &cfg()).unwrap();
        assert!(close(got, oracle.value, 1e-6), "m={m}: {got} vs {}", oracle.value);
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
fn two_pole_principal_value_matches_dawson_form() {
    // PV ∫ e^{−(v+5)²/2}/(100 − v²) dv, split into partial fractions
    let phi = GaussianPhase::new(-5.0, 1.0, 0.0);
    let right = pv_pairing(&phi, 10.0, &cfg()).unwrap();
    let left = pv_pairing(&phi, -10.0, &cfg()).unwrap();
    let got = (left - right) / 20.0;
    let exact = PI.sqrt() / 10.0 * (dawson(15.0 / 2f64.sqrt()) + dawson(5.0 / 2f64.sqrt()));
    assert!((got.re - exact).abs() < 1e-10 * exact, "{} vs {exact}", got.re);
    assert!(got.im.abs() < 1e-14);
}

#[test]
fn integrable_endpoint_matches_direct_quadrature() {
    // Δ < 1: the interior integral converges; v = L sin θ removes most of the singularity
    let (l, delta) = (2.0, 0.6);
    let g = GaussianPhase::new(0.7, 1.0, 0.0);
    let got = endpoint_regularized_quad(&g, l, delta, Region::Interior, &cfg()).unwrap();
    let h = |t: f64| g.eval(l * t.sin()) * (l * t.cos()).powf(1.0 - 2.0 * delta);
    let direct = gk::integrate(&h, &[-PI / 2.0, 0.0, PI / 2.0], &cfg()).unwrap().value;
    assert!(close(got, direct, 1e-8), "{got} vs {direct}");
}

fn feynman_oracle(g: &GaussianPhase, l: f64, delta: f64) -> C64 {
    let f = |v: f64, eps: f64| g.eval(v) * C64::new(l * l - v * v, eps).powf(-delta);
    let r = eps_extrapolation_oracle(&f, -14.0, 14.0, &[-l, l], &EPS, 1, &cfg()).unwrap();
    assert!(r.reliable, "oracle residual {}", r.residual);
    r.value
}

#[test]
fn feynman_weights_match_regulated_kernel() {
    let feynman =
        RegionWeights { interior: PhaseWeight::one(), right: PhaseWeight::cispi(-1.0), left: PhaseWeight::cispi(-1.0) };
    for &(delta, l, c) in &[(0.6, 2.0, 0.5), (1.5, 3.0, -1.0), (1.25, 1.5, 0.0), (2.5, 2.5, 2.0)] {
        let g = GaussianPhase::new(c, 1.0, 0.0);
        let got = weighted_line_quad(&g, l, delta, &feynman, &cfg()).unwrap();
        let want = feynman_oracle(&g, l, delta);
        assert!(close(got, want, 1e-6), "Δ={delta} L={l}: {got} vs {want}");
    }
}

#[test]
fn m_element_matches_regulated_integral() {
    let (delta, l, dbar, t) = (1.5, 3.0, 1.0, 2.0);
    let p = ProtocolParams::new(delta, t, l, dbar);
    let m = m_element(&p, &cfg()).unwrap();
    let g = GaussianPhase::new(-dbar, 1.0, 0.0);
    let integral = feynman_oracle(&g, l, delta);
    let want = -(PI / 2.0).sqrt() * C64::from_polar(1.0, t * dbar) * (-0.5 * t * t).exp() * integral;
    assert!(close(m.value(), want, 1e-6), "{} vs {want}", m.value());
}

#[test]
fn wightman_overlap_matches_regulated_integral() {
    let (delta, l, dbar, t) = (1.3, 2.5, 0.5, 1.0);
    let p = ProtocolParams::new(delta, t, l, dbar);
    let r = lab_routes(&p, &cfg()).unwrap();
    let g = GaussianPhase::new(-dbar, 1.0, t);
    let f = |v: f64, eps: f64| g.eval(v) * (l * l - C64::new(v, -eps).powi(2)).powf(-delta);
    let oracle = eps_extrapolation_oracle(&f, -14.0, 14.0, &[-l, l], &EPS, 1, &cfg()).unwrap();
    let want = (PI / 2.0).sqrt() * oracle.value;
    for v in [r.contour, r.real_line] {
        let v = v.expect("route ran").value();
        assert!(close(v, want, 1e-6), "{v} vs {want}");
    }
}

#[test]
fn fd_cofactor_reproduces_pv() {
    let g = GaussianPhase::new(0.5, 1.0, 0.0);
    let fd = FnTest::new(|v| g.eval(v)).with_support(0.5 - 11.4, 0.5 + 11.4);
    let a = pv_pairing(&g, 0.0, &cfg()).unwrap();
    let b = pv_pairing(&fd, 0.0, &cfg()).unwrap();
    assert!(close(b, a, 1e-8), "{b} vs {a}");
}
