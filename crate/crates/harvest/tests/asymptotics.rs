use harvest::asympt::{
    boundary_curve, delta_max, laa_asym, lab_asym, m_asym_far, m_pm_asym, negativity_asym, omega_opt, BoundaryKind,
    NegativityVariant, SplitRegion,
};
use harvest::densmat::{laa_closed, lab, m_element, ProtocolParams};
use harvest::distquad::QuadConfig;
use harvest::numkernel::PrecisionConfig;

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

fn far_grid() -> Vec<ProtocolParams> {
    let mut out = Vec::new();
    for &delta in &[0.5, 1.0, 1.5, 2.0, 2.5] {
        for &(l, d) in &[(10.0, 0.0), (15.0, 0.0), (20.0, 5.0), (30.0, 0.0)] {
            out.push(ProtocolParams::new(delta, 10.0, l, d));
        }
    }
    out
}

#[test]
fn second_order_improves_on_first() {
    let prec = PrecisionConfig::default();
    for p in far_grid() {
        let laa = laa_closed(&p, &prec).unwrap().to_complex();
        let e = |o| laa_asym(&p, o).unwrap().with_reference(&laa).rel_error_vs_numeric.unwrap();
        assert!(e(2) <= e(1), "laa {p:?}: {} > {}", e(2), e(1));

        let ab = lab(&p, &cfg()).unwrap();
        let e = |o| lab_asym(&p, o).unwrap().with_reference(&ab).rel_error_vs_numeric.unwrap();
        assert!(e(2) <= e(1), "lab {p:?}: {} > {}", e(2), e(1));

        let m = m_element(&p, &cfg()).unwrap();
        let e = |o| m_asym_far(&p, o).unwrap().with_reference(&m).rel_error_vs_numeric.unwrap();
        assert!(e(2) <= e(1), "m {p:?}: {} > {}", e(2), e(1));
    }
}

#[test]
fn leading_laa_error_falls_as_inverse_square_gap() {
    // the closed form cancels to e^{−200} at TΩ = 20
    let prec = PrecisionConfig::new(120, 1e-15).unwrap();
    for &delta in &[0.5, 1.0, 2.0] {
        let err = |t: f64| {
            let p = ProtocolParams::new(delta, t, 0.0, 0.0);
            let exact = laa_closed(&p, &prec).unwrap().to_complex();
            laa_asym(&p, 1).unwrap().with_reference(&exact).rel_error_vs_numeric.unwrap()
        };
        let ratio = err(10.0) / err(20.0);
        assert!((2.0..=8.0).contains(&ratio), "Δ={delta}: {ratio}");
    }
}

#[test]
fn timelike_split_recombines_to_far_form() {
    for &delta in &[0.3, 0.75, 1.25, 1.5, 2.2] {
        for &d in &[15.0, 20.0] {
            let p = ProtocolParams::new(delta, 10.0, 10.0, d);
            let (mp, mm) = m_pm_asym(&p, SplitRegion::Timelike, 1).unwrap();
            let far = m_asym_far(&p, 1).unwrap().value;
            let sum = mp.value + mm.value;
            assert!(sum.rel_diff(&far) < 1e-13, "Δ={delta} δ={d}: {}", sum.rel_diff(&far));
        }
    }
}

#[test]
fn boundary_corrections_are_positive() {
    let deltas: Vec<f64> = (1..=16).map(|k| 0.25 * k as f64).collect();
    for kind in [BoundaryKind::NVsL, BoundaryKind::NVsDelta] {
        let a = boundary_curve(kind, &deltas, 10.0, 10.0, 1).unwrap();
        let b = boundary_curve(kind, &deltas, 10.0, 10.0, 2).unwrap();
        for ((d, x), (_, y)) in a.iter().zip(&b) {
            assert!(x.unwrap() < y.unwrap(), "{kind:?} Δ={d}");
        }
    }
}

#[test]
fn separation_boundary_at_unit_dimension() {
    let b = boundary_curve(BoundaryKind::NVsL, &[1.0], 0.0, 10.0, 2).unwrap()[0].1.unwrap();
    assert!((b - 10.2).abs() < 1e-12);
}

#[test]
fn dimension_of_maximal_negativity() {
    let (l, t) = (5.0, 10.0);
    let step = 0.01;
    let (best, _) = (1..=300)
        .map(|k| k as f64 * step)
        .map(|d| {
            let n = negativity_asym(&ProtocolParams::new(d, t, l, 0.0), NegativityVariant::Far1).unwrap();
            (d, n.value.value().re)
        })
        .fold((0.0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let want = delta_max(l, t).unwrap();
    assert!((best - want).abs() <= 2.0 * step, "{best} vs {want}");
}

#[test]
fn optimal_gap_is_accurate_to_third_order() {
    // The clamp zeroes the negativity just below the optimum, so the check is on
    // the location of the maximum: its offset from L̄ − Δ/L̄ should fall as L̄⁻³.
    for &delta in &[0.5, 1.0, 2.0] {
        let offset = |l: f64| {
            let ln_n = |w: f64| {
                let r = negativity_asym(&ProtocolParams::new(delta, w, l, 0.0), NegativityVariant::Far2).unwrap();
                r.value.ln_abs()
            };
            let w0 = omega_opt(l, delta);
            let (mut a, mut b) = (w0 - 0.05, w0 + 0.05);
            while b - a > 1e-9 {
                let (x, y) = (a + (b - a) / 3.0, b - (b - a) / 3.0);
                if ln_n(x) < ln_n(y) {
                    a = x;
                } else {
                    b = y;
                }
            }
            (0.5 * (a + b) - w0) * l.powi(3)
        };
        let (near, far) = (offset(10.0), offset(40.0));
        assert!(near.abs() < 30.0, "Δ={delta}: {near}");
        assert!((near / far - 1.0).abs() < 0.2, "Δ={delta}: {near} vs {far}");
    }
}
