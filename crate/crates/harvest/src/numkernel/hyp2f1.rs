use crate::error::{domain, numeric, Result};

fn non_positive_int(x: f64) -> Option<i64> {
    (x <= 0.0 && x == x.floor()).then_some(x as i64)
}

/// Gauss series for `2F1(a, b; c; z)`, `|z| < 1`.
///
/// A non-positive integer `c` is accepted only when `a` or `b` truncates the
/// series before the denominator vanishes.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64, rel_tol: f64) -> Result<f64> {
    if !(z.abs() < 1.0) {
        return domain(format!("2F1 series needs |z| < 1, got {z}"));
    }
    if let Some(nc) = non_positive_int(c) {
        let stops_first = [a, b]
            .iter()
            .filter_map(|&u| non_positive_int(u))
            .any(|nu| nu > nc);
        if !stops_first {
            return domain(format!("2F1 lower parameter c = {c} is a pole"));
        }
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let cap = 200_000;
    for k in 0..cap {
        let kf = k as f64;
        let num = (a + kf) * (b + kf);
        if num == 0.0 {
            return Ok(sum);
        }
        term *= num / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        let settled = term.abs() <= rel_tol * 1e-3 * sum.abs();
        if settled && kf > a.abs() + b.abs() {
            return Ok(sum);
        }
    }
    numeric(format!("2F1({a},{b};{c};{z}) series did not converge in {cap} terms"))
}
