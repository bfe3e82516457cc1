//! Adaptive 7/15-point Gauss–Kronrod quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64 as C64;

use super::QuadConfig;
use crate::error::{HarvestError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: C64,
    pub error: f64,
    /// Integral of `|f|`, the natural scale for absolute tolerances.
    pub l1: f64,
    pub intervals: usize,
}

#[derive(Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: C64,
    error: f64,
    l1: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

fn gk15<F: Fn(f64) -> C64 + ?Sized>(f: &F, a: f64, b: f64) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut l1 = fc.norm() * WGK[7];
    let mut fv = [(C64::default(), C64::default()); 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx), f(c + dx));
        fv[j] = (f1, f2);
        kron += (f1 + f2) * WGK[j];
        l1 += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut asc = WGK[7] * (fc - mean).norm();
    for j in 0..7 {
        asc += WGK[j] * ((fv[j].0 - mean).norm() + (fv[j].1 - mean).norm());
    }
    let hab = h.abs();
    let value = kron * h;
    let asc = asc * hab;
    let l1 = l1 * hab;
    let mut error = ((kron - gauss) * h).norm();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let round = 50.0 * f64::EPSILON * l1;
    if round > error {
        error = round;
    }
    Piece { a, b, value, error, l1 }
}

/// Adaptive integration over consecutive intervals `[pts[i], pts[i+1]]`.
pub fn integrate<F: Fn(f64) -> C64 + ?Sized>(f: &F, pts: &[f64], cfg: &QuadConfig) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let mut done: Vec<Piece> = Vec::new();
    for w in pts.windows(2) {
        if w[1] > w[0] {
            heap.push(gk15(f, w[0], w[1]));
        }
    }
    let mut intervals = heap.len();
    loop {
        let (mut value, mut error, mut l1) = (C64::default(), 0.0, 0.0);
        for p in heap.iter().chain(done.iter()) {
            value += p.value;
            error += p.error;
            l1 += p.l1;
        }
        let tol = (cfg.abs_tol * l1.max(f64::MIN_POSITIVE))
            .max(cfg.rel_tol * value.norm())
            .max(100.0 * f64::EPSILON * l1);
        if error <= tol || heap.is_empty() {
            return Ok(QuadResult { value, error, l1, intervals });
        }
        if intervals >= cfg.max_subdivisions {
            let worst = heap.peek().copied().expect("non-empty heap");
            return Err(HarvestError::Numeric(format!(
                "quadrature budget of {} intervals exhausted; worst interval [{:.6e}, {:.6e}] has error {:.3e} (total {:.3e}, target {:.3e})",
                cfg.max_subdivisions, worst.a, worst.b, worst.error, error, tol
            )));
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        let tiny = 1e-14 * worst.a.abs().max(worst.b.abs()).max(1e-300);
        if mid - worst.a <= tiny {
            done.push(worst);
            continue;
        }
        heap.push(gk15(f, worst.a, mid));
        heap.push(gk15(f, mid, worst.b));
        intervals += 1;
    }
}
