use nalgebra::Matrix4;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::MatrixElements;
use crate::error::{domain, HarvestError, Result};

/// Two-detector density matrix in the basis `{gg, ge, eg, ee}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitState {
    pub rho: [[C64; 4]; 4],
}

impl TwoQubitState {
    pub fn from_matrix(m: &Matrix4<C64>) -> Self {
        let mut rho = [[C64::default(); 4]; 4];
        for (i, row) in rho.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = m[(i, j)];
            }
        }
        Self { rho }
    }

    pub fn matrix(&self) -> Matrix4<C64> {
        Matrix4::from_fn(|i, j| self.rho[i][j])
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.rho[i][i]).sum()
    }

    /// Largest `|ρ − ρ†|` entry.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.rho[i][j] - self.rho[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        let d = self.hermiticity_defect();
        if d > tol {
            return domain(format!("state is not Hermitian (defect {d:.3e})"));
        }
        Ok(())
    }

    /// Partial transpose over the second qubit.
    pub fn partial_transpose(&self) -> Self {
        let mut out = [[C64::default(); 4]; 4];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        out[2 * a + d][2 * c + b] = self.rho[2 * a + b][2 * c + d];
                    }
                }
            }
        }
        Self { rho: out }
    }
}

/// Second-order state of two identical detectors.
pub fn rho_ab(e: &MatrixElements, lambda_bar: f64) -> Result<TwoQubitState> {
    if !(lambda_bar >= 0.0) || !lambda_bar.is_finite() {
        return domain(format!("coupling must be finite and non-negative, got {lambda_bar}"));
    }
    let l2 = lambda_bar * lambda_bar;
    let laa = e.laa.value();
    let ground = 1.0 - 2.0 * l2 * laa;
    if ground < 0.0 {
        return Err(HarvestError::Perturbativity(l2 * laa));
    }
    let lab = e.lab.value() * l2;
    let m = e.m.value() * l2;
    let d = C64::new(l2 * laa, 0.0);
    let z = C64::default();
    let rho = [
        [C64::new(ground, 0.0), z, z, m.conj()],
        [z, d, lab, z],
        [z, lab.conj(), d, z],
        [m, z, z, z],
    ];
    Ok(TwoQubitState { rho })
}
