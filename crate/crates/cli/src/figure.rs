//! Figure presets: grids at `TΩ = 10` plus closed-form overlay curves.

use clap::ValueEnum;
use harvest::asympt::{boundary, delta_max, BoundaryKind};
use serde::Serialize;

use crate::quantity::{Quantity, Scaling};
use crate::sweep::{Axis, AxisName, Fixed, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum FigureId {
    #[value(name = "fig2")]
    Fig2,
    #[value(name = "fig3L")]
    Fig3L,
    #[value(name = "fig3R")]
    Fig3R,
    #[value(name = "fig4L")]
    Fig4L,
    #[value(name = "fig4R")]
    Fig4R,
    #[value(name = "fig5L")]
    Fig5L,
    #[value(name = "fig5R")]
    Fig5R,
    #[value(name = "fig6L")]
    Fig6L,
    #[value(name = "fig6R")]
    Fig6R,
    #[value(name = "fig7")]
    Fig7,
    #[value(name = "fig8")]
    Fig8,
    #[value(name = "fig9L")]
    Fig9L,
    #[value(name = "fig9R")]
    Fig9R,
    #[value(name = "appxC-crosssections")]
    AppxC,
}

impl FigureId {
    pub fn name(self) -> String {
        self.to_possible_value().expect("all variants named").get_name().to_string()
    }
}

pub struct Overlay {
    pub name: &'static str,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub struct Preset {
    pub description: &'static str,
    /// Grid suffix (empty for the main grid) and spec.
    pub grids: Vec<(&'static str, SweepSpec)>,
    pub overlays: Vec<Overlay>,
}

pub const DEFAULT_RESOLUTION_2D: usize = 100;
pub const DEFAULT_RESOLUTION_1D: usize = 200;
const T_OMEGA: f64 = 10.0;
const L_FIXED: f64 = 10.0;

fn delta_axis(n: usize) -> Axis {
    Axis { name: AxisName::DeltaDim, min: 0.05, max: 4.0, steps: n }
}

fn lbar_axis(n: usize) -> Axis {
    Axis { name: AxisName::Lbar, min: 0.1, max: 20.0, steps: n }
}

fn dbar_axis(n: usize) -> Axis {
    Axis { name: AxisName::Dbar, min: 0.0, max: 20.0, steps: n }
}

fn spec(axis1: Axis, axis2: Option<Axis>, lbar: f64, quantities: Vec<Quantity>) -> SweepSpec {
    SweepSpec {
        fixed: Fixed { t_omega: T_OMEGA, lbar, dbar: 0.0, ..Fixed::default() },
        axis1,
        axis2,
        quantities,
        scaling: Scaling::Unscaled,
        precision_digits: 60,
    }
}

fn vs_lbar(n: usize, q: Vec<Quantity>) -> SweepSpec {
    spec(delta_axis(n), Some(lbar_axis(n)), L_FIXED, q)
}

fn vs_dbar(n: usize, q: Vec<Quantity>) -> SweepSpec {
    spec(delta_axis(n), Some(dbar_axis(n)), L_FIXED, q)
}

fn boundary_overlay(name: &'static str, kinds: &[(BoundaryKind, &str)], lbar: f64, n: usize) -> Overlay {
    let deltas = delta_axis(n).values();
    let mut header = vec!["delta_dim".to_string()];
    for (_, label) in kinds {
        header.push(format!("{label}_order1"));
        header.push(format!("{label}_order2"));
    }
    let rows = deltas
        .iter()
        .map(|&d| {
            let mut row = vec![d];
            for &(k, _) in kinds {
                for order in [1, 2] {
                    row.push(boundary(k, d, lbar, T_OMEGA, order).ok().flatten().unwrap_or(f64::NAN));
                }
            }
            row
        })
        .collect();
    Overlay { name, header, rows }
}

fn delta_max_overlay(n: usize) -> Overlay {
    let rows = (1..n - 1)
        .map(|i| 1.0 + (T_OMEGA - 1.0) * i as f64 / (n - 1) as f64)
        .map(|l| vec![l, delta_max(l, T_OMEGA).unwrap_or(f64::NAN)])
        .collect();
    Overlay { name: "delta_max", header: vec!["lbar".into(), "delta_max".into()], rows }
}

/// The preset at `resolution` points per axis (defaults when `None`).
pub fn preset(id: FigureId, resolution: Option<usize>) -> Preset {
    use Quantity::*;
    let n = resolution.unwrap_or(DEFAULT_RESOLUTION_2D).max(2);
    let n1 = resolution.unwrap_or(DEFAULT_RESOLUTION_1D).max(2);
    let split = vec![MPlus, MMinus, NPlus, NMinus];
    let (description, grids, overlays) = match id {
        FigureId::Fig2 => (
            "L_AA against Δ with the leading large-gap term",
            vec![("", spec(delta_axis(n1), None, L_FIXED, vec![Laa, LaaAsym1]))],
            vec![],
        ),
        FigureId::Fig3L => ("|L_AB| over (Δ, L̄) at δ̄ = 0", vec![("", vs_lbar(n, vec![Lab]))], vec![]),
        FigureId::Fig3R => ("|L_AB| over (Δ, δ̄) at L̄ = 10", vec![("", vs_dbar(n, vec![Lab]))], vec![]),
        FigureId::Fig4L => ("|M| over (Δ, L̄) at δ̄ = 0", vec![("", vs_lbar(n, vec![M]))], vec![]),
        FigureId::Fig4R => ("|M| over (Δ, δ̄) at L̄ = 10", vec![("", vs_dbar(n, vec![M]))], vec![]),
        FigureId::Fig5L => (
            "negativity over (Δ, L̄) at δ̄ = 0, with the zero boundary and the Δ of maximal negativity",
            vec![("", vs_lbar(n, vec![Negativity]))],
            vec![boundary_overlay("boundary", &[(BoundaryKind::NVsL, "lbar")], 0.0, n1), delta_max_overlay(n1)],
        ),
        FigureId::Fig5R => (
            "negativity over (Δ, δ̄) at L̄ = 10, with the zero boundary",
            vec![("", vs_dbar(n, vec![Negativity]))],
            vec![boundary_overlay("boundary", &[(BoundaryKind::NVsDelta, "dbar")], L_FIXED, n1)],
        ),
        FigureId::Fig6L => ("mutual information over (Δ, L̄) at δ̄ = 0", vec![("", vs_lbar(n, vec![MutualInfo]))], vec![]),
        FigureId::Fig6R => ("mutual information over (Δ, δ̄) at L̄ = 10", vec![("", vs_dbar(n, vec![MutualInfo]))], vec![]),
        FigureId::Fig7 => ("M± and N± over (Δ, L̄) at δ̄ = 0", vec![("", vs_lbar(n, split))], vec![]),
        FigureId::Fig8 => (
            "M± and N± over (Δ, δ̄) at L̄ = 10, with the timelike zero boundaries",
            vec![("", vs_dbar(n, split))],
            vec![boundary_overlay(
                "boundary",
                &[(BoundaryKind::NplusTl, "n_plus"), (BoundaryKind::NminusTl, "n_minus")],
                L_FIXED,
                n1,
            )],
        ),
        FigureId::Fig9L => ("N⁻/N over (Δ, L̄) at δ̄ = 0", vec![("", vs_lbar(n, vec![CommRatio]))], vec![]),
        FigureId::Fig9R => ("N⁻/N over (Δ, δ̄) at L̄ = 10", vec![("", vs_dbar(n, vec![CommRatio]))], vec![]),
        FigureId::AppxC => {
            let slices = Axis { name: AxisName::DeltaDim, min: 0.5, max: 2.0, steps: 4 };
            let along_l = vec![
                Laa, LaaAsym1, LaaAsym2, Lab, LabAsym1, LabAsym2, M, MFar1, MFar2, Negativity, NegativityFar1,
                NegativityFar2, MutualInfo, MiFull, MiBigL, MPlus, MPlusSl, MMinus, MMinusSl, NPlus, NPlusSl, NMinus,
                NMinusSl,
            ];
            let along_d = vec![
                Lab, LabAsym1, LabAsym2, M, MFar1, MFar2, MLc1, MLc2, Negativity, NegativityFar1, NegativityFar2,
                NegativityLc, MutualInfo, MiFull, MPlus, MPlusTl, MMinus, MMinusTl, NPlus, NPlusTl, NMinus, NMinusTl,
            ];
            (
                "cross-sections at Δ ∈ {0.5, 1, 1.5, 2} comparing numerics with the asymptotic forms",
                vec![
                    ("vs_lbar", spec(slices, Some(lbar_axis(n1)), L_FIXED, along_l)),
                    ("vs_dbar", spec(slices, Some(dbar_axis(n1)), L_FIXED, along_d)),
                ],
                vec![],
            )
        }
    };
    Preset { description, grids, overlays }
}
