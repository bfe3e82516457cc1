//! Parameter grids evaluated in parallel and written as CSV.

use std::io::Write;

use harvest::densmat::ProtocolParams;
use harvest::distquad::QuadConfig;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::quantity::{Point, Quantity, Scaling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum AxisName {
    DeltaDim,
    Lbar,
    Dbar,
    TOmega,
}

impl AxisName {
    pub fn as_str(self) -> &'static str {
        match self {
            AxisName::DeltaDim => "delta_dim",
            AxisName::Lbar => "lbar",
            AxisName::Dbar => "dbar",
            AxisName::TOmega => "t_omega",
        }
    }

    fn set(self, p: &mut ProtocolParams, v: f64) {
        match self {
            AxisName::DeltaDim => p.delta_dim = v,
            AxisName::Lbar => p.lbar = v,
            AxisName::Dbar => p.dbar = v,
            AxisName::TOmega => p.t_omega = v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: AxisName,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.steps).map(|i| if i + 1 == self.steps { self.max } else { self.min + i as f64 * h }).collect()
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.steps - 1) as f64
    }

    /// Parses `name:min:max:steps`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(format!("axis must be name:min:max:steps, got {s:?}"));
        }
        let name = <AxisName as clap::ValueEnum>::from_str(parts[0], true)?;
        let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        let steps = parts[3].parse::<usize>().map_err(|e| format!("{:?}: {e}", parts[3]))?;
        Ok(Self { name, min: num(parts[1])?, max: num(parts[2])?, steps })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Fixed {
    pub delta_dim: f64,
    pub t_omega: f64,
    pub lbar: f64,
    pub dbar: f64,
    pub lambda_bar: f64,
}

impl Default for Fixed {
    fn default() -> Self {
        Self { delta_dim: 1.0, t_omega: 10.0, lbar: 10.0, dbar: 0.0, lambda_bar: 1e-3 }
    }
}

impl Fixed {
    pub fn params(&self) -> ProtocolParams {
        ProtocolParams { lambda_bar: self.lambda_bar, ..ProtocolParams::new(self.delta_dim, self.t_omega, self.lbar, self.dbar) }
    }
}

fn default_digits() -> u32 {
    60
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    #[serde(default)]
    pub fixed: Fixed,
    pub axis1: Axis,
    #[serde(default)]
    pub axis2: Option<Axis>,
    pub quantities: Vec<Quantity>,
    #[serde(default)]
    pub scaling: Scaling,
    #[serde(default = "default_digits")]
    pub precision_digits: u32,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), String> {
        let axes: Vec<&Axis> = std::iter::once(&self.axis1).chain(self.axis2.as_ref()).collect();
        for a in &axes {
            if a.steps < 2 {
                return Err(format!("axis {} needs at least 2 steps", a.name.as_str()));
            }
            if !(a.min.is_finite() && a.max.is_finite() && a.min < a.max) {
                return Err(format!("axis {} needs finite min < max", a.name.as_str()));
            }
        }
        if axes.len() == 2 && axes[0].name == axes[1].name {
            return Err("the two axes must vary different parameters".into());
        }
        if self.quantities.is_empty() {
            return Err("at least one quantity is required".into());
        }
        self.fixed.params().validate().map_err(|e| e.to_string())
    }

    pub fn header(&self) -> Vec<String> {
        let mut h = vec![self.axis1.name.as_str().to_string()];
        if let Some(a) = &self.axis2 {
            h.push(a.name.as_str().to_string());
        }
        h.extend(self.quantities.iter().flat_map(|q| q.columns()));
        h
    }

    /// Grid points in axis1-major order, with exact lightcone points moved by
    /// half a step in `δ̄` (or `L̄`). Returns the points and how many moved.
    pub fn points(&self) -> (Vec<(Vec<f64>, ProtocolParams)>, usize) {
        let base = self.fixed.params();
        let a2: Vec<Option<f64>> = match &self.axis2 {
            Some(a) => a.values().into_iter().map(Some).collect(),
            None => vec![None],
        };
        let axes: Vec<&Axis> = std::iter::once(&self.axis1).chain(self.axis2.as_ref()).collect();
        let nudge = axes
            .iter()
            .find(|a| a.name == AxisName::Dbar)
            .or_else(|| axes.iter().find(|a| a.name == AxisName::Lbar))
            .map(|a| (a.name, 0.5 * a.step()));
        let mut shifted = 0;
        let mut out = Vec::new();
        for x in self.axis1.values() {
            for y in &a2 {
                let mut p = base;
                self.axis1.name.set(&mut p, x);
                let mut coords = vec![x];
                if let (Some(a), Some(y)) = (&self.axis2, y) {
                    a.name.set(&mut p, *y);
                    coords.push(*y);
                }
                if p.lbar > 0.0 && (p.dbar.abs() - p.lbar).abs() <= 1e-12 * p.lbar.max(1.0) {
                    if let Some((name, h)) = nudge {
                        match name {
                            AxisName::Dbar => p.dbar += h,
                            _ => p.lbar += h,
                        }
                        shifted += 1;
                    }
                }
                out.push((coords, p));
            }
        }
        (out, shifted)
    }
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Points where at least one quantity failed.
    pub failed_points: usize,
    pub shifted_points: usize,
    pub first_error: Option<String>,
}

impl SweepResult {
    pub fn all_failed(&self) -> bool {
        !self.rows.is_empty() && self.failed_points == self.rows.len()
    }
}

pub fn run(spec: &SweepSpec, cfg: &QuadConfig) -> SweepResult {
    let (points, shifted) = spec.points();
    let evaluated: Vec<(Vec<f64>, Option<String>)> = points
        .par_iter()
        .map(|(coords, p)| {
            let mut row = coords.clone();
            let mut err = None;
            let point = Point::new(*p, spec.precision_digits, *cfg);
            for &q in &spec.quantities {
                let value = point.as_ref().map_err(Clone::clone).and_then(|pt| pt.eval(q));
                match value {
                    Ok(v) => row.extend(v.cells(spec.scaling, p.t_omega)),
                    Err(e) => {
                        row.extend(std::iter::repeat(f64::NAN).take(q.columns().len()));
                        err.get_or_insert_with(|| format!("{} at {:?}: {e}", q.name(), coords));
                    }
                }
            }
            (row, err)
        })
        .collect();
    let failed_points = evaluated.iter().filter(|(_, e)| e.is_some()).count();
    let first_error = evaluated.iter().find_map(|(_, e)| e.clone());
    SweepResult {
        header: spec.header(),
        rows: evaluated.into_iter().map(|(r, _)| r).collect(),
        failed_points,
        shifted_points: shifted,
        first_error,
    }
}

/// 17 significant digits, `nan` for undefined cells.
pub fn format_cell(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

pub fn write_csv<W: Write>(out: W, header: &[String], rows: &[Vec<f64>]) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.iter().map(|&x| format_cell(x)))?;
    }
    w.flush()
}
