//! Quantities the CLI can evaluate at a parameter point, with lazy sharing of
//! the expensive matrix elements between them.

use std::cell::OnceCell;

use clap::ValueEnum;
use harvest::asympt::{
    laa_asym, lab_asym, m_abs_near_lc, m_asym_far, m_asym_near_lc, m_endpoint_asym, m_pm_asym, mi_asym,
    negativity_asym, npm_asym, ApproxReport, MiVariant, NegativityVariant, SplitRegion,
};
use harvest::densmat::{laa_closed, lab, lab_route, m_element, m_pm, LabRoute, MatrixElements, ProtocolParams};
use harvest::distquad::QuadConfig;
use harvest::measures::{comm_ratio, mutual_info, n_pm, negativity_exact_expansion, negativity_pert};
use harvest::numkernel::{PrecisionConfig, ScaledComplex, ScaledReal};
use harvest::{HarvestError, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Quantity {
    Laa,
    Lab,
    M,
    MPlus,
    MMinus,
    Negativity,
    NegativityExact,
    MutualInfo,
    NPlus,
    NMinus,
    CommRatio,
    LaaAsym1,
    LaaAsym2,
    LabAsym1,
    LabAsym2,
    MFar1,
    MFar2,
    MLc0,
    MLc1,
    MLc2,
    MLcAbs,
    MEndpoint,
    MPlusSl,
    MMinusSl,
    MPlusTl,
    MMinusTl,
    NPlusSl,
    NMinusSl,
    NPlusTl,
    NMinusTl,
    NegativityFar1,
    NegativityFar2,
    NegativityLc,
    MiFull,
    MiBigL,
}

impl Quantity {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    pub fn is_complex(self) -> bool {
        use Quantity::*;
        matches!(
            self,
            Lab | M | MPlus | MMinus | LabAsym1 | LabAsym2 | MFar1 | MFar2 | MLc0 | MLc1 | MLc2 | MEndpoint | MPlusSl
                | MMinusSl | MPlusTl | MMinusTl
        )
    }

    /// CSV column names for this quantity.
    pub fn columns(self) -> Vec<String> {
        let n = self.name();
        if self.is_complex() {
            vec![format!("{n}_re"), format!("{n}_im"), format!("{n}_abs")]
        } else {
            vec![n]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scaling {
    /// Divide out `e^{−T²Ω²/2}`.
    #[default]
    Unscaled,
    Raw,
}

#[derive(Debug, Clone, Copy)]
pub enum Value {
    Real(ScaledReal),
    Complex(ScaledComplex),
    /// Dimensionless, never rescaled; `None` when undefined.
    Ratio(Option<f64>),
}

impl Value {
    /// Cells for this value, `NaN` where undefined.
    pub fn cells(&self, scaling: Scaling, t_omega: f64) -> Vec<f64> {
        let shift = match scaling {
            Scaling::Unscaled => 0.5 * t_omega * t_omega,
            Scaling::Raw => 0.0,
        };
        match self {
            Value::Real(r) => vec![r.at_scale(shift)],
            Value::Complex(c) => {
                let z = c.at_scale(shift);
                vec![z.re, z.im, z.norm()]
            }
            Value::Ratio(r) => vec![r.unwrap_or(f64::NAN)],
        }
    }
}

/// Working digits that keep the closed-form `L_AA` cancellation in check.
pub fn digits_for(t_omega: f64, requested: u32) -> u32 {
    let lost = 0.5 * t_omega * t_omega / std::f64::consts::LN_10;
    requested.max((lost + 30.0).ceil() as u32)
}

/// One parameter point with memoized matrix elements.
pub struct Point {
    pub params: ProtocolParams,
    prec: PrecisionConfig,
    cfg: QuadConfig,
    laa: OnceCell<Result<ScaledReal>>,
    lab: OnceCell<Result<ScaledComplex>>,
    m: OnceCell<Result<ScaledComplex>>,
    mpm: OnceCell<Result<(ScaledComplex, ScaledComplex)>>,
}

impl Point {
    pub fn new(params: ProtocolParams, digits: u32, cfg: QuadConfig) -> Result<Self> {
        params.validate()?;
        let prec = PrecisionConfig::new(digits_for(params.t_omega, digits), PrecisionConfig::default().target_rel_tol)?;
        Ok(Self { params, prec, cfg, laa: OnceCell::new(), lab: OnceCell::new(), m: OnceCell::new(), mpm: OnceCell::new() })
    }

    pub fn working_digits(&self) -> u32 {
        self.prec.working_digits
    }

    pub fn laa(&self) -> Result<ScaledReal> {
        self.laa.get_or_init(|| laa_closed(&self.params, &self.prec)).clone()
    }

    pub fn lab(&self) -> Result<ScaledComplex> {
        self.lab.get_or_init(|| lab(&self.params, &self.cfg)).clone()
    }

    pub fn m(&self) -> Result<ScaledComplex> {
        self.m.get_or_init(|| m_element(&self.params, &self.cfg)).clone()
    }

    pub fn m_pm(&self) -> Result<(ScaledComplex, ScaledComplex)> {
        self.mpm.get_or_init(|| m_pm(&self.params, &self.cfg)).clone()
    }

    pub fn elements(&self) -> Result<MatrixElements> {
        let (m_plus, m_minus) = self.m_pm()?;
        Ok(MatrixElements { laa: self.laa()?, lab: self.lab()?, m: self.m()?, m_plus, m_minus })
    }

    pub fn precision(&self) -> &PrecisionConfig {
        &self.prec
    }

    pub fn eval(&self, q: Quantity) -> Result<Value> {
        use Quantity::*;
        let p = &self.params;
        let approx = |r: Result<ApproxReport>| r.map(|a| Value::Complex(a.value));
        let approx_re = |r: Result<ApproxReport>| r.map(|a| Value::Real(real_part(a.value)));
        Ok(match q {
            Laa => Value::Real(self.laa()?),
            Lab => Value::Complex(self.lab()?),
            M => Value::Complex(self.m()?),
            MPlus => Value::Complex(self.m_pm()?.0),
            MMinus => Value::Complex(self.m_pm()?.1),
            Negativity => Value::Real(negativity_pert(self.laa()?, self.m()?)?),
            NegativityExact => {
                let e = self.elements()?;
                Value::Real(negativity_exact_expansion(&e, p.lambda_bar, &self.prec)?.per_coupling)
            }
            MutualInfo => Value::Real(mutual_info(self.laa()?, self.lab()?)?),
            NPlus | NMinus => {
                let (mp, mm) = self.m_pm()?;
                let (np, nm) = n_pm(self.laa()?, mp, mm)?;
                Value::Real(if q == NPlus { np } else { nm })
            }
            CommRatio => {
                let (mp, mm) = self.m_pm()?;
                let (_, nm) = n_pm(self.laa()?, mp, mm)?;
                Value::Ratio(comm_ratio(nm, negativity_pert(self.laa()?, self.m()?)?))
            }
            LaaAsym1 => approx_re(laa_asym(p, 1))?,
            LaaAsym2 => approx_re(laa_asym(p, 2))?,
            LabAsym1 => approx(lab_asym(p, 1))?,
            LabAsym2 => approx(lab_asym(p, 2))?,
            MFar1 => approx(m_asym_far(p, 1))?,
            MFar2 => approx(m_asym_far(p, 2))?,
            MLc0 => approx(m_asym_near_lc(p, 0))?,
            MLc1 => approx(m_asym_near_lc(p, 1))?,
            MLc2 => approx(m_asym_near_lc(p, 2))?,
            MLcAbs => approx_re(m_abs_near_lc(p, 2))?,
            MEndpoint => approx(m_endpoint_asym(p))?,
            MPlusSl | MMinusSl | MPlusTl | MMinusTl => {
                let region = if matches!(q, MPlusSl | MMinusSl) { SplitRegion::Spacelike } else { SplitRegion::Timelike };
                let (a, b) = m_pm_asym(p, region, 2)?;
                Value::Complex(if matches!(q, MPlusSl | MPlusTl) { a.value } else { b.value })
            }
            NPlusSl | NMinusSl | NPlusTl | NMinusTl => {
                let region = if matches!(q, NPlusSl | NMinusSl) { SplitRegion::Spacelike } else { SplitRegion::Timelike };
                let (a, b) = npm_asym(p, region, 2)?;
                Value::Real(real_part(if matches!(q, NPlusSl | NPlusTl) { a.value } else { b.value }))
            }
            NegativityFar1 => approx_re(negativity_asym(p, NegativityVariant::Far1))?,
            NegativityFar2 => approx_re(negativity_asym(p, NegativityVariant::Far2))?,
            NegativityLc => approx_re(negativity_asym(p, NegativityVariant::NearLc))?,
            MiFull => approx_re(mi_asym(p, MiVariant::Full))?,
            MiBigL => approx_re(mi_asym(p, MiVariant::BigL))?,
        })
    }

    /// Short description of the evaluation route for `q`.
    pub fn route(&self, q: Quantity) -> String {
        use Quantity::*;
        match q {
            Laa => format!("closed form, {} working digits", self.prec.working_digits),
            Lab => match lab_route(&self.params) {
                LabRoute::Contour => "shifted contour at Im v = −TΩ".into(),
                LabRoute::RealLine => "real line with finite-part windows".into(),
            },
            M | Negativity => "contour detour around v = ±L".into(),
            MPlus | MMinus | NPlus | NMinus | CommRatio => "finite-part windows at v = ±L".into(),
            NegativityExact => "extended-precision partial-transpose blocks".into(),
            MutualInfo => "closed form in L_AA and |L_AB|".into(),
            _ => "asymptotic expansion".into(),
        }
    }

    /// Relative tolerance the route aims for.
    pub fn tolerance(&self, q: Quantity) -> Option<f64> {
        use Quantity::*;
        match q {
            Laa => Some(self.prec.target_rel_tol),
            Lab | M | MPlus | MMinus | Negativity | NegativityExact | MutualInfo | NPlus | NMinus | CommRatio => {
                Some(self.cfg.rel_tol)
            }
            _ => None,
        }
    }
}

fn real_part(c: ScaledComplex) -> ScaledReal {
    ScaledReal::new(c.mantissa.re, c.log_scale)
}

/// Process exit code for a library error.
pub fn exit_code(e: &HarvestError) -> u8 {
    match e {
        HarvestError::Domain(_) => 2,
        _ => 3,
    }
}
