use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarvestError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("kernel is singular on the lightcone (v = {v}, lbar = {lbar})")]
    Singularity { v: f64, lbar: f64 },
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("cancellation costs ~{lost:.1} digits but only {working} are carried")]
    Precision { lost: f64, working: u32 },
    #[error("outside asymptotic regime: {0}")]
    Regime(String),
    #[error("capability missing: {0}")]
    Capability(String),
    #[error("perturbative expansion broken: 1 - 2 lambda^2 L_AA = {0}")]
    Perturbativity(f64),
    #[error("one-excitation block not positive: |L_AB|/L_AA = {0}")]
    PsdViolation(f64),
}

pub type Result<T> = std::result::Result<T, HarvestError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(HarvestError::Domain(msg.into()))
}

pub(crate) fn numeric<T>(msg: impl Into<String>) -> Result<T> {
    Err(HarvestError::Numeric(msg.into()))
}
