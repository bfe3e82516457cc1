//! Two pointlike detectors with Gaussian switching, coupled to a scalar
//! conformal primary of dimension Δ: density-matrix elements, the
//! anticommutator/commutator split, and correlation measures.
//!
//! Units: time and distance in units of the switching width `T`, so the
//! inputs are Δ, `TΩ`, `L/T`, `δ/T` and the coupling `λ̄`. Matrix elements are
//! reported per `λ̄²`.

pub mod asympt;
pub mod correlator;
pub mod densmat;
pub mod distquad;
pub mod error;
pub mod measures;
pub mod numkernel;

pub use error::{HarvestError, Result};
pub use num_complex::Complex64 as C64;
