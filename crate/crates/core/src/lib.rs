//! Numerical toolkit for harmonic Bloch-type spaces on the unit disk.
//!
//! The crate evaluates Bloch-type functionals with general majorants,
//! Hardy means and norms, the Littlewood-Paley `G`-function and the
//! pseudo-hyperbolic metric, and provides verdict engines for composition
//! operators between Bloch-type and Hardy spaces.
//!
//! Every type is generic over the scalar (`f32` or `f64`); the aliases at
//! the crate root fix `f64`.

pub mod analytic;
pub mod compop;
pub mod descriptor;
pub mod disk;
pub mod error;
pub mod extremal;
pub mod harmonic;
pub mod majorant;
pub mod metrics;
pub mod norms;
pub mod optimize;
pub mod params;
pub mod quadrature;
pub mod scalar;

pub use analytic::{AnalyticKind, AnalyticMap};
pub use disk::DiskPoint;
pub use error::{Error, MajorantError, Result};
pub use harmonic::HarmonicMap;
pub use majorant::{Majorant, MajorantKind};
pub use norms::{Estimate, SamplingPlan, Verdict};
pub use params::BlochParams;
pub use scalar::Real;

pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type DiskPoint64 = DiskPoint<f64>;
pub type AnalyticMap64 = AnalyticMap<f64>;
pub type HarmonicMap64 = HarmonicMap<f64>;
pub type Majorant64 = Majorant<f64>;
pub type BlochParams64 = BlochParams<f64>;
pub type SamplingPlan64 = SamplingPlan<f64>;

pub type DiskPoint32 = DiskPoint<f32>;
pub type AnalyticMap32 = AnalyticMap<f32>;
pub type HarmonicMap32 = HarmonicMap<f32>;
pub type BlochParams32 = BlochParams<f32>;
pub type SamplingPlan32 = SamplingPlan<f32>;
