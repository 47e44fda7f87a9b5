//! Exact-diagonalization quench engine for the spin-S U(1) quantum link model
//! and the truncated Schwinger model on a periodic chain.

pub mod analysis;
pub mod basis;
pub mod config;
pub mod error;
pub mod linalg;
pub mod model;
pub mod observables;
pub mod operators;
pub mod pipeline;
pub mod propagator;
pub mod series;
pub mod spin;

pub use analysis::{analyze, classify, AnalysisReport, Classification, Event, EventKind};
pub use basis::{enumerate_basis, vacua, vacuum_state, BasisState, PhysicalBasis};
pub use config::{RawConfig, RunConfig};
pub use error::{Error, Result};
pub use model::{ModelKind, ModelSpec};
pub use observables::{Observer, RateComponents, RateValue};
pub use operators::{build_hamiltonian, SparseHamiltonian};
pub use propagator::{Propagator, PropagatorConfig};
pub use series::QuenchTimeSeries;
pub use spin::{HalfInt, SpinValue};
