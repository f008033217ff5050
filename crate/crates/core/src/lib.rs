//! Dense symmetric spectral toolkit.
//!
//! The crate provides the numerical substrate for dominant-subspace
//! experiments: symmetric operators with an exact-symmetry guarantee, a
//! bit-reproducible Jacobi eigendecomposition, unit-state iterates with
//! overlap/subspace fidelity metrics, the filtered spectral projection
//! algorithm next to a normalized power-iteration baseline (with full
//! per-application traces and oracle accounting), a finite-resolution
//! phase-estimation model, and the classical-data layer mapping datasets to
//! covariance matrices and amplitude-encoded ensemble density operators.
//!
//! All values are immutable after construction and all operations are pure
//! functions of their inputs, so everything here can be shared freely across
//! threads.

pub mod data;
pub mod encoding;
pub mod engine;
mod error;
pub mod operator;
pub mod projector;
pub mod qpe;
pub mod spectrum;
pub mod state;

pub use data::{load_csv, standardize, DataError, DataMatrix, DataResult};
pub use encoding::{
    covariance, ensemble_density, interlacing_check, EnsembleWeights, InterlacingReport, Weighting,
};
pub use engine::{
    analytic_fidelity, fspa_run, power_iteration_run, schedule_total, theorem_bound,
    ConvergenceTarget, FilterSchedule, RunTrace, TargetRef, Termination, TraceStep,
};
pub use error::{Error, Result};
pub use operator::HermitianOperator;
pub use projector::{subspace_distance, SubspaceProjector};
pub use qpe::{
    qpe_estimate, qpe_success_over_scaling, resolution_floor, EigenEstimate, QpeConfig, QpeOutcome,
};
pub use spectrum::{eigendecompose, eigenvector_rotation, spectral_norm, Spectrum};
pub use state::StateVector;
