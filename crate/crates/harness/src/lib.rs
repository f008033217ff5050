//! Declarative experiment harness for the spectral projection toolkit.
//!
//! A scenario is a named experiment with a TOML-configurable parameter set
//! and a fixed output contract: one long-format CSV table plus a metadata
//! sidecar echoing the resolved config, summary statistics, and model
//! caveats. Fixed seed in, identical bytes out.

pub mod classify;
pub mod config;
pub mod deflation;
mod error;
pub mod generate;
pub mod regression;
pub mod result;
pub mod scenarios;

pub use config::{ScenarioConfig, ScenarioKind};
pub use error::{HarnessError, Result};
pub use regression::{fit_linear, LinearFit};
pub use result::{format_float, Cell, ScenarioResult};
pub use scenarios::run_scenario;
