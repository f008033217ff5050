//! Scenario implementations, one per experiment.

mod degeneracy_lifting;
mod downstream;
mod gap_map;
mod gap_scaling;
mod instability;
mod magnitude;
mod warm_start;

use crate::config::ScenarioConfig;
use crate::error::Result;
use crate::result::ScenarioResult;

/// Runs one scenario to completion; the result table is deterministic in the
/// fully resolved config, seed included.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioResult> {
    let mut result = match config {
        ScenarioConfig::GapScaling(p) => gap_scaling::run(p)?,
        ScenarioConfig::Instability(p) => instability::run(p)?,
        ScenarioConfig::Magnitude(p) => magnitude::run(p)?,
        ScenarioConfig::GapMap(p) => gap_map::run(p)?,
        ScenarioConfig::WarmStart(p) => warm_start::run(p)?,
        ScenarioConfig::DegeneracyLifting(p) => degeneracy_lifting::run(p)?,
        ScenarioConfig::Downstream(p) => downstream::run(p)?,
    };
    result.set_config_echo(config.echo());
    debug_assert!(!result.is_empty());
    Ok(result)
}
