//! Declarative scenario configuration.
//!
//! Configs are TOML key-value documents; every key matches a field below and
//! unknown keys are rejected. Each scenario has working defaults, so a config
//! file only needs the values it overrides. The fully resolved config is
//! echoed into the result metadata.

use std::path::Path;

use serde::Deserialize;

use crate::error::{HarnessError, Result};
use crate::result::format_float;

const TAU: f64 = std::f64::consts::TAU;

/// The seven supported scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    GapScaling,
    Instability,
    Magnitude,
    GapMap,
    WarmStart,
    DegeneracyLifting,
    Downstream,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 7] = [
        ScenarioKind::GapScaling,
        ScenarioKind::Instability,
        ScenarioKind::Magnitude,
        ScenarioKind::GapMap,
        ScenarioKind::WarmStart,
        ScenarioKind::DegeneracyLifting,
        ScenarioKind::Downstream,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::GapScaling => "gap_scaling",
            ScenarioKind::Instability => "instability",
            ScenarioKind::Magnitude => "magnitude",
            ScenarioKind::GapMap => "gap_map",
            ScenarioKind::WarmStart => "warm_start",
            ScenarioKind::DegeneracyLifting => "degeneracy_lifting",
            ScenarioKind::Downstream => "downstream",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }
}

fn default_seed() -> u64 {
    42
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GapScalingParams {
    pub seed: u64,
    pub dim: usize,
    /// Initial overlap |a₁|² with the leading eigenvector.
    pub overlap: f64,
    pub epsilon: f64,
    /// Spectral ratios r = λ₂/λ₁ to sweep.
    pub gap_grid: Vec<f64>,
    /// Decay factor for eigenvalues below λ₂.
    pub tail_ratio: f64,
    pub out_dir: Option<String>,
}

impl Default for GapScalingParams {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            dim: 16,
            overlap: 0.5,
            epsilon: 1e-4,
            gap_grid: vec![
                0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.93, 0.96, 0.98,
            ],
            tail_ratio: 0.5,
            out_dir: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InstabilityParams {
    pub seed: u64,
    /// Synthetic covariance spectrum (used when no dataset is supplied).
    pub eigenvalues: Vec<f64>,
    /// Conjugate the synthetic diagonal by a seeded random orthogonal matrix.
    pub conjugate: bool,
    pub strengths: Vec<f64>,
    pub n_seeds: usize,
    /// Rank of the dominant subspace compared across perturbations.
    pub subspace_rank: usize,
    /// Optional real dataset; standardized features' covariance replaces the
    /// synthetic operator.
    pub dataset_csv: Option<String>,
    pub label_column: Option<String>,
    pub standardize: bool,
    pub out_dir: Option<String>,
}

impl Default for InstabilityParams {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            eigenvalues: vec![1.0, 0.999, 0.1],
            conjugate: true,
            strengths: vec![0.0, 1e-4, 1e-3, 1e-2],
            n_seeds: 50,
            subspace_rank: 2,
            dataset_csv: None,
            label_column: None,
            standardize: true,
            out_dir: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MagnitudeParams {
    pub seed: u64,
    pub base_eigenvalues: Vec<f64>,
    pub phase_bits: u32,
    pub evolution_time: f64,
    /// Uniform rescalings of the spectrum. The default grid uses powers of
    /// two, for which rescaled filtering runs are bit-identical.
    pub alpha_grid: Vec<f64>,
    pub rounds: u32,
    pub epsilon: f64,
    pub out_dir: Option<String>,
}

impl Default for MagnitudeParams {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            base_eigenvalues: vec![0.5, 0.25],
            phase_bits: 8,
            evolution_time: TAU,
            alpha_grid: (0..=17).map(|k| 0.5f64.powi(k)).collect(),
            rounds: 3,
            epsilon: 1e-4,
            out_dir: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GapMapParams {
    pub seed: u64,
    pub lambda1: f64,
    pub gap_grid: Vec<f64>,
    /// Fixed oracle budget per grid point.
    pub budget: u64,
    pub overlap: f64,
    pub phase_bits: u32,
    pub evolution_time: f64,
    pub out_dir: Option<String>,
}

impl Default for GapMapParams {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            lambda1: 0.5,
            gap_grid: vec![
                0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.93, 0.96, 0.97, 0.98, 0.99,
                0.993, 0.996, 0.999,
            ],
            budget: 255,
            overlap: 0.5,
            phase_bits: 8,
            evolution_time: TAU,
            out_dir: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WarmStartParams {
    pub seed: u64,
    pub dim: usize,
    /// Near-degenerate spectral ratio λ₂/λ₁.
    pub ratio: f64,
    pub tail_ratio: f64,
    /// Initial overlaps |a₁|², including the exact-zero case.
    pub overlap_grid: Vec<f64>,
    pub rounds: u32,
    pub out_dir: Option<String>,
}

impl Default for WarmStartParams {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            dim: 16,
            ratio: 0.98,
            tail_ratio: 0.5,
            overlap_grid: vec![0.0, 0.01, 0.1, 0.25, 0.5],
            rounds: 11,
            out_dir: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DegeneracyLiftingParams {
    pub seed: u64,
    pub eigenvalues: Vec<f64>,
    /// Size of the degenerate leading block.
    pub degenerate_rank: usize,
    /// Strengths of the rank-one lift inside the block, including zero.
    pub delta_grid: Vec<f64>,
    pub rounds: u32,
    pub out_dir: Option<String>,
}

impl Default for DegeneracyLiftingParams {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            eigenvalues: vec![1.0, 1.0, 0.2],
            degenerate_rank: 2,
            delta_grid: vec![0.0, 0.001, 0.01, 0.05],
            rounds: 12,
            out_dir: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DownstreamParams {
    pub seed: u64,
    /// Synthetic labeled blobs (used when no dataset is supplied).
    pub n_samples: usize,
    pub n_features: usize,
    pub n_classes: usize,
    pub blob_spread: f64,
    pub blob_noise: f64,
    pub subspace_rank: usize,
    pub alpha_grid: Vec<f64>,
    pub rounds: u32,
    pub train_fraction: f64,
    pub dataset_csv: Option<String>,
    pub label_column: String,
    pub out_dir: Option<String>,
}

impl Default for DownstreamParams {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            n_samples: 150,
            n_features: 8,
            n_classes: 3,
            blob_spread: 5.0,
            blob_noise: 0.3,
            subspace_rank: 2,
            alpha_grid: vec![1.0, 1e-3, 1e-6],
            rounds: 14,
            train_fraction: 0.7,
            dataset_csv: None,
            label_column: "label".to_string(),
            out_dir: None,
        }
    }
}

/// A scenario kind together with its fully resolved parameters.
#[derive(Debug, Clone)]
pub enum ScenarioConfig {
    GapScaling(GapScalingParams),
    Instability(InstabilityParams),
    Magnitude(MagnitudeParams),
    GapMap(GapMapParams),
    WarmStart(WarmStartParams),
    DegeneracyLifting(DegeneracyLiftingParams),
    Downstream(DownstreamParams),
}

impl ScenarioConfig {
    pub fn default_for(kind: ScenarioKind) -> Self {
        match kind {
            ScenarioKind::GapScaling => Self::GapScaling(GapScalingParams::default()),
            ScenarioKind::Instability => Self::Instability(InstabilityParams::default()),
            ScenarioKind::Magnitude => Self::Magnitude(MagnitudeParams::default()),
            ScenarioKind::GapMap => Self::GapMap(GapMapParams::default()),
            ScenarioKind::WarmStart => Self::WarmStart(WarmStartParams::default()),
            ScenarioKind::DegeneracyLifting => {
                Self::DegeneracyLifting(DegeneracyLiftingParams::default())
            }
            ScenarioKind::Downstream => Self::Downstream(DownstreamParams::default()),
        }
    }

    pub fn from_toml_str(kind: ScenarioKind, text: &str, origin: &Path) -> Result<Self> {
        fn parse<T: serde::de::DeserializeOwned>(text: &str, origin: &Path) -> Result<T> {
            toml::from_str(text).map_err(|source| HarnessError::ConfigParse {
                path: origin.to_path_buf(),
                source,
            })
        }
        Ok(match kind {
            ScenarioKind::GapScaling => Self::GapScaling(parse(text, origin)?),
            ScenarioKind::Instability => Self::Instability(parse(text, origin)?),
            ScenarioKind::Magnitude => Self::Magnitude(parse(text, origin)?),
            ScenarioKind::GapMap => Self::GapMap(parse(text, origin)?),
            ScenarioKind::WarmStart => Self::WarmStart(parse(text, origin)?),
            ScenarioKind::DegeneracyLifting => Self::DegeneracyLifting(parse(text, origin)?),
            ScenarioKind::Downstream => Self::Downstream(parse(text, origin)?),
        })
    }

    /// Loads a config file, or the scenario defaults when no path is given.
    pub fn load(kind: ScenarioKind, path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::default_for(kind)),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| HarnessError::ConfigIo {
                    path: p.to_path_buf(),
                    source,
                })?;
                Self::from_toml_str(kind, &text, p)
            }
        }
    }

    pub fn kind(&self) -> ScenarioKind {
        match self {
            Self::GapScaling(_) => ScenarioKind::GapScaling,
            Self::Instability(_) => ScenarioKind::Instability,
            Self::Magnitude(_) => ScenarioKind::Magnitude,
            Self::GapMap(_) => ScenarioKind::GapMap,
            Self::WarmStart(_) => ScenarioKind::WarmStart,
            Self::DegeneracyLifting(_) => ScenarioKind::DegeneracyLifting,
            Self::Downstream(_) => ScenarioKind::Downstream,
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            Self::GapScaling(p) => p.seed,
            Self::Instability(p) => p.seed,
            Self::Magnitude(p) => p.seed,
            Self::GapMap(p) => p.seed,
            Self::WarmStart(p) => p.seed,
            Self::DegeneracyLifting(p) => p.seed,
            Self::Downstream(p) => p.seed,
        }
    }

    pub fn set_seed(&mut self, seed: u64) {
        match self {
            Self::GapScaling(p) => p.seed = seed,
            Self::Instability(p) => p.seed = seed,
            Self::Magnitude(p) => p.seed = seed,
            Self::GapMap(p) => p.seed = seed,
            Self::WarmStart(p) => p.seed = seed,
            Self::DegeneracyLifting(p) => p.seed = seed,
            Self::Downstream(p) => p.seed = seed,
        }
    }

    pub fn out_dir(&self) -> Option<&str> {
        match self {
            Self::GapScaling(p) => p.out_dir.as_deref(),
            Self::Instability(p) => p.out_dir.as_deref(),
            Self::Magnitude(p) => p.out_dir.as_deref(),
            Self::GapMap(p) => p.out_dir.as_deref(),
            Self::WarmStart(p) => p.out_dir.as_deref(),
            Self::DegeneracyLifting(p) => p.out_dir.as_deref(),
            Self::Downstream(p) => p.out_dir.as_deref(),
        }
    }

    /// Deterministic key/value echo of every resolved parameter.
    pub fn echo(&self) -> Vec<(String, String)> {
        let mut e: Vec<(String, String)> = vec![("seed".into(), self.seed().to_string())];
        match self {
            Self::GapScaling(p) => {
                e.push(("dim".into(), p.dim.to_string()));
                e.push(("overlap".into(), format_float(p.overlap)));
                e.push(("epsilon".into(), format_float(p.epsilon)));
                e.push(("gap_grid".into(), float_list(&p.gap_grid)));
                e.push(("tail_ratio".into(), format_float(p.tail_ratio)));
            }
            Self::Instability(p) => {
                e.push(("eigenvalues".into(), float_list(&p.eigenvalues)));
                e.push(("conjugate".into(), p.conjugate.to_string()));
                e.push(("strengths".into(), float_list(&p.strengths)));
                e.push(("n_seeds".into(), p.n_seeds.to_string()));
                e.push(("subspace_rank".into(), p.subspace_rank.to_string()));
                e.push((
                    "dataset_csv".into(),
                    p.dataset_csv.clone().unwrap_or_else(|| "none".into()),
                ));
                e.push((
                    "label_column".into(),
                    p.label_column.clone().unwrap_or_else(|| "none".into()),
                ));
                e.push(("standardize".into(), p.standardize.to_string()));
            }
            Self::Magnitude(p) => {
                e.push(("base_eigenvalues".into(), float_list(&p.base_eigenvalues)));
                e.push(("phase_bits".into(), p.phase_bits.to_string()));
                e.push(("evolution_time".into(), format_float(p.evolution_time)));
                e.push(("alpha_grid".into(), float_list(&p.alpha_grid)));
                e.push(("rounds".into(), p.rounds.to_string()));
                e.push(("epsilon".into(), format_float(p.epsilon)));
            }
            Self::GapMap(p) => {
                e.push(("lambda1".into(), format_float(p.lambda1)));
                e.push(("gap_grid".into(), float_list(&p.gap_grid)));
                e.push(("budget".into(), p.budget.to_string()));
                e.push(("overlap".into(), format_float(p.overlap)));
                e.push(("phase_bits".into(), p.phase_bits.to_string()));
                e.push(("evolution_time".into(), format_float(p.evolution_time)));
            }
            Self::WarmStart(p) => {
                e.push(("dim".into(), p.dim.to_string()));
                e.push(("ratio".into(), format_float(p.ratio)));
                e.push(("tail_ratio".into(), format_float(p.tail_ratio)));
                e.push(("overlap_grid".into(), float_list(&p.overlap_grid)));
                e.push(("rounds".into(), p.rounds.to_string()));
            }
            Self::DegeneracyLifting(p) => {
                e.push(("eigenvalues".into(), float_list(&p.eigenvalues)));
                e.push(("degenerate_rank".into(), p.degenerate_rank.to_string()));
                e.push(("delta_grid".into(), float_list(&p.delta_grid)));
                e.push(("rounds".into(), p.rounds.to_string()));
            }
            Self::Downstream(p) => {
                e.push(("n_samples".into(), p.n_samples.to_string()));
                e.push(("n_features".into(), p.n_features.to_string()));
                e.push(("n_classes".into(), p.n_classes.to_string()));
                e.push(("blob_spread".into(), format_float(p.blob_spread)));
                e.push(("blob_noise".into(), format_float(p.blob_noise)));
                e.push(("subspace_rank".into(), p.subspace_rank.to_string()));
                e.push(("alpha_grid".into(), float_list(&p.alpha_grid)));
                e.push(("rounds".into(), p.rounds.to_string()));
                e.push(("train_fraction".into(), format_float(p.train_fraction)));
                e.push((
                    "dataset_csv".into(),
                    p.dataset_csv.clone().unwrap_or_else(|| "none".into()),
                ));
                e.push(("label_column".into(), p.label_column.clone()));
            }
        }
        e
    }
}

fn float_list(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format_float(*v))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_round_trip() {
        for kind in ScenarioKind::ALL {
            assert_eq!(ScenarioKind::parse(kind.name()), Some(kind));
        }
        assert_eq!(ScenarioKind::parse("nope"), None);
    }

    #[test]
    fn toml_overrides_defaults() {
        let cfg = ScenarioConfig::from_toml_str(
            ScenarioKind::GapScaling,
            "seed = 7\ngap_grid = [0.5, 0.9]\n",
            Path::new("inline"),
        )
        .unwrap();
        match cfg {
            ScenarioConfig::GapScaling(p) => {
                assert_eq!(p.seed, 7);
                assert_eq!(p.gap_grid, vec![0.5, 0.9]);
                assert_eq!(p.dim, 16);
            }
            _ => panic!("wrong variant"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = ScenarioConfig::from_toml_str(
            ScenarioKind::Magnitude,
            "not_a_key = 1\n",
            Path::new("inline"),
        )
        .unwrap_err();
        assert!(matches!(err, HarnessError::ConfigParse { .. }));
    }
}
