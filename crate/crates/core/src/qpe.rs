//! Finite-resolution phase-estimation model.
//!
//! Each eigenvalue maps to the nearest of `2^m` phase bins under the phase
//! map `φ_j = λ_j t / 2π`. An eigenvalue counts as resolved when its bin is
//! nonzero and no *distinct* eigenvalue lands in the same bin. Rounding is
//! half-away-from-zero, with one documented exception: a phase landing
//! exactly on the half-bin boundary (the resolution floor) is classified as
//! unresolved, so the collapse threshold is bit-stable in tests.

use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

const TAU: f64 = std::f64::consts::TAU;

/// Phase-bit count and evolution time of the estimation primitive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QpeConfig {
    phase_bits: u32,
    evolution_time: f64,
}

impl QpeConfig {
    pub fn new(phase_bits: u32, evolution_time: f64) -> Result<Self> {
        if !(1..=52).contains(&phase_bits) {
            return Err(Error::InvalidPhaseBits);
        }
        if !(evolution_time.is_finite() && evolution_time > 0.0) {
            return Err(Error::InvalidEvolutionTime {
                time: evolution_time,
            });
        }
        Ok(Self {
            phase_bits,
            evolution_time,
        })
    }

    pub fn phase_bits(&self) -> u32 {
        self.phase_bits
    }

    pub fn evolution_time(&self) -> f64 {
        self.evolution_time
    }

    fn bin_count(&self) -> f64 {
        (1u64 << self.phase_bits) as f64
    }

    fn phase(&self, lambda: f64) -> f64 {
        lambda * self.evolution_time / TAU
    }
}

/// Smallest eigenvalue that rounds to a nonzero bin: `2^-(m+1) · 2π/t`.
pub fn resolution_floor(cfg: &QpeConfig) -> f64 {
    0.5 / cfg.bin_count() * (TAU / cfg.evolution_time)
}

/// Estimation result for one eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenEstimate {
    pub eigenvalue: f64,
    /// Bin center mapped back to the eigenvalue axis.
    pub estimate: f64,
    pub bin: u64,
    pub resolved: bool,
}

/// Per-eigenvalue estimates plus whether the top eigenvalue was singled out.
#[derive(Debug, Clone)]
pub struct QpeOutcome {
    pub estimates: Vec<EigenEstimate>,
    pub top_identified: bool,
}

/// Rounds every eigenvalue of the spectrum into a phase bin.
///
/// Fails when any phase leaves `[0, 1 - 2^-m]` (wraparound).
pub fn qpe_estimate(spectrum: &Spectrum, cfg: &QpeConfig) -> Result<QpeOutcome> {
    estimate_values(spectrum.eigenvalues(), cfg)
}

fn estimate_values(eigenvalues: &[f64], cfg: &QpeConfig) -> Result<QpeOutcome> {
    let bins = cfg.bin_count();
    let limit = 1.0 - 1.0 / bins;
    let mut raw = Vec::with_capacity(eigenvalues.len());
    for &lambda in eigenvalues {
        let phase = cfg.phase(lambda);
        if !(0.0..=limit).contains(&phase) {
            return Err(Error::PhaseWraparound {
                lambda,
                phase,
                bits: cfg.phase_bits,
            });
        }
        let scaled = phase * bins;
        let bin = scaled.round() as u64;
        // Exact half-bin boundary above zero counts as unresolved.
        let on_floor_boundary = scaled == 0.5;
        raw.push((lambda, scaled, bin, on_floor_boundary));
    }

    let estimates: Vec<EigenEstimate> = raw
        .iter()
        .map(|&(lambda, _, bin, on_boundary)| {
            let collision = raw
                .iter()
                .any(|&(other, _, other_bin, _)| other != lambda && other_bin == bin);
            EigenEstimate {
                eigenvalue: lambda,
                estimate: bin as f64 / bins * (TAU / cfg.evolution_time),
                bin,
                resolved: bin != 0 && !on_boundary && !collision,
            }
        })
        .collect();

    let top = &estimates[0];
    let top_identified = top.resolved
        && estimates
            .iter()
            .all(|e| e.eigenvalue >= top.eigenvalue || e.bin < top.bin);

    Ok(QpeOutcome {
        estimates,
        top_identified,
    })
}

/// Applies the estimator to `α · spectrum` for every scaling in the grid and
/// reports whether the top eigenvalue was identified at each α.
pub fn qpe_success_over_scaling(
    base: &Spectrum,
    alpha_grid: &[f64],
    cfg: &QpeConfig,
) -> Result<Vec<(f64, bool)>> {
    let mut out = Vec::with_capacity(alpha_grid.len());
    for &alpha in alpha_grid {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidScale { factor: alpha });
        }
        let scaled: Vec<f64> = base.eigenvalues().iter().map(|l| l * alpha).collect();
        let outcome = estimate_values(&scaled, cfg)?;
        out.push((alpha, outcome.top_identified));
    }
    Ok(out)
}
