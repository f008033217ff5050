//! Filtered spectral projection and the normalized power-iteration baseline.
//!
//! Both algorithms share the same state update — apply the operator, then
//! renormalize — and therefore produce identical iterate sequences. They
//! differ only in how a budget is expressed: the filtered run executes T
//! rounds whose per-round application counts double (1, 2, 4, …), while the
//! baseline takes a flat cap on applications. One matrix-vector product
//! counts as one oracle application throughout.

use crate::error::{Error, Result};
use crate::operator::HermitianOperator;
use crate::projector::SubspaceProjector;
use crate::spectrum::{spectral_norm, Spectrum};
use crate::state::StateVector;

/// Slack allowed on the `‖ρ‖ ≤ 1` requirement of the filtered run.
pub const NORM_BOUND_SLACK: f64 = 1e-9;

/// Doubling schedule: round t applies the operator `2^(t-1)` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterSchedule {
    rounds: u32,
}

impl FilterSchedule {
    pub fn new(rounds: u32) -> Result<Self> {
        if rounds > 63 {
            return Err(Error::ScheduleTooDeep { rounds });
        }
        Ok(Self { rounds })
    }

    pub fn rounds(&self) -> u32 {
        self.rounds
    }

    /// Per-round application counts `[1, 2, 4, …, 2^(T-1)]`.
    pub fn applications_per_round(&self) -> Vec<u64> {
        (0..self.rounds).map(|t| 1u64 << t).collect()
    }

    /// Total applications `2^T - 1`.
    pub fn total_applications(&self) -> u64 {
        (1u64 << self.rounds) - 1
    }

    /// Smallest schedule whose total covers `applications`.
    pub fn covering(applications: u64) -> Result<Self> {
        let mut rounds = 0u32;
        while Self::new(rounds)?.total_applications() < applications {
            rounds += 1;
        }
        Self::new(rounds)
    }
}

/// Total applications of a T-round doubling schedule, `2^T - 1`.
pub fn schedule_total(rounds: u32) -> Result<u64> {
    Ok(FilterSchedule::new(rounds)?.total_applications())
}

/// What a run converges toward: a single eigenvector or a subspace projector.
#[derive(Debug, Clone)]
pub enum TargetRef {
    Vector(StateVector),
    Subspace(SubspaceProjector),
}

/// Reference plus tolerance; a run stops once fidelity reaches `1 - epsilon`.
#[derive(Debug, Clone)]
pub struct ConvergenceTarget {
    reference: TargetRef,
    epsilon: f64,
}

impl ConvergenceTarget {
    pub fn vector(reference: StateVector, epsilon: f64) -> Result<Self> {
        Self::checked(TargetRef::Vector(reference), epsilon)
    }

    pub fn subspace(reference: SubspaceProjector, epsilon: f64) -> Result<Self> {
        Self::checked(TargetRef::Subspace(reference), epsilon)
    }

    fn checked(reference: TargetRef, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidTolerance { epsilon });
        }
        Ok(Self { reference, epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn dim(&self) -> usize {
        match &self.reference {
            TargetRef::Vector(v) => v.dim(),
            TargetRef::Subspace(p) => p.dim(),
        }
    }

    pub fn fidelity(&self, phi: &StateVector) -> Result<f64> {
        match &self.reference {
            TargetRef::Vector(v) => phi.overlap_fidelity(v),
            TargetRef::Subspace(p) => p.subspace_fidelity(phi),
        }
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The application budget was used up.
    ScheduleExhausted,
    /// Target fidelity reached `1 - epsilon`.
    ToleranceReached,
    /// The iterate fell into the kernel of the operator and could not be
    /// renormalized.
    KernelAnnihilation,
}

/// One record per oracle count, starting at count 0 with the initial state.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub oracle_count: u64,
    pub state: StateVector,
    /// Fidelity to the target, when a target was supplied.
    pub fidelity: Option<f64>,
}

/// Full history of one run.
#[derive(Debug, Clone)]
pub struct RunTrace {
    steps: Vec<TraceStep>,
    termination: Termination,
}

impl RunTrace {
    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn termination(&self) -> Termination {
        self.termination
    }

    pub fn total_applications(&self) -> u64 {
        self.steps.last().map(|s| s.oracle_count).unwrap_or(0)
    }

    pub fn final_state(&self) -> &StateVector {
        &self.steps.last().expect("trace is never empty").state
    }

    pub fn final_fidelity(&self) -> Option<f64> {
        self.steps.last().and_then(|s| s.fidelity)
    }

    pub fn state_at(&self, oracle_count: u64) -> Option<&StateVector> {
        self.steps
            .iter()
            .find(|s| s.oracle_count == oracle_count)
            .map(|s| &s.state)
    }

    pub fn fidelity_at(&self, oracle_count: u64) -> Option<f64> {
        self.steps
            .iter()
            .find(|s| s.oracle_count == oracle_count)
            .and_then(|s| s.fidelity)
    }

    /// First oracle count at which recorded fidelity reached `threshold`.
    pub fn first_passage(&self, threshold: f64) -> Option<u64> {
        self.steps
            .iter()
            .find(|s| s.fidelity.is_some_and(|f| f >= threshold))
            .map(|s| s.oracle_count)
    }
}

/// Filtered spectral projection: T doubling rounds, normalizing after every
/// application. Requires `‖ρ‖ ≤ 1` (within 1e-9); fails otherwise with the
/// measured norm.
pub fn fspa_run(
    rho: &HermitianOperator,
    phi0: &StateVector,
    rounds: u32,
    target: Option<&ConvergenceTarget>,
) -> Result<RunTrace> {
    let norm = spectral_norm(rho)?;
    if norm > 1.0 + NORM_BOUND_SLACK {
        return Err(Error::NormViolation { norm });
    }
    let schedule = FilterSchedule::new(rounds)?;
    iterate(rho, phi0, schedule.total_applications(), target)
}

/// Normalized power iteration: flat schedule, same trace format and stopping
/// rule. No norm bound is imposed, so covariance matrices can be fed in
/// directly.
pub fn power_iteration_run(
    rho: &HermitianOperator,
    phi0: &StateVector,
    max_applications: u64,
    target: Option<&ConvergenceTarget>,
) -> Result<RunTrace> {
    iterate(rho, phi0, max_applications, target)
}

fn iterate(
    rho: &HermitianOperator,
    phi0: &StateVector,
    max_applications: u64,
    target: Option<&ConvergenceTarget>,
) -> Result<RunTrace> {
    if rho.dim() != phi0.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: phi0.dim(),
        });
    }
    if let Some(t) = target {
        if t.dim() != rho.dim() {
            return Err(Error::DimensionMismatch {
                left: rho.dim(),
                right: t.dim(),
            });
        }
    }

    let mut phi = StateVector::normalized(phi0.amplitudes())?;
    let fidelity_of = |state: &StateVector| -> Result<Option<f64>> {
        target.map(|t| t.fidelity(state)).transpose()
    };

    let mut steps = Vec::with_capacity(max_applications.min(1 << 20) as usize + 1);
    let fid = fidelity_of(&phi)?;
    steps.push(TraceStep {
        oracle_count: 0,
        state: phi.clone(),
        fidelity: fid,
    });
    if let (Some(t), Some(f)) = (target, fid) {
        if f >= 1.0 - t.epsilon() {
            return Ok(RunTrace {
                steps,
                termination: Termination::ToleranceReached,
            });
        }
    }

    for k in 1..=max_applications {
        let raw = rho.matvec(phi.amplitudes());
        phi = match StateVector::normalized(&raw) {
            Ok(next) => next,
            Err(Error::ZeroVector) => {
                return Ok(RunTrace {
                    steps,
                    termination: Termination::KernelAnnihilation,
                })
            }
            Err(e) => return Err(e),
        };
        let fid = fidelity_of(&phi)?;
        steps.push(TraceStep {
            oracle_count: k,
            state: phi.clone(),
            fidelity: fid,
        });
        if let (Some(t), Some(f)) = (target, fid) {
            if f >= 1.0 - t.epsilon() {
                return Ok(RunTrace {
                    steps,
                    termination: Termination::ToleranceReached,
                });
            }
        }
    }
    Ok(RunTrace {
        steps,
        termination: Termination::ScheduleExhausted,
    })
}

/// Worst-case application count guaranteeing fidelity `1 - epsilon`:
/// `ceil( log((1-ε)/ε · (1-|a₁|²)/|a₁|²) / (2 log(1/r)) )`, never negative.
///
/// Returns 0 when the start already satisfies the bound (`a1_sq == 1`, or the
/// log argument is at most 1).
pub fn theorem_bound(r: f64, a1_sq: f64, epsilon: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidTolerance { epsilon });
    }
    if !(a1_sq > 0.0 && a1_sq <= 1.0) {
        return Err(Error::InvalidOverlap { overlap: a1_sq });
    }
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::RatioOutOfRange { ratio: r });
    }
    if r >= 1.0 {
        return Err(Error::GapRequired { ratio: r });
    }
    if a1_sq == 1.0 {
        return Ok(0);
    }
    let argument = (1.0 - epsilon) / epsilon * (1.0 - a1_sq) / a1_sq;
    if argument <= 1.0 {
        return Ok(0);
    }
    let k = argument.ln() / (2.0 * (1.0 / r).ln());
    Ok(k.ceil() as u64)
}

/// Closed-form fidelity after `k` applications and one normalization:
/// `F_k = |a₁|² / Σ_j |a_j|² (λ_j/λ₁)^(2k)`.
///
/// Serves as the independent oracle against iterated runs; requires unit
/// coefficients (within 1e-10) and a positive leading eigenvalue.
pub fn analytic_fidelity(spectrum: &Spectrum, coefficients: &[f64], k: u32) -> Result<f64> {
    if coefficients.len() != spectrum.dim() {
        return Err(Error::DimensionMismatch {
            left: spectrum.dim(),
            right: coefficients.len(),
        });
    }
    let norm_sq: f64 = coefficients.iter().map(|a| a * a).sum();
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::CoefficientsNotNormalized { norm_sq });
    }
    let lambda1 = spectrum.eigenvalues()[0];
    if lambda1 <= 0.0 {
        return Err(Error::ZeroSpectrum { lambda: lambda1 });
    }
    let numerator = coefficients[0] * coefficients[0];
    let mut denominator = 0.0;
    for (a, &lambda) in coefficients.iter().zip(spectrum.eigenvalues()) {
        let ratio = lambda / lambda1;
        denominator += a * a * (ratio * ratio).powi(k as i32);
    }
    Ok(numerator / denominator)
}
