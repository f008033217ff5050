use thiserror::Error;

/// Errors raised by the numerical layer: operators, states, spectra,
/// iteration engines and the phase-estimation model.
#[derive(Debug, Error)]
pub enum Error {
    #[error("entries must be finite")]
    NonFiniteEntries,

    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {got}")]
    BadEntryCount { dim: usize, expected: usize, got: usize },

    #[error("matrix is not symmetric at ({i},{j}): |a_ij - a_ji| = {delta:e}")]
    NotSymmetric { i: usize, j: usize, delta: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("cannot normalize: vector norm is below 1e-300")]
    ZeroVector,

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("rank {rank} out of range for dimension {dim}")]
    RankOutOfRange { rank: usize, dim: usize },

    #[error("projector ranks differ: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("basis is not orthonormal: max Gram deviation {deviation:e}")]
    NotOrthonormal { deviation: f64 },

    #[error("vector is not unit norm: |norm - 1| = {deviation:e}")]
    NotUnitNorm { deviation: f64 },

    #[error("eigenvalues are not in descending order at position {position}")]
    NotDescending { position: usize },

    #[error("Jacobi sweep limit reached with off-diagonal residual {remaining:e}")]
    EigenConvergence { remaining: f64 },

    #[error("eigendecomposition failed validation ({check}): deviation {deviation:e}")]
    SpectralValidation { check: &'static str, deviation: f64 },

    #[error("operator norm {norm} exceeds the required bound of 1")]
    NormViolation { norm: f64 },

    #[error("schedule of {rounds} rounds overflows the application counter")]
    ScheduleTooDeep { rounds: u32 },

    #[error("tolerance must lie in (0, 1), got {epsilon}")]
    InvalidTolerance { epsilon: f64 },

    #[error("initial overlap must lie in (0, 1], got {overlap}")]
    InvalidOverlap { overlap: f64 },

    #[error("spectral ratio {ratio} >= 1: the bound requires a gap")]
    GapRequired { ratio: f64 },

    #[error("spectral ratio must be positive, got {ratio}")]
    RatioOutOfRange { ratio: f64 },

    #[error("coefficient vector is not normalized: sum of squares {norm_sq}")]
    CoefficientsNotNormalized { norm_sq: f64 },

    #[error("leading eigenvalue must be positive, got {lambda}")]
    ZeroSpectrum { lambda: f64 },

    #[error("phase bits must lie in 1..=52")]
    InvalidPhaseBits,

    #[error("evolution time must be positive and finite, got {time}")]
    InvalidEvolutionTime { time: f64 },

    #[error("eigenvalue {lambda} wraps around: phase {phase} outside [0, 1 - 2^-{bits}]")]
    PhaseWraparound { lambda: f64, phase: f64, bits: u32 },

    #[error("scaling factor must be positive and finite, got {factor}")]
    InvalidScale { factor: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
