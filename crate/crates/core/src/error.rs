//! Error types for the simulator crates.

use thiserror::Error;

/// Errors raised by the exact linear-algebra layer: state and operator
/// validation, measurement, and the Hermitian eigensolver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QubitError {
    #[error("state is not normalized (|amp0|^2 + |amp1|^2 = {0})")]
    NotNormalized(f64),

    #[error("matrix is not unitary (defect {0})")]
    NotUnitary(f64),

    /// Both computational-basis probabilities are away from 0 and 1, so a
    /// deterministic readout is impossible. Signals a key/angle mismatch
    /// between encryption and decryption.
    #[error("ambiguous measurement: basis probabilities ({p0}, {p1})")]
    AmbiguousState { p0: f64, p1: f64 },

    /// A ciphertext qubit must sit on the Bloch-sphere equator, i.e. have
    /// computational-basis probabilities (1/2, 1/2).
    #[error("state is off the equator (P[0] = {0}, expected 1/2)")]
    NotEquatorial(f64),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported matrix dimension {0} (expected 2, 4, or 8)")]
    UnsupportedDimension(usize),

    #[error("tensor dimension {0} exceeds the supported maximum of 8")]
    DimensionOverflow(usize),

    #[error("matrix is not Hermitian (defect {0})")]
    NotHermitian(f64),

    #[error("trace must be 1 (got {0})")]
    TraceNotOne(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0})")]
    NotPositiveSemidefinite(f64),

    #[error("Jacobi eigensolver did not converge")]
    EigenNotConverged,

    #[error("angle must be finite (got {0})")]
    NonFiniteAngle(f64),
}

/// Errors raised by the hybrid functional encryption scheme.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HfeError {
    #[error("message length Q={q} must be at least the security parameter lambda={lambda}")]
    MessageLenBelowLambda { lambda: usize, q: usize },

    #[error("message length Q={0} exceeds the supported bound 2^20")]
    MessageLenTooLarge(usize),

    #[error("the security parameter lambda must be positive")]
    ZeroLambda,

    #[error("bit-length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("setup could not satisfy the secret range condition in {0} attempts")]
    ResampleExhausted(usize),

    #[error("secret leaves the rank-{rank} key image outside [0, 2^Q - 1]")]
    SecretOutOfRange { rank: usize },

    #[error("key space of 2^{lambda} strings cannot hold {q} pairwise-distinct designated keys")]
    KeySpaceTooSmall { lambda: usize, q: usize },

    #[error("the aleph key is evaluated through the functionality, not keygen")]
    AlephKey,

    #[error("permutation must be a bijection on 1..={0}")]
    InvalidPermutation(usize),

    #[error("invalid bitstring: {0}")]
    ParseBits(String),

    #[error("invalid hex string: {0}")]
    ParseHex(String),

    #[error(transparent)]
    Qubit(#[from] QubitError),
}

/// Errors raised by the channel-analysis operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("min-entropy t={0} must lie in [0, 1]")]
    MinEntropyOutOfRange(f64),

    #[error("probabilities ({0}, {1}) must be nonnegative and sum to 1")]
    InvalidDistribution(f64, f64),

    #[error(transparent)]
    Qubit(#[from] QubitError),
}

/// Errors raised by the security-game harnesses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    /// The adversary's query transcript violates the game's validity
    /// condition. Carries a description of the offending query.
    #[error("invalid adversary: {0}")]
    InvalidAdversary(String),

    #[error("query budget of {0} oracle calls exhausted")]
    BudgetExhausted(usize),

    /// Measurement is destructive in this model; each ciphertext qubit can
    /// be read out once.
    #[error("ciphertext qubit (block {block}, {component}) was already measured")]
    QubitConsumed { block: usize, component: &'static str },

    #[error("ciphertext block index {0} out of range")]
    BlockOutOfRange(usize),

    #[error("advantage estimation needs at least one guess on each side")]
    EmptyGuesses,

    #[error(transparent)]
    Hfe(#[from] HfeError),
}
