//! Exact desk-scale simulator and analysis suite for a one-qubit
//! secret-key quantum cipher and its prefix-revealing hybrid functional
//! encryption extension.
//!
//! The crate is organized around five layers:
//!
//! - [`qubit`]: exact complex linear algebra for 2-dimensional pure
//!   states, 2x2 unitaries, and density matrices up to dimension 8, with
//!   deterministic and sampled measurement and trace distance.
//! - [`xi`]: the one-qubit cipher. A message bit is hidden in a pair of
//!   Bloch-equator qubits built from the unitary family `H(theta, u)`.
//! - [`hfe`]: the classical extension. Per-position equatorial angles
//!   bind designated keys to message prefixes, with an optional index
//!   permutation for subsequence recovery.
//! - [`analysis`]: closed-form channel analysis — the encryption
//!   superoperator, the entropic indistinguishability bound, and the
//!   averaged ciphertext states that are exactly maximally mixed.
//! - [`games`]: Monte-Carlo harnesses for the message-privacy,
//!   function-privacy, and weak-simulation games, with built-in
//!   adversary strategies and empirical advantage estimation.
//!
//! All randomness flows through caller-owned [`rng::SimRng`] generators,
//! so every run is reproducible from a seed. All values are immutable
//! after construction and every operation is a pure function of its
//! inputs plus the supplied generator.
//!
//! This is a simulator artifact for studying the scheme's exact
//! statistical behavior. Ciphertext amplitudes exist in memory (and in
//! serialized files) in the clear; it is not a deployable cipher.

pub mod analysis;
pub mod error;
pub mod games;
pub mod hfe;
mod matrix;
pub mod qubit;
pub mod rng;
pub mod xi;

pub use error::{AnalysisError, GameError, HfeError, QubitError};
pub use matrix::{hermitian_eigenvalues, JACOBI_OFF_DIAGONAL_TOL};
pub use qubit::{Bit, DensityMatrix, PureState, Unitary2};
pub use rng::{rng_from_seed, SimRng};
