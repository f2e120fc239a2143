//! The one-qubit secret-key cipher: a two-qubit ciphertext built from the
//! equatorial unitary family `H(theta, u)`.
//!
//! Encryption draws a fresh random bit `r` and emits the pair
//! `(H(theta, r)|s>, H(theta, r)|b>)` for secret bit `s` and message bit
//! `b`. Decryption first recovers `r` from the secret qubit, then inverts
//! the message qubit. Both readouts succeed with probability 1 under the
//! matching key and angle.
//!
//! The family satisfies the symmetry `H(theta, u)|v> = H(theta, v)|u>`:
//! encrypting the randomness under the secret is the same operation as
//! encrypting the secret under the randomness.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;
use rand::Rng;

use crate::error::QubitError;
use crate::qubit::{Bit, PureState, Unitary2, MEASURE_TOL, NORM_TOL};

/// The equatorial unitary
///
/// ```text
///               1  [ 1                  1                ]
/// H(theta, u) = -- [                                     ]
///               √2 [ (-1)^u e^{i theta}  (-1)^{u+1} e^{i theta} ]
/// ```
///
/// Column `v` is `(1, (-1)^{u xor v} e^{i theta}) / sqrt(2)`, so the image
/// of every basis state lies on the Bloch-sphere equator.
pub fn h_map(theta: f64, u: Bit) -> Unitary2 {
    let inv = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let phase = Complex64::from_polar(FRAC_1_SQRT_2, theta);
    let signed = if u.as_bool() { -phase } else { phase };
    Unitary2::new([[inv, inv], [signed, -signed]])
}

/// Per-bit encryption context: the secret-key bit and the equatorial angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiContext {
    s: Bit,
    theta: f64,
}

impl XiContext {
    /// Canonicalizes the angle into `[0, 2*pi)`; rejects non-finite input.
    pub fn new(s: Bit, theta: f64) -> Result<Self, QubitError> {
        if !theta.is_finite() {
            return Err(QubitError::NonFiniteAngle(theta));
        }
        let mut canonical = theta.rem_euclid(TAU);
        if canonical >= TAU {
            canonical = 0.0;
        }
        Ok(XiContext { s, theta: canonical })
    }

    pub fn secret_bit(&self) -> Bit {
        self.s
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// The two-qubit ciphertext `(c0, c1)`.
///
/// Both components are normalized and equatorial: their computational-basis
/// probabilities are exactly (1/2, 1/2), which is what makes a basis
/// measurement useless to an eavesdropper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiCiphertext {
    c0: PureState,
    c1: PureState,
}

impl XiCiphertext {
    /// Validates the normalization and equator invariants.
    pub fn new(c0: PureState, c1: PureState) -> Result<Self, QubitError> {
        for component in [&c0, &c1] {
            let norm_sqr = component.norm_sqr();
            if (norm_sqr - 1.0).abs() > NORM_TOL {
                return Err(QubitError::NotNormalized(norm_sqr));
            }
            if (component.prob0() - 0.5).abs() > NORM_TOL {
                return Err(QubitError::NotEquatorial(component.prob0()));
            }
        }
        Ok(XiCiphertext { c0, c1 })
    }

    pub fn c0(&self) -> &PureState {
        &self.c0
    }

    pub fn c1(&self) -> &PureState {
        &self.c1
    }

    /// Number of qubits carried: a one-bit message costs two qubits.
    pub fn qubit_count(&self) -> usize {
        2
    }
}

/// Encrypts one bit with fresh uniform randomness.
pub fn qenc<R: Rng>(ctx: &XiContext, b: Bit, rng: &mut R) -> XiCiphertext {
    qenc_with_r(ctx, b, Bit::random(rng))
}

/// Deterministic encryption with the randomness bit pinned.
///
/// The randomized [`qenc`] is the scheme; this variant exists so the
/// correctness tests can sweep `(s, b, r)` exhaustively.
pub fn qenc_with_r(ctx: &XiContext, b: Bit, r: Bit) -> XiCiphertext {
    let u = h_map(ctx.theta, r);
    let c0 = u
        .apply(&PureState::basis(ctx.s))
        .expect("h_map output is unitary");
    let c1 = u.apply(&PureState::basis(b)).expect("h_map output is unitary");
    XiCiphertext { c0, c1 }
}

/// Decrypts a ciphertext produced under the same `(s, theta)`.
///
/// Recovers `r` by inverting the secret qubit, then inverts the message
/// qubit with `H(theta, r)†`. A wrong angle leaves a superposed readout and
/// surfaces as [`QubitError::AmbiguousState`] instead of a silent guess.
pub fn qdec(ctx: &XiContext, ct: &XiCiphertext) -> Result<Bit, QubitError> {
    let r = h_map(ctx.theta, ctx.s)
        .dagger()
        .apply(&ct.c0)?
        .measure_computational(MEASURE_TOL)?;
    let b = h_map(ctx.theta, r)
        .dagger()
        .apply(&ct.c1)?
        .measure_computational(MEASURE_TOL)?;
    Ok(b)
}
