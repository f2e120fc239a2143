//! Measurement-only access to challenge ciphertexts.
//!
//! Game adversaries never see raw amplitudes — that would trivially break
//! any simulated scheme. They get each ciphertext qubit once, through a
//! computational-basis readout or a caller-chosen single-qubit rotation
//! followed by one. Measurement consumes the qubit.

use crate::error::GameError;
use crate::hfe::HfeCiphertext;
use crate::qubit::{Bit, PureState, Unitary2};
use crate::rng::SimRng;
use crate::xi::h_map;

/// Which half of a ciphertext block to measure: the secret-carrier qubit
/// or the message-carrier qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CtComponent {
    C0,
    C1,
}

impl CtComponent {
    fn name(self) -> &'static str {
        match self {
            CtComponent::C0 => "c0",
            CtComponent::C1 => "c1",
        }
    }
}

/// The measurement the adversary performs on one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureBasis {
    /// Straight computational-basis readout.
    Computational,
    /// Apply the inverse of the block's encoding unitary at guess `u`,
    /// then read out. The block angle is public, so this is available to
    /// any adversary.
    InverseEncoding { u: Bit },
    /// Apply an arbitrary caller-supplied rotation, then read out.
    Rotated(Unitary2),
}

/// A challenge ciphertext held behind a destructive measurement interface.
pub struct CiphertextHandle {
    blocks: Vec<[Option<PureState>; 2]>,
    thetas: Vec<f64>,
}

impl CiphertextHandle {
    pub(crate) fn new(ct: &HfeCiphertext, thetas: Vec<f64>) -> Self {
        let blocks = ct
            .blocks()
            .iter()
            .map(|b| [Some(*b.c0()), Some(*b.c1())])
            .collect();
        // same angle canonicalization the encryptor applies
        let thetas = thetas
            .into_iter()
            .map(|t| {
                let t = t.rem_euclid(std::f64::consts::TAU);
                if t >= std::f64::consts::TAU {
                    0.0
                } else {
                    t
                }
            })
            .collect();
        CiphertextHandle { blocks, thetas }
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// The public encoding angle of a zero-based block.
    pub fn theta(&self, block: usize) -> Result<f64, GameError> {
        self.thetas
            .get(block)
            .copied()
            .ok_or(GameError::BlockOutOfRange(block))
    }

    /// Measures one qubit and consumes it.
    pub fn measure(
        &mut self,
        block: usize,
        component: CtComponent,
        basis: MeasureBasis,
        rng: &mut SimRng,
    ) -> Result<Bit, GameError> {
        let theta = self.theta(block)?;
        let slot = &mut self.blocks[block][match component {
            CtComponent::C0 => 0,
            CtComponent::C1 => 1,
        }];
        let state = slot.take().ok_or(GameError::QubitConsumed {
            block,
            component: component.name(),
        })?;
        let rotated = match basis {
            MeasureBasis::Computational => state,
            MeasureBasis::InverseEncoding { u } => h_map(theta, u)
                .dagger()
                .apply(&state)
                .expect("encoding family is unitary"),
            MeasureBasis::Rotated(u) => u
                .apply(&state)
                .map_err(|e| GameError::Hfe(crate::error::HfeError::Qubit(e)))?,
        };
        Ok(rotated.sample_measure(rng))
    }
}
