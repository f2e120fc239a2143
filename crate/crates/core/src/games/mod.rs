//! Executable security-game harnesses: message privacy, function privacy,
//! and weak simulation, with pluggable adversary strategies and empirical
//! advantage estimation.
//!
//! The harness samples fixed strategy families over finitely many trials.
//! Its outputs are Monte-Carlo evidence about those strategies, not a
//! proof over all polynomial-time adversaries; the reporting front end
//! states this caveat verbatim.

mod adversaries;
mod function_privacy;
mod message_privacy;
mod oracles;
mod weak_sim;

pub use adversaries::{
    find_function_privacy_adversary, find_message_privacy_adversary, find_weak_sim_adversary,
    function_privacy_adversaries, message_privacy_adversaries, uniform_message_generator,
    weak_sim_adversaries,
};
pub use function_privacy::{
    run_function_privacy_game, validate_function_privacy_queries, FunctionPrivacyOracles,
};
pub use message_privacy::{
    run_message_privacy_game, validate_message_privacy_queries, MessagePrivacyOracles,
};
pub use oracles::{CiphertextHandle, CtComponent, MeasureBasis};
pub use weak_sim::{multiset_distance, run_weak_sim_game, WeakSimAdversary, WeakSimView};

use crate::error::GameError;
use crate::hfe::BitString;
use crate::qubit::Bit;
use crate::rng::SimRng;

/// Default cap on oracle calls per trial.
pub const DEFAULT_QUERY_BUDGET: usize = 1 << 10;

/// How the encryption oracle draws per-block randomness.
///
/// `FixedRandomness` deliberately breaks the cipher by pinning `r`; the
/// harness-soundness checks use it to confirm the games can detect an
/// insecure scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncMode {
    Genuine,
    FixedRandomness(Bit),
}

type GuessBehavior<O> = Box<dyn Fn(&mut O, &mut SimRng) -> Result<Bit, GameError> + Send + Sync>;

/// A named adversary strategy over oracle handles of type `O`.
pub struct AdversaryStrategy<O> {
    descriptor: String,
    behavior: GuessBehavior<O>,
}

impl<O> AdversaryStrategy<O> {
    pub fn new(
        descriptor: impl Into<String>,
        behavior: impl Fn(&mut O, &mut SimRng) -> Result<Bit, GameError> + Send + Sync + 'static,
    ) -> Self {
        AdversaryStrategy { descriptor: descriptor.into(), behavior: Box::new(behavior) }
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn run(&self, oracles: &mut O, rng: &mut SimRng) -> Result<Bit, GameError> {
        (self.behavior)(oracles, rng)
    }
}

impl<O> std::fmt::Debug for AdversaryStrategy<O> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AdversaryStrategy")
            .field("descriptor", &self.descriptor)
            .finish_non_exhaustive()
    }
}

/// One game run: which keys and message pairs were queried, and what the
/// adversary (or simulator) output. The master secret appears only as a
/// short digest, never in the clear.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GameTranscript {
    pub a_digest: String,
    pub message: Option<BitString>,
    pub tau: String,
    pub alpha: String,
    pub key_queries: Vec<BitString>,
    pub key_pair_queries: Vec<(BitString, BitString)>,
    pub message_pair_queries: Vec<(BitString, BitString)>,
}

impl GameTranscript {
    /// An empty transcript for the given instance digest.
    pub fn new(a_digest: String) -> Self {
        GameTranscript {
            a_digest,
            message: None,
            tau: String::new(),
            alpha: String::new(),
            key_queries: Vec::new(),
            key_pair_queries: Vec::new(),
            message_pair_queries: Vec::new(),
        }
    }
}

/// An empirical distinguishing-advantage estimate.
///
/// `p0_hat` and `p1_hat` are the guess-1 frequencies conditioned on the
/// challenge bit; `bound` is the 4-sigma sampling bound `4 / sqrt(n)` at
/// the smaller of the two conditional sample sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvantageEstimate {
    pub p0_hat: f64,
    pub p1_hat: f64,
    pub n_trials: usize,
    pub bound: f64,
}

impl AdvantageEstimate {
    /// `|p0_hat - p1_hat|`, the quantity the privacy definitions bound.
    pub fn gap(&self) -> f64 {
        (self.p0_hat - self.p1_hat).abs()
    }
}

/// Folds per-challenge guess lists into an [`AdvantageEstimate`].
pub fn estimate_advantage(
    guesses0: &[Bit],
    guesses1: &[Bit],
) -> Result<AdvantageEstimate, GameError> {
    if guesses0.is_empty() || guesses1.is_empty() {
        return Err(GameError::EmptyGuesses);
    }
    let mean = |bits: &[Bit]| {
        bits.iter().map(|b| f64::from(b.as_u8())).sum::<f64>() / bits.len() as f64
    };
    let n_min = guesses0.len().min(guesses1.len());
    Ok(AdvantageEstimate {
        p0_hat: mean(guesses0),
        p1_hat: mean(guesses1),
        n_trials: guesses0.len() + guesses1.len(),
        bound: 4.0 / (n_min as f64).sqrt(),
    })
}
