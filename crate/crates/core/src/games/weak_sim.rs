//! The weak-simulation game.
//!
//! The real side encrypts a generated message and lets the adversary work
//! on the ciphertext with a KeyGen oracle; the ideal side gives a built-in
//! simulator only the auxiliary token and the length revealed by the aleph
//! key, answering each key query through the ideal functionality. Because
//! the ciphertext leaks nothing beyond what decryption under queried keys
//! yields, the two transcript distributions coincide exactly — the harness
//! checks multiset equality of the output tuples under matched seeds.
//!
//! Adversary outputs here are deterministic post-processing of the oracle
//! answers plus `(tau, revealed length)`, which is precisely the shape the
//! simulator can reproduce. The simulator is built in, not pluggable: the
//! game only requires that some simulator exists, and this is it.

use std::collections::BTreeMap;

use crate::error::GameError;
use crate::hfe::{
    dec, enc, functionality, keygen, setup, BitString, FunctionalityOutput, Key, Permutation,
    SchemeParams,
};
use crate::rng::{rng_from_seed, spawn, SimRng};

use super::message_privacy::build_key_menu;
use super::{GameTranscript, DEFAULT_QUERY_BUDGET};

/// What the adversary (or the simulator standing in for it) gets to see
/// before making key queries.
pub struct WeakSimView<'a> {
    /// Auxiliary token from the message generator.
    pub tau: &'a str,
    /// The message length: block count on the real side, the aleph
    /// functionality output on the ideal side.
    pub revealed_len: usize,
    /// Candidate keys available for querying.
    pub key_menu: &'a [Key],
}

/// The oracle answering a key query with the recovered message prefix:
/// decryption under the issued function key on the real side, the ideal
/// functionality on the ideal side.
pub type OpenOracle<'a> = dyn FnMut(&BitString) -> Result<BitString, GameError> + 'a;

type WeakSimBehavior = Box<
    dyn for<'a> Fn(&WeakSimView<'a>, &mut OpenOracle<'a>, &mut SimRng) -> Result<String, GameError>
        + Send
        + Sync,
>;

/// A named weak-simulation adversary.
pub struct WeakSimAdversary {
    descriptor: String,
    behavior: WeakSimBehavior,
}

impl WeakSimAdversary {
    pub fn new(
        descriptor: impl Into<String>,
        behavior: impl for<'a> Fn(
                &WeakSimView<'a>,
                &mut OpenOracle<'a>,
                &mut SimRng,
            ) -> Result<String, GameError>
            + Send
            + Sync
            + 'static,
    ) -> Self {
        WeakSimAdversary { descriptor: descriptor.into(), behavior: Box::new(behavior) }
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }
}

impl std::fmt::Debug for WeakSimAdversary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WeakSimAdversary")
            .field("descriptor", &self.descriptor)
            .finish_non_exhaustive()
    }
}

/// Runs `n_trials` matched real/ideal executions and returns both
/// transcript samples.
///
/// Matched seeds: each trial derives one seed per role (setup, message,
/// encryption, key menu, adversary randomness) and reuses the setup,
/// message, menu, and adversary seeds across the two worlds. The
/// functionality index of the ideal world is the real world's master
/// secret, as the game hands it over.
pub fn run_weak_sim_game(
    msg_gen: &dyn Fn(&SchemeParams, &mut SimRng) -> (BitString, String),
    adv: &WeakSimAdversary,
    params: &SchemeParams,
    n_trials: usize,
    rng: &mut SimRng,
) -> Result<(Vec<GameTranscript>, Vec<GameTranscript>), GameError> {
    let mut real = Vec::with_capacity(n_trials);
    let mut ideal = Vec::with_capacity(n_trials);

    for _ in 0..n_trials {
        let mut setup_rng = spawn(rng);
        let mut msg_rng = spawn(rng);
        let mut enc_rng = spawn(rng);
        let mut menu_rng = spawn(rng);
        let adv_seed = rand::RngCore::next_u64(rng);

        let msk = setup(
            params,
            Permutation::identity(params.message_len()),
            &mut setup_rng,
        )?;
        let (message, tau) = msg_gen(params, &mut msg_rng);
        let key_menu = build_key_menu(&msk, &mut menu_rng);
        let digest = msk.digest();

        // real world: encrypt, then open queried keys by decrypting
        let ct = enc(&msk, &message, &mut enc_rng)?;
        let mut queries = Vec::new();
        let mut calls = 0usize;
        let alpha_real = {
            let mut opener = |y: &BitString| -> Result<BitString, GameError> {
                if calls >= DEFAULT_QUERY_BUDGET {
                    return Err(GameError::BudgetExhausted(DEFAULT_QUERY_BUDGET));
                }
                calls += 1;
                queries.push(y.clone());
                let fk = keygen(&msk, &Key::Classical(y.clone()))?;
                Ok(dec(&fk, &ct)?)
            };
            let view = WeakSimView {
                tau: &tau,
                revealed_len: ct.len(),
                key_menu: &key_menu,
            };
            (adv.behavior)(&view, &mut opener, &mut rng_from_seed(adv_seed))?
        };
        real.push(GameTranscript {
            a_digest: digest.clone(),
            message: Some(message.clone()),
            tau: tau.clone(),
            alpha: alpha_real,
            key_queries: queries,
            key_pair_queries: Vec::new(),
            message_pair_queries: Vec::new(),
        });

        // ideal world: the simulator re-runs the adversary, answering each
        // key query through the functionality alone
        let revealed_len = match functionality(&msk, &Key::Aleph, &message)? {
            FunctionalityOutput::Length(len) => len,
            FunctionalityOutput::Bits(_) => unreachable!("aleph reveals the length"),
        };
        let mut queries = Vec::new();
        let mut calls = 0usize;
        let alpha_ideal = {
            let mut opener = |y: &BitString| -> Result<BitString, GameError> {
                if calls >= DEFAULT_QUERY_BUDGET {
                    return Err(GameError::BudgetExhausted(DEFAULT_QUERY_BUDGET));
                }
                calls += 1;
                queries.push(y.clone());
                match functionality(&msk, &Key::Classical(y.clone()), &message)? {
                    FunctionalityOutput::Bits(bits) => Ok(bits),
                    FunctionalityOutput::Length(_) => unreachable!("classical key"),
                }
            };
            let view = WeakSimView {
                tau: &tau,
                revealed_len,
                key_menu: &key_menu,
            };
            (adv.behavior)(&view, &mut opener, &mut rng_from_seed(adv_seed))?
        };
        ideal.push(GameTranscript {
            a_digest: digest,
            message: Some(message),
            tau,
            alpha: alpha_ideal,
            key_queries: queries,
            key_pair_queries: Vec::new(),
            message_pair_queries: Vec::new(),
        });
    }
    Ok((real, ideal))
}

/// Statistical distance between two empirical transcript distributions:
/// half the L1 distance of the normalized multiset counts. Zero exactly
/// when the multisets agree.
pub fn multiset_distance(a: &[GameTranscript], b: &[GameTranscript]) -> f64 {
    let mut counts: BTreeMap<&GameTranscript, (i64, i64)> = BTreeMap::new();
    for t in a {
        counts.entry(t).or_default().0 += 1;
    }
    for t in b {
        counts.entry(t).or_default().1 += 1;
    }
    let na = a.len().max(1) as f64;
    let nb = b.len().max(1) as f64;
    counts
        .values()
        .map(|&(ca, cb)| (ca as f64 / na - cb as f64 / nb).abs())
        .sum::<f64>()
        / 2.0
}
