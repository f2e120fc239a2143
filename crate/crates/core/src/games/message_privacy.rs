//! The message-privacy game.
//!
//! Per trial: fresh setup, a uniform challenge bit `b`, and an adversary
//! with oracle access to KeyGen and the left-right encryption oracle
//! `(m0, m1) -> Enc(m_b)`. A valid adversary's queries must satisfy
//! `F(k, m0) = F(k, m1)` for every queried key and message pair; the
//! harness validates the full transcript before recording the guess and
//! aborts the run on the first violation, with the offending query
//! attached.

use crate::error::GameError;
use crate::hfe::{
    block_angle, enc, enc_with_randomness, functionality, keygen, setup, BitString, FunctionKey,
    Key, MasterSecret, Permutation, SchemeParams,
};
use crate::qubit::Bit;
use crate::rng::{spawn, SimRng};

use super::oracles::CiphertextHandle;
use super::{
    estimate_advantage, AdvantageEstimate, AdversaryStrategy, EncMode, GameTranscript,
    DEFAULT_QUERY_BUDGET,
};

/// Oracle handles for one message-privacy trial. The master secret is
/// hidden; the adversary interacts only through these calls and through a
/// menu of candidate keys (designated keys model colluding key holders).
pub struct MessagePrivacyOracles {
    msk: MasterSecret,
    challenge: Bit,
    enc_mode: EncMode,
    budget: usize,
    calls: usize,
    key_menu: Vec<Key>,
    key_queries: Vec<BitString>,
    message_pair_queries: Vec<(BitString, BitString)>,
    rng: SimRng,
}

impl MessagePrivacyOracles {
    fn new(
        msk: MasterSecret,
        challenge: Bit,
        enc_mode: EncMode,
        key_menu: Vec<Key>,
        rng: SimRng,
    ) -> Self {
        MessagePrivacyOracles {
            msk,
            challenge,
            enc_mode,
            budget: DEFAULT_QUERY_BUDGET,
            calls: 0,
            key_menu,
            key_queries: Vec::new(),
            message_pair_queries: Vec::new(),
            rng,
        }
    }

    pub fn message_len(&self) -> usize {
        self.msk.params().message_len()
    }

    pub fn lambda(&self) -> usize {
        self.msk.params().lambda()
    }

    /// Candidate keys the adversary may query: the designated keys in rank
    /// order, then a few non-designated distractors.
    pub fn key_menu(&self) -> &[Key] {
        &self.key_menu
    }

    fn charge(&mut self) -> Result<(), GameError> {
        if self.calls >= self.budget {
            return Err(GameError::BudgetExhausted(self.budget));
        }
        self.calls += 1;
        Ok(())
    }

    /// The KeyGen oracle.
    pub fn query_keygen(&mut self, key: &Key) -> Result<FunctionKey, GameError> {
        self.charge()?;
        if let Key::Classical(bits) = key {
            self.key_queries.push(bits.clone());
        }
        Ok(keygen(&self.msk, key)?)
    }

    /// The left-right encryption oracle: encrypts `m_b` for the hidden
    /// challenge bit. Both messages must have the scheme length.
    pub fn query_enc(
        &mut self,
        m0: &BitString,
        m1: &BitString,
    ) -> Result<CiphertextHandle, GameError> {
        self.charge()?;
        let q_len = self.message_len();
        if m0.len() != q_len || m1.len() != q_len {
            return Err(GameError::InvalidAdversary(format!(
                "message pair lengths ({}, {}) differ from Q={q_len}",
                m0.len(),
                m1.len()
            )));
        }
        self.message_pair_queries.push((m0.clone(), m1.clone()));
        let chosen = if self.challenge.as_bool() { m1 } else { m0 };
        let ct = match self.enc_mode {
            EncMode::Genuine => enc(&self.msk, chosen, &mut self.rng)?,
            EncMode::FixedRandomness(r) => {
                enc_with_randomness(&self.msk, chosen, &vec![r; q_len])?
            }
        };
        let thetas = (1..=q_len).map(|j| block_angle(j, q_len)).collect();
        Ok(CiphertextHandle::new(&ct, thetas))
    }

    fn into_outcome(self) -> (MasterSecret, GameTranscript) {
        let mut transcript = GameTranscript::new(self.msk.digest());
        transcript.key_queries = self.key_queries;
        transcript.message_pair_queries = self.message_pair_queries;
        (self.msk, transcript)
    }
}

/// Whether a completed transcript satisfies the validity condition: every
/// queried key agrees on every queried message pair under the ideal
/// functionality.
pub fn validate_message_privacy_queries(
    transcript: &GameTranscript,
    msk: &MasterSecret,
) -> bool {
    find_invalid_query(transcript, msk).is_none()
}

pub(crate) fn find_invalid_query(
    transcript: &GameTranscript,
    msk: &MasterSecret,
) -> Option<String> {
    for key_bits in &transcript.key_queries {
        let key = Key::Classical(key_bits.clone());
        for (m0, m1) in &transcript.message_pair_queries {
            let f0 = functionality(msk, &key, m0);
            let f1 = functionality(msk, &key, m1);
            if f0 != f1 {
                return Some(format!(
                    "key {key_bits} separates the message pair ({m0}, {m1})"
                ));
            }
        }
    }
    None
}

/// Runs the message-privacy game and returns the empirical advantage.
///
/// Every trial uses a fresh master secret, so samples are independent
/// draws from the setup distribution.
pub fn run_message_privacy_game(
    adv: &AdversaryStrategy<MessagePrivacyOracles>,
    params: &SchemeParams,
    enc_mode: EncMode,
    n_trials: usize,
    rng: &mut SimRng,
) -> Result<AdvantageEstimate, GameError> {
    let mut guesses0 = Vec::new();
    let mut guesses1 = Vec::new();
    for _ in 0..n_trials {
        let mut setup_rng = spawn(rng);
        let mut menu_rng = spawn(rng);
        let oracle_rng = spawn(rng);
        let mut adv_rng = spawn(rng);
        let challenge = Bit::random(rng);

        let msk = setup(
            params,
            Permutation::identity(params.message_len()),
            &mut setup_rng,
        )?;
        let key_menu = build_key_menu(&msk, &mut menu_rng);
        let mut oracles =
            MessagePrivacyOracles::new(msk, challenge, enc_mode, key_menu, oracle_rng);
        let guess = adv.run(&mut oracles, &mut adv_rng)?;

        let (msk, transcript) = oracles.into_outcome();
        if let Some(offending) = find_invalid_query(&transcript, &msk) {
            return Err(GameError::InvalidAdversary(offending));
        }
        if challenge.as_bool() {
            guesses1.push(guess);
        } else {
            guesses0.push(guess);
        }
    }
    estimate_advantage(&guesses0, &guesses1)
}

/// Designated keys in rank order followed by four random non-designated
/// distractors (resampled on collision where the key space allows).
pub(crate) fn build_key_menu(msk: &MasterSecret, rng: &mut SimRng) -> Vec<Key> {
    let lambda = msk.params().lambda();
    let mut menu: Vec<Key> = msk
        .designated_keys()
        .iter()
        .cloned()
        .map(Key::Classical)
        .collect();
    let space = if lambda >= 32 { u64::MAX } else { 1u64 << lambda };
    let room = space.saturating_sub(msk.designated_keys().len() as u64);
    let mut added = 0;
    let mut attempts = 0;
    while added < 4 && room > 0 && attempts < 256 {
        attempts += 1;
        let candidate = BitString::random(lambda, rng);
        if msk.rank_of(&candidate).is_none() {
            menu.push(Key::Classical(candidate));
            added += 1;
        }
    }
    menu
}
