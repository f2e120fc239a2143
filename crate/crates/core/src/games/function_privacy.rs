//! The function-privacy game.
//!
//! Both oracles are indexed by the challenge bit: key queries are pairs
//! `(k0, k1)` answered by `KeyGen(k_b)`, message queries are pairs
//! `(m0, m1)` answered by `Enc(m_b)`. Validity requires equal lengths on
//! both sides and `F(k0, m0) = F(k1, m1)` for every queried combination.
//! For non-bottom keys that forces the two ranks to coincide, which is
//! exactly why the game reduces to message privacy; bottom/bottom pairs
//! are always allowed since both sides answer with the null function.

use crate::error::GameError;
use crate::hfe::{
    block_angle, enc, enc_with_randomness, functionality, keygen, setup, BitString, FunctionKey,
    Key, MasterSecret, Permutation, SchemeParams,
};
use crate::qubit::Bit;
use crate::rng::{spawn, SimRng};

use super::message_privacy::build_key_menu;
use super::oracles::CiphertextHandle;
use super::{
    estimate_advantage, AdvantageEstimate, AdversaryStrategy, EncMode, GameTranscript,
    DEFAULT_QUERY_BUDGET,
};

/// Oracle handles for one function-privacy trial.
pub struct FunctionPrivacyOracles {
    msk: MasterSecret,
    challenge: Bit,
    enc_mode: EncMode,
    budget: usize,
    calls: usize,
    key_menu: Vec<Key>,
    key_pair_queries: Vec<(BitString, BitString)>,
    message_pair_queries: Vec<(BitString, BitString)>,
    rng: SimRng,
}

impl FunctionPrivacyOracles {
    fn new(
        msk: MasterSecret,
        challenge: Bit,
        enc_mode: EncMode,
        key_menu: Vec<Key>,
        rng: SimRng,
    ) -> Self {
        FunctionPrivacyOracles {
            msk,
            challenge,
            enc_mode,
            budget: DEFAULT_QUERY_BUDGET,
            calls: 0,
            key_menu,
            key_pair_queries: Vec::new(),
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

    /// The challenge-indexed KeyGen oracle: answers with `KeyGen(k_b)`.
    pub fn query_keygen_pair(
        &mut self,
        k0: &BitString,
        k1: &BitString,
    ) -> Result<FunctionKey, GameError> {
        self.charge()?;
        let lambda = self.lambda();
        if k0.len() != lambda || k1.len() != lambda {
            return Err(GameError::InvalidAdversary(format!(
                "key pair lengths ({}, {}) differ from lambda={lambda}",
                k0.len(),
                k1.len()
            )));
        }
        self.key_pair_queries.push((k0.clone(), k1.clone()));
        let chosen = if self.challenge.as_bool() { k1 } else { k0 };
        Ok(keygen(&self.msk, &Key::Classical(chosen.clone()))?)
    }

    /// The challenge-indexed encryption oracle: answers with `Enc(m_b)`.
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
        transcript.key_pair_queries = self.key_pair_queries;
        transcript.message_pair_queries = self.message_pair_queries;
        (self.msk, transcript)
    }
}

pub(crate) fn find_invalid_function_privacy_query(
    transcript: &GameTranscript,
    msk: &MasterSecret,
) -> Option<String> {
    for (k0, k1) in &transcript.key_pair_queries {
        let key0 = Key::Classical(k0.clone());
        let key1 = Key::Classical(k1.clone());
        for (m0, m1) in &transcript.message_pair_queries {
            let f0 = functionality(msk, &key0, m0);
            let f1 = functionality(msk, &key1, m1);
            if f0 != f1 {
                return Some(format!(
                    "key pair ({k0}, {k1}) evaluates differently on message pair ({m0}, {m1})"
                ));
            }
        }
    }
    None
}

/// Whether a completed transcript satisfies the function-privacy validity
/// condition.
pub fn validate_function_privacy_queries(
    transcript: &GameTranscript,
    msk: &MasterSecret,
) -> bool {
    find_invalid_function_privacy_query(transcript, msk).is_none()
}

/// Runs the function-privacy game and returns the empirical advantage.
pub fn run_function_privacy_game(
    adv: &AdversaryStrategy<FunctionPrivacyOracles>,
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
            FunctionPrivacyOracles::new(msk, challenge, enc_mode, key_menu, oracle_rng);
        let guess = adv.run(&mut oracles, &mut adv_rng)?;

        let (msk, transcript) = oracles.into_outcome();
        if let Some(offending) = find_invalid_function_privacy_query(&transcript, &msk) {
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
