//! Built-in adversary strategies and message generators for the game
//! harnesses. These are the concrete strategy families the acceptance
//! checks sweep; the CLI selects them by name.

use rand::Rng;

use crate::hfe::{BitString, FunctionKeyKind, Key, SchemeParams};
use crate::qubit::Bit;
use crate::rng::SimRng;

use super::function_privacy::FunctionPrivacyOracles;
use super::message_privacy::MessagePrivacyOracles;
use super::oracles::{CtComponent, MeasureBasis};
use super::weak_sim::WeakSimAdversary;
use super::AdversaryStrategy;

/// A message pair that agrees on the first `agree` positions and differs
/// in the last one (when the length allows).
fn agreeing_pair(q_len: usize, agree: usize) -> (BitString, BitString) {
    let m0 = BitString::zeros(q_len);
    let mut bits = vec![Bit::ZERO; q_len];
    if q_len > agree {
        bits[q_len - 1] = Bit::ONE;
    }
    (m0, BitString::new(bits))
}

fn classical_bits(key: &Key) -> BitString {
    match key {
        Key::Classical(bits) => bits.clone(),
        Key::Aleph => unreachable!("key menus hold classical keys only"),
    }
}

/// The built-in message-privacy strategies.
pub fn message_privacy_adversaries() -> Vec<AdversaryStrategy<MessagePrivacyOracles>> {
    vec![
        AdversaryStrategy::new("constant-zero", |_oracles, _rng| Ok(Bit::ZERO)),
        AdversaryStrategy::new("basis-measurer", |oracles: &mut MessagePrivacyOracles, rng| {
            let (m0, m1) = agreeing_pair(oracles.message_len(), 0);
            let mut ct = oracles.query_enc(&m0, &m1)?;
            let last = ct.num_blocks() - 1;
            ct.measure(last, CtComponent::C1, MeasureBasis::Computational, rng)
        }),
        AdversaryStrategy::new(
            "rotation-measurer",
            |oracles: &mut MessagePrivacyOracles, rng| {
                // invert the block encoding at a guessed randomness of 0;
                // against the genuine scheme the readout is a fair coin,
                // against the fixed-randomness variant it is the chosen
                // message bit itself
                let (m0, m1) = agreeing_pair(oracles.message_len(), 0);
                let mut ct = oracles.query_enc(&m0, &m1)?;
                let last = ct.num_blocks() - 1;
                ct.measure(
                    last,
                    CtComponent::C1,
                    MeasureBasis::InverseEncoding { u: Bit::ZERO },
                    rng,
                )
            },
        ),
        AdversaryStrategy::new(
            "key-query-compare",
            |oracles: &mut MessagePrivacyOracles, rng| {
                // obtain the rank-1 function key, decrypt the first block
                // honestly, and compare with the (agreed) first bit
                let rank1 = oracles.key_menu()[0].clone();
                let fk = oracles.query_keygen(&rank1)?;
                let s1 = match fk.kind() {
                    FunctionKeyKind::Prefix(bits) => bits.bit(0),
                    FunctionKeyKind::Bottom => unreachable!("rank-1 key yields a prefix"),
                };
                let (m0, m1) = agreeing_pair(oracles.message_len(), 1);
                let mut ct = oracles.query_enc(&m0, &m1)?;
                let r = ct.measure(
                    0,
                    CtComponent::C0,
                    MeasureBasis::InverseEncoding { u: s1 },
                    rng,
                )?;
                let first = ct.measure(
                    0,
                    CtComponent::C1,
                    MeasureBasis::InverseEncoding { u: r },
                    rng,
                )?;
                Ok(if first == m0.bit(0) { Bit::ONE } else { Bit::ZERO })
            },
        ),
    ]
}

pub fn find_message_privacy_adversary(
    name: &str,
) -> Option<AdversaryStrategy<MessagePrivacyOracles>> {
    message_privacy_adversaries()
        .into_iter()
        .find(|a| a.descriptor() == name)
}

/// The built-in function-privacy strategies.
pub fn function_privacy_adversaries() -> Vec<AdversaryStrategy<FunctionPrivacyOracles>> {
    vec![
        AdversaryStrategy::new("constant-zero", |_oracles: &mut FunctionPrivacyOracles, _rng| {
            Ok(Bit::ZERO)
        }),
        AdversaryStrategy::new(
            "basis-measurer",
            |oracles: &mut FunctionPrivacyOracles, rng| {
                let (m0, m1) = agreeing_pair(oracles.message_len(), 0);
                let mut ct = oracles.query_enc(&m0, &m1)?;
                let last = ct.num_blocks() - 1;
                ct.measure(last, CtComponent::C1, MeasureBasis::Computational, rng)
            },
        ),
        AdversaryStrategy::new(
            "matched-key-pair",
            |oracles: &mut FunctionPrivacyOracles, rng| {
                // querying the same designated key on both sides reduces
                // the trial to a message-privacy one
                let q_len = oracles.message_len();
                let rank = 2.min(q_len);
                let key = classical_bits(&oracles.key_menu()[rank - 1]);
                oracles.query_keygen_pair(&key, &key)?;
                let (m0, m1) = agreeing_pair(q_len, rank);
                let mut ct = oracles.query_enc(&m0, &m1)?;
                let last = ct.num_blocks() - 1;
                ct.measure(last, CtComponent::C1, MeasureBasis::Computational, rng)
            },
        ),
        AdversaryStrategy::new(
            "bottom-key-pair",
            |oracles: &mut FunctionPrivacyOracles, rng| {
                // two non-designated keys induce the null function on both
                // sides, so any equal-length message pair is fair game
                let q_len = oracles.message_len();
                let menu = oracles.key_menu();
                if menu.len() < q_len + 2 {
                    return Ok(Bit::ZERO);
                }
                let d0 = classical_bits(&menu[q_len]);
                let d1 = classical_bits(&menu[q_len + 1]);
                oracles.query_keygen_pair(&d0, &d1)?;
                let m0 = BitString::zeros(q_len);
                let m1 = BitString::new(vec![Bit::ONE; q_len]);
                let mut ct = oracles.query_enc(&m0, &m1)?;
                ct.measure(0, CtComponent::C1, MeasureBasis::Computational, rng)
            },
        ),
    ]
}

pub fn find_function_privacy_adversary(
    name: &str,
) -> Option<AdversaryStrategy<FunctionPrivacyOracles>> {
    function_privacy_adversaries()
        .into_iter()
        .find(|a| a.descriptor() == name)
}

/// The built-in weak-simulation adversaries. Their outputs are
/// deterministic functions of the oracle answers and the revealed view,
/// which is what makes the real/ideal transcripts comparable tuple by
/// tuple.
pub fn weak_sim_adversaries() -> Vec<WeakSimAdversary> {
    vec![
        WeakSimAdversary::new("echo", |view, open, _rng| {
            let q_len = view.revealed_len;
            let mut picks = vec![0usize];
            if q_len > 1 {
                picks.push(q_len - 1);
            }
            if view.key_menu.len() > q_len {
                picks.push(q_len);
            }
            let mut answers = Vec::with_capacity(picks.len());
            for idx in picks {
                let key = classical_bits(&view.key_menu[idx]);
                answers.push(open(&key)?.to_string());
            }
            Ok(answers.join("|"))
        }),
        WeakSimAdversary::new("no-queries", |view, _open, _rng| {
            Ok(format!("{}:{}", view.tau, view.revealed_len))
        }),
        WeakSimAdversary::new("prefix-parity", |view, open, _rng| {
            let key = classical_bits(&view.key_menu[view.revealed_len - 1]);
            let answer = open(&key)?;
            let parity = answer.bits().iter().fold(Bit::ZERO, |acc, &b| acc ^ b);
            Ok(format!("len={},parity={parity}", answer.len()))
        }),
    ]
}

pub fn find_weak_sim_adversary(name: &str) -> Option<WeakSimAdversary> {
    weak_sim_adversaries()
        .into_iter()
        .find(|a| a.descriptor() == name)
}

/// Uniform message generator with a small auxiliary token.
pub fn uniform_message_generator(params: &SchemeParams, rng: &mut SimRng) -> (BitString, String) {
    let message = BitString::random(params.message_len(), rng);
    let tau = format!("aux{}", rng.gen_range(0..4u8));
    (message, tau)
}
