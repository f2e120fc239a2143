//! The hybrid functional encryption scheme built over the one-qubit cipher.
//!
//! Setup draws a Q-bit secret `s` and Q pairwise-distinct lambda-bit
//! designated keys `k_1 .. k_Q`. Block `j` of a ciphertext encrypts one
//! message bit under `(s_j, theta_j = 2*pi*j/Q)`; the per-position angle is
//! what binds a key of rank `q` to exactly the first `q` blocks. KeyGen
//! hands the holder of `k_q` the secret prefix `s_1 .. s_q`, so decryption
//! recovers exactly the first `q` message bits and nothing else. An
//! optional index permutation `eta` reroutes which message bit each block
//! carries, so different instantiations reveal different subsequences.
//!
//! The master secret is stored in the compact form
//! `(s, k_1, .., k_Q)` — the underlying injection from keys to Q-bit
//! strings has an exponentially large table and is never materialized.
//! KeyGen is a lookup among the designated keys; every other key maps to
//! the null function.

use std::collections::HashSet;
use std::f64::consts::TAU;
use std::fmt;

use rand::Rng;

use crate::error::HfeError;
use crate::qubit::Bit;
use crate::xi::{qdec, qenc_with_r, XiCiphertext, XiContext};

/// Setup retries the secret draw at most this many times before reporting
/// [`HfeError::ResampleExhausted`]. For Q >= 8 a retry is already rare.
pub const SETUP_MAX_ATTEMPTS: usize = 1000;

/// Upper bound on the message length, `2^20`.
pub const MAX_MESSAGE_LEN: usize = 1 << 20;

/// A fixed-length string of bits, most significant first.
///
/// Bit `0` of the vector is `s_1` in the scheme's indexing; when the string
/// is read as an unsigned integer, bit `0` is the high-order bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<Bit>);

impl BitString {
    pub fn new(bits: Vec<Bit>) -> Self {
        BitString(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitString(vec![Bit::ZERO; len])
    }

    pub fn random<R: Rng>(len: usize, rng: &mut R) -> Self {
        BitString((0..len).map(|_| Bit::random(rng)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, index: usize) -> Bit {
        self.0[index]
    }

    pub fn bits(&self) -> &[Bit] {
        &self.0
    }

    pub fn prefix(&self, len: usize) -> BitString {
        BitString(self.0[..len].to_vec())
    }

    /// Parses a string of '0'/'1' characters.
    pub fn parse_binary(text: &str) -> Result<Self, HfeError> {
        text.chars()
            .map(|ch| match ch {
                '0' => Ok(Bit::ZERO),
                '1' => Ok(Bit::ONE),
                other => Err(HfeError::ParseBits(format!(
                    "unexpected character {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString)
    }

    /// Hex encoding, one nibble per four bits, left-padded to a whole
    /// number of nibbles. The bit length is carried separately.
    pub fn to_hex(&self) -> String {
        if self.0.is_empty() {
            return String::new();
        }
        let pad = (4 - self.0.len() % 4) % 4;
        let mut out = String::with_capacity((self.0.len() + pad) / 4);
        let mut nibble = 0u8;
        let mut filled = 0usize;
        for i in 0..pad + self.0.len() {
            let bit = if i < pad { 0 } else { self.0[i - pad].as_u8() };
            nibble = (nibble << 1) | bit;
            filled += 1;
            if filled == 4 {
                out.push(char::from_digit(nibble as u32, 16).expect("nibble in range"));
                nibble = 0;
                filled = 0;
            }
        }
        out
    }

    /// Inverse of [`BitString::to_hex`] given the original bit length.
    pub fn from_hex(text: &str, len: usize) -> Result<Self, HfeError> {
        let expected_nibbles = len.div_ceil(4);
        if text.len() != expected_nibbles {
            return Err(HfeError::ParseHex(format!(
                "expected {expected_nibbles} hex digits for {len} bits, got {}",
                text.len()
            )));
        }
        let mut bits = Vec::with_capacity(expected_nibbles * 4);
        for ch in text.chars() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| HfeError::ParseHex(format!("invalid hex digit {ch:?}")))?;
            for shift in (0..4).rev() {
                bits.push(Bit::new((nibble >> shift) & 1 == 1));
            }
        }
        let pad = expected_nibbles * 4 - len;
        if bits[..pad].iter().any(|b| b.as_bool()) {
            return Err(HfeError::ParseHex(
                "padding bits must be zero".to_string(),
            ));
        }
        Ok(BitString(bits.split_off(pad)))
    }

    /// Whether `int(self) - delta` stays inside `[0, 2^len - 1]`.
    ///
    /// Works for any bit length without big-integer arithmetic: only a
    /// 63-bit window at the low end can decide the comparison, because
    /// `|delta|` is far below `2^63`.
    pub fn offset_in_range(&self, delta: i64) -> bool {
        match delta {
            0 => true,
            d if d > 0 => self.value_at_least(d as u64),
            d => {
                // int(s) - d <= 2^len - 1  <=>  int(complement(s)) >= -d,
                // since int(s) + int(complement(s)) = 2^len - 1.
                self.complement().value_at_least(d.unsigned_abs())
            }
        }
    }

    fn complement(&self) -> BitString {
        BitString(self.0.iter().map(|b| b.flipped()).collect())
    }

    /// Whether the integer value is at least `threshold` (< 2^63).
    fn value_at_least(&self, threshold: u64) -> bool {
        let window = self.0.len().min(63);
        let high = self.0.len() - window;
        if self.0[..high].iter().any(|b| b.as_bool()) {
            return true;
        }
        let mut value = 0u64;
        for b in &self.0[high..] {
            value = (value << 1) | u64::from(b.as_u8());
        }
        value >= threshold
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// A permutation of the block index set `[Q] = {1, .., Q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    // image[j] is eta(j+1) - 1, zero-based
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Permutation { image: (0..len).collect() }
    }

    /// Builds from one-based images `eta(1), .., eta(Q)`.
    pub fn from_one_based(images: &[usize], len: usize) -> Result<Self, HfeError> {
        if images.len() != len {
            return Err(HfeError::InvalidPermutation(len));
        }
        let mut seen = vec![false; len];
        let mut image = Vec::with_capacity(len);
        for &v in images {
            if v == 0 || v > len || seen[v - 1] {
                return Err(HfeError::InvalidPermutation(len));
            }
            seen[v - 1] = true;
            image.push(v - 1);
        }
        Ok(Permutation { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Zero-based image: the message position carried by block `j0`.
    pub fn image_of(&self, j0: usize) -> usize {
        self.image[j0]
    }

    /// One-based images, as written in flags and files.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v + 1).collect()
    }
}

/// Scheme parameters: key length `lambda` and message length `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeParams {
    lambda: usize,
    message_len: usize,
}

impl SchemeParams {
    /// Requires `1 <= lambda <= Q <= 2^20`.
    pub fn new(lambda: usize, message_len: usize) -> Result<Self, HfeError> {
        if lambda == 0 {
            return Err(HfeError::ZeroLambda);
        }
        if message_len < lambda {
            return Err(HfeError::MessageLenBelowLambda { lambda, q: message_len });
        }
        if message_len > MAX_MESSAGE_LEN {
            return Err(HfeError::MessageLenTooLarge(message_len));
        }
        Ok(SchemeParams { lambda, message_len })
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn message_len(&self) -> usize {
        self.message_len
    }
}

/// A decryption key: a classical lambda-bit string, or the distinguished
/// aleph key whose functionality output is the message length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Key {
    Classical(BitString),
    Aleph,
}

/// The master secret in its compact representation: the Q-bit secret `s`
/// (whose bits are the per-block cipher keys), the ordered designated keys
/// `k_1 .. k_Q`, and the block permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasterSecret {
    params: SchemeParams,
    s: BitString,
    designated: Vec<BitString>,
    eta: Permutation,
}

impl MasterSecret {
    /// Validates all structural invariants; the parse path uses this too.
    pub fn from_parts(
        params: SchemeParams,
        s: BitString,
        designated: Vec<BitString>,
        eta: Permutation,
    ) -> Result<Self, HfeError> {
        let q_len = params.message_len();
        if s.len() != q_len {
            return Err(HfeError::LengthMismatch { expected: q_len, got: s.len() });
        }
        if designated.len() != q_len {
            return Err(HfeError::LengthMismatch { expected: q_len, got: designated.len() });
        }
        let mut seen = HashSet::with_capacity(q_len);
        for key in &designated {
            if key.len() != params.lambda() {
                return Err(HfeError::LengthMismatch {
                    expected: params.lambda(),
                    got: key.len(),
                });
            }
            if !seen.insert(key.clone()) {
                return Err(HfeError::KeySpaceTooSmall { lambda: params.lambda(), q: q_len });
            }
        }
        if eta.len() != q_len {
            return Err(HfeError::InvalidPermutation(q_len));
        }
        for (i, delta) in delta_table(q_len).into_iter().enumerate() {
            if !s.offset_in_range(delta) {
                return Err(HfeError::SecretOutOfRange { rank: i + 1 });
            }
        }
        Ok(MasterSecret { params, s, designated, eta })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    /// The secret bits `s_1 .. s_Q`.
    pub fn secret_bits(&self) -> &BitString {
        &self.s
    }

    /// Designated keys in rank order `k_1 .. k_Q`.
    pub fn designated_keys(&self) -> &[BitString] {
        &self.designated
    }

    pub fn eta(&self) -> &Permutation {
        &self.eta
    }

    /// Rank of a classical key among the designated keys, one-based.
    pub fn rank_of(&self, key: &BitString) -> Option<usize> {
        self.designated.iter().position(|k| k == key).map(|i| i + 1)
    }

    /// A short FNV-1a identifier of the instance for transcripts and
    /// reports. Not a secrecy boundary; it just avoids copying the secret
    /// into exported records.
    pub fn digest(&self) -> String {
        let mut hash = 0xcbf29ce484222325u64;
        let mut eat = |byte: u8| {
            hash ^= u64::from(byte);
            hash = hash.wrapping_mul(0x100000001b3);
        };
        eat(self.params.lambda() as u8);
        for byte in (self.params.message_len() as u64).to_be_bytes() {
            eat(byte);
        }
        for b in self.s.bits() {
            eat(b.as_u8());
        }
        for key in &self.designated {
            eat(0xfe);
            for b in key.bits() {
                eat(b.as_u8());
            }
        }
        for v in self.eta.to_one_based() {
            eat((v & 0xff) as u8);
        }
        format!("{hash:016x}")
    }

    /// The encryption angle for one-based block index `j`.
    pub fn theta_for_block(&self, j: usize) -> f64 {
        block_angle(j, self.params.message_len())
    }
}

/// `theta_j = 2*pi*j / Q` for a one-based block index.
pub fn block_angle(j: usize, q_len: usize) -> f64 {
    TAU * j as f64 / q_len as f64
}

/// The per-user function key: a prefix `s_1 .. s_q` of the secret, or the
/// all-bottom key that decrypts to the null message.
///
/// Carries the message length of the issuing instance, because decryption
/// re-derives the block angles from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionKey {
    scheme_len: usize,
    kind: FunctionKeyKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionKeyKind {
    Prefix(BitString),
    Bottom,
}

impl FunctionKey {
    pub fn new(scheme_len: usize, kind: FunctionKeyKind) -> Self {
        FunctionKey { scheme_len, kind }
    }

    pub fn scheme_len(&self) -> usize {
        self.scheme_len
    }

    pub fn kind(&self) -> &FunctionKeyKind {
        &self.kind
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self.kind, FunctionKeyKind::Bottom)
    }

    /// Number of message bits this key recovers.
    pub fn prefix_len(&self) -> usize {
        match &self.kind {
            FunctionKeyKind::Prefix(bits) => bits.len(),
            FunctionKeyKind::Bottom => 0,
        }
    }
}

/// A ciphertext: one two-qubit block per message bit.
#[derive(Debug, Clone, PartialEq)]
pub struct HfeCiphertext {
    blocks: Vec<XiCiphertext>,
}

impl HfeCiphertext {
    pub fn new(blocks: Vec<XiCiphertext>) -> Self {
        HfeCiphertext { blocks }
    }

    pub fn blocks(&self) -> &[XiCiphertext] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// The key-rank offset table: for each `q` in `[Q]`, the unique integer
/// among `-(Q - q + 1)/2` and `(Q - q)/2` (exactly one is an integer since
/// the numerators have opposite parity). Returned indexed by `q - 1`.
///
/// All offsets are pairwise distinct and the offset at rank `Q` is zero,
/// which is what makes "exactly one rank per key" possible.
pub fn delta_table(q_len: usize) -> Vec<i64> {
    (1..=q_len)
        .map(|q| {
            let d = (q_len - q) as i64;
            if d % 2 == 0 {
                d / 2
            } else {
                -(d + 1) / 2
            }
        })
        .collect()
}

/// Samples a fresh master secret.
///
/// The secret `s` is redrawn until every rank offset keeps the implied key
/// image inside `[0, 2^Q - 1]`; the designated keys are redrawn until
/// pairwise distinct.
pub fn setup<R: Rng>(
    params: &SchemeParams,
    eta: Permutation,
    rng: &mut R,
) -> Result<MasterSecret, HfeError> {
    let q_len = params.message_len();
    let lambda = params.lambda();
    if lambda < 64 && (1u128 << lambda) < q_len as u128 {
        return Err(HfeError::KeySpaceTooSmall { lambda, q: q_len });
    }

    let deltas = delta_table(q_len);
    let mut s = None;
    for _ in 0..SETUP_MAX_ATTEMPTS {
        let candidate = BitString::random(q_len, rng);
        if deltas.iter().all(|&d| candidate.offset_in_range(d)) {
            s = Some(candidate);
            break;
        }
    }
    let s = s.ok_or(HfeError::ResampleExhausted(SETUP_MAX_ATTEMPTS))?;

    let mut designated = Vec::with_capacity(q_len);
    let mut seen = HashSet::with_capacity(q_len);
    for _ in 0..q_len {
        let mut key = None;
        for _ in 0..SETUP_MAX_ATTEMPTS {
            let candidate = BitString::random(lambda, rng);
            if seen.insert(candidate.clone()) {
                key = Some(candidate);
                break;
            }
        }
        designated.push(key.ok_or(HfeError::ResampleExhausted(SETUP_MAX_ATTEMPTS))?);
    }

    MasterSecret::from_parts(*params, s, designated, eta)
}

/// Derives the function key for a classical key.
///
/// A designated key of rank `q` yields the secret prefix `s_1 .. s_q`;
/// every other classical key yields bottom. The aleph key has no function
/// key — it is answered by [`functionality`] directly.
pub fn keygen(msk: &MasterSecret, key: &Key) -> Result<FunctionKey, HfeError> {
    let bits = match key {
        Key::Aleph => return Err(HfeError::AlephKey),
        Key::Classical(bits) => bits,
    };
    if bits.len() != msk.params().lambda() {
        return Err(HfeError::LengthMismatch {
            expected: msk.params().lambda(),
            got: bits.len(),
        });
    }
    let scheme_len = msk.params().message_len();
    match msk.rank_of(bits) {
        Some(q) => Ok(FunctionKey::new(
            scheme_len,
            FunctionKeyKind::Prefix(msk.secret_bits().prefix(q)),
        )),
        None => Ok(FunctionKey::new(scheme_len, FunctionKeyKind::Bottom)),
    }
}

/// Encrypts a Q-bit message with fresh per-block randomness.
pub fn enc<R: Rng>(
    msk: &MasterSecret,
    message: &BitString,
    rng: &mut R,
) -> Result<HfeCiphertext, HfeError> {
    let q_len = msk.params().message_len();
    let randomness: Vec<Bit> = (0..q_len).map(|_| Bit::random(rng)).collect();
    enc_with_randomness(msk, message, &randomness)
}

/// Deterministic encryption with all per-block randomness bits pinned.
/// Exists for the componentwise correctness tests; [`enc`] is the scheme.
pub fn enc_with_randomness(
    msk: &MasterSecret,
    message: &BitString,
    randomness: &[Bit],
) -> Result<HfeCiphertext, HfeError> {
    let q_len = msk.params().message_len();
    if message.len() != q_len {
        return Err(HfeError::LengthMismatch { expected: q_len, got: message.len() });
    }
    if randomness.len() != q_len {
        return Err(HfeError::LengthMismatch { expected: q_len, got: randomness.len() });
    }
    let mut blocks = Vec::with_capacity(q_len);
    for (j0, &r) in randomness.iter().enumerate() {
        let ctx = XiContext::new(msk.secret_bits().bit(j0), block_angle(j0 + 1, q_len))?;
        let bit = message.bit(msk.eta().image_of(j0));
        blocks.push(qenc_with_r(&ctx, bit, r));
    }
    Ok(HfeCiphertext::new(blocks))
}

/// Decrypts the prefix a function key grants.
///
/// The bottom key recovers the null (empty) message. Block angles come
/// from the key's scheme length; a key issued under a different message
/// length meets the ciphertext with mismatched angles and the readout
/// surfaces as an ambiguous measurement.
pub fn dec(fk: &FunctionKey, ct: &HfeCiphertext) -> Result<BitString, HfeError> {
    let prefix = match fk.kind() {
        FunctionKeyKind::Bottom => return Ok(BitString::new(Vec::new())),
        FunctionKeyKind::Prefix(bits) => bits,
    };
    if ct.len() < prefix.len() {
        return Err(HfeError::LengthMismatch { expected: prefix.len(), got: ct.len() });
    }
    let mut out = Vec::with_capacity(prefix.len());
    for j0 in 0..prefix.len() {
        let ctx = XiContext::new(prefix.bit(j0), block_angle(j0 + 1, fk.scheme_len()))?;
        out.push(qdec(&ctx, &ct.blocks()[j0])?);
    }
    Ok(BitString::new(out))
}

/// What a key is entitled to learn about a message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionalityOutput {
    /// A (possibly empty) substring of the message.
    Bits(BitString),
    /// The message length, revealed by the aleph key.
    Length(usize),
}

impl fmt::Display for FunctionalityOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionalityOutput::Bits(bits) => write!(f, "{bits}"),
            FunctionalityOutput::Length(len) => write!(f, "{len}"),
        }
    }
}

/// The ideal functionality: aleph reveals the length, a designated key of
/// rank `q` reveals `m_{eta(1)} .. m_{eta(q)}`, every other key reveals the
/// null message.
pub fn functionality(
    msk: &MasterSecret,
    key: &Key,
    message: &BitString,
) -> Result<FunctionalityOutput, HfeError> {
    let q_len = msk.params().message_len();
    if message.len() != q_len {
        return Err(HfeError::LengthMismatch { expected: q_len, got: message.len() });
    }
    let bits = match key {
        Key::Aleph => return Ok(FunctionalityOutput::Length(message.len())),
        Key::Classical(bits) => bits,
    };
    match msk.rank_of(bits) {
        Some(q) => {
            let revealed: Vec<Bit> = (0..q)
                .map(|j0| message.bit(msk.eta().image_of(j0)))
                .collect();
            Ok(FunctionalityOutput::Bits(BitString::new(revealed)))
        }
        None => Ok(FunctionalityOutput::Bits(BitString::new(Vec::new()))),
    }
}
