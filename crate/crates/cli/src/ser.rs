//! Versioned on-disk formats for master secrets, function keys, and
//! ciphertexts.
//!
//! The files are human-readable JSON. Floats go through serde_json's
//! shortest-round-trip formatting (up to 17 significant digits), so
//! `parse(serialize(x))` reproduces every amplitude bit-exactly, and the
//! output bytes are a deterministic function of the value. Parsing
//! re-validates every structural invariant of the underlying types.

use serde::{Deserialize, Serialize};

use hfe_core::hfe::{
    block_angle, BitString, FunctionKey, FunctionKeyKind, HfeCiphertext, MasterSecret,
    Permutation, SchemeParams,
};
use hfe_core::{PureState, SimRng};
use num_complex::Complex64;

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

fn check_version(found: u32) -> Result<(), CliError> {
    if found != FORMAT_VERSION {
        return Err(CliError::Parse(format!(
            "unsupported format version {found} (expected {FORMAT_VERSION})"
        )));
    }
    Ok(())
}

/// On-disk master secret: `(s, k_1 .. k_Q)` plus parameters and the block
/// permutation, every bitstring hex-encoded.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MasterSecretFile {
    pub version: u32,
    pub lambda: usize,
    pub q: usize,
    pub s: String,
    pub designated_keys: Vec<String>,
    pub eta: Vec<usize>,
}

impl MasterSecretFile {
    pub fn from_msk(msk: &MasterSecret) -> Self {
        MasterSecretFile {
            version: FORMAT_VERSION,
            lambda: msk.params().lambda(),
            q: msk.params().message_len(),
            s: msk.secret_bits().to_hex(),
            designated_keys: msk.designated_keys().iter().map(BitString::to_hex).collect(),
            eta: msk.eta().to_one_based(),
        }
    }

    pub fn into_msk(self) -> Result<MasterSecret, CliError> {
        check_version(self.version)?;
        let params = SchemeParams::new(self.lambda, self.q)?;
        let s = BitString::from_hex(&self.s, self.q)?;
        let designated = self
            .designated_keys
            .iter()
            .map(|hex| BitString::from_hex(hex, self.lambda))
            .collect::<Result<Vec<_>, _>>()?;
        let eta = Permutation::from_one_based(&self.eta, self.q)?;
        Ok(MasterSecret::from_parts(params, s, designated, eta)?)
    }
}

/// On-disk function key: the secret prefix (or bottom) plus the issuing
/// scheme's message length, which fixes the decryption angles.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FunctionKeyFile {
    pub version: u32,
    pub scheme_q: usize,
    #[serde(flatten)]
    pub payload: FunctionKeyPayload,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionKeyPayload {
    Prefix { q: usize, bits: String },
    Bottom,
}

impl FunctionKeyFile {
    pub fn from_key(fk: &FunctionKey) -> Self {
        let payload = match fk.kind() {
            FunctionKeyKind::Prefix(bits) => FunctionKeyPayload::Prefix {
                q: bits.len(),
                bits: bits.to_hex(),
            },
            FunctionKeyKind::Bottom => FunctionKeyPayload::Bottom,
        };
        FunctionKeyFile { version: FORMAT_VERSION, scheme_q: fk.scheme_len(), payload }
    }

    pub fn into_key(self) -> Result<FunctionKey, CliError> {
        check_version(self.version)?;
        let kind = match self.payload {
            FunctionKeyPayload::Prefix { q, bits } => {
                if q == 0 || q > self.scheme_q {
                    return Err(CliError::Parse(format!(
                        "prefix length {q} outside 1..={}",
                        self.scheme_q
                    )));
                }
                FunctionKeyKind::Prefix(BitString::from_hex(&bits, q)?)
            }
            FunctionKeyPayload::Bottom => FunctionKeyKind::Bottom,
        };
        Ok(FunctionKey::new(self.scheme_q, kind))
    }
}

/// On-disk ciphertext: per-block angle and raw amplitudes.
///
/// Amplitudes are stored in the clear — this is a simulator artifact for
/// analyzing the scheme, not a deployable cipher.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CiphertextFile {
    pub version: u32,
    pub q: usize,
    pub blocks: Vec<CiphertextBlock>,
}

/// One block: `j` is the one-based position, `theta` its angle, and the
/// amplitude quadruples are `[re0, im0, re1, im1]`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CiphertextBlock {
    pub j: usize,
    pub theta: f64,
    pub c0: [f64; 4],
    pub c1: [f64; 4],
}

fn pack(state: &PureState) -> [f64; 4] {
    [state.amp0().re, state.amp0().im, state.amp1().re, state.amp1().im]
}

fn unpack(raw: &[f64; 4]) -> Result<PureState, CliError> {
    Ok(PureState::new(
        Complex64::new(raw[0], raw[1]),
        Complex64::new(raw[2], raw[3]),
    )?)
}

impl CiphertextFile {
    pub fn from_ciphertext(ct: &HfeCiphertext) -> Self {
        let q = ct.len();
        let blocks = ct
            .blocks()
            .iter()
            .enumerate()
            .map(|(j0, block)| CiphertextBlock {
                j: j0 + 1,
                theta: canonical_angle(block_angle(j0 + 1, q)),
                c0: pack(block.c0()),
                c1: pack(block.c1()),
            })
            .collect();
        CiphertextFile { version: FORMAT_VERSION, q, blocks }
    }

    pub fn into_ciphertext(self) -> Result<HfeCiphertext, CliError> {
        check_version(self.version)?;
        if self.blocks.len() != self.q {
            return Err(CliError::Parse(format!(
                "q={} does not match block count {}",
                self.q,
                self.blocks.len()
            )));
        }
        let mut blocks = Vec::with_capacity(self.q);
        for (j0, block) in self.blocks.iter().enumerate() {
            if block.j != j0 + 1 {
                return Err(CliError::Parse(format!(
                    "block index {} out of order (expected {})",
                    block.j,
                    j0 + 1
                )));
            }
            let expected_theta = canonical_angle(block_angle(j0 + 1, self.q));
            if (block.theta - expected_theta).abs() > 1e-12 {
                return Err(CliError::Parse(format!(
                    "block {} angle {} does not match the scheme angle {expected_theta}",
                    block.j, block.theta
                )));
            }
            let c0 = unpack(&block.c0)?;
            let c1 = unpack(&block.c1)?;
            blocks.push(hfe_core::xi::XiCiphertext::new(c0, c1)?);
        }
        Ok(HfeCiphertext::new(blocks))
    }
}

fn canonical_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(std::f64::consts::TAU);
    if t >= std::f64::consts::TAU {
        0.0
    } else {
        t
    }
}

/// Serializes to pretty JSON with a trailing newline. Deterministic:
/// identical values give identical bytes.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text.into_bytes())
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<(), CliError> {
    std::fs::write(path, to_json_bytes(value)?)?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Random ciphertext generator for round-trip tests.
pub fn random_ciphertext(q_len: usize, rng: &mut SimRng) -> Result<HfeCiphertext, CliError> {
    let lambda = q_len.min(8);
    let params = SchemeParams::new(lambda, q_len)?;
    let msk = hfe_core::hfe::setup(&params, Permutation::identity(q_len), rng)?;
    let message = BitString::random(q_len, rng);
    Ok(hfe_core::hfe::enc(&msk, &message, rng)?)
}
