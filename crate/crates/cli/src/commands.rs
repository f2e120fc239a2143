//! Command implementations, separated from argument parsing so the
//! integration tests can drive them in-process.

use std::path::Path;

use hfe_core::hfe::{
    dec, enc, keygen, setup, BitString, Key, MasterSecret, Permutation, SchemeParams,
};
use hfe_core::rng_from_seed;

use crate::error::CliError;
use crate::ser::{write_json, CiphertextFile, FunctionKeyFile, MasterSecretFile};

/// `setup`: sample a master secret and write it out.
pub fn cmd_setup(
    lambda: usize,
    q: usize,
    eta_spec: Option<&str>,
    seed: u64,
    out: &Path,
) -> Result<(), CliError> {
    let params = SchemeParams::new(lambda, q)?;
    let eta = match eta_spec {
        None => Permutation::identity(q),
        Some(text) => parse_eta(text, q)?,
    };
    let msk = setup(&params, eta, &mut rng_from_seed(seed))?;
    write_json(out, &MasterSecretFile::from_msk(&msk))
}

/// `keygen`: derive a function key from a designated rank or an explicit
/// key in hex, and write the record.
pub fn cmd_keygen(
    msk_path: &Path,
    rank: Option<usize>,
    key_hex: Option<&str>,
    out: &Path,
) -> Result<(), CliError> {
    let msk = load_msk(msk_path)?;
    let key_bits = match (rank, key_hex) {
        (Some(q), None) => {
            let q_len = msk.params().message_len();
            if q == 0 || q > q_len {
                return Err(CliError::Validity(format!(
                    "rank {q} outside 1..={q_len}"
                )));
            }
            msk.designated_keys()[q - 1].clone()
        }
        (None, Some(hex)) => BitString::from_hex(hex, msk.params().lambda())?,
        _ => {
            return Err(CliError::Validity(
                "provide exactly one of --q and --key-hex".into(),
            ))
        }
    };
    let fk = keygen(&msk, &Key::Classical(key_bits))?;
    write_json(out, &FunctionKeyFile::from_key(&fk))
}

/// `enc`: encrypt a binary message under a master secret file.
pub fn cmd_enc(msk_path: &Path, message: &str, seed: u64, out: &Path) -> Result<(), CliError> {
    let msk = load_msk(msk_path)?;
    let message = BitString::parse_binary(message)?;
    let ct = enc(&msk, &message, &mut rng_from_seed(seed))?;
    write_json(out, &CiphertextFile::from_ciphertext(&ct))
}

/// `dec`: decrypt the granted prefix and return it as a binary string.
pub fn cmd_dec(key_path: &Path, ct_path: &Path) -> Result<String, CliError> {
    let fk = crate::ser::read_json::<FunctionKeyFile>(key_path)?.into_key()?;
    let ct = crate::ser::read_json::<CiphertextFile>(ct_path)?.into_ciphertext()?;
    let bits = dec(&fk, &ct)?;
    Ok(bits.to_string())
}

pub fn load_msk(path: &Path) -> Result<MasterSecret, CliError> {
    crate::ser::read_json::<MasterSecretFile>(path)?.into_msk()
}

/// Parses an `--eta` flag like `2,1,4,3` into a permutation of `[q]`.
pub fn parse_eta(text: &str, q: usize) -> Result<Permutation, CliError> {
    let images = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|e| CliError::Validity(format!("bad eta entry {part:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Permutation::from_one_based(&images, q)?)
}

/// Parses a `--t` flag like `0.0,0.5,1.0`.
pub fn parse_t_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Validity(format!("bad t value {part:?}: {e}")))
        })
        .collect()
}
