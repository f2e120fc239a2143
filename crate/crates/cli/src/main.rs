use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hfe_cli::commands::{cmd_dec, cmd_enc, cmd_keygen, cmd_setup, parse_t_list};
use hfe_cli::error::CliError;
use hfe_cli::report;
use hfe_core::hfe::SchemeParams;

/// Deterministic simulator for a one-qubit equatorial secret-key cipher
/// and its prefix-revealing hybrid functional encryption extension.
///
/// Ciphertext files store raw qubit amplitudes in the clear. This tool is
/// a simulator for analyzing the scheme's exact statistical behavior; it
/// is not a deployable cipher and must not be used to protect data.
///
/// Exit codes: 0 success, 1 i/o failure, 2 usage, 3 file parse error,
/// 4 validity violation, 5 ambiguous readout (key/ciphertext mismatch).
#[derive(Parser)]
#[command(name = "hfe-sim", version, about, verbatim_doc_comment)]
struct Cli {
    /// Seed for all randomness; identical seeds reproduce identical runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output file for commands that write one.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a master secret and write it to --out.
    Setup {
        /// Security parameter: designated-key bit length.
        #[arg(long)]
        lambda: usize,
        /// Message bit length (at least lambda).
        #[arg(long)]
        q: usize,
        /// Block permutation as one-based images, e.g. "2,1,4,3".
        #[arg(long)]
        eta: Option<String>,
    },
    /// Derive a function key and write it to --out.
    Keygen {
        /// Master secret file.
        #[arg(long)]
        msk: PathBuf,
        /// Designated rank to select (1..=Q); mutually exclusive with --key-hex.
        #[arg(long)]
        q: Option<usize>,
        /// Explicit lambda-bit key in hex; mutually exclusive with --q.
        #[arg(long)]
        key_hex: Option<String>,
    },
    /// Encrypt a binary message and write the ciphertext to --out.
    Enc {
        /// Master secret file.
        #[arg(long)]
        msk: PathBuf,
        /// Message as a string of 0/1 of length Q.
        #[arg(long)]
        message: String,
    },
    /// Decrypt the prefix granted by a function key; prints the bits.
    Dec {
        /// Function key file.
        #[arg(long)]
        key: PathBuf,
        /// Ciphertext file.
        #[arg(long)]
        ct: PathBuf,
    },
    /// Exact channel-analysis reports.
    Analyze {
        #[command(subcommand)]
        report: AnalyzeReport,
    },
    /// Monte-Carlo security-game runs.
    Game {
        #[command(subcommand)]
        game: GameKind,
    },
}

#[derive(Subcommand)]
enum AnalyzeReport {
    /// Trace distance vs the min-entropy bound over a t grid.
    EntropicCurve {
        /// Number of evenly spaced t values in [0, 1].
        #[arg(long, default_value_t = 11)]
        points: usize,
        /// Explicit comma-separated t values (overrides --points).
        #[arg(long)]
        t: Option<String>,
    },
    /// Deviation of averaged ciphertext states from I/2 and I/4.
    AvgStates {
        /// Number of angles on the equator grid.
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    /// Channel outputs for joint message/environment inputs.
    IndChannel {
        /// Number of angles on the equator grid.
        #[arg(long, default_value_t = 16)]
        grid: usize,
    },
}

#[derive(Subcommand)]
enum GameKind {
    /// Left-right encryption-oracle distinguishing game.
    MsgPrivacy {
        /// Built-in adversary name.
        #[arg(long)]
        adversary: String,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        /// Run against the deliberately broken fixed-randomness cipher.
        #[arg(long)]
        broken: bool,
        #[arg(long, default_value_t = 8)]
        lambda: usize,
        #[arg(long, default_value_t = 8)]
        q: usize,
    },
    /// Challenge-indexed KeyGen and Enc distinguishing game.
    FuncPrivacy {
        #[arg(long)]
        adversary: String,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long)]
        broken: bool,
        #[arg(long, default_value_t = 8)]
        lambda: usize,
        #[arg(long, default_value_t = 8)]
        q: usize,
    },
    /// Real-vs-ideal transcript comparison with the built-in simulator.
    WeakSim {
        #[arg(long)]
        adversary: String,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        lambda: usize,
        #[arg(long, default_value_t = 8)]
        q: usize,
    },
}

fn required_out(out: Option<PathBuf>) -> Result<PathBuf, CliError> {
    out.ok_or_else(|| CliError::Validity("--out is required for this command".into()))
}

fn run(cli: Cli) -> Result<Option<String>, CliError> {
    match cli.command {
        Command::Setup { lambda, q, eta } => {
            let out = required_out(cli.out)?;
            cmd_setup(lambda, q, eta.as_deref(), cli.seed, &out)?;
            Ok(None)
        }
        Command::Keygen { msk, q, key_hex } => {
            let out = required_out(cli.out)?;
            cmd_keygen(&msk, q, key_hex.as_deref(), &out)?;
            Ok(None)
        }
        Command::Enc { msk, message } => {
            let out = required_out(cli.out)?;
            cmd_enc(&msk, &message, cli.seed, &out)?;
            Ok(None)
        }
        Command::Dec { key, ct } => {
            let bits = cmd_dec(&key, &ct)?;
            Ok(Some(format!("{bits}\n")))
        }
        Command::Analyze { report } => {
            let text = match report {
                AnalyzeReport::EntropicCurve { points, t } => {
                    let explicit = t.as_deref().map(parse_t_list).transpose()?;
                    report::entropic_curve(points, explicit.as_deref())?
                }
                AnalyzeReport::AvgStates { grid } => report::avg_states(grid)?,
                AnalyzeReport::IndChannel { grid } => report::ind_channel_report(grid)?,
            };
            Ok(Some(text))
        }
        Command::Game { game } => {
            let text = match game {
                GameKind::MsgPrivacy { adversary, trials, broken, lambda, q } => {
                    let params = SchemeParams::new(lambda, q)?;
                    report::msg_privacy(&adversary, &params, broken, trials, cli.seed)?
                }
                GameKind::FuncPrivacy { adversary, trials, broken, lambda, q } => {
                    let params = SchemeParams::new(lambda, q)?;
                    report::func_privacy(&adversary, &params, broken, trials, cli.seed)?
                }
                GameKind::WeakSim { adversary, trials, lambda, q } => {
                    let params = SchemeParams::new(lambda, q)?;
                    report::weak_sim(&adversary, &params, trials, cli.seed)?
                }
            };
            Ok(Some(text))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Some(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
