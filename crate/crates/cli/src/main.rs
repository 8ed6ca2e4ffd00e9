//! pqclab: keygen / encrypt / decrypt / analyze / bench / selftest.
//!
//! Exit codes: 0 success, 2 usage error, 3 cryptographic or decoding
//! failure, 4 I/O error.

mod selftest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pqclab::costmodel::report::{build_report, figure_csv, ReportConfig};
use pqclab::costmodel::Scheme;
use pqclab::filefmt::{self, SchemeTag};
use pqclab::gf2linalg::BitMatrix;
use pqclab::kyber::{self, KyberLevel, KyberParams};
use pqclab::mceliece::{self, McElieceError, McElieceLevel, McElieceParams};
use pqclab::ring::{Seed, MSG_BYTES};
use pqclab::xof::XofRng;
use pqclab::{BitVector, Counters, Variant};

const EXIT_USAGE: u8 = 2;
const EXIT_CRYPTO: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Crypto(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Crypto(_) => EXIT_CRYPTO,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Crypto(m) | CliError::Io(m) => m,
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

#[derive(Parser)]
#[command(
    name = "pqclab",
    about = "Module-LWE and binary-Goppa McEliece encryption with an operation-count cost model",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Kyber,
    Mceliece,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Textbook,
    Systematic,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Textbook => Variant::Textbook,
            VariantArg::Systematic => Variant::Systematic,
        }
    }
}

#[derive(Args)]
struct SchemeOpts {
    /// Cryptosystem to operate on.
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    /// Security level: 512/768/1024 (kyber) or
    /// 348864/460896/6688128/toy16/toy32/toy64 (mceliece).
    #[arg(long)]
    level: String,
    /// McEliece public-key variant.
    #[arg(long, value_enum, default_value = "textbook")]
    variant: VariantArg,
    /// 32-byte hex seed for reproducible output (falls back to PQCLAB_SEED,
    /// then to OS entropy).
    #[arg(long)]
    seed: Option<String>,
    /// Read and write headerless, size-exact files.
    #[arg(long)]
    raw: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a keypair and write <name>.pk / <name>.sk.
    Keygen {
        #[command(flatten)]
        opts: SchemeOpts,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Basename for the key files (defaults to the level name).
        #[arg(long)]
        name: Option<String>,
    },
    /// Encrypt a message file.
    Encrypt {
        #[command(flatten)]
        opts: SchemeOpts,
        /// Public-key file.
        #[arg(long)]
        pk: PathBuf,
        /// Message file: exactly 32 bytes (kyber) or ceil(k/8) bytes with
        /// zero padding bits (mceliece).
        #[arg(long)]
        msg: PathBuf,
        /// Ciphertext output file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt a ciphertext file.
    Decrypt {
        #[command(flatten)]
        opts: SchemeOpts,
        /// Secret-key file.
        #[arg(long)]
        sk: PathBuf,
        /// Ciphertext file.
        #[arg(long)]
        ct: PathBuf,
        /// Recovered-message output file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit the cost report or a single figure's data series.
    Analyze {
        /// Restrict to one scheme.
        #[arg(long, value_enum)]
        scheme: Option<SchemeArg>,
        /// Restrict to one level by name (e.g. kyber512, mceliece348864).
        #[arg(long)]
        level: Option<String>,
        /// Output format for the full report.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Emit only figure 2 (key sizes), 3 (FLOP counts), or
        /// 4 (ciphertext sizes) as CSV.
        #[arg(long)]
        figure: Option<u8>,
        /// Run instrumented executions alongside the model.
        #[arg(long)]
        measured: bool,
        /// Wall-time trials per measured operation.
        #[arg(long, default_value_t = 1)]
        trials: u32,
        #[arg(long)]
        seed: Option<String>,
        /// Variant for measured McEliece runs.
        #[arg(long, value_enum, default_value = "textbook")]
        variant: VariantArg,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the row-parallel GF(2) matrix kernel against the sequential one.
    Bench {
        /// Worker threads for the parallel kernel.
        #[arg(long, default_value_t = 4)]
        threads: usize,
        /// Matrix shape preset: a McEliece level name.
        #[arg(long, default_value = "mceliece348864")]
        level: String,
        /// Multiplications to time per kernel.
        #[arg(long, default_value_t = 3)]
        reps: u32,
    },
    /// Run the built-in self checks.
    Selftest {
        /// Skip the full-parameter McEliece keygen.
        #[arg(long)]
        quick: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Keygen {
            opts,
            out_dir,
            name,
        } => cmd_keygen(&opts, &out_dir, name.as_deref()),
        Command::Encrypt {
            opts,
            pk,
            msg,
            out,
        } => cmd_encrypt(&opts, &pk, &msg, &out),
        Command::Decrypt { opts, sk, ct, out } => cmd_decrypt(&opts, &sk, &ct, &out),
        Command::Analyze {
            scheme,
            level,
            format,
            figure,
            measured,
            trials,
            seed,
            variant,
            out,
        } => cmd_analyze(
            scheme, level, &format, figure, measured, trials, seed, variant, out,
        ),
        Command::Bench {
            threads,
            level,
            reps,
        } => cmd_bench(threads, &level, reps),
        Command::Selftest { quick } => selftest::run(quick),
    }
}

/// Resolves a seed: --seed, then PQCLAB_SEED, then OS entropy.
fn resolve_seed(arg: &Option<String>) -> Result<Seed, CliError> {
    let hex_str = arg
        .clone()
        .or_else(|| std::env::var("PQCLAB_SEED").ok());
    match hex_str {
        Some(h) => parse_seed(&h),
        None => {
            let mut bytes = [0u8; 32];
            getrandom::fill(&mut bytes)
                .map_err(|e| CliError::Io(format!("OS entropy unavailable: {e}")))?;
            Ok(Seed(bytes))
        }
    }
}

fn parse_seed(h: &str) -> Result<Seed, CliError> {
    let bytes = hex::decode(h.trim())
        .map_err(|e| CliError::Usage(format!("seed must be hex: {e}")))?;
    Seed::from_bytes(&bytes)
        .ok_or_else(|| CliError::Usage(format!("seed must be 32 bytes, got {}", bytes.len())))
}

fn kyber_params(level: &str) -> Result<KyberParams, CliError> {
    let level = match level {
        "512" | "kyber512" => KyberLevel::Kyber512,
        "768" | "kyber768" => KyberLevel::Kyber768,
        "1024" | "kyber1024" => KyberLevel::Kyber1024,
        other => {
            return Err(CliError::Usage(format!(
                "invalid kyber level {other:?} (use 512, 768, or 1024)"
            )))
        }
    };
    Ok(KyberParams::new(level))
}

fn mceliece_params(level: &str) -> Result<McElieceParams, CliError> {
    let level = match level {
        "348864" | "mceliece348864" => McElieceLevel::M348864,
        "460896" | "mceliece460896" => McElieceLevel::M460896,
        "6688128" | "mceliece6688128" => McElieceLevel::M6688128,
        "toy16" => McElieceLevel::Toy16,
        "toy32" => McElieceLevel::Toy32,
        "toy64" => McElieceLevel::Toy64,
        other => {
            return Err(CliError::Usage(format!(
                "invalid mceliece level {other:?} (use 348864, 460896, 6688128, toy16, toy32, toy64)"
            )))
        }
    };
    Ok(McElieceParams::new(level))
}

fn write_payload(path: &Path, tag: SchemeTag, payload: &[u8], raw: bool) -> Result<(), CliError> {
    let bytes = if raw {
        payload.to_vec()
    } else {
        filefmt::frame(tag, payload)
    };
    fs::write(path, bytes).map_err(|e| io_err(path, e))
}

fn read_payload(path: &Path, expected: SchemeTag, raw: bool) -> Result<Vec<u8>, CliError> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    if raw {
        return Ok(bytes);
    }
    filefmt::unframe_expecting(&bytes, expected)
        .map(|p| p.to_vec())
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn cmd_keygen(opts: &SchemeOpts, out_dir: &Path, name: Option<&str>) -> Result<(), CliError> {
    let seed = resolve_seed(&opts.seed)?;
    let ctr = Counters::new();
    match opts.scheme {
        SchemeArg::Kyber => {
            let params = kyber_params(&opts.level)?;
            let (pk, sk) = kyber::keygen(&params, &seed, &ctr)
                .map_err(|e| CliError::Crypto(e.to_string()))?;
            let base = name.unwrap_or(params.level.name());
            let tag = SchemeTag::Kyber(params.level);
            let pk_path = out_dir.join(format!("{base}.pk"));
            let sk_path = out_dir.join(format!("{base}.sk"));
            write_payload(&pk_path, tag, &pk.to_bytes(), opts.raw)?;
            write_payload(&sk_path, tag, &sk.to_bytes(), opts.raw)?;
            println!("pk: {} bytes", pk.to_bytes().len());
            println!("sk: {} bytes", sk.to_bytes().len());
            println!("wrote {} and {}", pk_path.display(), sk_path.display());
        }
        SchemeArg::Mceliece => {
            let params = mceliece_params(&opts.level)?;
            let variant: Variant = opts.variant.into();
            let (pk, sk) = mceliece::keygen(&params, variant, &seed, &ctr)
                .map_err(|e| CliError::Crypto(e.to_string()))?;
            let base = name
                .map(str::to_string)
                .unwrap_or_else(|| format!("{}-{}", params.level.name(), variant.name()));
            let tag = SchemeTag::McEliece(params.level, variant);
            let pk_path = out_dir.join(format!("{base}.pk"));
            let sk_path = out_dir.join(format!("{base}.sk"));
            write_payload(&pk_path, tag, &pk.to_bytes(), opts.raw)?;
            write_payload(&sk_path, tag, &sk.to_bytes(), opts.raw)?;
            println!("pk: {} bytes", pk.to_bytes().len());
            println!("sk: {} bytes", sk.to_bytes().len());
            println!("wrote {} and {}", pk_path.display(), sk_path.display());
        }
    }
    Ok(())
}

fn cmd_encrypt(opts: &SchemeOpts, pk: &Path, msg: &Path, out: &Path) -> Result<(), CliError> {
    let seed = resolve_seed(&opts.seed)?;
    let ctr = Counters::new();
    let msg_bytes = fs::read(msg).map_err(|e| io_err(msg, e))?;
    match opts.scheme {
        SchemeArg::Kyber => {
            let params = kyber_params(&opts.level)?;
            let tag = SchemeTag::Kyber(params.level);
            let pk_bytes = read_payload(pk, tag, opts.raw)?;
            let pk = kyber::KyberPublicKey::from_bytes(&params, &pk_bytes)
                .map_err(|e| CliError::Usage(format!("bad public key: {e}")))?;
            let msg_arr: &[u8; MSG_BYTES] = msg_bytes.as_slice().try_into().map_err(|_| {
                CliError::Usage(format!(
                    "kyber messages are exactly {MSG_BYTES} bytes, got {}",
                    msg_bytes.len()
                ))
            })?;
            let ct = kyber::encrypt(&pk, msg_arr, &seed, &ctr)
                .map_err(|e| CliError::Crypto(e.to_string()))?;
            write_payload(out, tag, &ct.to_bytes(), opts.raw)?;
            println!("ct: {} bytes", ct.to_bytes().len());
        }
        SchemeArg::Mceliece => {
            let params = mceliece_params(&opts.level)?;
            let variant: Variant = opts.variant.into();
            let tag = SchemeTag::McEliece(params.level, variant);
            let pk_bytes = read_payload(pk, tag, opts.raw)?;
            let pk = mceliece::McEliecePublicKey::from_bytes(&params, variant, &pk_bytes)
                .map_err(|e| CliError::Usage(format!("bad public key: {e}")))?;
            if msg_bytes.len() != params.msg_bytes() {
                return Err(CliError::Usage(format!(
                    "mceliece {} messages are {} bytes (k = {} bits, zero-padded), got {}",
                    params.level.name(),
                    params.msg_bytes(),
                    params.k,
                    msg_bytes.len()
                )));
            }
            let msg_vec = BitVector::from_bytes(params.k, &msg_bytes).map_err(|_| {
                CliError::Usage("message padding bits beyond k must be zero".into())
            })?;
            let ct = mceliece::encrypt(&pk, &msg_vec, &seed, &ctr)
                .map_err(|e| CliError::Crypto(e.to_string()))?;
            write_payload(out, tag, &ct.to_bytes(), opts.raw)?;
            println!("ct: {} bytes", ct.to_bytes().len());
        }
    }
    Ok(())
}

fn cmd_decrypt(opts: &SchemeOpts, sk: &Path, ct: &Path, out: &Path) -> Result<(), CliError> {
    let ctr = Counters::new();
    match opts.scheme {
        SchemeArg::Kyber => {
            let params = kyber_params(&opts.level)?;
            let tag = SchemeTag::Kyber(params.level);
            let sk_bytes = read_payload(sk, tag, opts.raw)?;
            let sk = kyber::KyberSecretKey::from_bytes(&params, &sk_bytes)
                .map_err(|e| CliError::Usage(format!("bad secret key: {e}")))?;
            let ct_bytes = read_payload(ct, tag, opts.raw)?;
            let ct = kyber::KyberCiphertext::from_bytes(&params, &ct_bytes)
                .map_err(|e| CliError::Usage(format!("bad ciphertext: {e}")))?;
            let msg = kyber::decrypt(&sk, &ct, &ctr);
            fs::write(out, msg).map_err(|e| io_err(out, e))?;
            println!("recovered {} bytes", msg.len());
        }
        SchemeArg::Mceliece => {
            let params = mceliece_params(&opts.level)?;
            let variant: Variant = opts.variant.into();
            let tag = SchemeTag::McEliece(params.level, variant);
            let sk_bytes = read_payload(sk, tag, opts.raw)?;
            let sk = mceliece::McElieceSecretKey::from_bytes(&params, variant, &sk_bytes, &ctr)
                .map_err(|e| CliError::Usage(format!("bad secret key: {e}")))?;
            let ct_bytes = read_payload(ct, tag, opts.raw)?;
            let ct = mceliece::McElieceCiphertext::from_bytes(&params, &ct_bytes)
                .map_err(|e| CliError::Usage(format!("bad ciphertext: {e}")))?;
            let msg = mceliece::decrypt(&sk, &ct, &ctr).map_err(|e| match e {
                McElieceError::DecodingFailure => {
                    CliError::Crypto("decoding failure: error weight exceeds t or corrupt ciphertext".into())
                }
                other => CliError::Crypto(other.to_string()),
            })?;
            fs::write(out, msg.to_bytes()).map_err(|e| io_err(out, e))?;
            println!("recovered {} bytes", msg.to_bytes().len());
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze(
    scheme: Option<SchemeArg>,
    level: Option<String>,
    format: &str,
    figure: Option<u8>,
    measured: bool,
    trials: u32,
    seed: Option<String>,
    variant: VariantArg,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let emit = |text: String| -> Result<(), CliError> {
        match &out {
            Some(path) => {
                fs::write(path, text).map_err(|e| io_err(path, e))?;
                println!("wrote {}", path.display());
                Ok(())
            }
            None => {
                print!("{text}");
                Ok(())
            }
        }
    };

    if let Some(fig) = figure {
        if !(2..=4).contains(&fig) {
            return Err(CliError::Usage(format!(
                "figure {fig} has no data series (use 2, 3, or 4)"
            )));
        }
        return emit(figure_csv(fig));
    }

    let schemes = match scheme {
        None => vec![Scheme::Kyber, Scheme::McEliece],
        Some(SchemeArg::Kyber) => vec![Scheme::Kyber],
        Some(SchemeArg::Mceliece) => vec![Scheme::McEliece],
    };
    if trials < 1 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let cfg = ReportConfig {
        schemes,
        level_filter: level,
        measured,
        trials,
        seed: match &seed {
            Some(h) => parse_seed(h)?,
            None => Seed([0u8; 32]),
        },
        variant: variant.into(),
    };
    let report = build_report(&cfg);
    match format {
        "csv" => emit(report.to_csv()),
        "json" => emit(report.to_json()),
        "md" => emit(report.to_markdown()),
        other => Err(CliError::Usage(format!(
            "unknown format {other:?} (use csv, json, or md)"
        ))),
    }
}

/// Times the sequential and row-parallel GF(2) products at key-generation
/// shapes (S * G: k x k times k x n).
fn cmd_bench(threads: usize, level: &str, reps: u32) -> Result<(), CliError> {
    let params = mceliece_params(level)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let ctr = Counters::new();
    let mut rng = XofRng::new(&[7u8; 32], b"bench matrices");
    let a = BitMatrix::random(params.k, params.k, &mut rng);
    let b = BitMatrix::random(params.k, params.n, &mut rng);

    println!(
        "GF(2) product: {}x{} * {}x{} ({} reps)",
        params.k, params.k, params.k, params.n, reps
    );
    let start = Instant::now();
    let mut seq = None;
    for _ in 0..reps {
        seq = Some(a.mul(&b, &ctr).map_err(|e| CliError::Crypto(e.to_string()))?);
    }
    let seq_time = start.elapsed() / reps;

    let start = Instant::now();
    let mut par = None;
    for _ in 0..reps {
        par = Some(pool.install(|| a.mul_par(&b, &ctr)).map_err(|e| CliError::Crypto(e.to_string()))?);
    }
    let par_time = start.elapsed() / reps;

    assert_eq!(seq, par, "parallel product must be bit-identical");
    println!("sequential: {seq_time:?}");
    println!("parallel ({threads} threads): {par_time:?}");
    println!(
        "speedup: {:.2}x (outputs bit-identical)",
        seq_time.as_secs_f64() / par_time.as_secs_f64()
    );
    Ok(())
}
