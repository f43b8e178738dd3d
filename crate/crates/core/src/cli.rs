//! The `bike` command line: KEM operations on files, self-test, benchmarks
//! and partition optimization.
//!
//! Exit codes: 0 on success, 1 when the self-test fails, 2 for any input
//! error (bad flags, unreadable or malformed files).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::OsRng;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::bench::{self, BenchConfig, BenchMode, BenchPlan, KemPrimitive};
use crate::codesign::{self, DeviceBudget, Fixture, Strategy};
use crate::decoder::DecoderVariant;
use crate::gf2::RingElement;
use crate::inverter::invert;
use crate::keccak::{sha3_384, shake256_stream};
use crate::kem::{Kem, KemCiphertext, KemPrivateKey, KemPublicKey};
use crate::params::BikeParams;

/// Environment variable holding a hex seed for reproducible entropy.
pub const TEST_ENTROPY_VAR: &str = "BIKE_TEST_ENTROPY";

#[derive(Debug, Parser)]
#[command(
    name = "bike",
    version,
    about = "BIKE KEM, benchmarks and HW/SW partitioning"
)]
struct Cli {
    /// Parameter set.
    #[arg(long, global = true, default_value = "level1")]
    params: String,
    /// Karatsuba recursion depth for dense multiplication.
    #[arg(long, global = true)]
    karatsuba_depth: Option<usize>,
    /// Bit-flipping decoder variant.
    #[arg(long, global = true, value_enum)]
    decoder: Option<DecoderArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DecoderArg {
    Plain,
    Bgf,
}

impl From<DecoderArg> for DecoderVariant {
    fn from(d: DecoderArg) -> Self {
        match d {
            DecoderArg::Plain => DecoderVariant::Plain,
            DecoderArg::Bgf => DecoderVariant::Bgf,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Bnb,
    Greedy,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a key pair.
    Keygen {
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        pk: PathBuf,
    },
    /// Encapsulate against a public key.
    Encaps {
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        /// Where to write the shared secret.
        #[arg(long, alias = "out")]
        ss: PathBuf,
    },
    /// Decapsulate a ciphertext.
    Decaps {
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        #[arg(long, alias = "out")]
        ss: PathBuf,
    },
    /// Known-answer and round-trip checks.
    Selftest,
    /// Per-primitive latency for a range of multiplier depths.
    Bench {
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// Karatsuba depths to compare; the first is the speedup reference.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4")]
        depths: Vec<usize>,
        /// Primitives to time.
        #[arg(long, value_delimiter = ',', default_value = "keygen,encaps,decaps")]
        primitives: Vec<String>,
        /// Spread repetitions over all cores (throughput mode).
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Latency-optimal HW/SW partition for a device budget.
    Codesign {
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Budget name from the fixture, `none`, `unbounded`, or `all`.
        #[arg(long, default_value = "all")]
        budget: String,
        #[arg(long, value_enum, default_value = "exhaustive")]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    SelfTest,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(()) => 0,
        Err(Failure::SelfTest) => {
            let _ = writeln!(stderr, "self-test failed");
            1
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

/// Entropy for key generation and encapsulation: the OS source, or a
/// ChaCha20 stream keyed from `BIKE_TEST_ENTROPY` when that is set.
pub fn entropy_from_env() -> Result<Box<dyn RngCore>, String> {
    match std::env::var(TEST_ENTROPY_VAR) {
        Ok(text) => Ok(Box::new(deterministic_entropy(&text)?)),
        Err(_) => Ok(Box::new(OsRng)),
    }
}

/// ChaCha20 keyed with the first 32 bytes of `SHAKE256(hex_decode(hex_seed))`.
pub fn deterministic_entropy(hex_seed: &str) -> Result<ChaCha20Rng, String> {
    let bytes = hex::decode(hex_seed.trim()).map_err(|e| format!("{TEST_ENTROPY_VAR}: {e}"))?;
    let mut key = [0u8; 32];
    shake256_stream(&bytes).read(&mut key);
    Ok(ChaCha20Rng::from_seed(key))
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(p) => write(p, text.as_bytes()),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<(), Failure> {
    let mut params = BikeParams::by_name(&cli.params)?;
    if let Some(d) = cli.karatsuba_depth {
        params.karatsuba_depth = d;
    }
    if let Some(v) = cli.decoder {
        params.decoder.variant = v.into();
    }

    match cli.command {
        Command::Keygen { sk, pk } => {
            let kem = Kem::new(params)?;
            let mut rng = entropy_from_env()?;
            let (private, public) = kem.keygen(&mut rng)?;
            write(&sk, &private.to_bytes())?;
            write(&pk, &public.to_bytes())?;
            writeln!(stdout, "wrote {} and {}", sk.display(), pk.display())?;
        }
        Command::Encaps { pk, ct, ss } => {
            let kem = Kem::new(params)?;
            let public = KemPublicKey::from_bytes(&read(&pk)?, kem.params())?;
            let mut rng = entropy_from_env()?;
            let (k, c) = kem.encapsulate(&public, &mut rng)?;
            write(&ct, &c.to_bytes())?;
            write(&ss, k.as_bytes())?;
            writeln!(stdout, "{}", k.to_hex())?;
        }
        Command::Decaps { sk, ct, ss } => {
            let kem = Kem::new(params)?;
            let private = KemPrivateKey::from_bytes(&read(&sk)?, kem.params())?;
            let c = KemCiphertext::from_bytes(&read(&ct)?, kem.params())?;
            let k = kem.decapsulate(&private, &c)?;
            write(&ss, k.as_bytes())?;
            writeln!(stdout, "{}", k.to_hex())?;
        }
        Command::Selftest => {
            let checks = selftest(&params);
            let mut ok = true;
            for c in &checks {
                writeln!(
                    stdout,
                    "{} {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name
                )?;
                ok &= c.passed;
            }
            if !ok {
                return Err(Failure::SelfTest);
            }
        }
        Command::Bench {
            reps,
            depths,
            primitives,
            parallel,
            format,
            out,
        } => {
            let primitives = primitives
                .iter()
                .map(|p| p.parse::<KemPrimitive>())
                .collect::<Result<Vec<_>, _>>()?;
            let configs = depths
                .iter()
                .map(|&d| BenchConfig {
                    karatsuba_depth: d,
                    decoder: params.decoder.variant,
                })
                .collect();
            let plan = BenchPlan {
                primitives,
                configs,
                repetitions: reps,
                mode: if parallel {
                    BenchMode::Parallel
                } else {
                    BenchMode::Serial
                },
            };
            let mut rng = entropy_from_env()?;
            let records = bench::run_plan(&plan, &mut rng)?;
            let text = match format {
                Format::Csv => bench::to_csv(&records)?,
                Format::Table => bench::render_table(&records),
                Format::Json => serde_json::to_string_pretty(&records)? + "\n",
            };
            emit(&out, &text, stdout)?;
        }
        Command::Codesign {
            fixture,
            budget,
            strategy,
            format,
            out,
        } => {
            let fixture = match fixture {
                Some(p) => Fixture::load(p)?,
                None => Fixture::zynq7000(),
            };
            let strategy = match strategy {
                StrategyArg::Exhaustive => Strategy::Exhaustive,
                StrategyArg::Bnb => Strategy::BranchAndBound,
                StrategyArg::Greedy => Strategy::Greedy,
            };
            let text = if budget == "all" {
                let report = codesign::report(&fixture, &codesign::standard_budgets(&fixture))?;
                match format {
                    Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                    _ => codesign::render_report(&report),
                }
            } else {
                let b = match budget.as_str() {
                    "none" | "zero" => DeviceBudget::zero(),
                    "unbounded" => DeviceBudget::unbounded(),
                    name => fixture.budget(name)?.clone(),
                };
                let p = codesign::optimize_with(&fixture.candidates, &b, strategy)?;
                let s = codesign::speedup(fixture.software_total_ms(), p.total_latency_ms)?;
                match format {
                    Format::Json => serde_json::to_string_pretty(&p)? + "\n",
                    _ => format!(
                        "{}speedup vs software: {:.2}x\n",
                        codesign::render_partition(&p),
                        s
                    ),
                }
            };
            emit(&out, &text, stdout)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

/// Known-answer vectors, algebraic cross-checks, KEM round trips and the
/// bundled partitioning data.
pub fn selftest(params: &BikeParams) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut check = |name, passed| checks.push(Check { name, passed });

    check(
        "sha3-384 empty",
        hex::encode(sha3_384(b""))
            == "0c63a75b845e4f7d01107d852e4c2485c51a50aaaa94fc61995e71bbee983a2ac3713831264adb47fb6bd1e058d5f004",
    );
    check(
        "sha3-384 abc",
        hex::encode(sha3_384(b"abc"))
            == "ec01498288516fc926459f58e2c6ad8df9b473cb0fc08c2596da7cf0e49be4b298d88cea927ac7f539f1edf228376d25",
    );
    let mut shake = [0u8; 32];
    shake256_stream(b"").read(&mut shake);
    check(
        "shake256 empty",
        hex::encode(shake) == "46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762f",
    );

    let mut rng = ChaCha20Rng::seed_from_u64(0x5e1f);
    let r = params.r;
    let random = |rng: &mut ChaCha20Rng| {
        let words = (0..r.div_ceil(64))
            .map(|_| rng.next_u64())
            .collect::<Vec<_>>();
        let mut bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
        bytes.truncate(r.div_ceil(8));
        if !r.is_multiple_of(8) {
            *bytes.last_mut().unwrap() &= (1u8 << (r % 8)) - 1;
        }
        RingElement::from_bytes(r, &bytes).unwrap()
    };
    let a = random(&mut rng);
    let b = random(&mut rng);
    let comba = a.mul_comba(&b).unwrap();
    check(
        "karatsuba depths 1-4 match comba",
        (1..=4).all(|d| a.mul_karatsuba(&b, d).as_ref() == Ok(&comba)),
    );

    let unit = RingElement::from_indices(r, &[0, 5, 77]).unwrap();
    check(
        "inversion",
        invert(&unit, params.karatsuba_depth)
            .and_then(|g| Ok(unit.mul_comba(&g)?))
            .map(|p| p == RingElement::one(r).unwrap())
            .unwrap_or(false),
    );

    let round_trips = Kem::new(params.clone()).is_ok_and(|kem| {
        (0..3).all(|_| {
            let Ok((sk, pk)) = kem.keygen(&mut rng) else {
                return false;
            };
            let Ok((k, ct)) = kem.encapsulate(&pk, &mut rng) else {
                return false;
            };
            let bytes_ok = KemPrivateKey::from_bytes(&sk.to_bytes(), kem.params()).as_ref()
                == Ok(&sk)
                && KemCiphertext::from_bytes(&ct.to_bytes(), kem.params()).as_ref() == Ok(&ct);
            bytes_ok && kem.decapsulate(&sk, &ct).ok() == Some(k)
        })
    });
    check("kem round trips", round_trips);

    let fixture = Fixture::zynq7000();
    check(
        "partition fixture consistent",
        codesign::verify_fixture(&fixture).is_consistent(),
    );
    let z7020 = fixture
        .budget("Z-7020")
        .ok()
        .and_then(|b| codesign::optimize(&fixture.candidates, b).ok());
    check(
        "Z-7020 partition",
        z7020.is_some_and(|p| {
            p.hardware() == ["Decaps", "KeyGen"] && (p.total_latency_ms - 288.18).abs() < 0.01
        }),
    );
    checks
}
