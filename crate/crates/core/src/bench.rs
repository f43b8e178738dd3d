//! Wall-clock latency of each KEM primitive per multiplier/decoder setting.
//!
//! Latencies are medians over at least three repetitions, each on fresh
//! inputs prepared outside the timed region. Absolute numbers depend on
//! the host; only their ratios are meaningful across machines.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codesign::speedup;
use crate::decoder::DecoderVariant;
use crate::kem::{Kem, KemError};
use crate::params::BikeParams;

pub const MIN_REPETITIONS: usize = 3;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("at least {MIN_REPETITIONS} repetitions are required, got {0}")]
    TooFewRepetitions(usize),
    #[error(transparent)]
    Kem(#[from] KemError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("no configurations to benchmark")]
    EmptyPlan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum KemPrimitive {
    KeyGen,
    Encaps,
    Decaps,
}

impl KemPrimitive {
    pub const ALL: [KemPrimitive; 3] = [Self::KeyGen, Self::Encaps, Self::Decaps];
}

impl fmt::Display for KemPrimitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for KemPrimitive {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "keygen" => Ok(Self::KeyGen),
            "encaps" => Ok(Self::Encaps),
            "decaps" => Ok(Self::Decaps),
            other => Err(format!("unknown primitive {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BenchConfig {
    pub karatsuba_depth: usize,
    pub decoder: DecoderVariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchMode {
    #[default]
    Serial,
    /// Repetitions spread over all cores; latency is wall time per operation.
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub primitive: KemPrimitive,
    pub karatsuba_depth: usize,
    pub decoder: String,
    pub mode: BenchMode,
    pub latency_ms: f64,
    pub repetitions: usize,
    pub speedup_vs_reference: f64,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

fn kem_for(config: &BenchConfig) -> Result<Kem, KemError> {
    Kem::new(
        BikeParams::level1()
            .with_karatsuba_depth(config.karatsuba_depth)
            .with_decoder_variant(config.decoder),
    )
}

/// Times one primitive once on freshly generated inputs.
fn time_once(kem: &Kem, primitive: KemPrimitive, rng: &mut impl RngCore) -> Result<f64, KemError> {
    let ms = match primitive {
        KemPrimitive::KeyGen => {
            let t = Instant::now();
            std::hint::black_box(kem.keygen(rng)?);
            t.elapsed()
        }
        KemPrimitive::Encaps => {
            let (_, pk) = kem.keygen(rng)?;
            let t = Instant::now();
            std::hint::black_box(kem.encapsulate(&pk, rng)?);
            t.elapsed()
        }
        KemPrimitive::Decaps => {
            let (sk, pk) = kem.keygen(rng)?;
            let (_, ct) = kem.encapsulate(&pk, rng)?;
            let t = Instant::now();
            std::hint::black_box(kem.decapsulate(&sk, &ct)?);
            t.elapsed()
        }
    };
    Ok(ms.as_secs_f64() * 1e3)
}

/// Median latency of `primitive` over `repetitions` runs. The speedup
/// field is 1 until set against a reference record.
pub fn bench_primitive(
    primitive: KemPrimitive,
    config: BenchConfig,
    repetitions: usize,
    rng: &mut impl RngCore,
) -> Result<BenchRecord, BenchError> {
    if repetitions < MIN_REPETITIONS {
        return Err(BenchError::TooFewRepetitions(repetitions));
    }
    let kem = kem_for(&config)?;
    let samples = (0..repetitions)
        .map(|_| time_once(&kem, primitive, rng))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BenchRecord {
        primitive,
        karatsuba_depth: config.karatsuba_depth,
        decoder: config.decoder.to_string(),
        mode: BenchMode::Serial,
        latency_ms: median(samples),
        repetitions,
        speedup_vs_reference: 1.0,
    })
}

/// Throughput variant: `repetitions` operations spread over the available
/// cores, reported as wall time per operation.
pub fn bench_primitive_parallel(
    primitive: KemPrimitive,
    config: BenchConfig,
    repetitions: usize,
    rng: &mut impl RngCore,
) -> Result<BenchRecord, BenchError> {
    if repetitions < MIN_REPETITIONS {
        return Err(BenchError::TooFewRepetitions(repetitions));
    }
    let kem = kem_for(&config)?;
    let threads = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(repetitions);
    let mut seeds = vec![[0u8; 32]; threads];
    for s in &mut seeds {
        rng.fill_bytes(s);
    }
    let start = Instant::now();
    let results: Vec<Result<(), KemError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .iter()
            .enumerate()
            .map(|(i, seed)| {
                let kem = &kem;
                let share = repetitions / threads + usize::from(i < repetitions % threads);
                scope.spawn(move || {
                    let mut rng = ChaCha20Rng::from_seed(*seed);
                    for _ in 0..share {
                        time_once(kem, primitive, &mut rng)?;
                    }
                    Ok(())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("bench worker panicked"))
            .collect()
    });
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    for r in results {
        r?;
    }
    Ok(BenchRecord {
        primitive,
        karatsuba_depth: config.karatsuba_depth,
        decoder: config.decoder.to_string(),
        mode: BenchMode::Parallel,
        latency_ms: elapsed / repetitions as f64,
        repetitions,
        speedup_vs_reference: 1.0,
    })
}

#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub primitives: Vec<KemPrimitive>,
    /// The first configuration is the reference for speedups.
    pub configs: Vec<BenchConfig>,
    pub repetitions: usize,
    pub mode: BenchMode,
}

/// Runs every (primitive, config) pair, primitives outermost, in the order
/// given, and fills in speedups against each primitive's first config.
pub fn run_plan(plan: &BenchPlan, rng: &mut impl RngCore) -> Result<Vec<BenchRecord>, BenchError> {
    if plan.configs.is_empty() || plan.primitives.is_empty() {
        return Err(BenchError::EmptyPlan);
    }
    let mut out = Vec::new();
    for &primitive in &plan.primitives {
        let mut rows = Vec::with_capacity(plan.configs.len());
        for &config in &plan.configs {
            let rec = match plan.mode {
                BenchMode::Serial => bench_primitive(primitive, config, plan.repetitions, rng)?,
                BenchMode::Parallel => {
                    bench_primitive_parallel(primitive, config, plan.repetitions, rng)?
                }
            };
            rows.push(rec);
        }
        let reference = rows[0].latency_ms;
        for rec in &mut rows {
            rec.speedup_vs_reference = speedup(reference, rec.latency_ms).unwrap_or(f64::NAN);
        }
        out.extend(rows);
    }
    Ok(out)
}

pub fn to_csv(records: &[BenchRecord]) -> Result<String, BenchError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| BenchError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn from_csv(text: &str) -> Result<Vec<BenchRecord>, BenchError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<Result<Vec<BenchRecord>, _>>()?)
}

pub fn render_table(records: &[BenchRecord]) -> String {
    let mut out = format!(
        "{:<8} {:>6} {:<8} {:<9} {:>12} {:>5} {:>9}\n",
        "prim", "depth", "decoder", "mode", "latency[ms]", "reps", "speedup"
    );
    for r in records {
        let mode = match r.mode {
            BenchMode::Serial => "serial",
            BenchMode::Parallel => "parallel",
        };
        out.push_str(&format!(
            "{:<8} {:>6} {:<8} {:<9} {:>12.3} {:>5} {:>8.2}x\n",
            r.primitive.to_string(),
            r.karatsuba_depth,
            r.decoder,
            mode,
            r.latency_ms,
            r.repetitions,
            r.speedup_vs_reference
        ));
    }
    out
}
