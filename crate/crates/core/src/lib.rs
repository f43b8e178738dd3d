//! BIKE key encapsulation over `GF(2)[x] / (x^r - 1)` with a depth-configurable
//! Karatsuba/Comba multiplier, plus a latency/area partition optimizer for
//! placing the three KEM primitives on a CPU or an FPGA fabric.
//!
//! ```
//! use bike_codesign::{BikeParams, Kem};
//! use rand::SeedableRng;
//!
//! let kem = Kem::new(BikeParams::level1()).unwrap();
//! let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(7);
//! let (sk, pk) = kem.keygen(&mut rng).unwrap();
//! let (k_sent, ct) = kem.encapsulate(&pk, &mut rng).unwrap();
//! assert_eq!(kem.decapsulate(&sk, &ct).unwrap(), k_sent);
//! ```
//!
//! Not audited; dense arithmetic avoids secret-dependent branches but no
//! side-channel guarantees are made.

pub mod bench;
pub mod cli;
pub mod clmul;
pub mod codesign;
pub mod decoder;
pub mod gf2;
pub mod inverter;
pub mod keccak;
pub mod kem;
pub mod params;
pub mod sampler;

pub use codesign::{optimize, AreaVector, DeviceBudget, Fixture, ImplCandidate, Partition, Place};
pub use decoder::{decode, DecoderConfig, DecoderVariant};
pub use gf2::{RingElement, SparseIndices};
pub use inverter::invert;
pub use kem::{Kem, KemCiphertext, KemError, KemPrivateKey, KemPublicKey, SharedSecret};
pub use params::BikeParams;
pub use sampler::{sample_fixed_weight, Domain, Seed};
