//! Seeds and SHAKE256-driven fixed-weight index sampling.

use std::fmt;

use rand::RngCore;
use thiserror::Error;

use crate::gf2::{RingError, SparseIndices};
use crate::keccak::shake256_stream;

pub const SEED_BYTES: usize = 32;

#[derive(Debug, Error)]
pub enum SamplerError {
    #[error("entropy source failed: {0}")]
    Entropy(#[from] rand::Error),
    #[error("cannot draw {weight} distinct positions from a range of {range}")]
    WeightExceedsRange { weight: usize, range: usize },
    #[error("range {0} does not fit a 32-bit sample")]
    RangeTooLarge(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// 32 bytes of seed material: keygen seeds, messages `m`, and `sigma`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed([u8; SEED_BYTES]);

impl fmt::Debug for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seed({})", hex::encode(self.0))
    }
}

impl From<[u8; SEED_BYTES]> for Seed {
    fn from(bytes: [u8; SEED_BYTES]) -> Self {
        Self(bytes)
    }
}

impl Seed {
    pub fn as_bytes(&self) -> &[u8; SEED_BYTES] {
        &self.0
    }
}

/// Context byte appended to the seed before expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Domain {
    H0 = 0x00,
    H1 = 0x01,
    Error = 0x02,
}

pub fn random_seed(rng: &mut impl RngCore) -> Result<Seed, SamplerError> {
    let mut bytes = [0u8; SEED_BYTES];
    rng.try_fill_bytes(&mut bytes)?;
    Ok(Seed(bytes))
}

/// Draws `weight` distinct positions in `[0, range)` by masked rejection
/// sampling over little-endian 32-bit words of `SHAKE256(seed || domain)`.
///
/// Draws at or above `range` are discarded, as are repeats. The result is
/// sorted ascending and is a deterministic function of all four inputs.
pub fn sample_fixed_weight(
    seed: &Seed,
    domain: Domain,
    weight: usize,
    range: usize,
) -> Result<SparseIndices, SamplerError> {
    if weight > range {
        return Err(SamplerError::WeightExceedsRange { weight, range });
    }
    if range > 1 << 32 {
        return Err(SamplerError::RangeTooLarge(range));
    }
    let mask = (range.next_power_of_two() - 1) as u64;

    let mut input = [0u8; SEED_BYTES + 1];
    input[..SEED_BYTES].copy_from_slice(&seed.0);
    input[SEED_BYTES] = domain as u8;
    let mut stream = shake256_stream(&input);

    let mut taken = vec![false; range];
    let mut chosen = Vec::with_capacity(weight);
    while chosen.len() < weight {
        let candidate = (stream.read_u32_le() as u64 & mask) as usize;
        if candidate >= range || taken[candidate] {
            continue;
        }
        taken[candidate] = true;
        chosen.push(candidate as u32);
    }
    chosen.sort_unstable();
    // SparseIndices needs a ring size of at least 2
    Ok(SparseIndices::new(range.max(2), chosen)?)
}
