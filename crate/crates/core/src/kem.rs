//! Key generation, encapsulation and decapsulation with implicit rejection.
//!
//! Hash inputs are fixed as follows, all digests being SHA3-384 truncated
//! to 32 bytes:
//!
//! * `H(e)     = SHA3(e0 || e1)` with both halves in ring byte form;
//! * `K        = SHA3(a || s || m')` where `a` is the recovered message, or
//!   `sigma` when decapsulation rejects.
//!
//! Wire formats for `r = 12323`: public key 1541 bytes, ciphertext
//! 1541 + 32 bytes, private key `71*4 + 71*4 + 32` bytes (two ascending
//! little-endian `u32` index lists, then `sigma`), shared secret 32 bytes.

use std::fmt;

use rand::RngCore;
use thiserror::Error;

use crate::decoder::{compute_syndrome, decode};
use crate::gf2::{RingElement, RingError, SparseIndices};
use crate::inverter::{invert, InvertError};
use crate::keccak::Sha3_384;
use crate::params::{BikeParams, ParamsError};
use crate::sampler::{random_seed, sample_fixed_weight, Domain, SamplerError, Seed, SEED_BYTES};

pub const SHARED_SECRET_BYTES: usize = 32;
const KEYGEN_ATTEMPTS: usize = 8;

#[derive(Debug, Error)]
pub enum KemError {
    #[error("invalid parameters: {0}")]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("no invertible h0 after {0} attempts")]
    KeygenExhausted(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Why a serialized object was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{object}: expected {expected} bytes, got {got}")]
    Length {
        object: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{object}: {source}")]
    Invalid {
        object: &'static str,
        source: RingError,
    },
}

fn invalid(object: &'static str) -> impl Fn(RingError) -> ParseError {
    move |source| ParseError::Invalid { object, source }
}

fn expect_len(object: &'static str, bytes: &[u8], expected: usize) -> Result<(), ParseError> {
    if bytes.len() != expected {
        return Err(ParseError::Length {
            object,
            expected,
            got: bytes.len(),
        });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq)]
pub struct KemPrivateKey {
    h0: SparseIndices,
    h1: SparseIndices,
    sigma: Seed,
}

impl fmt::Debug for KemPrivateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KemPrivateKey")
            .field("r", &self.h0.r())
            .field("half_weight", &self.h0.weight())
            .finish_non_exhaustive()
    }
}

impl KemPrivateKey {
    pub fn h0(&self) -> &SparseIndices {
        &self.h0
    }

    pub fn h1(&self) -> &SparseIndices {
        &self.h1
    }

    pub fn sigma(&self) -> &Seed {
        &self.sigma
    }

    pub fn encoded_len(params: &BikeParams) -> usize {
        2 * 4 * params.half_weight() + SEED_BYTES
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = self.h0.to_bytes();
        out.extend(self.h1.to_bytes());
        out.extend_from_slice(self.sigma.as_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8], params: &BikeParams) -> Result<Self, ParseError> {
        expect_len("private key", bytes, Self::encoded_len(params))?;
        let half = 4 * params.half_weight();
        let h0 = SparseIndices::from_bytes(params.r, &bytes[..half])
            .map_err(invalid("private key h0"))?;
        let h1 = SparseIndices::from_bytes(params.r, &bytes[half..2 * half])
            .map_err(invalid("private key h1"))?;
        let mut sigma = [0u8; SEED_BYTES];
        sigma.copy_from_slice(&bytes[2 * half..]);
        Ok(Self {
            h0,
            h1,
            sigma: Seed::from(sigma),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KemPublicKey {
    h: RingElement,
}

impl KemPublicKey {
    pub fn h(&self) -> &RingElement {
        &self.h
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.h.to_bytes()
    }

    pub fn from_bytes(bytes: &[u8], params: &BikeParams) -> Result<Self, ParseError> {
        expect_len("public key", bytes, params.ring_bytes())?;
        let h = RingElement::from_bytes(params.r, bytes).map_err(invalid("public key"))?;
        Ok(Self { h })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KemCiphertext {
    s: RingElement,
    m_prime: [u8; SEED_BYTES],
}

impl KemCiphertext {
    pub fn s(&self) -> &RingElement {
        &self.s
    }

    pub fn m_prime(&self) -> &[u8; SEED_BYTES] {
        &self.m_prime
    }

    pub fn encoded_len(params: &BikeParams) -> usize {
        params.ring_bytes() + SEED_BYTES
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = self.s.to_bytes();
        out.extend_from_slice(&self.m_prime);
        out
    }

    pub fn from_bytes(bytes: &[u8], params: &BikeParams) -> Result<Self, ParseError> {
        expect_len("ciphertext", bytes, Self::encoded_len(params))?;
        let split = params.ring_bytes();
        let s =
            RingElement::from_bytes(params.r, &bytes[..split]).map_err(invalid("ciphertext"))?;
        let mut m_prime = [0u8; SEED_BYTES];
        m_prime.copy_from_slice(&bytes[split..]);
        Ok(Self { s, m_prime })
    }

    /// Flips one bit of `m'`; for exercising the rejection path.
    pub fn with_flipped_message_bit(&self, bit: usize) -> Self {
        let mut out = self.clone();
        out.m_prime[(bit / 8) % SEED_BYTES] ^= 1 << (bit % 8);
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SharedSecret([u8; SHARED_SECRET_BYTES]);

impl fmt::Debug for SharedSecret {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SharedSecret({})", hex::encode(self.0))
    }
}

impl SharedSecret {
    pub fn as_bytes(&self) -> &[u8; SHARED_SECRET_BYTES] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, ParseError> {
        expect_len("shared secret", bytes, SHARED_SECRET_BYTES)?;
        let mut k = [0u8; SHARED_SECRET_BYTES];
        k.copy_from_slice(bytes);
        Ok(Self(k))
    }
}

/// What happened inside one decapsulation. Only `shared_secret` is
/// meaningful to protocol callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecapsOutcome {
    pub shared_secret: SharedSecret,
    /// The decoder drove the residual syndrome to zero.
    pub decoded: bool,
    /// The re-encryption check passed and the message was used.
    pub accepted: bool,
}

fn truncated_digest(parts: &[&[u8]]) -> [u8; 32] {
    let mut h = Sha3_384::new();
    for p in parts {
        h.update(p);
    }
    let digest = h.finalize();
    let mut out = [0u8; 32];
    out.copy_from_slice(&digest[..32]);
    out
}

fn hash_error(e0: &RingElement, e1: &RingElement) -> [u8; 32] {
    truncated_digest(&[&e0.to_bytes(), &e1.to_bytes()])
}

fn derive_key(a: &[u8; 32], ct: &KemCiphertext) -> SharedSecret {
    SharedSecret(truncated_digest(&[a, &ct.s.to_bytes(), &ct.m_prime]))
}

fn xor32(a: &[u8; 32], b: &[u8; 32]) -> [u8; 32] {
    let mut out = [0u8; 32];
    for i in 0..32 {
        out[i] = a[i] ^ b[i];
    }
    out
}

fn ct_eq(a: &[u8], b: &[u8]) -> bool {
    a.len() == b.len() && a.iter().zip(b).fold(0u8, |acc, (x, y)| acc | (x ^ y)) == 0
}

fn ct_select(choose_a: bool, a: &[u8; 32], b: &[u8; 32]) -> [u8; 32] {
    let mask = 0u8.wrapping_sub(choose_a as u8);
    let mut out = [0u8; 32];
    for i in 0..32 {
        out[i] = (a[i] & mask) | (b[i] & !mask);
    }
    out
}

/// BIKE over a validated parameter set.
#[derive(Debug, Clone)]
pub struct Kem {
    params: BikeParams,
}

impl Kem {
    pub fn new(params: BikeParams) -> Result<Self, KemError> {
        params.validate()?;
        Ok(Self { params })
    }

    pub fn params(&self) -> &BikeParams {
        &self.params
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        a.mul_karatsuba(b, self.params.karatsuba_depth)
    }

    /// Expands `m` into the split error vector `(e0, e1)`.
    fn error_vector(&self, m: &Seed) -> Result<(RingElement, RingElement), KemError> {
        let r = self.params.r;
        let joint = sample_fixed_weight(m, Domain::Error, self.params.t, 2 * r)?;
        let (lo, hi): (Vec<u32>, Vec<u32>) =
            joint.indices().iter().partition(|&&i| (i as usize) < r);
        let e0 = SparseIndices::new(r, lo)?;
        let e1 = SparseIndices::new(r, hi.into_iter().map(|i| i - r as u32).collect())?;
        Ok((e0.to_dense(), e1.to_dense()))
    }

    pub fn keygen(
        &self,
        rng: &mut impl RngCore,
    ) -> Result<(KemPrivateKey, KemPublicKey), KemError> {
        for _ in 0..KEYGEN_ATTEMPTS {
            let seed = random_seed(rng)?;
            let sigma = random_seed(rng)?;
            match self.keygen_from_seeds(&seed, &sigma) {
                Err(KemError::KeygenExhausted(_)) => continue,
                other => return other,
            }
        }
        Err(KemError::KeygenExhausted(KEYGEN_ATTEMPTS))
    }

    /// Deterministic key generation from the key seed and `sigma`.
    pub fn keygen_from_seeds(
        &self,
        seed: &Seed,
        sigma: &Seed,
    ) -> Result<(KemPrivateKey, KemPublicKey), KemError> {
        let p = &self.params;
        let h0 = sample_fixed_weight(seed, Domain::H0, p.half_weight(), p.r)?;
        let h1 = sample_fixed_weight(seed, Domain::H1, p.half_weight(), p.r)?;
        let h0_inv = match invert(&h0.to_dense(), p.karatsuba_depth) {
            Ok(inv) => inv,
            Err(InvertError::Ring(e)) => return Err(e.into()),
            Err(_) => return Err(KemError::KeygenExhausted(1)),
        };
        let h = self.mul(&h1.to_dense(), &h0_inv)?;
        Ok((
            KemPrivateKey {
                h0,
                h1,
                sigma: *sigma,
            },
            KemPublicKey { h },
        ))
    }

    pub fn encapsulate(
        &self,
        pk: &KemPublicKey,
        rng: &mut impl RngCore,
    ) -> Result<(SharedSecret, KemCiphertext), KemError> {
        let m = random_seed(rng)?;
        self.encapsulate_with_message(pk, &m)
    }

    /// Deterministic encapsulation of a chosen message `m`.
    pub fn encapsulate_with_message(
        &self,
        pk: &KemPublicKey,
        m: &Seed,
    ) -> Result<(SharedSecret, KemCiphertext), KemError> {
        if pk.h.r() != self.params.r {
            return Err(RingError::SizeMismatch {
                left: self.params.r,
                right: pk.h.r(),
            }
            .into());
        }
        let (e0, e1) = self.error_vector(m)?;
        let s = e0.add(&self.mul(&e1, &pk.h)?)?;
        let m_prime = xor32(m.as_bytes(), &hash_error(&e0, &e1));
        let ct = KemCiphertext { s, m_prime };
        let k = derive_key(m.as_bytes(), &ct);
        Ok((k, ct))
    }

    pub fn decapsulate(
        &self,
        sk: &KemPrivateKey,
        ct: &KemCiphertext,
    ) -> Result<SharedSecret, KemError> {
        Ok(self.decapsulate_traced(sk, ct)?.shared_secret)
    }

    /// Decapsulation that also reports decoder success and acceptance.
    pub fn decapsulate_traced(
        &self,
        sk: &KemPrivateKey,
        ct: &KemCiphertext,
    ) -> Result<DecapsOutcome, KemError> {
        let p = &self.params;
        for r in [sk.h0.r(), sk.h1.r(), ct.s.r()] {
            if r != p.r {
                return Err(RingError::SizeMismatch {
                    left: p.r,
                    right: r,
                }
                .into());
            }
        }
        let syndrome = compute_syndrome(&ct.s, &sk.h0)?;
        let decoded = decode(&syndrome, &sk.h0, &sk.h1, &p.decoder)?;
        let (e0, e1) = &decoded.error;

        let m2 = xor32(&ct.m_prime, &hash_error(e0, e1));
        let (f0, f1) = self.error_vector(&Seed::from(m2))?;
        let same = ct_eq(&f0.to_bytes(), &e0.to_bytes()) & ct_eq(&f1.to_bytes(), &e1.to_bytes());
        let accepted = same & decoded.success;

        let a = ct_select(accepted, &m2, sk.sigma.as_bytes());
        Ok(DecapsOutcome {
            shared_secret: derive_key(&a, ct),
            decoded: decoded.success,
            accepted,
        })
    }

    /// The key a rejecting decapsulation returns: `SHA3(sigma || c)`.
    pub fn implicit_rejection_secret(sk: &KemPrivateKey, ct: &KemCiphertext) -> SharedSecret {
        derive_key(sk.sigma.as_bytes(), ct)
    }
}
