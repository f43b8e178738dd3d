//! Parameter sets.

use thiserror::Error;

use crate::decoder::{DecoderConfig, DecoderVariant};

/// Deepest Karatsuba recursion accepted by [`BikeParams::validate`]. At the
/// level-1 ring size (193 words) depth 8 already reaches single-word halves.
pub const MAX_KARATSUBA_DEPTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamsError {
    #[error("r = {0} is below the smallest supported ring size 8")]
    TooSmall(usize),
    #[error("r = {0} is not prime")]
    NotPrime(usize),
    #[error("2 is not a primitive root modulo r = {0}")]
    NotPrimitive(usize),
    #[error("row weight w = {0} must be even with w/2 odd")]
    RowWeight(usize),
    #[error("error weight t = {t} must be below r = {r}")]
    ErrorWeight { t: usize, r: usize },
    #[error("message length {0} bits is unsupported (only 256)")]
    MessageLength(usize),
    #[error("karatsuba depth {0} exceeds {MAX_KARATSUBA_DEPTH}")]
    KaratsubaDepth(usize),
    #[error("decoder config: {0}")]
    Decoder(&'static str),
    #[error("unknown parameter set {0:?}")]
    Unknown(String),
}

/// One record governing ring size, weights, multiplier, and decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct BikeParams {
    pub r: usize,
    pub w: usize,
    pub t: usize,
    pub ell: usize,
    pub karatsuba_depth: usize,
    pub decoder: DecoderConfig,
}

impl BikeParams {
    /// NIST security level 1: r = 12323, w = 142, t = 134.
    pub fn level1() -> Self {
        Self {
            r: 12323,
            w: 142,
            t: 134,
            ell: 256,
            karatsuba_depth: 3,
            decoder: DecoderConfig::level1(),
        }
    }

    pub fn by_name(name: &str) -> Result<Self, ParamsError> {
        match name {
            "level1" | "l1" => Ok(Self::level1()),
            other => Err(ParamsError::Unknown(other.to_string())),
        }
    }

    pub fn with_karatsuba_depth(mut self, depth: usize) -> Self {
        self.karatsuba_depth = depth;
        self
    }

    pub fn with_decoder_variant(mut self, variant: DecoderVariant) -> Self {
        self.decoder.variant = variant;
        self
    }

    /// Weight of each private key half.
    pub fn half_weight(&self) -> usize {
        self.w / 2
    }

    /// `ceil(r / 8)`.
    pub fn ring_bytes(&self) -> usize {
        self.r.div_ceil(8)
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        if self.r < 8 {
            return Err(ParamsError::TooSmall(self.r));
        }
        if !is_prime(self.r) {
            return Err(ParamsError::NotPrime(self.r));
        }
        if multiplicative_order_of_two(self.r) != self.r - 1 {
            return Err(ParamsError::NotPrimitive(self.r));
        }
        if self.w == 0 || !self.w.is_multiple_of(2) || (self.w / 2) % 2 != 1 || self.w / 2 >= self.r
        {
            return Err(ParamsError::RowWeight(self.w));
        }
        if self.t >= self.r {
            return Err(ParamsError::ErrorWeight {
                t: self.t,
                r: self.r,
            });
        }
        if self.ell != 256 {
            return Err(ParamsError::MessageLength(self.ell));
        }
        if self.karatsuba_depth > MAX_KARATSUBA_DEPTH {
            return Err(ParamsError::KaratsubaDepth(self.karatsuba_depth));
        }
        self.decoder.validate().map_err(ParamsError::Decoder)
    }
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    (2..)
        .take_while(|d| d * d <= n)
        .all(|d| !n.is_multiple_of(d))
}

fn multiplicative_order_of_two(r: usize) -> usize {
    let mut x = 2 % r;
    let mut k = 1;
    while x != 1 {
        x = x * 2 % r;
        k += 1;
        if k > r {
            return 0;
        }
    }
    k
}
