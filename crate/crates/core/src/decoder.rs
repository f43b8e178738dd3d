//! QC-MDPC bit-flipping decoding.
//!
//! Convention: an error bit at position `p` of block `b` contributes
//! `x^p * h_b` to the syndrome, so the parity checks touching `p` are the
//! syndrome positions `p + j` for `j` in `h_b`. The residual syndrome is
//! `s ^ e0*h0 ^ e1*h1` and the decoder succeeds once it reaches zero.
//!
//! Unsatisfied-parity-check counters are kept bit-sliced: slice `k` holds
//! bit `k` of every counter of a block, so adding one rotated syndrome
//! costs a ripple-carry over a handful of word vectors and threshold
//! comparison is a borrow chain, with no branches on secret bits.

use crate::gf2::{RingElement, RingError, SparseIndices};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DecoderVariant {
    /// One flipping pass per iteration.
    Plain,
    /// Black-gray-flip: the first iteration re-checks flipped ("black")
    /// and near-threshold ("gray") positions with a fixed threshold.
    #[default]
    Bgf,
}

impl std::str::FromStr for DecoderVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" | "bf" => Ok(Self::Plain),
            "bgf" => Ok(Self::Bgf),
            other => Err(format!(
                "unknown decoder variant {other:?} (expected plain or bgf)"
            )),
        }
    }
}

impl std::fmt::Display for DecoderVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Plain => "plain",
            Self::Bgf => "bgf",
        })
    }
}

/// Affine flipping threshold `max(floor(slope * S + offset), floor)` in the
/// residual syndrome weight `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdCoeffs {
    pub slope: f64,
    pub offset: f64,
    pub floor: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecoderConfig {
    pub max_iters: usize,
    pub threshold: ThresholdCoeffs,
    pub variant: DecoderVariant,
    /// Gray positions are those with `thr - gray_gap <= upc < thr`.
    pub gray_gap: u32,
}

impl DecoderConfig {
    pub fn level1() -> Self {
        Self {
            max_iters: 5,
            threshold: ThresholdCoeffs {
                slope: 0.0069722,
                offset: 13.530,
                floor: 36,
            },
            variant: DecoderVariant::Bgf,
            gray_gap: 3,
        }
    }

    pub fn validate(&self) -> Result<(), &'static str> {
        if self.max_iters == 0 {
            return Err("max_iters must be at least 1");
        }
        if self.threshold.floor == 0 {
            return Err("threshold floor must be at least 1");
        }
        Ok(())
    }
}

pub fn threshold(syndrome_weight: usize, cfg: &DecoderConfig) -> u32 {
    let t = cfg.threshold;
    let affine = (t.slope * syndrome_weight as f64 + t.offset).floor();
    let affine = if affine <= 0.0 { 0 } else { affine as u32 };
    affine.max(t.floor)
}

/// `h0 * s`, the syndrome the decoder starts from.
pub fn compute_syndrome(s: &RingElement, h0: &SparseIndices) -> Result<RingElement, RingError> {
    h0.mul_dense(s)
}

/// Unsatisfied checks touching one position: `|{ j in h : s[(p + j) mod r] = 1 }|`.
pub fn count_upc(s_prime: &RingElement, h_block: &SparseIndices, position: usize) -> usize {
    let r = s_prime.r();
    h_block
        .indices()
        .iter()
        .map(|&j| s_prime.bit((position + j as usize) % r) as usize)
        .sum()
}

/// Counters for every position of a block, in one pass.
pub fn count_upc_all(
    s_prime: &RingElement,
    h_block: &SparseIndices,
) -> Result<Vec<u32>, RingError> {
    Ok(UpcCounters::new(s_prime, h_block)?.unpack())
}

struct UpcCounters {
    r: usize,
    slices: Vec<Vec<u64>>,
}

impl UpcCounters {
    fn new(s_prime: &RingElement, h_block: &SparseIndices) -> Result<Self, RingError> {
        if s_prime.r() != h_block.r() {
            return Err(RingError::SizeMismatch {
                left: s_prime.r(),
                right: h_block.r(),
            });
        }
        let n = s_prime.words().len();
        let bits = usize::BITS - h_block.weight().leading_zeros();
        let mut slices = vec![vec![0u64; n]; bits.max(1) as usize];
        for &j in h_block.indices() {
            let rotated = s_prime.rotate_right(j as usize);
            for (w, &word) in rotated.words().iter().enumerate() {
                let mut carry = word;
                for slice in slices.iter_mut() {
                    let next = slice[w] & carry;
                    slice[w] ^= carry;
                    carry = next;
                }
            }
        }
        Ok(Self {
            r: s_prime.r(),
            slices,
        })
    }

    /// Positions whose counter is at least `thr`.
    fn at_least(&self, thr: u32) -> RingElement {
        let n = self.slices[0].len();
        if (thr as u64) >= 1u64 << self.slices.len() {
            return RingElement::from_words_truncated(self.r, vec![0; n]);
        }
        let mut words = vec![0u64; n];
        for (w, out) in words.iter_mut().enumerate() {
            // borrow of (counter - thr), bit-sliced
            let mut borrow = 0u64;
            for (k, slice) in self.slices.iter().enumerate() {
                let a = slice[w];
                let t = if (thr >> k) & 1 == 1 { u64::MAX } else { 0 };
                borrow = (!a & t) | (!(a ^ t) & borrow);
            }
            *out = !borrow;
        }
        RingElement::from_words_truncated(self.r, words)
    }

    fn unpack(&self) -> Vec<u32> {
        (0..self.r)
            .map(|p| {
                self.slices
                    .iter()
                    .enumerate()
                    .map(|(k, s)| (((s[p / 64] >> (p % 64)) & 1) as u32) << k)
                    .sum()
            })
            .collect()
    }
}

fn and(a: &RingElement, b: &RingElement) -> RingElement {
    let words = a
        .words()
        .iter()
        .zip(b.words())
        .map(|(x, y)| x & y)
        .collect();
    RingElement::from_words_truncated(a.r(), words)
}

fn and_not(a: &RingElement, b: &RingElement) -> RingElement {
    let words = a
        .words()
        .iter()
        .zip(b.words())
        .map(|(x, y)| x & !y)
        .collect();
    RingElement::from_words_truncated(a.r(), words)
}

/// Working state of one decoding run.
#[derive(Debug, Clone)]
pub struct DecoderState {
    pub s_prime: RingElement,
    pub e_prime: (RingElement, RingElement),
    pub iteration: usize,
}

/// Result of [`decode`]. On failure `error` is the estimate reached when the
/// iteration cap was hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub error: (RingElement, RingElement),
    pub success: bool,
    pub iterations: usize,
}

struct Decoder<'a> {
    syndrome: &'a RingElement,
    h0: &'a SparseIndices,
    h1: &'a SparseIndices,
    state: DecoderState,
}

impl Decoder<'_> {
    fn refresh_residual(&mut self) -> Result<(), RingError> {
        let (e0, e1) = &self.state.e_prime;
        let mut res = self.syndrome.clone();
        res.add_assign(&self.h0.mul_dense(e0)?);
        res.add_assign(&self.h1.mul_dense(e1)?);
        self.state.s_prime = res;
        Ok(())
    }

    fn counters(&self) -> Result<(UpcCounters, UpcCounters), RingError> {
        Ok((
            UpcCounters::new(&self.state.s_prime, self.h0)?,
            UpcCounters::new(&self.state.s_prime, self.h1)?,
        ))
    }

    fn flip(&mut self, flips: (RingElement, RingElement)) -> Result<(), RingError> {
        self.state.e_prime.0.add_assign(&flips.0);
        self.state.e_prime.1.add_assign(&flips.1);
        self.refresh_residual()
    }

    fn masked_pass(
        &mut self,
        mask: &(RingElement, RingElement),
        thr: u32,
    ) -> Result<(), RingError> {
        let (u0, u1) = self.counters()?;
        let flips = (
            and(&u0.at_least(thr), &mask.0),
            and(&u1.at_least(thr), &mask.1),
        );
        self.flip(flips)
    }
}

/// Bit-flipping decoder. Failure after `max_iters` iterations is reported
/// in the outcome, never as an error.
pub fn decode(
    syndrome: &RingElement,
    h0: &SparseIndices,
    h1: &SparseIndices,
    cfg: &DecoderConfig,
) -> Result<DecodeOutcome, RingError> {
    let r = syndrome.r();
    for h in [h0, h1] {
        if h.r() != r {
            return Err(RingError::SizeMismatch {
                left: r,
                right: h.r(),
            });
        }
    }
    let zero = RingElement::zero(r)?;
    let mut dec = Decoder {
        syndrome,
        h0,
        h1,
        state: DecoderState {
            s_prime: syndrome.clone(),
            e_prime: (zero.clone(), zero),
            iteration: 0,
        },
    };
    // a clean re-check of black or gray positions needs a majority of the block
    let masked_thr = (h0.weight() as u32).div_ceil(2) + 1;

    while dec.state.iteration < cfg.max_iters && !dec.state.s_prime.is_zero() {
        dec.state.iteration += 1;
        let thr = threshold(dec.state.s_prime.weight(), cfg);
        let (u0, u1) = dec.counters()?;
        let black = (u0.at_least(thr), u1.at_least(thr));
        let gray_thr = thr.saturating_sub(cfg.gray_gap);
        let gray = (
            and_not(&u0.at_least(gray_thr), &black.0),
            and_not(&u1.at_least(gray_thr), &black.1),
        );
        dec.flip(black.clone())?;

        if cfg.variant == DecoderVariant::Bgf && dec.state.iteration == 1 {
            dec.masked_pass(&black, masked_thr)?;
            dec.masked_pass(&gray, masked_thr)?;
        }
    }

    let DecoderState {
        s_prime,
        e_prime,
        iteration,
    } = dec.state;
    Ok(DecodeOutcome {
        error: e_prime,
        success: s_prime.is_zero(),
        iterations: iteration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> DecoderConfig {
        DecoderConfig::level1()
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold(0, &cfg()), 36);
        assert_eq!(threshold(5000, &cfg()), 48);
        assert_eq!(threshold(3225, &cfg()), 36);
    }

    #[test]
    fn zero_syndrome_needs_no_work() {
        let h0 = SparseIndices::new(13, vec![0, 4, 7]).unwrap();
        let h1 = SparseIndices::new(13, vec![1, 2, 11]).unwrap();
        let s = RingElement::zero(13).unwrap();
        assert!(compute_syndrome(&s, &h0).unwrap().is_zero());
        let out = decode(&s, &h0, &h1, &cfg()).unwrap();
        assert!(out.success);
        assert_eq!(out.iterations, 0);
        assert!(out.error.0.is_zero() && out.error.1.is_zero());
        for p in 0..13 {
            assert_eq!(count_upc(&s, &h0, p), 0);
        }
    }

    #[test]
    fn identity_syndrome() {
        let s = RingElement::from_indices(13, &[3, 5, 12]).unwrap();
        let unit = SparseIndices::new(13, vec![0]).unwrap();
        assert_eq!(compute_syndrome(&s, &unit).unwrap(), s);
    }

    #[test]
    fn bit_sliced_comparison() {
        let s = RingElement::from_indices(13, &[0, 1, 2, 5, 8]).unwrap();
        let h = SparseIndices::new(13, vec![0, 1, 3, 6, 9]).unwrap();
        let counters = UpcCounters::new(&s, &h).unwrap();
        let counts = counters.unpack();
        for thr in 0..8u32 {
            let mask = counters.at_least(thr);
            for (p, &n) in counts.iter().enumerate() {
                assert_eq!(mask.bit(p), n >= thr, "thr {thr} pos {p}");
            }
        }
    }

    #[test]
    fn variant_names() {
        assert_eq!(
            "bgf".parse::<DecoderVariant>().unwrap(),
            DecoderVariant::Bgf
        );
        assert_eq!(
            "plain".parse::<DecoderVariant>().unwrap(),
            DecoderVariant::Plain
        );
        assert!("ldpc".parse::<DecoderVariant>().is_err());
        assert_eq!(DecoderVariant::Plain.to_string(), "plain");
    }

    #[test]
    fn config_validation() {
        let mut c = cfg();
        c.max_iters = 0;
        assert!(c.validate().is_err());
        let mut c = cfg();
        c.threshold.floor = 0;
        assert!(c.validate().is_err());
        assert!(cfg().validate().is_ok());
    }
}
