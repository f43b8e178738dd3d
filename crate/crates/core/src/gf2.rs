//! Arithmetic in the cyclic ring `GF(2)[x] / (x^r - 1)`.
//!
//! Elements are bit-packed little-endian: coefficient `i` lives in bit
//! `i % 64` of word `i / 64`, and every bit at a position `>= r` is zero.
//! The byte serialization uses the same order with 8-bit words, so the
//! encoded form does not depend on the machine word size.

use std::fmt;

use thiserror::Error;

use crate::clmul;

/// Bits per packed word.
pub const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("ring size must be at least 2, got {0}")]
    Degenerate(usize),
    #[error("index {index} out of range for ring of size {r}")]
    IndexOutOfRange { index: usize, r: usize },
    #[error("indices must be strictly increasing, found {prev} followed by {next}")]
    NotIncreasing { prev: usize, next: usize },
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("expected {expected} bytes, got {got}")]
    Length { expected: usize, got: usize },
    #[error("non-zero padding bits above position {r}")]
    SlackBits { r: usize },
}

fn word_count(r: usize) -> usize {
    r.div_ceil(WORD_BITS)
}

fn top_mask(r: usize) -> u64 {
    match r % WORD_BITS {
        0 => u64::MAX,
        rem => (1u64 << rem) - 1,
    }
}

fn check_ring(r: usize) -> Result<(), RingError> {
    if r < 2 {
        return Err(RingError::Degenerate(r));
    }
    Ok(())
}

/// A dense element of `GF(2)[x] / (x^r - 1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    r: usize,
    words: Vec<u64>,
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r <= 256 {
            let ones: Vec<usize> = self.ones().collect();
            write!(f, "RingElement(r={}, {:?})", self.r, ones)
        } else {
            write!(f, "RingElement(r={}, weight={})", self.r, self.weight())
        }
    }
}

impl RingElement {
    pub fn zero(r: usize) -> Result<Self, RingError> {
        check_ring(r)?;
        Ok(Self {
            r,
            words: vec![0; word_count(r)],
        })
    }

    pub fn one(r: usize) -> Result<Self, RingError> {
        let mut e = Self::zero(r)?;
        e.words[0] = 1;
        Ok(e)
    }

    /// `x^k` with `k` reduced mod `r`.
    pub fn monomial(r: usize, k: usize) -> Result<Self, RingError> {
        let mut e = Self::zero(r)?;
        e.flip(k % r);
        Ok(e)
    }

    /// Builds an element from coefficient positions. Positions may be
    /// given in any order; a repeated position is rejected.
    pub fn from_indices(r: usize, indices: &[usize]) -> Result<Self, RingError> {
        let mut e = Self::zero(r)?;
        for &i in indices {
            if i >= r {
                return Err(RingError::IndexOutOfRange { index: i, r });
            }
            if e.bit(i) {
                return Err(RingError::DuplicateIndex(i));
            }
            e.flip(i);
        }
        Ok(e)
    }

    /// Builds an element from raw words, rejecting set slack bits.
    pub fn from_words(r: usize, words: Vec<u64>) -> Result<Self, RingError> {
        check_ring(r)?;
        let n = word_count(r);
        if words.len() != n {
            return Err(RingError::Length {
                expected: n * 8,
                got: words.len() * 8,
            });
        }
        if words[n - 1] & !top_mask(r) != 0 {
            return Err(RingError::SlackBits { r });
        }
        Ok(Self { r, words })
    }

    /// Like [`Self::from_words`] but clears slack bits instead of rejecting them.
    pub(crate) fn from_words_truncated(r: usize, mut words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(r));
        let n = words.len();
        words[n - 1] &= top_mask(r);
        Self { r, words }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub(crate) fn flip(&mut self, i: usize) {
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().fold(0u64, |acc, w| acc | w) == 0
    }

    /// Positions of the non-zero coefficients, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.r).filter(move |&i| self.bit(i))
    }

    fn same_ring(&self, other: &Self) -> Result<(), RingError> {
        if self.r != other.r {
            return Err(RingError::SizeMismatch {
                left: self.r,
                right: other.r,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self { r: self.r, words })
    }

    pub(crate) fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.r, other.r);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Product-scanning schoolbook product followed by cyclic reduction.
    pub fn mul_comba(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        let mut product = vec![0u64; 2 * self.words.len()];
        clmul::comba(&self.words, &other.words, &mut product);
        Ok(self.fold_product(&product))
    }

    /// Karatsuba product with exactly `depth` levels of splitting above a
    /// Comba base case. Depth 0 is plain Comba.
    pub fn mul_karatsuba(&self, other: &Self, depth: usize) -> Result<Self, RingError> {
        self.same_ring(other)?;
        let mut product = vec![0u64; 2 * self.words.len()];
        karatsuba(&self.words, &other.words, depth, &mut product);
        Ok(self.fold_product(&product))
    }

    /// Reduces a `2n`-word plain product modulo `x^r - 1`.
    fn fold_product(&self, product: &[u64]) -> Self {
        let n = self.words.len();
        let mut words = product[..n].to_vec();
        words[n - 1] &= top_mask(self.r);
        xor_shifted_right(product, self.r, &mut words);
        Self { r: self.r, words }
    }

    /// `sum a_i x^(m i mod r)`. For `gcd(m, r) = 1` this is a permutation
    /// of coefficient positions.
    fn scale_positions(&self, m: usize) -> Self {
        let r = self.r;
        let m = m % r;
        let mut words = vec![0u64; self.words.len()];
        let mut j = 0usize;
        for i in 0..r {
            let bit = (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1;
            words[j / WORD_BITS] ^= bit << (j % WORD_BITS);
            j += m;
            if j >= r {
                j -= r;
            }
        }
        Self { r, words }
    }

    /// `a^2`, computed as the position map `i -> 2i mod r`.
    pub fn square(&self) -> Self {
        self.scale_positions(2)
    }

    /// `a^(2^k)`, computed as a single position map `i -> (2^k mod r) i mod r`.
    pub fn exp2k(&self, k: u64) -> Self {
        self.scale_positions(pow2_mod(k, self.r))
    }

    /// Transpose of the circulant block: `i -> (r - i) mod r`.
    pub fn transpose(&self) -> Self {
        self.scale_positions(self.r - 1)
    }

    /// Multiplication by `x^k`.
    pub fn rotate_left(&self, k: usize) -> Self {
        let n = self.words.len();
        let mut wide = vec![0u64; 2 * n];
        xor_shifted_left(&self.words, k % self.r, &mut wide);
        self.fold_product(&wide)
    }

    /// Multiplication by `x^(-k)`: coefficient `i` of the result is
    /// coefficient `(i + k) mod r` of `self`.
    pub fn rotate_right(&self, k: usize) -> Self {
        let k = k % self.r;
        if k == 0 {
            return self.clone();
        }
        self.rotate_left(self.r - k)
    }

    /// `ceil(r / 8)` bytes, coefficient `i` in bit `i % 8` of byte `i / 8`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let len = self.r.div_ceil(8);
        self.words
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(len)
            .collect()
    }

    pub fn from_bytes(r: usize, bytes: &[u8]) -> Result<Self, RingError> {
        check_ring(r)?;
        let expected = r.div_ceil(8);
        if bytes.len() != expected {
            return Err(RingError::Length {
                expected,
                got: bytes.len(),
            });
        }
        let mut words = vec![0u64; word_count(r)];
        for (i, chunk) in bytes.chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            words[i] = u64::from_le_bytes(buf);
        }
        Self::from_words(r, words)
    }
}

/// `2^k mod r`.
pub(crate) fn pow2_mod(mut k: u64, r: usize) -> usize {
    let r = r as u128;
    let mut base = 2u128 % r;
    let mut acc = 1u128 % r;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % r;
        }
        base = base * base % r;
        k >>= 1;
    }
    acc as usize
}

/// `dst ^= src << shift` (bitwise, over word slices).
fn xor_shifted_left(src: &[u64], shift: usize, dst: &mut [u64]) {
    let ws = shift / WORD_BITS;
    let bs = shift % WORD_BITS;
    for (i, &w) in src.iter().enumerate() {
        if bs == 0 {
            dst[i + ws] ^= w;
        } else {
            dst[i + ws] ^= w << bs;
            if i + ws + 1 < dst.len() {
                dst[i + ws + 1] ^= w >> (WORD_BITS - bs);
            }
        }
    }
}

/// `dst ^= src >> shift`, truncated to `dst.len()` words.
fn xor_shifted_right(src: &[u64], shift: usize, dst: &mut [u64]) {
    let ws = shift / WORD_BITS;
    let bs = shift % WORD_BITS;
    for (i, d) in dst.iter_mut().enumerate() {
        let lo = src.get(i + ws).copied().unwrap_or(0);
        if bs == 0 {
            *d ^= lo;
        } else {
            let hi = src.get(i + ws + 1).copied().unwrap_or(0);
            *d ^= (lo >> bs) | (hi << (WORD_BITS - bs));
        }
    }
}

/// Plain (non-reduced) product of two `n`-word operands into `out[..2n]`.
fn karatsuba(a: &[u64], b: &[u64], depth: usize, out: &mut [u64]) {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    if depth == 0 {
        clmul::comba(a, b, &mut out[..2 * n]);
        return;
    }
    let half = n.div_ceil(2);
    let split = |x: &[u64]| -> (Vec<u64>, Vec<u64>) {
        let lo = x[..half].to_vec();
        let mut hi = x[half..].to_vec();
        hi.resize(half, 0);
        (lo, hi)
    };
    let (a0, a1) = split(a);
    let (b0, b1) = split(b);
    let am: Vec<u64> = a0.iter().zip(&a1).map(|(x, y)| x ^ y).collect();
    let bm: Vec<u64> = b0.iter().zip(&b1).map(|(x, y)| x ^ y).collect();

    let mut z0 = vec![0u64; 2 * half];
    let mut z2 = vec![0u64; 2 * half];
    let mut zm = vec![0u64; 2 * half];
    karatsuba(&a0, &b0, depth - 1, &mut z0);
    karatsuba(&a1, &b1, depth - 1, &mut z2);
    karatsuba(&am, &bm, depth - 1, &mut zm);
    for i in 0..2 * half {
        zm[i] ^= z0[i] ^ z2[i];
    }

    let mut full = vec![0u64; 4 * half];
    for i in 0..2 * half {
        full[i] ^= z0[i];
        full[i + half] ^= zm[i];
        full[i + 2 * half] ^= z2[i];
    }
    out[..2 * n].copy_from_slice(&full[..2 * n]);
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
/// Strictly increasing coefficient positions of a sparse ring element.
pub struct SparseIndices {
    r: usize,
    indices: Vec<u32>,
}

impl SparseIndices {
    /// Validates strictly increasing positions below `r`.
    pub fn new(r: usize, indices: Vec<u32>) -> Result<Self, RingError> {
        check_ring(r)?;
        for pair in indices.windows(2) {
            let (prev, next) = (pair[0] as usize, pair[1] as usize);
            if prev == next {
                return Err(RingError::DuplicateIndex(prev));
            }
            if prev > next {
                return Err(RingError::NotIncreasing { prev, next });
            }
        }
        if let Some(&last) = indices.last() {
            if last as usize >= r {
                return Err(RingError::IndexOutOfRange {
                    index: last as usize,
                    r,
                });
            }
        }
        Ok(Self { r, indices })
    }

    pub fn empty(r: usize) -> Result<Self, RingError> {
        Self::new(r, Vec::new())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn weight(&self) -> usize {
        self.indices.len()
    }

    pub fn to_dense(&self) -> RingElement {
        let mut e = RingElement {
            r: self.r,
            words: vec![0; word_count(self.r)],
        };
        for &i in &self.indices {
            e.flip(i as usize);
        }
        e
    }

    pub fn from_dense(a: &RingElement) -> Self {
        Self {
            r: a.r,
            indices: a.ones().map(|i| i as u32).collect(),
        }
    }

    /// `s * a`: XOR of `a` rotated by every position of `s`.
    pub fn mul_dense(&self, a: &RingElement) -> Result<RingElement, RingError> {
        if self.r != a.r {
            return Err(RingError::SizeMismatch {
                left: self.r,
                right: a.r,
            });
        }
        let mut wide = vec![0u64; 2 * a.words.len()];
        for &k in &self.indices {
            xor_shifted_left(&a.words, k as usize, &mut wide);
        }
        Ok(a.fold_product(&wide))
    }

    /// Concatenated 32-bit little-endian positions.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.indices.iter().flat_map(|i| i.to_le_bytes()).collect()
    }

    pub fn from_bytes(r: usize, bytes: &[u8]) -> Result<Self, RingError> {
        if !bytes.len().is_multiple_of(4) {
            return Err(RingError::Length {
                expected: bytes.len() / 4 * 4,
                got: bytes.len(),
            });
        }
        let indices = bytes
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        Self::new(r, indices)
    }
}

/// Free-function form of [`SparseIndices::mul_dense`].
pub fn mul_sparse_dense(s: &SparseIndices, a: &RingElement) -> Result<RingElement, RingError> {
    s.mul_dense(a)
}
