//! Inversion in `GF(2)[x] / (x^r - 1)` by an Itoh-Tsujii exponentiation ladder.
//!
//! For prime `r` every factor field of the ring has order dividing
//! `2^(r-1) - 1`, so a unit `f` satisfies `f^-1 = f^(2^(r-1) - 2) =
//! (f^(2^(r-2) - 1))^2`. Writing `f_k = f^(2^k - 1)`, the ladder uses
//! `f_(a+b) = f_a^(2^b) * f_b`:
//!
//! * `f` walks `f_1, f_2, f_4, ...` via `f <- f * f^(2^(2^(i-1)))`;
//! * `res` holds `f_m` for `m = (r-2) mod 2^i`, and when bit `i` of `r-2`
//!   is set it absorbs the current `f = f_(2^i)` as `res <- res * f^(2^m)`.
//!
//! The result is `res^2`.

use thiserror::Error;

use crate::gf2::{RingElement, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvertError {
    #[error("element has even weight and is divisible by x + 1")]
    EvenWeight,
    #[error("element is the all-ones polynomial, a zero divisor")]
    AllOnes,
    #[error("element is not a unit of the ring")]
    NotUnit,
    #[error("ring size {0} is too small to invert in")]
    RingTooSmall(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Operation counts from one inversion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InversionStats {
    /// Full ring multiplications, including the final unit check.
    pub multiplications: usize,
    /// Position-map exponentiations `a^(2^k)`, including the final square.
    pub frobenius_maps: usize,
}

pub fn invert(f0: &RingElement, karatsuba_depth: usize) -> Result<RingElement, InvertError> {
    invert_with_stats(f0, karatsuba_depth).map(|(g, _)| g)
}

/// Inverts a unit, reporting how many ring operations were spent.
///
/// The product `f0 * g` is checked against 1 before returning, which
/// rejects non-units that pass the weight tests when 2 is not a primitive
/// root modulo `r`.
pub fn invert_with_stats(
    f0: &RingElement,
    karatsuba_depth: usize,
) -> Result<(RingElement, InversionStats), InvertError> {
    let r = f0.r();
    if r < 3 {
        return Err(InvertError::RingTooSmall(r));
    }
    if f0.weight().is_multiple_of(2) {
        return Err(InvertError::EvenWeight);
    }
    if f0.weight() == r {
        return Err(InvertError::AllOnes);
    }

    let mut stats = InversionStats::default();
    let mut mul = |a: &RingElement, b: &RingElement| -> Result<RingElement, RingError> {
        stats.multiplications += 1;
        a.mul_karatsuba(b, karatsuba_depth)
    };

    let exponent = (r - 2) as u64;
    let steps = 63 - exponent.leading_zeros() as usize;
    let mut frobenius = 0usize;

    let mut f = f0.clone();
    let mut res = if exponent & 1 == 1 {
        f0.clone()
    } else {
        RingElement::one(r)?
    };
    for i in 1..=steps {
        f = mul(&f, &f.exp2k(1u64 << (i - 1)))?;
        frobenius += 1;
        if (exponent >> i) & 1 == 1 {
            let low = exponent & ((1u64 << i) - 1);
            res = mul(&res, &f.exp2k(low))?;
            frobenius += 1;
        }
    }
    let g = res.square();
    frobenius += 1;

    if !mul(f0, &g)?.eq(&RingElement::one(r)?) {
        return Err(InvertError::NotUnit);
    }
    stats.frobenius_maps = frobenius;
    Ok((g, stats))
}
