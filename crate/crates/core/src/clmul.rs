//! Carry-less word multiplication and the Comba (product-scanning) kernel.
//!
//! The portable path uses a 4-bit window table per left operand word. On
//! x86_64 with PCLMULQDQ the same kernel runs on the hardware instruction;
//! both paths produce identical results and neither branches on operand bits.

/// Carry-less product of two words via a 16-entry window table.
#[cfg(test)]
fn clmul_portable(a: u64, b: u64) -> u128 {
    mul_with_table(&window_table(a), b)
}

#[inline]
fn window_table(a: u64) -> [u128; 16] {
    let a = a as u128;
    let mut t = [0u128; 16];
    for i in 1..16 {
        t[i] = if i % 2 == 0 {
            t[i / 2] << 1
        } else {
            t[i - 1] ^ a
        };
    }
    t
}

#[inline]
fn mul_with_table(t: &[u128; 16], b: u64) -> u128 {
    let mut acc = 0u128;
    for nibble in (0..16).rev() {
        acc = (acc << 4) ^ t[((b >> (4 * nibble)) & 0xf) as usize];
    }
    acc
}

/// Which carry-less multiply the Comba kernel uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Portable,
    #[cfg(target_arch = "x86_64")]
    Pclmul,
}

impl Backend {
    /// The fastest backend available on this CPU.
    pub fn detect() -> Self {
        #[cfg(target_arch = "x86_64")]
        {
            if std::arch::is_x86_feature_detected!("pclmulqdq") {
                return Backend::Pclmul;
            }
        }
        Backend::Portable
    }
}

/// `out[..2n] = a * b` over GF(2)[x] for `n`-word operands.
pub(crate) fn comba(a: &[u64], b: &[u64], out: &mut [u64]) {
    comba_with(Backend::detect(), a, b, out)
}

pub(crate) fn comba_with(backend: Backend, a: &[u64], b: &[u64], out: &mut [u64]) {
    match backend {
        Backend::Portable => comba_portable(a, b, out),
        #[cfg(target_arch = "x86_64")]
        // SAFETY: only selected when the CPU reports pclmulqdq support.
        Backend::Pclmul => unsafe { x86::comba_pclmul(a, b, out) },
    }
}

fn comba_portable(a: &[u64], b: &[u64], out: &mut [u64]) {
    let tables: Vec<[u128; 16]> = a.iter().map(|&w| window_table(w)).collect();
    product_scan(a.len(), out, |i, j| mul_with_table(&tables[i], b[j]));
}

/// Column-wise accumulation: column `k` collects every `a[i] * b[k - i]`.
#[inline(always)]
#[allow(clippy::needless_range_loop)]
fn product_scan(n: usize, out: &mut [u64], mut mul: impl FnMut(usize, usize) -> u128) {
    debug_assert!(out.len() >= 2 * n);
    let mut carry = 0u64;
    for k in 0..2 * n - 1 {
        let lo = k.saturating_sub(n - 1);
        let hi = k.min(n - 1);
        let mut col = 0u128;
        for i in lo..=hi {
            col ^= mul(i, k - i);
        }
        out[k] = (col as u64) ^ carry;
        carry = (col >> 64) as u64;
    }
    out[2 * n - 1] = carry;
}

#[cfg(target_arch = "x86_64")]
mod x86 {
    use std::arch::x86_64::{
        _mm_clmulepi64_si128, _mm_cvtsi128_si64, _mm_set_epi64x, _mm_srli_si128,
    };

    #[target_feature(enable = "pclmulqdq,sse2")]
    unsafe fn clmul(a: u64, b: u64) -> u128 {
        let x = _mm_set_epi64x(0, a as i64);
        let y = _mm_set_epi64x(0, b as i64);
        let p = _mm_clmulepi64_si128(x, y, 0);
        let lo = _mm_cvtsi128_si64(p) as u64;
        let hi = _mm_cvtsi128_si64(_mm_srli_si128(p, 8)) as u64;
        ((hi as u128) << 64) | lo as u128
    }

    #[target_feature(enable = "pclmulqdq,sse2")]
    pub(super) unsafe fn comba_pclmul(a: &[u64], b: &[u64], out: &mut [u64]) {
        super::product_scan(a.len(), out, |i, j| unsafe { clmul(a[i], b[j]) });
    }
}
