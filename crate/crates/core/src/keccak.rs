//! Keccak-f[1600] and one sponge engine shared by SHA3-384 and SHAKE256.

/// Rate of SHA3-384 in bytes.
pub const SHA3_384_RATE: usize = 104;
/// Rate of SHAKE256 in bytes.
pub const SHAKE256_RATE: usize = 136;
/// SHA3-384 digest length in bytes.
pub const SHA3_384_LEN: usize = 48;

const SHA3_DOMAIN: u8 = 0x06;
const SHAKE_DOMAIN: u8 = 0x1f;

const ROUND_CONSTANTS: [u64; 24] = [
    0x0000_0000_0000_0001,
    0x0000_0000_0000_8082,
    0x8000_0000_0000_808a,
    0x8000_0000_8000_8000,
    0x0000_0000_0000_808b,
    0x0000_0000_8000_0001,
    0x8000_0000_8000_8081,
    0x8000_0000_0000_8009,
    0x0000_0000_0000_008a,
    0x0000_0000_0000_0088,
    0x0000_0000_8000_8009,
    0x0000_0000_8000_000a,
    0x0000_0000_8000_808b,
    0x8000_0000_0000_008b,
    0x8000_0000_0000_8089,
    0x8000_0000_0000_8003,
    0x8000_0000_0000_8002,
    0x8000_0000_0000_0080,
    0x0000_0000_0000_800a,
    0x8000_0000_8000_000a,
    0x8000_0000_8000_8081,
    0x8000_0000_0000_8080,
    0x0000_0000_8000_0001,
    0x8000_0000_8000_8008,
];

// rho offsets and pi destinations, walking the lane cycle starting at (1, 0)
const RHO: [u32; 24] = [
    1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14, 27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44,
];
const PI: [usize; 24] = [
    10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4, 15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1,
];

/// The Keccak-f[1600] permutation. Lane `(x, y)` is `state[x + 5y]`.
pub fn keccak_f1600(state: &mut [u64; 25]) {
    for rc in ROUND_CONSTANTS {
        // theta
        let mut c = [0u64; 5];
        for x in 0..5 {
            c[x] = state[x] ^ state[x + 5] ^ state[x + 10] ^ state[x + 15] ^ state[x + 20];
        }
        for x in 0..5 {
            let d = c[(x + 4) % 5] ^ c[(x + 1) % 5].rotate_left(1);
            for y in 0..5 {
                state[x + 5 * y] ^= d;
            }
        }
        // rho + pi
        let mut carry = state[1];
        for (&dst, &rot) in PI.iter().zip(&RHO) {
            let next = state[dst];
            state[dst] = carry.rotate_left(rot);
            carry = next;
        }
        // chi
        for y in 0..5 {
            let row = [
                state[5 * y],
                state[5 * y + 1],
                state[5 * y + 2],
                state[5 * y + 3],
                state[5 * y + 4],
            ];
            for x in 0..5 {
                state[5 * y + x] = row[x] ^ (!row[(x + 1) % 5] & row[(x + 2) % 5]);
            }
        }
        // iota
        state[0] ^= rc;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Absorbing,
    Squeezing,
}

/// Sponge over Keccak-f[1600] with a byte-granular rate and a padding
/// domain byte. Absorb calls are only valid before the first squeeze.
#[derive(Clone)]
pub struct SpongeState {
    lanes: [u64; 25],
    rate: usize,
    domain_sep: u8,
    pos: usize,
    phase: Phase,
}

impl SpongeState {
    fn new(rate: usize, domain_sep: u8) -> Self {
        debug_assert!(rate == SHA3_384_RATE || rate == SHAKE256_RATE);
        Self {
            lanes: [0; 25],
            rate,
            domain_sep,
            pos: 0,
            phase: Phase::Absorbing,
        }
    }

    pub fn rate(&self) -> usize {
        self.rate
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    fn xor_byte(&mut self, offset: usize, byte: u8) {
        self.lanes[offset / 8] ^= (byte as u64) << (8 * (offset % 8));
    }

    fn absorb(&mut self, mut data: &[u8]) {
        debug_assert_eq!(self.phase, Phase::Absorbing);
        while !data.is_empty() {
            let take = (self.rate - self.pos).min(data.len());
            for (k, &b) in data[..take].iter().enumerate() {
                self.xor_byte(self.pos + k, b);
            }
            self.pos += take;
            data = &data[take..];
            if self.pos == self.rate {
                keccak_f1600(&mut self.lanes);
                self.pos = 0;
            }
        }
    }

    fn finish_absorb(&mut self) {
        debug_assert_eq!(self.phase, Phase::Absorbing);
        self.xor_byte(self.pos, self.domain_sep);
        self.xor_byte(self.rate - 1, 0x80);
        keccak_f1600(&mut self.lanes);
        self.pos = 0;
        self.phase = Phase::Squeezing;
    }

    fn squeeze(&mut self, out: &mut [u8]) {
        debug_assert_eq!(self.phase, Phase::Squeezing);
        for byte in out.iter_mut() {
            if self.pos == self.rate {
                keccak_f1600(&mut self.lanes);
                self.pos = 0;
            }
            *byte = (self.lanes[self.pos / 8] >> (8 * (self.pos % 8))) as u8;
            self.pos += 1;
        }
    }
}

/// Incremental SHA3-384.
#[derive(Clone)]
pub struct Sha3_384(SpongeState);

impl Default for Sha3_384 {
    fn default() -> Self {
        Self::new()
    }
}

impl Sha3_384 {
    pub fn new() -> Self {
        Self(SpongeState::new(SHA3_384_RATE, SHA3_DOMAIN))
    }

    pub fn update(&mut self, data: &[u8]) -> &mut Self {
        self.0.absorb(data);
        self
    }

    pub fn finalize(mut self) -> [u8; SHA3_384_LEN] {
        self.0.finish_absorb();
        let mut out = [0u8; SHA3_384_LEN];
        self.0.squeeze(&mut out);
        out
    }
}

pub fn sha3_384(data: &[u8]) -> [u8; SHA3_384_LEN] {
    let mut h = Sha3_384::new();
    h.update(data);
    h.finalize()
}

/// SHAKE256 in its absorbing phase.
#[derive(Clone)]
pub struct Shake256(SpongeState);

impl Default for Shake256 {
    fn default() -> Self {
        Self::new()
    }
}

impl Shake256 {
    pub fn new() -> Self {
        Self(SpongeState::new(SHAKE256_RATE, SHAKE_DOMAIN))
    }

    pub fn update(&mut self, data: &[u8]) -> &mut Self {
        self.0.absorb(data);
        self
    }

    pub fn finalize_xof(mut self) -> Shake256Reader {
        self.0.finish_absorb();
        Shake256Reader(self.0)
    }
}

/// SHAKE256 output stream. Consecutive reads continue where the last stopped.
#[derive(Clone)]
pub struct Shake256Reader(SpongeState);

impl Shake256Reader {
    pub fn read(&mut self, out: &mut [u8]) {
        self.0.squeeze(out);
    }

    pub fn read_u32_le(&mut self) -> u32 {
        let mut buf = [0u8; 4];
        self.read(&mut buf);
        u32::from_le_bytes(buf)
    }
}

pub fn shake256_stream(seed: &[u8]) -> Shake256Reader {
    let mut x = Shake256::new();
    x.update(seed);
    x.finalize_xof()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_block_absorb_matches_single_call() {
        let data: Vec<u8> = (0..=255u8).cycle().take(1000).collect();
        let mut h = Sha3_384::new();
        for chunk in data.chunks(37) {
            h.update(chunk);
        }
        assert_eq!(h.finalize(), sha3_384(&data));
    }

    #[test]
    fn rate_boundary_inputs_are_distinct() {
        let a = sha3_384(&[0u8; SHA3_384_RATE - 1]);
        let b = sha3_384(&[0u8; SHA3_384_RATE]);
        let c = sha3_384(&[0u8; SHA3_384_RATE + 1]);
        assert_ne!(a, b);
        assert_ne!(b, c);
    }

    #[test]
    fn phases() {
        let x = Shake256::new();
        assert_eq!(x.0.phase(), Phase::Absorbing);
        assert_eq!(x.0.rate(), SHAKE256_RATE);
        let r = x.finalize_xof();
        assert_eq!(r.0.phase(), Phase::Squeezing);
        assert_eq!(Sha3_384::new().0.rate(), SHA3_384_RATE);
    }
}
