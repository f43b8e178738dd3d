//! Reference models shared by the integration tests. Everything here works
//! on plain coefficient vectors and never calls the library arithmetic.
#![allow(dead_code)]

use bike_codesign::RingElement;
use rand::Rng;

pub fn coeffs(a: &RingElement) -> Vec<u8> {
    (0..a.r()).map(|i| a.bit(i) as u8).collect()
}

pub fn element(c: &[u8]) -> RingElement {
    let idx: Vec<usize> = c
        .iter()
        .enumerate()
        .filter(|(_, &b)| b == 1)
        .map(|(i, _)| i)
        .collect();
    RingElement::from_indices(c.len(), &idx).unwrap()
}

/// Schoolbook cyclic convolution, O(r^2).
pub fn naive_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    let r = a.len();
    let mut out = vec![0u8; r];
    for i in 0..r {
        if a[i] == 0 {
            continue;
        }
        for j in 0..r {
            out[(i + j) % r] ^= b[j];
        }
    }
    out
}

pub fn random_coeffs(rng: &mut impl Rng, r: usize) -> Vec<u8> {
    (0..r).map(|_| rng.gen_range(0..2u8)).collect()
}

pub fn random_element(rng: &mut impl Rng, r: usize) -> RingElement {
    element(&random_coeffs(rng, r))
}

/// Random element of exact odd `weight`.
pub fn random_weight(rng: &mut impl Rng, r: usize, weight: usize) -> RingElement {
    let idx = rand::seq::index::sample(rng, r, weight).into_vec();
    RingElement::from_indices(r, &idx).unwrap()
}

/// Polynomials over GF(2) as little-endian coefficient vectors without
/// trailing zeros, for the extended-Euclid inverse.
fn trim(mut p: Vec<u8>) -> Vec<u8> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_add_shifted(acc: &mut Vec<u8>, p: &[u8], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, &c) in p.iter().enumerate() {
        acc[i + shift] ^= c;
    }
}

/// Inverse of `a` modulo `x^r - 1` by the extended Euclidean algorithm,
/// or `None` when `gcd(a, x^r - 1) != 1`.
pub fn euclid_inverse(a: &[u8]) -> Option<Vec<u8>> {
    let r = a.len();
    let mut modulus = vec![0u8; r + 1];
    modulus[0] = 1;
    modulus[r] = 1;
    let (mut r0, mut r1) = (modulus, trim(a.to_vec()));
    let (mut s0, mut s1): (Vec<u8>, Vec<u8>) = (vec![], vec![1]);
    while !r1.is_empty() {
        while r0.len() >= r1.len() && !r0.is_empty() {
            let sh = r0.len() - r1.len();
            poly_add_shifted(&mut r0, &r1, sh);
            poly_add_shifted(&mut s0, &s1, sh);
            r0 = trim(r0);
            s0 = trim(s0);
        }
        std::mem::swap(&mut r0, &mut r1);
        std::mem::swap(&mut s0, &mut s1);
    }
    if r0 != [1] {
        return None;
    }
    let mut out = vec![0u8; r];
    for (i, c) in s0.iter().enumerate() {
        out[i % r] ^= c;
    }
    Some(out)
}

use bike_codesign::{AreaVector, DeviceBudget, ImplCandidate, Place};

/// Plain enumeration over every assignment, written without the library's
/// search code. Groups are ordered by name and each group by (place,
/// latency, area); ties in latency go to fewer LUTs, then to the earliest
/// assignment in that order.
pub fn brute_force(
    cands: &[ImplCandidate],
    cap: &AreaVector,
) -> Option<(f64, AreaVector, Vec<ImplCandidate>)> {
    let mut names: Vec<&str> = cands.iter().map(|c| c.primitive.as_str()).collect();
    names.sort();
    names.dedup();
    let groups: Vec<Vec<&ImplCandidate>> = names
        .iter()
        .map(|n| {
            let mut g: Vec<&ImplCandidate> = cands.iter().filter(|c| c.primitive == *n).collect();
            g.sort_by(|a, b| {
                (a.place == Place::HW)
                    .cmp(&(b.place == Place::HW))
                    .then(a.latency_ms.partial_cmp(&b.latency_ms).unwrap())
                    .then((a.area.lut, a.area.ff, a.area.dsp, a.area.bram).cmp(&(
                        b.area.lut,
                        b.area.ff,
                        b.area.dsp,
                        b.area.bram,
                    )))
            });
            g
        })
        .collect();
    let mut best: Option<(f64, AreaVector, Vec<ImplCandidate>)> = None;
    let total: usize = groups.iter().map(|g| g.len()).product();
    for mut code in 0..total {
        // decode in mixed radix, last group least significant
        let mut idx = vec![0; groups.len()];
        for k in (0..groups.len()).rev() {
            idx[k] = code % groups[k].len();
            code /= groups[k].len();
        }
        let chosen: Vec<ImplCandidate> = groups
            .iter()
            .zip(&idx)
            .map(|(g, &i)| g[i].clone())
            .collect();
        let lat: f64 = chosen.iter().map(|c| c.latency_ms).sum();
        let area = chosen.iter().fold(AreaVector::ZERO, |a, c| AreaVector {
            lut: a.lut + c.area.lut,
            ff: a.ff + c.area.ff,
            dsp: a.dsp + c.area.dsp,
            bram: a.bram + c.area.bram,
        });
        let fits = area.lut <= cap.lut
            && area.ff <= cap.ff
            && area.dsp <= cap.dsp
            && area.bram <= cap.bram;
        if !fits {
            continue;
        }
        let take = match &best {
            None => true,
            Some((bl, ba, _)) => lat < bl - 1e-9 || ((lat - bl).abs() <= 1e-9 && area.lut < ba.lut),
        };
        if take {
            best = Some((lat, area, chosen));
        }
    }
    best
}

/// A random optimizer instance: up to four primitives, one software
/// option each plus zero to two accelerators, and a random device.
pub fn random_instance(rng: &mut impl Rng) -> (Vec<ImplCandidate>, DeviceBudget) {
    let n = rng.gen_range(1..=4);
    // coarse latencies make exact ties common
    let coarse = rng.gen_bool(0.5);
    let lat = |rng: &mut dyn rand::RngCore| -> f64 {
        if coarse {
            rng.gen_range(1..=6) as f64
        } else {
            rng.gen_range(0.5..500.0)
        }
    };
    let mut cands = Vec::new();
    for p in 0..n {
        let name = format!("P{p}");
        cands.push(ImplCandidate::software(&name, lat(rng)));
        for _ in 0..rng.gen_range(0..=2) {
            let area = AreaVector::new(
                rng.gen_range(0..50_000),
                rng.gen_range(0..80_000),
                rng.gen_range(0..100),
                rng.gen_range(0..150),
            );
            cands.push(ImplCandidate::hardware(&name, lat(rng), area));
        }
    }
    let cap = AreaVector::new(
        rng.gen_range(0..100_000),
        rng.gen_range(0..160_000),
        rng.gen_range(0..200),
        rng.gen_range(0..300),
    );
    (cands, DeviceBudget::new("random", cap))
}
