// Comba against Karatsuba at several depths on full-size ring elements.

use std::time::Instant;

use bike_codesign::{RingElement, SparseIndices};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn random(rng: &mut impl Rng, r: usize) -> RingElement {
    let idx: Vec<usize> = (0..r).filter(|_| rng.gen()).collect();
    RingElement::from_indices(r, &idx).unwrap()
}

fn main() {
    let r = 12323;
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let a = random(&mut rng, r);
    let b = random(&mut rng, r);

    let t = Instant::now();
    let reference = a.mul_comba(&b).unwrap();
    println!("comba        {:>9.1?}", t.elapsed());
    for depth in 1..=5 {
        let t = Instant::now();
        let p = a.mul_karatsuba(&b, depth).unwrap();
        println!("karatsuba d={depth} {:>9.1?}", t.elapsed());
        assert_eq!(p, reference);
    }

    // keys are sparse, so the syndrome product is a sum of rotations
    let idx = rand::seq::index::sample(&mut rng, r, 71).into_vec();
    let mut idx: Vec<u32> = idx.into_iter().map(|i| i as u32).collect();
    idx.sort();
    let h = SparseIndices::new(r, idx).unwrap();
    let t = Instant::now();
    let p = h.mul_dense(&b).unwrap();
    println!("sparse x dense {:>7.1?}", t.elapsed());
    assert_eq!(p, h.to_dense().mul_comba(&b).unwrap());
}
