// Inverting a secret-key block and counting the ladder's work.

use bike_codesign::inverter::invert_with_stats;
use bike_codesign::{sample_fixed_weight, Domain, RingElement, Seed};

fn main() {
    let r = 12323;
    let h0 = sample_fixed_weight(&Seed::from([5u8; 32]), Domain::H0, 71, r)
        .unwrap()
        .to_dense();
    let (inv, stats) = invert_with_stats(&h0, 3).expect("odd weight below r is a unit here");
    assert_eq!(h0.mul_comba(&inv).unwrap(), RingElement::one(r).unwrap());
    println!(
        "weight {} -> inverse of weight {}",
        h0.weight(),
        inv.weight()
    );
    println!(
        "{} multiplications, {} frobenius maps",
        stats.multiplications, stats.frobenius_maps
    );
}
