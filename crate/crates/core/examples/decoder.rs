// Decoding a weight-134 error with the plain and black-gray decoders.

use bike_codesign::decoder::compute_syndrome;
use bike_codesign::{
    decode, sample_fixed_weight, BikeParams, DecoderConfig, DecoderVariant, Domain, Kem,
    RingElement, Seed,
};

fn main() {
    let params = BikeParams::level1();
    let r = params.r;
    let kem = Kem::new(params.clone()).unwrap();
    let (sk, pk) = kem
        .keygen_from_seeds(&Seed::from([1u8; 32]), &Seed::default())
        .unwrap();

    let e = sample_fixed_weight(&Seed::from([2u8; 32]), Domain::Error, params.t, 2 * r).unwrap();
    let (lo, hi): (Vec<usize>, Vec<usize>) = e
        .indices()
        .iter()
        .map(|&i| i as usize)
        .partition(|&i| i < r);
    let e0 = RingElement::from_indices(r, &lo).unwrap();
    let e1 = RingElement::from_indices(r, &hi.iter().map(|i| i - r).collect::<Vec<_>>()).unwrap();

    // what the receiver sees: s = e0 + e1 h, then h0 s = e0 h0 + e1 h1
    let s = e0.add(&e1.mul_karatsuba(pk.h(), 3).unwrap()).unwrap();
    let syndrome = compute_syndrome(&s, sk.h0()).unwrap();
    println!("syndrome weight {}", syndrome.weight());

    for variant in [DecoderVariant::Plain, DecoderVariant::Bgf] {
        let cfg = DecoderConfig {
            variant,
            ..DecoderConfig::level1()
        };
        let out = decode(&syndrome, sk.h0(), sk.h1(), &cfg).unwrap();
        println!(
            "{variant:>5}: success={} after {} iteration(s)",
            out.success, out.iterations
        );
        if out.success {
            assert_eq!(out.error, (e0.clone(), e1.clone()));
        }
    }
}
