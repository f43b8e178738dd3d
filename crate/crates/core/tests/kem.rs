use bike_codesign::keccak::sha3_384;
use bike_codesign::kem::ParseError;
use bike_codesign::{
    BikeParams, DecoderVariant, Kem, KemCiphertext, KemError, KemPrivateKey, KemPublicKey,
    RingElement, Seed, SparseIndices,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn kem() -> Kem {
    Kem::new(BikeParams::level1()).unwrap()
}

fn message() -> Seed {
    let mut m = [0u8; 32];
    for (i, b) in m.iter_mut().enumerate() {
        *b = i as u8;
    }
    Seed::from(m)
}

#[test]
fn regression_vector_from_independent_model() {
    let kem = kem();
    let (sk, pk) = kem
        .keygen_from_seeds(&Seed::from([0u8; 32]), &Seed::from([1u8; 32]))
        .unwrap();
    assert_eq!(
        hex::encode(sha3_384(&pk.to_bytes())),
        "48396e7c9389442bee41c6dddd9db990e6aa391ba93bf9936ee0079bebfd7df2a54c260247e9b5ad93b92299a1bc895a"
    );
    let (k, ct) = kem.encapsulate_with_message(&pk, &message()).unwrap();
    assert_eq!(
        hex::encode(sha3_384(&ct.to_bytes())),
        "c2c4fe87ced825017352e6ee81cebff30d22cba630c6f2c7ef1f75be52942530bfc2014b0b75fa87cb33e1ad2ff67d94"
    );
    assert_eq!(
        k.to_hex(),
        "8916d5b85c1658c0f1e2fb7b29af8ef5c627cc1012090bf13f579ef215bb609a"
    );
    assert_eq!(kem.decapsulate(&sk, &ct).unwrap(), k);
}

#[test]
fn round_trips() {
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    for variant in [DecoderVariant::Bgf, DecoderVariant::Plain] {
        let kem = Kem::new(BikeParams::level1().with_decoder_variant(variant)).unwrap();
        for _ in 0..5 {
            let (sk, pk) = kem.keygen(&mut rng).unwrap();
            let (k, ct) = kem.encapsulate(&pk, &mut rng).unwrap();
            let out = kem.decapsulate_traced(&sk, &ct).unwrap();
            assert!(out.decoded && out.accepted);
            assert_eq!(out.shared_secret, k);
        }
    }
}

#[test]
fn public_key_is_h1_over_h0() {
    let mut rng = ChaCha20Rng::seed_from_u64(12);
    let kem = kem();
    let (sk, pk) = kem.keygen(&mut rng).unwrap();
    assert_eq!(sk.h0().weight(), 71);
    assert_eq!(sk.h1().weight(), 71);
    assert_eq!(sk.h0().mul_dense(pk.h()).unwrap(), sk.h1().to_dense());
}

#[test]
fn keys_are_deterministic_in_seeds_and_depth_free() {
    let seed = Seed::from([9u8; 32]);
    let sigma = Seed::from([3u8; 32]);
    let (sk, pk) = kem().keygen_from_seeds(&seed, &sigma).unwrap();
    for depth in [0, 1, 5] {
        let other = Kem::new(BikeParams::level1().with_karatsuba_depth(depth)).unwrap();
        let (sk2, pk2) = other.keygen_from_seeds(&seed, &sigma).unwrap();
        assert_eq!((&sk, &pk), (&sk2, &pk2));
    }
}

#[test]
fn tampered_message_gets_implicit_rejection() {
    let mut rng = ChaCha20Rng::seed_from_u64(13);
    let kem = kem();
    let (sk, pk) = kem.keygen(&mut rng).unwrap();
    let (k, ct) = kem.encapsulate(&pk, &mut rng).unwrap();
    for bit in [0usize, 7, 100, 255] {
        let bad = ct.with_flipped_message_bit(bit);
        let out = kem.decapsulate_traced(&sk, &bad).unwrap();
        assert!(!out.accepted);
        assert_ne!(out.shared_secret, k);
        assert_eq!(out.shared_secret, Kem::implicit_rejection_secret(&sk, &bad));
        assert_eq!(
            kem.decapsulate(&sk, &bad).unwrap(),
            out.shared_secret,
            "not deterministic"
        );
    }
}

#[test]
fn tampered_syndrome_gets_implicit_rejection() {
    let mut rng = ChaCha20Rng::seed_from_u64(14);
    let kem = kem();
    let (sk, pk) = kem.keygen(&mut rng).unwrap();
    let (k, ct) = kem.encapsulate(&pk, &mut rng).unwrap();
    let mut bytes = ct.to_bytes();
    bytes[10] ^= 0x10;
    let bad = KemCiphertext::from_bytes(&bytes, kem.params()).unwrap();
    let got = kem.decapsulate(&sk, &bad).unwrap();
    assert_ne!(got, k);
    assert_eq!(got, Kem::implicit_rejection_secret(&sk, &bad));
}

#[test]
fn wrong_key_gets_implicit_rejection() {
    let mut rng = ChaCha20Rng::seed_from_u64(15);
    let kem = kem();
    let (_, pk) = kem.keygen(&mut rng).unwrap();
    let (other_sk, _) = kem.keygen(&mut rng).unwrap();
    let (k, ct) = kem.encapsulate(&pk, &mut rng).unwrap();
    let got = kem.decapsulate(&other_sk, &ct).unwrap();
    assert_ne!(got, k);
    assert_eq!(got, Kem::implicit_rejection_secret(&other_sk, &ct));
}

#[test]
fn serialization_round_trip_and_lengths() {
    let mut rng = ChaCha20Rng::seed_from_u64(16);
    let kem = kem();
    let p = kem.params().clone();
    let (sk, pk) = kem.keygen(&mut rng).unwrap();
    let (_, ct) = kem.encapsulate(&pk, &mut rng).unwrap();
    assert_eq!(sk.to_bytes().len(), 2 * 71 * 4 + 32);
    assert_eq!(pk.to_bytes().len(), 1541);
    assert_eq!(ct.to_bytes().len(), 1541 + 32);
    assert_eq!(KemPrivateKey::from_bytes(&sk.to_bytes(), &p).unwrap(), sk);
    assert_eq!(KemPublicKey::from_bytes(&pk.to_bytes(), &p).unwrap(), pk);
    assert_eq!(KemCiphertext::from_bytes(&ct.to_bytes(), &p).unwrap(), ct);
}

#[test]
fn malformed_objects_are_rejected() {
    let mut rng = ChaCha20Rng::seed_from_u64(17);
    let kem = kem();
    let p = kem.params().clone();
    let (sk, pk) = kem.keygen(&mut rng).unwrap();
    let (_, ct) = kem.encapsulate(&pk, &mut rng).unwrap();

    let ctb = ct.to_bytes();
    assert!(matches!(
        KemCiphertext::from_bytes(&ctb[..ctb.len() - 1], &p),
        Err(ParseError::Length {
            expected: 1573,
            got: 1572,
            ..
        })
    ));
    let mut padded = ctb.clone();
    padded[1540] |= 0x80; // bit 12327 lies above r
    assert!(matches!(
        KemCiphertext::from_bytes(&padded, &p),
        Err(ParseError::Invalid { .. })
    ));

    let mut skb = sk.to_bytes();
    skb.copy_within(0..4, 4); // h0[1] = h0[0]
    assert!(matches!(
        KemPrivateKey::from_bytes(&skb, &p),
        Err(ParseError::Invalid { .. })
    ));
    assert!(KemPrivateKey::from_bytes(&sk.to_bytes()[1..], &p).is_err());
    assert!(KemPublicKey::from_bytes(&[0u8; 10], &p).is_err());
}

#[test]
fn mismatched_ring_is_an_error() {
    let kem = kem();
    // 523 is prime with 2 primitive, so this is a valid toy parameter set
    let small = Kem::new(BikeParams {
        r: 523,
        ..BikeParams::level1()
    })
    .unwrap();
    let (_, pk) = small
        .keygen_from_seeds(&Seed::from([2u8; 32]), &Seed::default())
        .unwrap();
    assert!(matches!(
        kem.encapsulate_with_message(&pk, &message()),
        Err(KemError::Ring(_))
    ));
}

#[test]
fn invalid_parameters_refused() {
    for p in [
        BikeParams {
            r: 12324,
            ..BikeParams::level1()
        },
        BikeParams {
            w: 144,
            ..BikeParams::level1()
        },
        BikeParams::level1().with_karatsuba_depth(99),
    ] {
        assert!(Kem::new(p).is_err());
    }
}

#[test]
fn dense_sparse_agree_on_key() {
    let (sk, pk) = kem()
        .keygen_from_seeds(&Seed::from([4u8; 32]), &Seed::default())
        .unwrap();
    let h0: RingElement = sk.h0().to_dense();
    assert_eq!(h0.mul_karatsuba(pk.h(), 3).unwrap(), sk.h1().to_dense());
    assert_eq!(SparseIndices::from_dense(&h0), sk.h0().clone());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn byte_encodings_are_bijective(seed in any::<[u8; 32]>(), sigma in any::<[u8; 32]>(), m in any::<[u8; 32]>()) {
        let kem = kem();
        let p = kem.params().clone();
        let (sk, pk) = kem.keygen_from_seeds(&Seed::from(seed), &Seed::from(sigma)).unwrap();
        let (_, ct) = kem.encapsulate_with_message(&pk, &Seed::from(m)).unwrap();
        prop_assert_eq!(KemPrivateKey::from_bytes(&sk.to_bytes(), &p).unwrap().to_bytes(), sk.to_bytes());
        prop_assert_eq!(KemPublicKey::from_bytes(&pk.to_bytes(), &p).unwrap(), pk);
        prop_assert_eq!(KemCiphertext::from_bytes(&ct.to_bytes(), &p).unwrap(), ct);
    }
}
