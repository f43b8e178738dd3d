// Alice publishes a key, Bob encapsulates, both end up with the same secret.

use bike_codesign::{BikeParams, Kem, KemCiphertext, KemPublicKey};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() {
    let kem = Kem::new(BikeParams::level1()).expect("level-1 parameters are valid");
    let mut rng = ChaCha20Rng::seed_from_u64(2024);

    let (sk, pk) = kem.keygen(&mut rng).expect("keygen");
    let wire_pk = pk.to_bytes();
    println!("public key: {} bytes", wire_pk.len());

    let bob_pk = KemPublicKey::from_bytes(&wire_pk, kem.params()).expect("well-formed key");
    let (bob_key, ct) = kem.encapsulate(&bob_pk, &mut rng).expect("encaps");
    let wire_ct = ct.to_bytes();
    println!("ciphertext: {} bytes", wire_ct.len());

    let ct = KemCiphertext::from_bytes(&wire_ct, kem.params()).expect("well-formed ciphertext");
    let alice_key = kem.decapsulate(&sk, &ct).expect("decaps");
    assert_eq!(alice_key, bob_key);
    println!("shared secret: {}", alice_key.to_hex());

    // a corrupted ciphertext still yields a key, just not Bob's
    let forged = ct.with_flipped_message_bit(0);
    let rejected = kem.decapsulate(&sk, &forged).expect("decaps");
    assert_ne!(rejected, bob_key);
    println!("tampered ciphertext -> {}", rejected.to_hex());
}
