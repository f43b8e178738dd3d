// SHA3-384 and SHAKE256 from the in-crate Keccak.

use bike_codesign::keccak::{sha3_384, shake256_stream, Sha3_384};

fn main() {
    println!("SHA3-384(\"abc\") = {}", hex::encode(sha3_384(b"abc")));

    let mut h = Sha3_384::new();
    h.update(b"a").update(b"bc");
    assert_eq!(h.finalize(), sha3_384(b"abc"));

    let mut xof = shake256_stream(b"abc");
    let mut first = [0u8; 16];
    xof.read(&mut first);
    println!("SHAKE256(\"abc\")[..16] = {}", hex::encode(first));
    println!("next word = {:#010x}", xof.read_u32_le());
}
