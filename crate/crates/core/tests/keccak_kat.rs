use bike_codesign::keccak::{keccak_f1600, sha3_384, shake256_stream, Sha3_384, Shake256};

fn shake(data: &[u8], n: usize) -> Vec<u8> {
    let mut out = vec![0u8; n];
    let mut h = Shake256::new();
    h.update(data);
    h.finalize_xof().read(&mut out);
    out
}

const A3: [u8; 200] = [0xa3; 200];

#[test]
fn sha3_384_vectors() {
    let cases: [(&[u8], &str); 3] = [
        (b"", "0c63a75b845e4f7d01107d852e4c2485c51a50aaaa94fc61995e71bbee983a2ac3713831264adb47fb6bd1e058d5f004"),
        (b"abc", "ec01498288516fc926459f58e2c6ad8df9b473cb0fc08c2596da7cf0e49be4b298d88cea927ac7f539f1edf228376d25"),
        (&A3, "1881de2ca7e41ef95dc4732b8f5f002b189cc1e42b74168ed1732649ce1dbcdd76197a31fd55ee989f2d7050dd473e8f"),
    ];
    for (msg, want) in cases {
        assert_eq!(hex::encode(sha3_384(msg)), want, "len {}", msg.len());
    }
}

#[test]
fn shake256_vectors() {
    let cases: [(&[u8], &str); 3] = [
        (b"", "46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762fd75dc4ddd8c0f200cb05019d67b592f6fc821c49479ab48640292eacb3b7c4be"),
        (b"abc", "483366601360a8771c6863080cc4114d8db44530f8f1e1ee4f94ea37e78b5739d5a15bef186a5386c75744c0527e1faa9f8726e462a12a4feb06bd8801e751e4"),
        (&A3, "cd8a920ed141aa0407a22d59288652e9d9f1a7ee0c1e7c1ca699424da84a904d2d700caae7396ece96604440577da4f3aa22aeb8857f961c4cd8e06f0ae6610b"),
    ];
    for (msg, want) in cases {
        assert_eq!(hex::encode(shake(msg, 64)), want, "len {}", msg.len());
    }
}

#[test]
fn permutation_of_zero_state() {
    let want: [u64; 25] = [
        0xF1258F7940E1DDE7,
        0x84D5CCF933C0478A,
        0xD598261EA65AA9EE,
        0xBD1547306F80494D,
        0x8B284E056253D057,
        0xFF97A42D7F8E6FD4,
        0x90FEE5A0A44647C4,
        0x8C5BDA0CD6192E76,
        0xAD30A6F71B19059C,
        0x30935AB7D08FFC64,
        0xEB5AA93F2317D635,
        0xA9A6E6260D712103,
        0x81A57C16DBCF555F,
        0x43B831CD0347C826,
        0x01F22F1A11A5569F,
        0x05E5635A21D9AE61,
        0x64BEFEF28CC970F2,
        0x613670957BC46611,
        0xB87C5A554FD00ECB,
        0x8C3EE88A1CCF32C8,
        0x940C7922AE3A2614,
        0x1841F924A2C509E4,
        0x16F53526E70465C2,
        0x75F644E97F30A13B,
        0xEAF1FF7B5CECA249,
    ];
    let mut s = [0u64; 25];
    keccak_f1600(&mut s);
    assert_eq!(s, want);
}

#[test]
fn incremental_absorb_matches_one_shot() {
    let data: Vec<u8> = (0..=255u8).cycle().take(1000).collect();
    for split in [0usize, 1, 103, 104, 105, 135, 136, 137, 999, 1000] {
        let mut h = Sha3_384::new();
        h.update(&data[..split]).update(&data[split..]);
        assert_eq!(h.finalize(), sha3_384(&data), "split {split}");

        let mut x = Shake256::new();
        x.update(&data[..split]).update(&data[split..]);
        let mut out = [0u8; 200];
        x.finalize_xof().read(&mut out);
        assert_eq!(out.to_vec(), shake(&data, 200), "split {split}");
    }
}

#[test]
fn squeeze_is_a_stream() {
    let whole = shake(b"stream", 500);
    for chunk in [1usize, 16, 32, 135, 136, 137] {
        let mut reader = shake256_stream(b"stream");
        let mut got = Vec::new();
        while got.len() < 500 {
            let mut buf = vec![0u8; chunk.min(500 - got.len())];
            reader.read(&mut buf);
            got.extend(buf);
        }
        assert_eq!(got, whole, "chunk {chunk}");
    }
    let mut reader = shake256_stream(b"stream");
    let words: Vec<u32> = (0..4).map(|_| reader.read_u32_le()).collect();
    let expect: Vec<u32> = whole[..16]
        .chunks(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    assert_eq!(words, expect);
}

#[test]
fn rate_boundary_messages_differ() {
    // padding must distinguish messages that fill a block exactly
    let a = vec![0u8; 135];
    let b = vec![0u8; 136];
    assert_ne!(shake(&a, 32), shake(&b, 32));
    assert_ne!(sha3_384(&[0u8; 103]), sha3_384(&[0u8; 104]));
}
