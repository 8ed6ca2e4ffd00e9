//! Known-answer tests: fixed seeds must keep producing these exact bytes.
//!
//! Any change to the sampling order, packing, or field conventions breaks
//! these on purpose: the wire formats are part of the contract.

use pqclab::kyber::{self, KyberParams};
use pqclab::mceliece::{self, McElieceLevel, McElieceParams, Variant};
use pqclab::ring::Seed;
use pqclab::Counters;

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

const KEY_SEED: Seed = Seed([42u8; 32]);
const COIN_SEED: Seed = Seed([7u8; 32]);

#[test]
fn kyber_known_answers() {
    let ctr = Counters::new();
    // (level index, pk head, pk tail, sk head, ct head)
    let expected = [
        (
            0,
            "d6994308197c20c943ca347aa2b14752",
            "7380df51f8b6d540542df0d100a08124",
            "e10bc5973b9ba41b58a067c11680482c",
            "35a974f9c808d01b27207c2f5af85dd2",
        ),
        (
            1,
            "89dbbd8bd5465b91ad1895439850ba7d",
            "89be7ebd295b31b7ca2bdfd48f61efef",
            "6a8842633c801e331d15d825b5d205bb",
            "2be898632ef44d77680add8e4a480ff2",
        ),
        (
            2,
            "f5b900c41070c31c77a0b7c9752a5b91",
            "90173ef0598ee2a196e939c7e614a73b",
            "7421b01e374ac8e3cce420cdc1c05f7a",
            "5356d276a8aa51d5f84ad0ff1ec40fa4",
        ),
    ];
    for (idx, pk_head, pk_tail, sk_head, ct_head) in expected {
        let params = KyberParams::all()[idx];
        let (pk, sk) = kyber::keygen(&params, &KEY_SEED, &ctr).unwrap();
        let pk_bytes = pk.to_bytes();
        assert_eq!(hex(&pk_bytes[..16]), pk_head, "{} pk head", params.level.name());
        assert_eq!(
            hex(&pk_bytes[pk_bytes.len() - 16..]),
            pk_tail,
            "{} pk tail",
            params.level.name()
        );
        assert_eq!(hex(&sk.to_bytes()[..16]), sk_head, "{} sk", params.level.name());
        let ct = kyber::encrypt(&pk, &[1u8; 32], &COIN_SEED, &ctr).unwrap();
        assert_eq!(hex(&ct.to_bytes()[..16]), ct_head, "{} ct", params.level.name());
    }
}

#[test]
fn mceliece_known_answers() {
    let ctr = Counters::new();
    let cases = [
        (
            McElieceLevel::Toy16,
            Variant::Systematic,
            "3eadc527f0da7996",
            "01000a00010009000d000f000000010003000a0008000b00",
        ),
        (
            McElieceLevel::Toy16,
            Variant::Textbook,
            "94fb58491eeaf03141bf52e40370da6f",
            "01000a00010009000d000f000000010003000a000b000800",
        ),
        (
            McElieceLevel::Toy32,
            Variant::Systematic,
            "884b150b3d22eb29e4178627d565761911379275d212305ebc1a4e71bb63e704b02d",
            "11001a001c0001001b00050002001c00030017000d000700",
        ),
    ];
    for (level, variant, pk_hex, sk_head) in cases {
        let params = McElieceParams::new(level);
        let (pk, sk) = mceliece::keygen(&params, variant, &KEY_SEED, &ctr).unwrap();
        assert_eq!(hex(&pk.to_bytes()), pk_hex, "{} {:?} pk", level.name(), variant);
        assert_eq!(
            hex(&sk.to_bytes()[..24]),
            sk_head,
            "{} {:?} sk head",
            level.name(),
            variant
        );
    }
}
