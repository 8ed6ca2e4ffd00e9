//! Built-in self checks: toy-scale exhaustive suites plus size checks.
//!
//! Setting PQCLAB_SELFTEST_CORRUPT=1 deliberately corrupts one expected
//! size constant; it exists so the failure path itself stays testable.

use pqclab::costmodel::report::figure_series;
use pqclab::gf2linalg::{bm_vec_mul, BitVector};
use pqclab::kyber::{self, KyberParams};
use pqclab::mceliece::{self, McElieceLevel, McElieceParams};
use pqclab::ring::{Domain, RingElement, Seed, N, Q};
use pqclab::xof::XofRng;
use pqclab::{Counters, Gf2m, Variant};

use crate::CliError;

struct Check {
    name: &'static str,
    run: fn() -> Result<(), String>,
}

pub fn run(quick: bool) -> Result<(), CliError> {
    let mut checks = vec![
        Check {
            name: "gf16-inverse-law",
            run: check_gf16_inverses,
        },
        Check {
            name: "ntt-vs-schoolbook",
            run: check_ntt_oracle,
        },
        Check {
            name: "kyber-sizes-and-roundtrip",
            run: check_kyber,
        },
        Check {
            name: "goppa-toy-exhaustive",
            run: check_toy_goppa,
        },
        Check {
            name: "figure-data",
            run: check_figures,
        },
    ];
    if !quick {
        checks.push(Check {
            name: "mceliece-348864-keygen",
            run: check_full_mceliece,
        });
    }

    let mut failed = Vec::new();
    for check in &checks {
        match (check.run)() {
            Ok(()) => println!("selftest {:<28} ok", check.name),
            Err(e) => {
                println!("selftest {:<28} FAILED: {e}", check.name);
                failed.push(check.name);
            }
        }
    }
    if failed.is_empty() {
        println!("selftest: all {} checks passed", checks.len());
        Ok(())
    } else {
        Err(CliError::Crypto(format!(
            "selftest failures: {}",
            failed.join(", ")
        )))
    }
}

fn corrupt() -> bool {
    std::env::var("PQCLAB_SELFTEST_CORRUPT").is_ok_and(|v| v == "1")
}

fn check_gf16_inverses() -> Result<(), String> {
    let f = Gf2m::new(4).map_err(|e| e.to_string())?;
    for a in 1..16u16 {
        let inv = f.inv(a).map_err(|e| e.to_string())?;
        if f.mul(a, inv) != 1 {
            return Err(format!("a * inv(a) != 1 for a = {a}"));
        }
    }
    Ok(())
}

fn check_ntt_oracle() -> Result<(), String> {
    let ctr = Counters::new();
    let mut rng = XofRng::new(&[1u8; 32], b"selftest ntt");
    for i in 0..100 {
        let mut ca = [0u16; N];
        let mut cb = [0u16; N];
        for c in ca.iter_mut().chain(cb.iter_mut()) {
            *c = (rng.next_u32() % Q as u32) as u16;
        }
        let a = RingElement::from_coeffs(ca, Domain::Coefficient);
        let b = RingElement::from_coeffs(cb, Domain::Coefficient);
        let school = a.mul(&b, &ctr);
        let fast = a.ntt(&ctr).mul(&b.ntt(&ctr), &ctr).inv_ntt(&ctr);
        if school != fast {
            return Err(format!("NTT/schoolbook mismatch at pair {i}"));
        }
    }
    Ok(())
}

fn check_kyber() -> Result<(), String> {
    let ctr = Counters::new();
    // The corrupt hook perturbs the expected 512-level key size.
    let expected: [(usize, usize); 3] = if corrupt() {
        [(801, 768), (1184, 1088), (1568, 1568)]
    } else {
        [(800, 768), (1184, 1088), (1568, 1568)]
    };
    for (params, (pk_len, ct_len)) in KyberParams::all().iter().zip(expected) {
        let (pk, sk) = kyber::keygen(params, &Seed([2u8; 32]), &ctr).map_err(|e| e.to_string())?;
        if pk.to_bytes().len() != pk_len {
            return Err(format!(
                "{} pk is {} bytes, expected {pk_len}",
                params.level.name(),
                pk.to_bytes().len()
            ));
        }
        let msg = [9u8; 32];
        let ct = kyber::encrypt(&pk, &msg, &Seed([3u8; 32]), &ctr).map_err(|e| e.to_string())?;
        if ct.to_bytes().len() != ct_len {
            return Err(format!(
                "{} ct is {} bytes, expected {ct_len}",
                params.level.name(),
                ct.to_bytes().len()
            ));
        }
        if kyber::decrypt(&sk, &ct, &ctr) != msg {
            return Err(format!("{} round-trip failed", params.level.name()));
        }
    }
    Ok(())
}

fn check_toy_goppa() -> Result<(), String> {
    let ctr = Counters::new();
    let params = McElieceParams::new(McElieceLevel::Toy16);
    let (pk, sk) = mceliece::keygen(&params, Variant::Systematic, &Seed([4u8; 32]), &ctr)
        .map_err(|e| e.to_string())?;
    // All 136 errors of weight 1..=2 on a handful of codewords.
    let mut rng = XofRng::new(&[5u8; 32], b"selftest toy");
    for _ in 0..10 {
        let msg = BitVector::random_weight(8, rng.gen_range(9), &mut rng);
        let codeword = msg.concat(&bm_vec_mul(&msg, pk.matrix(), &ctr).map_err(|e| e.to_string())?);
        for i in 0..16 {
            for j in i..16 {
                let mut noisy = codeword.clone();
                noisy.set(i, !noisy.get(i));
                if j != i {
                    noisy.set(j, !noisy.get(j));
                }
                let ct = mceliece::McElieceCiphertext::from_vector(&params, noisy);
                let back = mceliece::decrypt(&sk, &ct, &ctr).map_err(|e| e.to_string())?;
                if back != msg {
                    return Err(format!("toy decode failed with error bits {i},{j}"));
                }
            }
        }
    }
    Ok(())
}

fn check_figures() -> Result<(), String> {
    let fig3: Vec<u64> = figure_series(3).iter().map(|(_, _, v)| *v).collect();
    if fig3[..3] != [2048, 4096, 1024] {
        return Err(format!("figure 3 kyber values {:?}", &fig3[..3]));
    }
    let fig2: Vec<u64> = figure_series(2).iter().map(|(_, _, v)| *v).collect();
    if fig2[..3] != [800, 1184, 1568] {
        return Err(format!("figure 2 kyber values {:?}", &fig2[..3]));
    }
    Ok(())
}

fn check_full_mceliece() -> Result<(), String> {
    let ctr = Counters::new();
    let params = McElieceParams::new(McElieceLevel::M348864);
    let (pk, sk) = mceliece::keygen(&params, Variant::Systematic, &Seed([6u8; 32]), &ctr)
        .map_err(|e| e.to_string())?;
    if pk.to_bytes().len() != 261_120 {
        return Err(format!(
            "systematic 348864 pk is {} bytes, expected 261120",
            pk.to_bytes().len()
        ));
    }
    let mut rng = XofRng::new(&[7u8; 32], b"selftest full");
    let msg = BitVector::random_weight(params.k, rng.gen_range(params.k + 1), &mut rng);
    let ct = mceliece::encrypt(&pk, &msg, &Seed([8u8; 32]), &ctr).map_err(|e| e.to_string())?;
    let back = mceliece::decrypt(&sk, &ct, &ctr).map_err(|e| e.to_string())?;
    if back != msg {
        return Err("full-parameter round-trip failed".into());
    }
    Ok(())
}
