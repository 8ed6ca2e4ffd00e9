//! End-to-end tests driving the compiled binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pqclab"))
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pqclab-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary runs");
    assert!(
        !String::from_utf8_lossy(&out.stderr).contains("panicked"),
        "binary panicked: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

const SEED_A: &str = "0101010101010101010101010101010101010101010101010101010101010101";
const SEED_B: &str = "0202020202020202020202020202020202020202020202020202020202020202";

#[test]
fn kyber_keygen_prints_table_sizes() {
    let dir = workdir("kyber-sizes");
    let out = run(bin()
        .args(["keygen", "--scheme", "kyber", "--level", "512", "--seed", SEED_A])
        .arg("--out-dir")
        .arg(&dir));
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("pk: 800 bytes"), "{stdout}");
    // Framed file: 8-byte header + payload.
    assert_eq!(fs::metadata(dir.join("kyber512.pk")).unwrap().len(), 808);
    let header = fs::read(dir.join("kyber512.pk")).unwrap();
    assert_eq!(&header[..7], b"PQCLAB\0");
}

#[test]
fn mceliece_systematic_keygen_prints_table_size() {
    let dir = workdir("mc-size");
    let out = run(bin()
        .args([
            "keygen", "--scheme", "mceliece", "--level", "348864", "--variant", "systematic",
            "--seed", SEED_A,
        ])
        .arg("--out-dir")
        .arg(&dir));
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("pk: 261120 bytes"), "{stdout}");
}

#[test]
fn raw_mode_writes_size_exact_files() {
    let dir = workdir("raw");
    let out = run(bin()
        .args([
            "keygen", "--scheme", "kyber", "--level", "1024", "--seed", SEED_A, "--raw",
        ])
        .arg("--out-dir")
        .arg(&dir));
    assert!(out.status.success());
    assert_eq!(fs::metadata(dir.join("kyber1024.pk")).unwrap().len(), 1568);
}

#[test]
fn kyber_file_roundtrip() {
    let dir = workdir("kyber-rt");
    assert!(run(bin()
        .args(["keygen", "--scheme", "kyber", "--level", "768", "--seed", SEED_A])
        .arg("--out-dir")
        .arg(&dir))
    .status
    .success());
    let msg: Vec<u8> = (0..32).collect();
    fs::write(dir.join("msg.bin"), &msg).unwrap();
    assert!(run(bin()
        .args(["encrypt", "--scheme", "kyber", "--level", "768", "--seed", SEED_B])
        .arg("--pk")
        .arg(dir.join("kyber768.pk"))
        .arg("--msg")
        .arg(dir.join("msg.bin"))
        .arg("--out")
        .arg(dir.join("ct.bin")))
    .status
    .success());
    assert!(run(bin()
        .args(["decrypt", "--scheme", "kyber", "--level", "768"])
        .arg("--sk")
        .arg(dir.join("kyber768.sk"))
        .arg("--ct")
        .arg(dir.join("ct.bin"))
        .arg("--out")
        .arg(dir.join("out.bin")))
    .status
    .success());
    assert_eq!(fs::read(dir.join("out.bin")).unwrap(), msg);
}

#[test]
fn mceliece_toy_roundtrip_both_variants() {
    for variant in ["textbook", "systematic"] {
        let dir = workdir(&format!("mc-{variant}"));
        assert!(run(bin()
            .args([
                "keygen", "--scheme", "mceliece", "--level", "toy16", "--variant", variant,
                "--seed", SEED_A,
            ])
            .arg("--out-dir")
            .arg(&dir))
        .status
        .success());
        let base = format!("toy16-{variant}");
        fs::write(dir.join("msg.bin"), [0b1011_0001u8]).unwrap();
        assert!(run(bin()
            .args([
                "encrypt", "--scheme", "mceliece", "--level", "toy16", "--variant", variant,
                "--seed", SEED_B,
            ])
            .arg("--pk")
            .arg(dir.join(format!("{base}.pk")))
            .arg("--msg")
            .arg(dir.join("msg.bin"))
            .arg("--out")
            .arg(dir.join("ct.bin")))
        .status
        .success());
        assert!(run(bin()
            .args([
                "decrypt", "--scheme", "mceliece", "--level", "toy16", "--variant", variant,
            ])
            .arg("--sk")
            .arg(dir.join(format!("{base}.sk")))
            .arg("--ct")
            .arg(dir.join("ct.bin"))
            .arg("--out")
            .arg(dir.join("out.bin")))
        .status
        .success());
        assert_eq!(fs::read(dir.join("out.bin")).unwrap(), [0b1011_0001u8]);
    }
}

#[test]
fn same_seed_gives_byte_identical_files() {
    let dir1 = workdir("det-1");
    let dir2 = workdir("det-2");
    for dir in [&dir1, &dir2] {
        assert!(run(bin()
            .args(["keygen", "--scheme", "kyber", "--level", "512", "--seed", SEED_A])
            .arg("--out-dir")
            .arg(dir))
        .status
        .success());
    }
    assert_eq!(
        fs::read(dir1.join("kyber512.pk")).unwrap(),
        fs::read(dir2.join("kyber512.pk")).unwrap()
    );
    assert_eq!(
        fs::read(dir1.join("kyber512.sk")).unwrap(),
        fs::read(dir2.join("kyber512.sk")).unwrap()
    );
}

#[test]
fn env_seed_fallback_is_deterministic() {
    let dir1 = workdir("env-1");
    let dir2 = workdir("env-2");
    for dir in [&dir1, &dir2] {
        assert!(run(bin()
            .env("PQCLAB_SEED", SEED_B)
            .args(["keygen", "--scheme", "mceliece", "--level", "toy32"])
            .arg("--out-dir")
            .arg(dir))
        .status
        .success());
    }
    assert_eq!(
        fs::read(dir1.join("toy32-textbook.pk")).unwrap(),
        fs::read(dir2.join("toy32-textbook.pk")).unwrap()
    );
}

#[test]
fn invalid_level_is_a_usage_error() {
    let out = run(bin().args([
        "keygen", "--scheme", "kyber", "--level", "640", "--seed", SEED_A,
    ]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn truncated_ciphertext_fails_cleanly() {
    let dir = workdir("truncated");
    assert!(run(bin()
        .args(["keygen", "--scheme", "kyber", "--level", "512", "--seed", SEED_A])
        .arg("--out-dir")
        .arg(&dir))
    .status
    .success());
    fs::write(dir.join("msg.bin"), [7u8; 32]).unwrap();
    assert!(run(bin()
        .args(["encrypt", "--scheme", "kyber", "--level", "512", "--seed", SEED_B])
        .arg("--pk")
        .arg(dir.join("kyber512.pk"))
        .arg("--msg")
        .arg(dir.join("msg.bin"))
        .arg("--out")
        .arg(dir.join("ct.bin")))
    .status
    .success());
    let ct = fs::read(dir.join("ct.bin")).unwrap();
    fs::write(dir.join("ct.bin"), &ct[..ct.len() - 9]).unwrap();
    let out = run(bin()
        .args(["decrypt", "--scheme", "kyber", "--level", "512"])
        .arg("--sk")
        .arg(dir.join("kyber512.sk"))
        .arg("--ct")
        .arg(dir.join("ct.bin"))
        .arg("--out")
        .arg(dir.join("out.bin")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wrong_message_length_is_a_usage_error() {
    let dir = workdir("msg-len");
    assert!(run(bin()
        .args(["keygen", "--scheme", "kyber", "--level", "512", "--seed", SEED_A])
        .arg("--out-dir")
        .arg(&dir))
    .status
    .success());
    fs::write(dir.join("msg.bin"), [7u8; 31]).unwrap();
    let out = run(bin()
        .args(["encrypt", "--scheme", "kyber", "--level", "512", "--seed", SEED_B])
        .arg("--pk")
        .arg(dir.join("kyber512.pk"))
        .arg("--msg")
        .arg(dir.join("msg.bin"))
        .arg("--out")
        .arg(dir.join("ct.bin")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn heavy_tampering_reports_decoding_failure() {
    let dir = workdir("tamper");
    assert!(run(bin()
        .args([
            "keygen", "--scheme", "mceliece", "--level", "toy16", "--variant", "systematic",
            "--seed", SEED_A,
        ])
        .arg("--out-dir")
        .arg(&dir))
    .status
    .success());
    fs::write(dir.join("msg.bin"), [0x5Au8]).unwrap();
    assert!(run(bin()
        .args([
            "encrypt", "--scheme", "mceliece", "--level", "toy16", "--variant", "systematic",
            "--seed", SEED_B,
        ])
        .arg("--pk")
        .arg(dir.join("toy16-systematic.pk"))
        .arg("--msg")
        .arg(dir.join("msg.bin"))
        .arg("--out")
        .arg(dir.join("ct.bin")))
    .status
    .success());
    // Flip ciphertext bits until the decoder reports a failure; with t = 2
    // some corruption within distance t of another codeword decodes (to the
    // wrong message), so scan a few patterns and require that at least one
    // surfaces exit code 3.
    let ct = fs::read(dir.join("ct.bin")).unwrap();
    let mut saw_code_3 = false;
    for pattern in 0u8..16 {
        let mut bad = ct.clone();
        let last = bad.len() - 1;
        bad[last] ^= 0xE1 ^ pattern;
        bad[8] ^= 0x13;
        fs::write(dir.join("bad.bin"), &bad).unwrap();
        let out = run(bin()
            .args([
                "decrypt", "--scheme", "mceliece", "--level", "toy16", "--variant", "systematic",
            ])
            .arg("--sk")
            .arg(dir.join("toy16-systematic.sk"))
            .arg("--ct")
            .arg(dir.join("bad.bin"))
            .arg("--out")
            .arg(dir.join("out.bin")));
        if out.status.code() == Some(3) {
            assert!(String::from_utf8_lossy(&out.stderr).contains("decoding failure"));
            saw_code_3 = true;
            break;
        }
    }
    assert!(saw_code_3, "no tampering pattern surfaced exit code 3");
}

#[test]
fn nonzero_message_padding_is_a_usage_error() {
    // toy32 has k = 17: three message bytes with seven padding bits that
    // must be zero.
    let dir = workdir("msg-pad");
    assert!(run(bin()
        .args([
            "keygen", "--scheme", "mceliece", "--level", "toy32", "--seed", SEED_A,
        ])
        .arg("--out-dir")
        .arg(&dir))
    .status
    .success());
    fs::write(dir.join("msg.bin"), [0xFF, 0xFF, 0xFF]).unwrap();
    let out = run(bin()
        .args(["encrypt", "--scheme", "mceliece", "--level", "toy32", "--seed", SEED_B])
        .arg("--pk")
        .arg(dir.join("toy32-textbook.pk"))
        .arg("--msg")
        .arg(dir.join("msg.bin"))
        .arg("--out")
        .arg(dir.join("ct.bin")));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("padding"));
}

#[test]
fn missing_input_file_is_an_io_error() {
    let dir = workdir("io-err");
    let out = run(bin()
        .args(["decrypt", "--scheme", "kyber", "--level", "512"])
        .arg("--sk")
        .arg(dir.join("nonexistent.sk"))
        .arg("--ct")
        .arg(dir.join("nonexistent.ct"))
        .arg("--out")
        .arg(dir.join("out.bin")));
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn analyze_figure_3_series() {
    let out = run(bin().args(["analyze", "--figure", "3"]));
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("kyber512,keygen,2048"), "{stdout}");
    assert!(stdout.contains("kyber512,encrypt,4096"));
    assert!(stdout.contains("kyber512,decrypt,1024"));
    assert!(stdout.contains("mceliece348864,keygen,84871020544"));
}

#[test]
fn analyze_markdown_renders_complexity_cells() {
    let out = run(bin().args(["analyze", "--format", "md"]));
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    for cell in ["O(k²n)", "O(kn)", "O(n³)", "O(n²)"] {
        assert!(stdout.contains(cell), "missing {cell} in markdown output");
    }
}

#[test]
fn analyze_unfiltered_covers_all_six_levels() {
    let out = run(bin().args(["analyze"]));
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    for level in [
        "kyber512",
        "kyber768",
        "kyber1024",
        "mceliece348864",
        "mceliece460896",
        "mceliece6688128",
    ] {
        assert!(stdout.contains(level), "missing {level}");
    }
}

#[test]
fn analyze_csv_reports_are_reproducible() {
    let a = run(bin().args(["analyze", "--format", "csv"]));
    let b = run(bin().args(["analyze", "--format", "csv"]));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selftest_quick_passes_and_corrupt_hook_fails() {
    let out = run(bin().args(["selftest", "--quick"]));
    assert!(out.status.success());
    let out = run(bin()
        .env("PQCLAB_SELFTEST_CORRUPT", "1")
        .args(["selftest", "--quick"]));
    assert_eq!(out.status.code(), Some(3));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("FAILED"), "{stdout}");
}

#[test]
fn bench_reports_bit_identical_speedup() {
    let out = run(bin().args(["bench", "--threads", "2", "--level", "toy64", "--reps", "2"]));
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("speedup"), "{stdout}");
    assert!(stdout.contains("bit-identical"));
}
