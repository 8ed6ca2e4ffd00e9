//! SHAKE-backed byte streams and a deterministic RNG.
//!
//! Every randomized operation in this crate takes an explicit seed and pulls
//! its bytes from one of these streams, so there is no hidden RNG state.

use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::{Shake128, Shake256};

/// SHAKE-128 stream over the concatenation of the given inputs.
pub struct Xof128 {
    reader: <Shake128 as ExtendableOutput>::Reader,
}

impl Xof128 {
    pub fn new(inputs: &[&[u8]]) -> Self {
        let mut h = Shake128::default();
        for part in inputs {
            h.update(part);
        }
        Self {
            reader: h.finalize_xof(),
        }
    }

    pub fn read(&mut self, buf: &mut [u8]) {
        self.reader.read(buf);
    }
}

/// SHAKE-256 stream over the concatenation of the given inputs.
pub struct Xof256 {
    reader: <Shake256 as ExtendableOutput>::Reader,
}

impl Xof256 {
    pub fn new(inputs: &[&[u8]]) -> Self {
        let mut h = Shake256::default();
        for part in inputs {
            h.update(part);
        }
        Self {
            reader: h.finalize_xof(),
        }
    }

    pub fn read(&mut self, buf: &mut [u8]) {
        self.reader.read(buf);
    }

    pub fn read_vec(&mut self, len: usize) -> Vec<u8> {
        let mut buf = vec![0u8; len];
        self.read(&mut buf);
        buf
    }
}

/// Deterministic RNG: a SHAKE-256 stream keyed by a 32-byte seed and a
/// domain-separation label.
pub struct XofRng {
    xof: Xof256,
}

impl XofRng {
    pub fn new(seed: &[u8; 32], domain: &[u8]) -> Self {
        Self {
            xof: Xof256::new(&[seed, domain]),
        }
    }

    pub fn fill(&mut self, buf: &mut [u8]) {
        self.xof.read(buf);
    }

    pub fn next_u32(&mut self) -> u32 {
        let mut b = [0u8; 4];
        self.xof.read(&mut b);
        u32::from_le_bytes(b)
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut b = [0u8; 8];
        self.xof.read(&mut b);
        u64::from_le_bytes(b)
    }

    /// Uniform value in `[0, bound)` by rejection.
    pub fn gen_range(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        let bound = bound as u64;
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return (v % bound) as usize;
            }
        }
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.gen_range(i + 1);
            xs.swap(i, j);
        }
    }
}
