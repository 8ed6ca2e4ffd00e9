//! Live operation counters.
//!
//! A [`Counters`] handle is injected into an instrumented computation (see
//! [`measure`]); the arithmetic kernels flush bulk tallies into it. There is
//! no global state: a scope owns its counters, and parallel regions sharing
//! the same handle merge associatively through the atomic adds.
//!
//! What is counted:
//!
//! * `zq_mults` / `zq_adds`: modular scalar ops in ring arithmetic
//!   *outside* the NTT butterflies (pointwise products, schoolbook products,
//!   polynomial adds). Transforms are summarized by `ntt_transforms` instead,
//!   matching the pointwise accounting the model formulas use.
//! * `gf2m_mults`: GF(2^m) multiplications in Goppa polynomial arithmetic.
//! * `gf2_word_ops`: packed words (bytes) written by XOR/accumulate steps in
//!   the GF(2) matrix kernels.

use std::ops::{Add, AddAssign};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

/// Shared tally sink. Cheap to create; safe to hand to parallel workers.
#[derive(Debug, Default)]
pub struct Counters {
    zq_mults: AtomicU64,
    zq_adds: AtomicU64,
    gf2m_mults: AtomicU64,
    gf2_word_ops: AtomicU64,
    ntt_transforms: AtomicU64,
}

impl Counters {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add_zq_mults(&self, n: u64) {
        self.zq_mults.fetch_add(n, Ordering::Relaxed);
    }

    pub(crate) fn add_zq_adds(&self, n: u64) {
        self.zq_adds.fetch_add(n, Ordering::Relaxed);
    }

    pub(crate) fn add_gf2m_mults(&self, n: u64) {
        self.gf2m_mults.fetch_add(n, Ordering::Relaxed);
    }

    pub(crate) fn add_gf2_word_ops(&self, n: u64) {
        self.gf2_word_ops.fetch_add(n, Ordering::Relaxed);
    }

    pub(crate) fn add_ntt_transforms(&self, n: u64) {
        self.ntt_transforms.fetch_add(n, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> OpCounters {
        OpCounters {
            zq_mults: self.zq_mults.load(Ordering::Relaxed),
            zq_adds: self.zq_adds.load(Ordering::Relaxed),
            gf2m_mults: self.gf2m_mults.load(Ordering::Relaxed),
            gf2_word_ops: self.gf2_word_ops.load(Ordering::Relaxed),
            ntt_transforms: self.ntt_transforms.load(Ordering::Relaxed),
        }
    }
}

/// Immutable tally snapshot.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounters {
    pub zq_mults: u64,
    pub zq_adds: u64,
    pub gf2m_mults: u64,
    pub gf2_word_ops: u64,
    pub ntt_transforms: u64,
}

impl Add for OpCounters {
    type Output = OpCounters;

    fn add(self, rhs: OpCounters) -> OpCounters {
        OpCounters {
            zq_mults: self.zq_mults + rhs.zq_mults,
            zq_adds: self.zq_adds + rhs.zq_adds,
            gf2m_mults: self.gf2m_mults + rhs.gf2m_mults,
            gf2_word_ops: self.gf2_word_ops + rhs.gf2_word_ops,
            ntt_transforms: self.ntt_transforms + rhs.ntt_transforms,
        }
    }
}

impl AddAssign for OpCounters {
    fn add_assign(&mut self, rhs: OpCounters) {
        *self = *self + rhs;
    }
}

/// Run `scope` with a fresh counter handle and return its tallies.
pub fn measure<T>(scope: impl FnOnce(&Counters) -> T) -> (T, OpCounters) {
    let counters = Counters::new();
    let value = scope(&counters);
    let tallies = counters.snapshot();
    (value, tallies)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_scope_is_all_zero() {
        let ((), tallies) = measure(|_| ());
        assert_eq!(tallies, OpCounters::default());
    }

    #[test]
    fn snapshots_accumulate() {
        let c = Counters::new();
        c.add_zq_mults(3);
        c.add_zq_mults(4);
        c.add_gf2_word_ops(9);
        let s = c.snapshot();
        assert_eq!(s.zq_mults, 7);
        assert_eq!(s.gf2_word_ops, 9);
        assert_eq!(s.ntt_transforms, 0);
    }
}
