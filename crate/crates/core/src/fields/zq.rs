//! Arithmetic mod q = 3329.
//!
//! q is prime and q ≡ 1 (mod 512), so 256th roots of unity exist and the
//! seven-layer negacyclic NTT over X^256+1 is available. Reduction is
//! Barrett-style, branch-free.

/// The Kyber modulus.
pub const Q: u16 = 3329;

const Q32: u32 = Q as u32;

/// floor(2^36 / q)
const BARRETT_M: u64 = 20_642_678;

/// Conditional subtract: maps [0, 2q) to [0, q) without a branch.
#[inline(always)]
fn csub(r: u32) -> u32 {
    let t = r.wrapping_sub(Q32);
    t.wrapping_add(Q32 & ((t as i32 >> 31) as u32))
}

/// Reduce x < 2^26 mod q.
#[inline(always)]
pub fn barrett_reduce(x: u32) -> u16 {
    debug_assert!(x < 1 << 26);
    let t = ((x as u64 * BARRETT_M) >> 36) as u32;
    let r = csub(x - t * Q32);
    debug_assert!(r < Q32);
    r as u16
}

#[inline(always)]
pub fn zq_mul(a: u16, b: u16) -> u16 {
    barrett_reduce(a as u32 * b as u32)
}

#[inline(always)]
pub fn zq_add(a: u16, b: u16) -> u16 {
    csub(a as u32 + b as u32) as u16
}

#[inline(always)]
pub fn zq_sub(a: u16, b: u16) -> u16 {
    csub(a as u32 + Q32 - b as u32) as u16
}

pub fn zq_pow(mut base: u16, mut exp: u32) -> u16 {
    let mut acc = 1u16;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = zq_mul(acc, base);
        }
        base = zq_mul(base, base);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xof::XofRng;

    #[test]
    fn barrett_matches_mod_exhaustively() {
        // Every value a full product plus a carry can reach.
        for x in 0..(Q32 * Q32 + 2 * Q32) {
            assert_eq!(barrett_reduce(x) as u32, x % Q32, "x = {x}");
        }
    }

    #[test]
    fn mul_zero_and_one() {
        for x in [0u16, 1, 2, 1664, 3328] {
            assert_eq!(zq_mul(0, x), 0);
            assert_eq!(zq_mul(1, x), x);
        }
    }

    #[test]
    fn minus_one_squared() {
        // 3328 == -1 (mod q)
        assert_eq!(zq_mul(3328, 3328), 1);
    }

    #[test]
    fn mul_matches_wide_mod_on_random_pairs() {
        let mut rng = XofRng::new(&[3u8; 32], b"zq pairs");
        for _ in 0..1_000_000 {
            let a = (rng.next_u32() % Q32) as u16;
            let b = (rng.next_u32() % Q32) as u16;
            let wide = (a as u64 * b as u64) % Q as u64;
            assert_eq!(zq_mul(a, b) as u64, wide);
        }
    }

    #[test]
    fn add_sub_roundtrip() {
        let mut rng = XofRng::new(&[4u8; 32], b"zq addsub");
        for _ in 0..10_000 {
            let a = (rng.next_u32() % Q32) as u16;
            let b = (rng.next_u32() % Q32) as u16;
            assert_eq!(zq_sub(zq_add(a, b), b), a);
        }
    }
}
