//! Incomplete negacyclic NTT over Z_3329[X]/(X^256+1).
//!
//! q has 256th but not 512th roots of unity, so the transform runs seven
//! layers and leaves 128 degree-1 residues; products finish with a pointwise
//! basemul against X^2 - gamma_i. zeta = 17 is a primitive 256th root of
//! unity mod q.

use crate::fields::zq::{zq_add, zq_mul, zq_sub, Q};

const ZETA: u32 = 17;

const fn bitrev7(i: u32) -> u32 {
    let mut out = 0;
    let mut b = 0;
    while b < 7 {
        out |= ((i >> b) & 1) << (6 - b);
        b += 1;
    }
    out
}

const fn pow_mod(base: u32, mut exp: u32) -> u32 {
    let mut acc: u32 = 1;
    let mut b = base % Q as u32;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % Q as u32;
        }
        b = b * b % Q as u32;
        exp >>= 1;
    }
    acc
}

/// ZETAS[i] = zeta^bitrev7(i), the butterfly twiddles in layer order.
pub(crate) const ZETAS: [u16; 128] = {
    let mut t = [0u16; 128];
    let mut i = 0;
    while i < 128 {
        t[i] = pow_mod(ZETA, bitrev7(i as u32)) as u16;
        i += 1;
    }
    t
};

/// GAMMAS[i] = zeta^(2*bitrev7(i)+1): residue i is taken mod X^2 - GAMMAS[i].
pub(crate) const GAMMAS: [u16; 128] = {
    let mut t = [0u16; 128];
    let mut i = 0;
    while i < 128 {
        t[i] = pow_mod(ZETA, 2 * bitrev7(i as u32) + 1) as u16;
        i += 1;
    }
    t
};

/// 128^-1 mod q, the final inverse-transform scaling.
const N_HALF_INV: u16 = 3303;

pub(crate) fn forward(coeffs: &mut [u16; 256]) {
    let mut k = 1;
    let mut len = 128;
    while len >= 2 {
        let mut start = 0;
        while start < 256 {
            let zeta = ZETAS[k];
            k += 1;
            for j in start..start + len {
                let t = zq_mul(zeta, coeffs[j + len]);
                coeffs[j + len] = zq_sub(coeffs[j], t);
                coeffs[j] = zq_add(coeffs[j], t);
            }
            start += 2 * len;
        }
        len >>= 1;
    }
}

// The table is its own mirror: within each butterfly layer,
// ZETAS[mirror(j)] = zeta^(128 - bitrev7(j)) = -ZETAS[j]^-1, so the inverse
// transform reads the forward table backwards.
pub(crate) fn inverse(coeffs: &mut [u16; 256]) {
    let mut k = 127;
    let mut len = 2;
    while len <= 128 {
        let mut start = 0;
        while start < 256 {
            let zeta = ZETAS[k];
            k -= 1;
            for j in start..start + len {
                let t = coeffs[j];
                coeffs[j] = zq_add(t, coeffs[j + len]);
                coeffs[j + len] = zq_mul(zeta, zq_sub(coeffs[j + len], t));
            }
            start += 2 * len;
        }
        len <<= 1;
    }
    for c in coeffs.iter_mut() {
        *c = zq_mul(*c, N_HALF_INV);
    }
}

/// Pointwise product of two NTT-domain vectors: 128 products in
/// GF(q)[X]/(X^2 - gamma_i). 5 multiplications and 2 additions per residue.
#[allow(clippy::needless_range_loop)]
pub(crate) fn basemul(a: &[u16; 256], b: &[u16; 256], out: &mut [u16; 256]) {
    for i in 0..128 {
        let (a0, a1) = (a[2 * i], a[2 * i + 1]);
        let (b0, b1) = (b[2 * i], b[2 * i + 1]);
        out[2 * i] = zq_add(zq_mul(a0, b0), zq_mul(GAMMAS[i], zq_mul(a1, b1)));
        out[2 * i + 1] = zq_add(zq_mul(a0, b1), zq_mul(a1, b0));
    }
}

/// zq multiplications performed by one basemul call.
pub(crate) const BASEMUL_MULTS: u64 = 5 * 128;
/// zq additions performed by one basemul call.
pub(crate) const BASEMUL_ADDS: u64 = 2 * 128;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_is_a_primitive_256th_root() {
        let mut v = 1u32;
        let mut order = 0;
        loop {
            v = v * ZETA % Q as u32;
            order += 1;
            if v == 1 {
                break;
            }
        }
        assert_eq!(order, 256);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn gamma_table_consistency() {
        // Every gamma is zeta^odd, and the set of exponents covers all odd
        // residues mod 256 exactly once.
        let mut seen = [false; 128];
        for i in 0..128 {
            let e = 2 * bitrev7(i as u32) + 1;
            assert_eq!(GAMMAS[i] as u32, pow_mod(ZETA, e));
            assert!(!seen[(e / 2) as usize]);
            seen[(e / 2) as usize] = true;
        }
    }

    #[test]
    fn zeta_table_layer_mirror_identity() {
        // For each layer [m, 2m): ZETAS[j] * ZETAS[mirror(j)] = -1, the fact
        // the inverse transform leans on.
        let mut m = 1;
        while m < 128 {
            for b in 0..m {
                let j = m + b;
                let mirror = 2 * m - 1 - b;
                let prod = ZETAS[j] as u32 * ZETAS[mirror] as u32 % Q as u32;
                assert_eq!(prod, Q as u32 - 1, "j = {j}, mirror = {mirror}");
            }
            m *= 2;
        }
    }
}
