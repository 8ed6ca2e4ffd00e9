//! Message encoding and coefficient compression.
//!
//! compress maps a coefficient to round(2^d * c / q) mod 2^d and packs the
//! results little-endian, d bits each; decompress maps back with
//! round(q * x / 2^d). d = 12 is lossless. Message encode/decode is the d = 1
//! special case scaled to the half-modulus.

use super::{Domain, RingElement, RingError, N, Q};

/// Kyber message length: one bit per coefficient.
pub const MSG_BYTES: usize = 32;

/// ceil(q / 2): the encoding of a one bit.
const HALF_Q: u16 = Q.div_ceil(2);

const SUPPORTED_D: [u32; 6] = [1, 4, 5, 10, 11, 12];

#[inline]
fn compress_coeff(c: u16, d: u32) -> u16 {
    // round(2^d * c / q) mod 2^d, with the tie broken upward.
    let num = ((c as u64) << (d + 1)) + Q as u64;
    ((num / (2 * Q as u64)) as u16) & ((1u32 << d) - 1) as u16
}

#[inline]
fn decompress_coeff(x: u16, d: u32) -> u16 {
    // round(q * x / 2^d)
    (((Q as u32 * x as u32) + (1 << (d - 1))) >> d) as u16
}

/// Packs 256 d-bit values little-endian into 32*d bytes.
pub fn pack_coeffs(vals: &[u16; N], d: u32) -> Vec<u8> {
    let mut out = vec![0u8; N * d as usize / 8];
    let mut acc: u32 = 0;
    let mut acc_bits = 0;
    let mut pos = 0;
    for &v in vals {
        debug_assert!(v < (1 << d));
        acc |= (v as u32) << acc_bits;
        acc_bits += d;
        while acc_bits >= 8 {
            out[pos] = acc as u8;
            pos += 1;
            acc >>= 8;
            acc_bits -= 8;
        }
    }
    debug_assert_eq!(pos, out.len());
    out
}

/// Inverse of [`pack_coeffs`].
pub fn unpack_coeffs(bytes: &[u8], d: u32) -> Result<[u16; N], RingError> {
    if bytes.len() != N * d as usize / 8 {
        return Err(RingError::Encoding("packed length mismatch"));
    }
    let mut vals = [0u16; N];
    let mut acc: u32 = 0;
    let mut acc_bits = 0;
    let mut pos = 0;
    for v in vals.iter_mut() {
        while acc_bits < d {
            acc |= (bytes[pos] as u32) << acc_bits;
            pos += 1;
            acc_bits += 8;
        }
        *v = (acc & ((1 << d) - 1)) as u16;
        acc >>= d;
        acc_bits -= d;
    }
    Ok(vals)
}

/// Lossy d-bit compression of a coefficient-domain element, bit-packed.
pub fn compress_poly(p: &RingElement, d: u32) -> Vec<u8> {
    assert!(SUPPORTED_D.contains(&d), "unsupported compression width {d}");
    assert_eq!(p.domain(), Domain::Coefficient);
    let mut vals = [0u16; N];
    for (v, &c) in vals.iter_mut().zip(p.coeffs()) {
        *v = compress_coeff(c, d);
    }
    pack_coeffs(&vals, d)
}

/// Inverse of [`compress_poly`] up to the rounding error bound.
pub fn decompress_poly(bytes: &[u8], d: u32) -> Result<RingElement, RingError> {
    assert!(SUPPORTED_D.contains(&d), "unsupported compression width {d}");
    let vals = unpack_coeffs(bytes, d)?;
    let mut coeffs = [0u16; N];
    for (c, &v) in coeffs.iter_mut().zip(&vals) {
        *c = decompress_coeff(v, d);
    }
    Ok(RingElement::from_coeffs(coeffs, Domain::Coefficient))
}

/// Maps message bit b to b * ceil(q/2) per coefficient.
pub fn encode_msg(msg: &[u8; MSG_BYTES]) -> RingElement {
    let mut coeffs = [0u16; N];
    for (i, c) in coeffs.iter_mut().enumerate() {
        let bit = (msg[i / 8] >> (i % 8)) & 1;
        *c = bit as u16 * HALF_Q;
    }
    RingElement::from_coeffs(coeffs, Domain::Coefficient)
}

/// Maps coefficient c to round(2c/q) mod 2: the bit whose encoding is nearest.
pub fn decode_msg(p: &RingElement) -> [u8; MSG_BYTES] {
    assert_eq!(p.domain(), Domain::Coefficient);
    let mut msg = [0u8; MSG_BYTES];
    for (i, &c) in p.coeffs().iter().enumerate() {
        let bit = compress_coeff(c, 1);
        msg[i / 8] |= (bit as u8) << (i % 8);
    }
    msg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::zq::{zq_add, zq_sub};
    use crate::xof::XofRng;

    #[test]
    fn compress_zero_is_zero() {
        let z = RingElement::zero(Domain::Coefficient);
        for d in SUPPORTED_D {
            assert!(compress_poly(&z, d).iter().all(|&b| b == 0));
        }
    }

    #[test]
    fn d12_roundtrips_every_coefficient() {
        // 2^12 > q, so 12-bit compression is injective and lossless.
        for c in 0..Q {
            let x = compress_coeff(c, 12);
            assert_eq!(decompress_coeff(x, 12), c, "c = {c}");
        }
    }

    #[test]
    fn compression_error_bound_exhaustive() {
        // |decompress(compress(c, d)) - c| <= ceil(q / 2^(d+1)) centrally.
        for d in SUPPORTED_D {
            let bound = (Q as i32 + (1 << (d + 1)) - 1) / (1 << (d + 1));
            for c in 0..Q {
                let back = decompress_coeff(compress_coeff(c, d), d) as i32;
                let dist = (back - c as i32)
                    .abs()
                    .min((back - c as i32 + Q as i32).abs())
                    .min((back - c as i32 - Q as i32).abs());
                assert!(dist <= bound, "d = {d}, c = {c}: error {dist} > {bound}");
            }
        }
    }

    #[test]
    fn d10_error_within_two() {
        // The ciphertext-width guarantee: error at most ceil(q / 2^11) = 2.
        for c in 0..Q {
            let back = decompress_coeff(compress_coeff(c, 10), 10) as i32;
            let dist = (back - c as i32)
                .abs()
                .min((back - c as i32 + Q as i32).abs())
                .min((back - c as i32 - Q as i32).abs());
            assert!(dist <= 2, "c = {c}: {dist}");
        }
    }

    #[test]
    fn compress_decompress_compress_is_stable() {
        // For d < 12 (2^d < q) the compressed value survives a decompress
        // round trip, so serialized ciphertexts re-serialize byte-identically.
        for d in [1, 4, 5, 10, 11] {
            for x in 0..(1u16 << d) {
                let c = decompress_coeff(x, d);
                assert_eq!(compress_coeff(c, d), x, "d = {d}, x = {x}");
            }
        }
    }

    #[test]
    fn pack_unpack_roundtrip() {
        let mut rng = XofRng::new(&[40u8; 32], b"pack");
        for d in SUPPORTED_D {
            let mut vals = [0u16; N];
            for v in vals.iter_mut() {
                *v = (rng.next_u32() & ((1 << d) - 1)) as u16;
            }
            let packed = pack_coeffs(&vals, d);
            assert_eq!(packed.len(), 32 * d as usize);
            assert_eq!(unpack_coeffs(&packed, d).unwrap(), vals);
        }
    }

    #[test]
    fn msg_roundtrip_without_noise() {
        let mut rng = XofRng::new(&[41u8; 32], b"msg");
        for _ in 0..200 {
            let mut msg = [0u8; MSG_BYTES];
            rng.fill(&mut msg);
            assert_eq!(decode_msg(&encode_msg(&msg)), msg);
        }
        assert_eq!(decode_msg(&encode_msg(&[0u8; 32])), [0u8; 32]);
    }

    #[test]
    fn msg_decoding_survives_noise_below_quarter_q() {
        // The one-bit decision region is [833, 2496], centered on q/2 with
        // radius q/4; the encoding 1665 = (q+1)/2 sits half a unit above the
        // center, so the exact symmetric noise margin is 831. Exhaustive over
        // the range, both bits, both signs; the boundary is pinned below.
        let c = crate::costmodel::Counters::new();
        let mut one_bits = [0u8; MSG_BYTES];
        one_bits[0] = 1;
        let encoded = encode_msg(&one_bits);
        for delta in 0..=831u16 {
            let mut noise_up = [0u16; N];
            noise_up[0] = delta;
            noise_up[8] = delta; // a zero-bit position
            let noisy = encoded.add(&RingElement::from_coeffs(noise_up, Domain::Coefficient), &c);
            assert_eq!(decode_msg(&noisy), one_bits, "+{delta}");
            let noisy = encoded.sub(&RingElement::from_coeffs(noise_up, Domain::Coefficient), &c);
            assert_eq!(decode_msg(&noisy), one_bits, "-{delta}");
        }
        // Decision boundaries: a one survives -832 but flips at +832.
        assert_eq!(compress_coeff(zq_sub(HALF_Q, 832), 1), 1);
        assert_eq!(compress_coeff(zq_add(HALF_Q, 831), 1), 1);
        assert_eq!(compress_coeff(zq_add(HALF_Q, 832), 1), 0);
    }
}
