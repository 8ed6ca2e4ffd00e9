//! The binary extension field GF(2^m), 3 <= m <= 13.
//!
//! Elements are m-bit integers in polynomial basis. Each degree uses a fixed
//! reduction polynomial (the lexicographically least irreducible of that
//! degree) so serialized keys are reproducible across implementations.

use super::FieldError;

/// A field element; only the low `m` bits are significant.
pub type GfElem = u16;

pub const MIN_M: u32 = 3;
pub const MAX_M: u32 = 13;

/// Lexicographically least irreducible polynomial of degree m over GF(2),
/// indexed by m. Verified against an exhaustive factor search in the tests.
const REDUCTION_POLY: [u32; 14] = [
    0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11B, 0x203, 0x409, 0x805, 0x1009, 0x201B,
];

/// Field context: extension degree plus its reduction polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gf2m {
    m: u32,
    modulus: u32,
}

impl Gf2m {
    pub fn new(m: u32) -> Result<Self, FieldError> {
        if !(MIN_M..=MAX_M).contains(&m) {
            return Err(FieldError::UnsupportedDegree(m));
        }
        Ok(Self {
            m,
            modulus: REDUCTION_POLY[m as usize],
        })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of field elements, 2^m.
    pub fn order(&self) -> u32 {
        1 << self.m
    }

    pub fn mask(&self) -> u16 {
        (self.order() - 1) as u16
    }

    pub fn reduction_poly(&self) -> u32 {
        self.modulus
    }

    /// Addition is XOR in characteristic 2.
    #[inline(always)]
    pub fn add(a: GfElem, b: GfElem) -> GfElem {
        a ^ b
    }

    /// Carry-less product reduced by the field polynomial. Branch-free.
    #[inline]
    pub fn mul(&self, a: GfElem, b: GfElem) -> GfElem {
        debug_assert!(a < (1 << self.m) && b < (1 << self.m));
        let a = a as u32;
        let b = b as u32;
        let mut acc: u32 = 0;
        for i in 0..self.m {
            // b & (1 << i) is either 2^i or 0, so this is a masked shift.
            acc ^= a * (b & (1 << i));
        }
        for i in (self.m..2 * self.m - 1).rev() {
            acc ^= (self.modulus << (i - self.m)) * ((acc >> i) & 1);
        }
        debug_assert!(acc < (1 << self.m));
        acc as GfElem
    }

    #[inline]
    pub fn sq(&self, a: GfElem) -> GfElem {
        self.mul(a, a)
    }

    /// Multiplicative inverse by exponentiation to 2^m - 2.
    pub fn inv(&self, a: GfElem) -> Result<GfElem, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let exp = self.order() - 2;
        let mut acc: GfElem = 1;
        let mut base = a;
        for i in 0..self.m {
            if (exp >> i) & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.sq(base);
        }
        Ok(acc)
    }

    /// Square root: squaring is a bijection in GF(2^m), so sqrt(a) = a^(2^(m-1)).
    pub fn sqrt(&self, a: GfElem) -> GfElem {
        let mut r = a;
        for _ in 0..self.m - 1 {
            r = self.sq(r);
        }
        r
    }
}
