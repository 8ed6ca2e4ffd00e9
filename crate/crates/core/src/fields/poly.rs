//! Univariate polynomials over GF(2^m): the algebra behind Goppa codes and
//! Patterson decoding.
//!
//! Coefficients are stored lowest degree first and kept normalized (no
//! trailing zeros; the zero polynomial is the empty vector). Multiplication
//! counts flow into the injected [`Counters`] so decoder work is measurable.

use super::gf2m::{Gf2m, GfElem};
use super::FieldError;
use crate::costmodel::Counters;
use crate::xof::XofRng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2mPoly {
    coeffs: Vec<GfElem>,
}

impl Gf2mPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// The monomial x.
    pub fn x() -> Self {
        Self { coeffs: vec![0, 1] }
    }

    pub fn constant(c: GfElem) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// Builds from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<GfElem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[GfElem] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> GfElem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree with the convention deg(0) = -1.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading(&self) -> GfElem {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut coeffs = vec![0; self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(i) ^ rhs.coeff(i);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, rhs: &Self, f: &Gf2m, ctr: &Counters) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] ^= f.mul(a, b);
            }
        }
        ctr.add_gf2m_mults((self.coeffs.len() * rhs.coeffs.len()) as u64);
        Self::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, c: GfElem, f: &Gf2m, ctr: &Counters) -> Self {
        if c == 0 {
            return Self::zero();
        }
        ctr.add_gf2m_mults(self.coeffs.len() as u64);
        Self::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Squaring in characteristic 2 just squares and spreads coefficients.
    pub fn square(&self, f: &Gf2m, ctr: &Counters) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; 2 * self.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = f.sq(a);
        }
        ctr.add_gf2m_mults(self.coeffs.len() as u64);
        Self::from_coeffs(coeffs)
    }

    /// Long division; returns (quotient, remainder).
    pub fn divmod(&self, div: &Self, f: &Gf2m, ctr: &Counters) -> (Self, Self) {
        let db = div.degree();
        assert!(db >= 0, "division by the zero polynomial");
        if self.degree() < db {
            return (Self::zero(), self.clone());
        }
        let lc_inv = f.inv(div.leading()).expect("nonzero leading coefficient");
        ctr.add_gf2m_mults(2 * f.degree() as u64 - 1);
        let da = self.degree() as usize;
        let db = db as usize;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0; da - db + 1];
        let mut muls = 0u64;
        for i in (db..=da).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let qc = f.mul(c, lc_inv);
            quo[i - db] = qc;
            for j in 0..db {
                rem[i - db + j] ^= f.mul(qc, div.coeffs[j]);
            }
            rem[i] = 0;
            muls += db as u64 + 1;
        }
        ctr.add_gf2m_mults(muls);
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    pub fn rem(&self, div: &Self, f: &Gf2m, ctr: &Counters) -> Self {
        self.divmod(div, f, ctr).1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: GfElem, f: &Gf2m, ctr: &Counters) -> GfElem {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = f.mul(acc, x) ^ c;
        }
        ctr.add_gf2m_mults(self.coeffs.len() as u64);
        acc
    }

    pub fn gcd(&self, rhs: &Self, f: &Gf2m, ctr: &Counters) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f, ctr);
            a = b;
            b = r;
        }
        a
    }

    /// One Frobenius step modulo `modulus`: raises to the 2^m-th power.
    fn frobenius_mod(&self, modulus: &Self, f: &Gf2m, ctr: &Counters) -> Self {
        let mut r = self.clone();
        for _ in 0..f.degree() {
            r = r.square(f, ctr).rem(modulus, f, ctr);
        }
        r
    }

    /// Distinct-degree irreducibility test: p of degree t is irreducible over
    /// GF(2^m) iff gcd(p, x^(2^(m*d)) - x) is constant for every d <= t/2,
    /// since any factor of degree d divides x^(2^(m*d)) - x. Deterministic.
    pub fn is_irreducible(&self, f: &Gf2m, ctr: &Counters) -> bool {
        let t = self.degree();
        debug_assert!(t >= 1 && self.is_monic());
        if t == 1 {
            return true;
        }
        let x = Self::x();
        let mut r = x.rem(self, f, ctr);
        for _ in 1..=(t / 2) {
            r = r.frobenius_mod(self, f, ctr);
            let diff = r.add(&x);
            if self.gcd(&diff, f, ctr).degree() > 0 {
                return false;
            }
        }
        true
    }

    /// Extended Euclid on (g, a) halted once the remainder degree drops to
    /// `stop_deg`. Returns (u, v) with u = v*a (mod g), deg(u) <= stop_deg,
    /// deg(v) <= deg(g) - 1 - stop_deg.
    pub fn partial_ea(a: &Self, g: &Self, stop_deg: usize, f: &Gf2m, ctr: &Counters) -> (Self, Self) {
        debug_assert!(a.degree() < g.degree());
        let mut r_prev = g.clone();
        let mut r = a.clone();
        let mut v_prev = Self::zero();
        let mut v = Self::one();
        while r.degree() > stop_deg as isize {
            let (q, rem) = r_prev.divmod(&r, f, ctr);
            let v_next = v_prev.add(&q.mul(&v, f, ctr));
            r_prev = r;
            r = rem;
            v_prev = v;
            v = v_next;
        }
        (r, v)
    }

    /// Inverse of `a` modulo the irreducible polynomial `g`.
    pub fn inverse_mod(a: &Self, g: &Self, f: &Gf2m, ctr: &Counters) -> Result<Self, FieldError> {
        let a = a.rem(g, f, ctr);
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (r, v) = Self::partial_ea(&a, g, 0, f, ctr);
        debug_assert_eq!(r.degree(), 0, "gcd(a, g) must be constant for irreducible g");
        let scale = f.inv(r.coeff(0))?;
        ctr.add_gf2m_mults(2 * f.degree() as u64 - 1);
        Ok(v.mul_scalar(scale, f, ctr))
    }

    /// Square root of x in GF(2^m)[x]/(g): x^(2^(m*t - 1)) via repeated
    /// squaring, where t = deg(g). Precomputed once per key.
    pub fn sqrt_of_x_mod(g: &Self, f: &Gf2m, ctr: &Counters) -> Self {
        let mt = f.degree() as usize * g.degree() as usize;
        let mut r = Self::x();
        for _ in 0..mt - 1 {
            r = r.square(f, ctr).rem(g, f, ctr);
        }
        r
    }

    /// Square root of p modulo g, using the characteristic-2 split
    /// p = E(x)^2 + x*O(x)^2: sqrt(p) = E + sqrt_x * O (mod g).
    pub fn sqrt_mod(&self, g: &Self, sqrt_x: &Self, f: &Gf2m, ctr: &Counters) -> Self {
        let mut even = Vec::with_capacity(self.coeffs.len() / 2 + 1);
        let mut odd = Vec::with_capacity(self.coeffs.len() / 2 + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            let root = f.sqrt(c);
            if i % 2 == 0 {
                even.push(root);
            } else {
                odd.push(root);
            }
        }
        ctr.add_gf2m_mults((f.degree() as u64 - 1) * self.coeffs.len() as u64);
        let even = Self::from_coeffs(even);
        let odd = Self::from_coeffs(odd);
        even.add(&sqrt_x.mul(&odd, f, ctr)).rem(g, f, ctr)
    }

    /// Divides g by the linear factor (x + alpha); returns the quotient and
    /// the remainder g(alpha). Synthetic division.
    pub fn div_by_linear(&self, alpha: GfElem, f: &Gf2m, ctr: &Counters) -> (Self, GfElem) {
        if self.is_zero() {
            return (Self::zero(), 0);
        }
        let d = self.degree() as usize;
        let mut quo = vec![0; d];
        let mut carry = self.coeffs[d];
        for j in (1..=d).rev() {
            quo[j - 1] = carry;
            carry = self.coeffs[j - 1] ^ f.mul(alpha, carry);
        }
        ctr.add_gf2m_mults(d as u64);
        (Self::from_coeffs(quo), carry)
    }

    /// Uniformly random monic polynomial of the given degree.
    pub fn random_monic(deg: usize, f: &Gf2m, rng: &mut XofRng) -> Self {
        assert!(deg >= 1);
        let mask = f.mask();
        let mut coeffs: Vec<GfElem> = (0..deg).map(|_| rng.next_u32() as u16 & mask).collect();
        coeffs.push(1);
        Self { coeffs }
    }
}
