//! Arithmetic in R_q = Z_q[X]/(X^n+1) with n = 256, q = 3329.
//!
//! Elements carry a domain tag. NTT-domain elements multiply through the
//! pointwise basemul; coefficient-domain elements multiply through schoolbook
//! negacyclic convolution, which doubles as the independent oracle for the
//! NTT path.

mod codec;
mod ntt;
mod sample;

pub use codec::{
    compress_poly, decode_msg, decompress_poly, encode_msg, pack_coeffs, unpack_coeffs, MSG_BYTES,
};
pub use sample::{cbd_sample, expand_matrix};

use crate::costmodel::Counters;
use crate::fields::zq::{zq_add, zq_mul, zq_sub};
use thiserror::Error;

pub use crate::fields::zq::Q;

/// Polynomial degree; fixed for all parameter sets.
pub const N: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("byte stream exhausted: need {need} bytes, have {have}")]
    StreamExhausted { need: usize, have: usize },
    #[error("rejection sampling exceeded the retry cap")]
    RejectionOverflow,
    #[error("packed encoding malformed: {0}")]
    Encoding(&'static str),
}

/// 32 opaque seed bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Seed(pub [u8; 32]);

impl Seed {
    pub fn from_bytes(bytes: &[u8]) -> Option<Self> {
        bytes.try_into().ok().map(Seed)
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }
}

/// Which representation a ring element is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Coefficient,
    Ntt,
}

/// A degree-255 polynomial over Z_q.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    coeffs: [u16; N],
    domain: Domain,
}

impl std::fmt::Debug for RingElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RingElement({:?}, {:?}...)", self.domain, &self.coeffs[..4])
    }
}

impl RingElement {
    pub fn zero(domain: Domain) -> Self {
        Self {
            coeffs: [0; N],
            domain,
        }
    }

    pub fn from_coeffs(coeffs: [u16; N], domain: Domain) -> Self {
        assert!(coeffs.iter().all(|&c| c < Q), "coefficient out of range");
        Self { coeffs, domain }
    }

    pub fn coeffs(&self) -> &[u16; N] {
        &self.coeffs
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Forward NTT; the element must be in coefficient form.
    pub fn ntt(&self, ctr: &Counters) -> Self {
        assert_eq!(self.domain, Domain::Coefficient, "ntt needs coefficient domain");
        let mut coeffs = self.coeffs;
        ntt::forward(&mut coeffs);
        ctr.add_ntt_transforms(1);
        Self {
            coeffs,
            domain: Domain::Ntt,
        }
    }

    /// Inverse NTT, including the n^-1 scaling; exact inverse of [`Self::ntt`].
    pub fn inv_ntt(&self, ctr: &Counters) -> Self {
        assert_eq!(self.domain, Domain::Ntt, "inv_ntt needs NTT domain");
        let mut coeffs = self.coeffs;
        ntt::inverse(&mut coeffs);
        ctr.add_ntt_transforms(1);
        Self {
            coeffs,
            domain: Domain::Coefficient,
        }
    }

    pub fn add(&self, rhs: &Self, ctr: &Counters) -> Self {
        assert_eq!(self.domain, rhs.domain, "domain mismatch in add");
        let mut coeffs = [0u16; N];
        for (c, (a, b)) in coeffs.iter_mut().zip(self.coeffs.iter().zip(&rhs.coeffs)) {
            *c = zq_add(*a, *b);
        }
        ctr.add_zq_adds(N as u64);
        Self {
            coeffs,
            domain: self.domain,
        }
    }

    pub fn sub(&self, rhs: &Self, ctr: &Counters) -> Self {
        assert_eq!(self.domain, rhs.domain, "domain mismatch in sub");
        let mut coeffs = [0u16; N];
        for (c, (a, b)) in coeffs.iter_mut().zip(self.coeffs.iter().zip(&rhs.coeffs)) {
            *c = zq_sub(*a, *b);
        }
        ctr.add_zq_adds(N as u64);
        Self {
            coeffs,
            domain: self.domain,
        }
    }

    /// Product in R_q. NTT-domain inputs use the pointwise basemul;
    /// coefficient-domain inputs use schoolbook negacyclic convolution.
    pub fn mul(&self, rhs: &Self, ctr: &Counters) -> Self {
        assert_eq!(self.domain, rhs.domain, "domain mismatch in mul");
        match self.domain {
            Domain::Ntt => {
                let mut out = [0u16; N];
                ntt::basemul(&self.coeffs, &rhs.coeffs, &mut out);
                ctr.add_zq_mults(ntt::BASEMUL_MULTS);
                ctr.add_zq_adds(ntt::BASEMUL_ADDS);
                Self {
                    coeffs: out,
                    domain: Domain::Ntt,
                }
            }
            Domain::Coefficient => self.schoolbook_mul(rhs, ctr),
        }
    }

    /// O(n^2) negacyclic convolution: X^n = -1 folds the upper half back with
    /// a sign flip.
    fn schoolbook_mul(&self, rhs: &Self, ctr: &Counters) -> Self {
        let mut out = [0u16; N];
        for i in 0..N {
            let a = self.coeffs[i];
            for j in 0..N {
                let prod = zq_mul(a, rhs.coeffs[j]);
                let idx = i + j;
                if idx < N {
                    out[idx] = zq_add(out[idx], prod);
                } else {
                    out[idx - N] = zq_sub(out[idx - N], prod);
                }
            }
        }
        ctr.add_zq_mults((N * N) as u64);
        ctr.add_zq_adds((N * N) as u64);
        Self {
            coeffs: out,
            domain: Domain::Coefficient,
        }
    }
}

/// A length-k vector of ring elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVec {
    elems: Vec<RingElement>,
}

impl PolyVec {
    pub fn zero(k: usize, domain: Domain) -> Self {
        Self {
            elems: vec![RingElement::zero(domain); k],
        }
    }

    pub fn from_elems(elems: Vec<RingElement>) -> Self {
        assert!(!elems.is_empty());
        assert!(elems.iter().all(|e| e.domain() == elems[0].domain()));
        Self { elems }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn at(&self, i: usize) -> &RingElement {
        &self.elems[i]
    }

    pub fn elems(&self) -> &[RingElement] {
        &self.elems
    }

    pub fn ntt(&self, ctr: &Counters) -> Self {
        Self {
            elems: self.elems.iter().map(|e| e.ntt(ctr)).collect(),
        }
    }

    pub fn inv_ntt(&self, ctr: &Counters) -> Self {
        Self {
            elems: self.elems.iter().map(|e| e.inv_ntt(ctr)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self, ctr: &Counters) -> Self {
        assert_eq!(self.len(), rhs.len());
        Self {
            elems: self
                .elems
                .iter()
                .zip(&rhs.elems)
                .map(|(a, b)| a.add(b, ctr))
                .collect(),
        }
    }

    /// Inner product: sum of pointwise products.
    pub fn dot(&self, rhs: &Self, ctr: &Counters) -> RingElement {
        assert_eq!(self.len(), rhs.len());
        let mut acc = self.elems[0].mul(&rhs.elems[0], ctr);
        for i in 1..self.len() {
            acc = acc.add(&self.elems[i].mul(&rhs.elems[i], ctr), ctr);
        }
        acc
    }
}

/// A k x k matrix of ring elements, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    k: usize,
    entries: Vec<RingElement>,
}

impl PolyMatrix {
    pub fn from_entries(k: usize, entries: Vec<RingElement>) -> Self {
        assert_eq!(entries.len(), k * k);
        Self { k, entries }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn at(&self, row: usize, col: usize) -> &RingElement {
        &self.entries[row * self.k + col]
    }

    /// A * v.
    pub fn mul_vec(&self, v: &PolyVec, ctr: &Counters) -> PolyVec {
        assert_eq!(v.len(), self.k);
        let elems = (0..self.k)
            .map(|i| {
                let mut acc = self.at(i, 0).mul(v.at(0), ctr);
                for j in 1..self.k {
                    acc = acc.add(&self.at(i, j).mul(v.at(j), ctr), ctr);
                }
                acc
            })
            .collect();
        PolyVec::from_elems(elems)
    }

    /// A^T * v.
    pub fn mul_vec_transposed(&self, v: &PolyVec, ctr: &Counters) -> PolyVec {
        assert_eq!(v.len(), self.k);
        let elems = (0..self.k)
            .map(|j| {
                let mut acc = self.at(0, j).mul(v.at(0), ctr);
                for i in 1..self.k {
                    acc = acc.add(&self.at(i, j).mul(v.at(i), ctr), ctr);
                }
                acc
            })
            .collect();
        PolyVec::from_elems(elems)
    }
}
