//! Module-LWE public-key encryption (CPA style).
//!
//! Key generation: A <- XOF(rho), s, e <- CBD(eta1), t = A*s + e.
//! Encryption:     r <- CBD(eta1), e1, e2 <- CBD(eta2),
//!                 u = A^T*r + e1, v = t^T*r + e2 + encode(m).
//! Decryption:     m = decode(v - s^T*u).
//!
//! All products run in the NTT domain; transforms sit at the boundaries. No
//! Fujisaki-Okamoto transform and no KEM wrapper: this is the plain PKE.
//!
//! Wire formats are bit-exact: public key = 12-bit-packed t_hat || rho
//! (384k + 32 bytes), ciphertext = packed compressed u || v
//! (32*k*du + 32*dv bytes).

use crate::costmodel::Counters;
use crate::ring::{
    cbd_sample, compress_poly, decode_msg, decompress_poly, encode_msg, expand_matrix,
    pack_coeffs, unpack_coeffs, Domain, PolyMatrix, PolyVec, RingElement, RingError, Seed,
    MSG_BYTES, Q,
};
use crate::xof::Xof256;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum KyberError {
    #[error("serialized input has wrong length: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("packed coefficient out of range")]
    CoefficientRange,
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KyberLevel {
    Kyber512,
    Kyber768,
    Kyber1024,
}

impl KyberLevel {
    pub fn name(&self) -> &'static str {
        match self {
            KyberLevel::Kyber512 => "kyber512",
            KyberLevel::Kyber768 => "kyber768",
            KyberLevel::Kyber1024 => "kyber1024",
        }
    }
}

/// A named parameter set. n = 256 and q = 3329 are fixed; (du, dv) are the
/// ciphertext compression widths, (eta1, eta2) the noise widths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KyberParams {
    pub level: KyberLevel,
    pub k: usize,
    pub eta1: u32,
    pub eta2: u32,
    pub du: u32,
    pub dv: u32,
}

impl KyberParams {
    pub fn new(level: KyberLevel) -> Self {
        match level {
            KyberLevel::Kyber512 => Self {
                level,
                k: 2,
                eta1: 3,
                eta2: 2,
                du: 10,
                dv: 4,
            },
            KyberLevel::Kyber768 => Self {
                level,
                k: 3,
                eta1: 2,
                eta2: 2,
                du: 10,
                dv: 4,
            },
            KyberLevel::Kyber1024 => Self {
                level,
                k: 4,
                eta1: 2,
                eta2: 2,
                du: 11,
                dv: 5,
            },
        }
    }

    pub fn all() -> [KyberParams; 3] {
        [
            Self::new(KyberLevel::Kyber512),
            Self::new(KyberLevel::Kyber768),
            Self::new(KyberLevel::Kyber1024),
        ]
    }

    /// 384k packed bytes plus the 32-byte matrix seed.
    pub fn pk_bytes(&self) -> usize {
        384 * self.k + 32
    }

    pub fn sk_bytes(&self) -> usize {
        384 * self.k
    }

    pub fn ct_bytes(&self) -> usize {
        32 * self.k * self.du as usize + 32 * self.dv as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KyberPublicKey {
    pub params: KyberParams,
    t_hat: PolyVec,
    rho: Seed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KyberSecretKey {
    pub params: KyberParams,
    s_hat: PolyVec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KyberCiphertext {
    pub params: KyberParams,
    u: PolyVec,
    v: RingElement,
}

/// PRF stream for noise sampling: SHAKE-256(seed || nonce), 64*eta bytes.
fn prf(seed: &[u8; 32], nonce: u8, eta: u32) -> Vec<u8> {
    Xof256::new(&[seed, &[nonce]]).read_vec(64 * eta as usize)
}

/// Derives the matrix seed rho and the noise seed sigma from the keygen seed.
fn derive_rho_sigma(seed: &Seed, k: usize) -> ([u8; 32], [u8; 32]) {
    let mut xof = Xof256::new(&[seed.as_bytes(), &[k as u8]]);
    let mut rho = [0u8; 32];
    let mut sigma = [0u8; 32];
    xof.read(&mut rho);
    xof.read(&mut sigma);
    (rho, sigma)
}

fn sample_noise_vec(
    seed: &[u8; 32],
    first_nonce: u8,
    k: usize,
    eta: u32,
) -> Result<PolyVec, KyberError> {
    let elems = (0..k)
        .map(|i| Ok(cbd_sample(&prf(seed, first_nonce + i as u8, eta), eta)?))
        .collect::<Result<Vec<_>, KyberError>>()?;
    Ok(PolyVec::from_elems(elems))
}

/// Core keygen on explicit inputs; the unit tests drive it directly.
fn keygen_from_noise(
    params: &KyberParams,
    a_hat: &PolyMatrix,
    s: &PolyVec,
    e: &PolyVec,
    rho: [u8; 32],
    ctr: &Counters,
) -> (KyberPublicKey, KyberSecretKey) {
    let s_hat = s.ntt(ctr);
    let e_hat = e.ntt(ctr);
    let t_hat = a_hat.mul_vec(&s_hat, ctr).add(&e_hat, ctr);
    (
        KyberPublicKey {
            params: *params,
            t_hat,
            rho: Seed(rho),
        },
        KyberSecretKey {
            params: *params,
            s_hat,
        },
    )
}

/// Deterministic key generation from a 32-byte seed.
pub fn keygen(
    params: &KyberParams,
    seed: &Seed,
    ctr: &Counters,
) -> Result<(KyberPublicKey, KyberSecretKey), KyberError> {
    let (rho, sigma) = derive_rho_sigma(seed, params.k);
    let a_hat = expand_matrix(&Seed(rho), params.k)?;
    let s = sample_noise_vec(&sigma, 0, params.k, params.eta1)?;
    let e = sample_noise_vec(&sigma, params.k as u8, params.k, params.eta1)?;
    Ok(keygen_from_noise(params, &a_hat, &s, &e, rho, ctr))
}

/// Deterministic encryption of a 32-byte message under explicit coins.
pub fn encrypt(
    pk: &KyberPublicKey,
    msg: &[u8; MSG_BYTES],
    coins: &Seed,
    ctr: &Counters,
) -> Result<KyberCiphertext, KyberError> {
    let params = &pk.params;
    let k = params.k;
    let a_hat = expand_matrix(&pk.rho, k)?;
    let r = sample_noise_vec(coins.as_bytes(), 0, k, params.eta1)?;
    let e1 = sample_noise_vec(coins.as_bytes(), k as u8, k, params.eta2)?;
    let e2 = cbd_sample(&prf(coins.as_bytes(), 2 * k as u8, params.eta2), params.eta2)?;

    let r_hat = r.ntt(ctr);
    let u = a_hat
        .mul_vec_transposed(&r_hat, ctr)
        .inv_ntt(ctr)
        .add(&e1, ctr);
    let v = pk
        .t_hat
        .dot(&r_hat, ctr)
        .inv_ntt(ctr)
        .add(&e2, ctr)
        .add(&encode_msg(msg), ctr);
    Ok(KyberCiphertext {
        params: *params,
        u,
        v,
    })
}

/// Recovers decode(v - s^T * u). Always returns 32 bytes; a mismatched or
/// corrupt ciphertext decodes to garbage by design (CPA PKE).
pub fn decrypt(sk: &KyberSecretKey, ct: &KyberCiphertext, ctr: &Counters) -> [u8; MSG_BYTES] {
    assert_eq!(
        sk.params.level, ct.params.level,
        "ciphertext/key parameter mismatch"
    );
    let u_hat = ct.u.ntt(ctr);
    let w = sk.s_hat.dot(&u_hat, ctr).inv_ntt(ctr);
    decode_msg(&ct.v.sub(&w, ctr))
}

impl KyberPublicKey {
    pub fn rho(&self) -> &Seed {
        &self.rho
    }

    pub fn t_hat(&self) -> &PolyVec {
        &self.t_hat
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.params.pk_bytes());
        for e in self.t_hat.elems() {
            out.extend_from_slice(&pack_coeffs(e.coeffs(), 12));
        }
        out.extend_from_slice(self.rho.as_bytes());
        debug_assert_eq!(out.len(), self.params.pk_bytes());
        out
    }

    pub fn from_bytes(params: &KyberParams, bytes: &[u8]) -> Result<Self, KyberError> {
        if bytes.len() != params.pk_bytes() {
            return Err(KyberError::Length {
                expected: params.pk_bytes(),
                got: bytes.len(),
            });
        }
        let mut elems = Vec::with_capacity(params.k);
        for i in 0..params.k {
            elems.push(unpack_ntt_poly(&bytes[384 * i..384 * (i + 1)])?);
        }
        let rho = Seed::from_bytes(&bytes[384 * params.k..]).unwrap();
        Ok(Self {
            params: *params,
            t_hat: PolyVec::from_elems(elems),
            rho,
        })
    }
}

impl KyberSecretKey {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.params.sk_bytes());
        for e in self.s_hat.elems() {
            out.extend_from_slice(&pack_coeffs(e.coeffs(), 12));
        }
        out
    }

    pub fn from_bytes(params: &KyberParams, bytes: &[u8]) -> Result<Self, KyberError> {
        if bytes.len() != params.sk_bytes() {
            return Err(KyberError::Length {
                expected: params.sk_bytes(),
                got: bytes.len(),
            });
        }
        let mut elems = Vec::with_capacity(params.k);
        for i in 0..params.k {
            elems.push(unpack_ntt_poly(&bytes[384 * i..384 * (i + 1)])?);
        }
        Ok(Self {
            params: *params,
            s_hat: PolyVec::from_elems(elems),
        })
    }
}

fn unpack_ntt_poly(bytes: &[u8]) -> Result<RingElement, KyberError> {
    let coeffs = unpack_coeffs(bytes, 12)?;
    if coeffs.iter().any(|&c| c >= Q) {
        return Err(KyberError::CoefficientRange);
    }
    Ok(RingElement::from_coeffs(coeffs, Domain::Ntt))
}

impl KyberCiphertext {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.params.ct_bytes());
        for e in self.u.elems() {
            out.extend_from_slice(&compress_poly(e, self.params.du));
        }
        out.extend_from_slice(&compress_poly(&self.v, self.params.dv));
        debug_assert_eq!(out.len(), self.params.ct_bytes());
        out
    }

    pub fn from_bytes(params: &KyberParams, bytes: &[u8]) -> Result<Self, KyberError> {
        if bytes.len() != params.ct_bytes() {
            return Err(KyberError::Length {
                expected: params.ct_bytes(),
                got: bytes.len(),
            });
        }
        let u_poly_bytes = 32 * params.du as usize;
        let mut elems = Vec::with_capacity(params.k);
        for i in 0..params.k {
            elems.push(decompress_poly(
                &bytes[u_poly_bytes * i..u_poly_bytes * (i + 1)],
                params.du,
            )?);
        }
        let v = decompress_poly(&bytes[u_poly_bytes * params.k..], params.dv)?;
        Ok(Self {
            params: *params,
            u: PolyVec::from_elems(elems),
            v,
        })
    }
}
