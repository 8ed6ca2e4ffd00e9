//! Binary-Goppa McEliece public-key encryption.
//!
//! Two public-key variants:
//!
//! * `textbook`: G' = S * G * P with a random scrambler S and permutation P;
//!   the public key is the full k x n matrix (k*n/8 bytes).
//! * `systematic`: the generator is column-permuted to [I | T] and only the
//!   k x (n-k) block T is published (k*(n-k)/8 bytes, the compact sizes).
//!
//! Encryption is y = m*G' + e with wt(e) = t exactly; decryption undoes P,
//! Patterson-decodes, and unscrambles. Both variants share one decrypt path:
//! the systematic secret key stores identity S^-1/P and the trivial right
//! inverse [I; 0].

pub mod goppa;
pub mod patterson;

pub use goppa::{goppa_generate, GoppaPrivateData};
pub use patterson::{decode as patterson_decode, syndrome};

use crate::costmodel::Counters;
use crate::fields::{Gf2m, Gf2mPoly};
use crate::gf2linalg::{
    bm_vec_mul, random_invertible_pair, BitMatrix, BitVector, LinAlgError, Permutation,
};
use crate::ring::Seed;
use crate::xof::XofRng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McElieceError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("decoding failure")]
    DecodingFailure,
    #[error("key generation retries exceeded")]
    KeygenRetriesExceeded,
    #[error("serialized input has wrong length: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McElieceLevel {
    M348864,
    M460896,
    M6688128,
    Toy16,
    Toy32,
    Toy64,
}

impl McElieceLevel {
    pub fn name(&self) -> &'static str {
        match self {
            McElieceLevel::M348864 => "mceliece348864",
            McElieceLevel::M460896 => "mceliece460896",
            McElieceLevel::M6688128 => "mceliece6688128",
            McElieceLevel::Toy16 => "toy16",
            McElieceLevel::Toy32 => "toy32",
            McElieceLevel::Toy64 => "toy64",
        }
    }

    /// The three full-size parameter sets.
    pub fn full() -> [McElieceLevel; 3] {
        [
            McElieceLevel::M348864,
            McElieceLevel::M460896,
            McElieceLevel::M6688128,
        ]
    }

    /// Toy codes small enough for exhaustive oracles and scaling fits.
    pub fn toys() -> [McElieceLevel; 3] {
        [
            McElieceLevel::Toy16,
            McElieceLevel::Toy32,
            McElieceLevel::Toy64,
        ]
    }
}

/// Code parameters: length n over GF(2^m), error capability t, dimension
/// k = n - m*t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McElieceParams {
    pub level: McElieceLevel,
    pub n: usize,
    pub m: u32,
    pub t: usize,
    pub k: usize,
}

impl McElieceParams {
    pub fn new(level: McElieceLevel) -> Self {
        let (n, m, t) = match level {
            McElieceLevel::M348864 => (3488, 12, 64),
            McElieceLevel::M460896 => (4608, 13, 96),
            McElieceLevel::M6688128 => (6688, 13, 128),
            McElieceLevel::Toy16 => (16, 4, 2),
            McElieceLevel::Toy32 => (32, 5, 3),
            McElieceLevel::Toy64 => (64, 6, 4),
        };
        Self {
            level,
            n,
            m,
            t,
            k: n - m as usize * t,
        }
    }

    pub(crate) fn validate(&self) -> Result<(), McElieceError> {
        if self.n > (1usize << self.m) {
            return Err(McElieceError::InvalidParams(format!(
                "n = {} exceeds field size 2^{}",
                self.n, self.m
            )));
        }
        if self.k != self.n - self.m as usize * self.t || self.k == 0 {
            return Err(McElieceError::InvalidParams("k must equal n - m*t > 0".into()));
        }
        Ok(())
    }

    /// Public key bytes for the given variant.
    pub fn pk_bytes(&self, variant: Variant) -> usize {
        match variant {
            Variant::Textbook => self.k * self.n.div_ceil(8),
            Variant::Systematic => self.k * (self.n - self.k).div_ceil(8),
        }
    }

    /// Ciphertext bytes: a packed length-n codeword-plus-error vector.
    pub fn ct_bytes(&self) -> usize {
        self.n.div_ceil(8)
    }

    /// Message bytes: k bits, zero-padded to whole bytes.
    pub fn msg_bytes(&self) -> usize {
        self.k.div_ceil(8)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Textbook,
    Systematic,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Textbook => "textbook",
            Variant::Systematic => "systematic",
        }
    }
}

/// Public key: the full scrambled generator (textbook) or the non-identity
/// block T of [I | T] (systematic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McEliecePublicKey {
    pub params: McElieceParams,
    pub variant: Variant,
    matrix: BitMatrix,
}

/// Ciphertext: a packed n-bit vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McElieceCiphertext {
    pub params: McElieceParams,
    vector: BitVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McElieceSecretKey {
    pub params: McElieceParams,
    pub variant: Variant,
    goppa: GoppaPrivateData,
    s_inv: BitMatrix,
    p: Permutation,
    g_right_inv: BitMatrix,
}

pub fn keygen(
    params: &McElieceParams,
    variant: Variant,
    seed: &Seed,
    ctr: &Counters,
) -> Result<(McEliecePublicKey, McElieceSecretKey), McElieceError> {
    let mut rng = XofRng::new(seed.as_bytes(), b"mceliece keygen");
    let (goppa, _h, g_mat) = goppa_generate(params, &mut rng, ctr)?;
    match variant {
        Variant::Textbook => {
            let (s, s_inv) = random_invertible_pair(params.k, &mut rng, ctr);
            let p = Permutation::random(params.n, &mut rng);
            let sg = s.mul_par(&g_mat, ctr)?;
            let g_prime = p.apply_cols(&sg, ctr)?;
            let g_right_inv = right_inverse(&g_mat, ctr)?;
            Ok((
                McEliecePublicKey {
                    params: *params,
                    variant,
                    matrix: g_prime,
                },
                McElieceSecretKey {
                    params: *params,
                    variant,
                    goppa,
                    s_inv,
                    p,
                    g_right_inv,
                },
            ))
        }
        Variant::Systematic => {
            // Row-reduce G and gather pivot columns to the front: [I | T].
            // The support is gathered the same way so decoding still works.
            let (r, pivots, rank) = g_mat.rref(ctr);
            debug_assert_eq!(rank, params.k, "null-space basis rows are independent");
            let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
            let mut order = pivots.clone();
            order.extend((0..params.n).filter(|c| !pivot_set.contains(c)));
            let g_sys = r.gather_cols(&order, ctr);
            let t_block = g_sys.submatrix_cols(params.k, params.n);
            let goppa = goppa.gather(&order);
            let mut g_right_inv = BitMatrix::zero(params.n, params.k);
            for i in 0..params.k {
                g_right_inv.set(i, i, true);
            }
            Ok((
                McEliecePublicKey {
                    params: *params,
                    variant,
                    matrix: t_block,
                },
                McElieceSecretKey {
                    params: *params,
                    variant,
                    goppa,
                    s_inv: BitMatrix::identity(params.k),
                    p: Permutation::identity(params.n),
                    g_right_inv,
                },
            ))
        }
    }
}

/// Right inverse of the k x n generator: X with G * X = I_k, built from the
/// elimination [G | I] -> [R | B] by placing the rows of B at the pivot
/// coordinates.
fn right_inverse(g_mat: &BitMatrix, ctr: &Counters) -> Result<BitMatrix, McElieceError> {
    let k = g_mat.rows();
    let n = g_mat.cols();
    let aug = g_mat.hstack(&BitMatrix::identity(k), ctr);
    let (r, pivots, rank) = aug.rref(ctr);
    if rank < k || pivots.iter().any(|&p| p >= n) {
        return Err(McElieceError::LinAlg(LinAlgError::Singular));
    }
    let mut x = BitMatrix::zero(n, k);
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..k {
            if r.get(i, n + j) {
                x.set(p, j, true);
            }
        }
    }
    ctr.add_gf2_word_ops((n * k.div_ceil(8)) as u64);
    Ok(x)
}

/// y = m * G' + e with e uniform of Hamming weight exactly t.
pub fn encrypt(
    pk: &McEliecePublicKey,
    msg: &BitVector,
    seed: &Seed,
    ctr: &Counters,
) -> Result<McElieceCiphertext, McElieceError> {
    if msg.len() != pk.params.k {
        return Err(McElieceError::InvalidParams(format!(
            "message length {} != k = {}",
            msg.len(),
            pk.params.k
        )));
    }
    let codeword = match pk.variant {
        Variant::Textbook => bm_vec_mul(msg, &pk.matrix, ctr)?,
        // [I | T]: the codeword is m || m*T.
        Variant::Systematic => msg.concat(&bm_vec_mul(msg, &pk.matrix, ctr)?),
    };
    let mut rng = XofRng::new(seed.as_bytes(), b"mceliece error vector");
    let error = BitVector::random_weight(pk.params.n, pk.params.t, &mut rng);
    Ok(McElieceCiphertext {
        params: pk.params,
        vector: codeword.xor(&error, ctr),
    })
}

/// Undo the permutation, Patterson-decode, then unscramble:
/// m = (c' * G_right_inv) * S^-1.
pub fn decrypt(
    sk: &McElieceSecretKey,
    ct: &McElieceCiphertext,
    ctr: &Counters,
) -> Result<BitVector, McElieceError> {
    if ct.vector.len() != sk.params.n {
        return Err(McElieceError::InvalidParams(format!(
            "ciphertext length {} != n = {}",
            ct.vector.len(),
            sk.params.n
        )));
    }
    let y_prime = sk.p.apply(&ct.vector, true)?;
    let (codeword, _error) = patterson::decode(&sk.goppa, &y_prime, ctr)?;
    let m_scrambled = bm_vec_mul(&codeword, &sk.g_right_inv, ctr)?;
    Ok(bm_vec_mul(&m_scrambled, &sk.s_inv, ctr)?)
}

impl McEliecePublicKey {
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.matrix.to_bytes()
    }

    pub fn from_bytes(
        params: &McElieceParams,
        variant: Variant,
        bytes: &[u8],
    ) -> Result<Self, McElieceError> {
        let cols = match variant {
            Variant::Textbook => params.n,
            Variant::Systematic => params.n - params.k,
        };
        let matrix = BitMatrix::from_bytes(params.k, cols, bytes)?;
        Ok(Self {
            params: *params,
            variant,
            matrix,
        })
    }
}

impl McElieceCiphertext {
    pub fn vector(&self) -> &BitVector {
        &self.vector
    }

    pub fn from_vector(params: &McElieceParams, vector: BitVector) -> Self {
        Self {
            params: *params,
            vector,
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.vector.to_bytes()
    }

    pub fn from_bytes(params: &McElieceParams, bytes: &[u8]) -> Result<Self, McElieceError> {
        Ok(Self {
            params: *params,
            vector: BitVector::from_bytes(params.n, bytes)?,
        })
    }
}

impl McElieceSecretKey {
    pub fn goppa(&self) -> &GoppaPrivateData {
        &self.goppa
    }

    /// g coefficients, support, permutation (u16 little-endian each), then the
    /// packed S^-1 and G-right-inverse matrices.
    pub fn to_bytes(&self) -> Vec<u8> {
        let p = &self.params;
        let mut out = Vec::new();
        for i in 0..=p.t {
            out.extend_from_slice(&self.goppa.g().coeff(i).to_le_bytes());
        }
        for &a in self.goppa.support() {
            out.extend_from_slice(&a.to_le_bytes());
        }
        for &i in self.p.map() {
            out.extend_from_slice(&(i as u16).to_le_bytes());
        }
        out.extend_from_slice(&self.s_inv.to_bytes());
        out.extend_from_slice(&self.g_right_inv.to_bytes());
        out
    }

    pub fn sk_bytes(params: &McElieceParams) -> usize {
        2 * (params.t + 1)
            + 2 * params.n
            + 2 * params.n
            + params.k * params.k.div_ceil(8)
            + params.n * params.k.div_ceil(8)
    }

    pub fn from_bytes(
        params: &McElieceParams,
        variant: Variant,
        bytes: &[u8],
        ctr: &Counters,
    ) -> Result<Self, McElieceError> {
        let expected = Self::sk_bytes(params);
        if bytes.len() != expected {
            return Err(McElieceError::Length {
                expected,
                got: bytes.len(),
            });
        }
        let field =
            Gf2m::new(params.m).map_err(|e| McElieceError::InvalidParams(e.to_string()))?;
        let mut pos = 0;
        let mut read_u16 = |bytes: &[u8]| {
            let v = u16::from_le_bytes([bytes[pos], bytes[pos + 1]]);
            pos += 2;
            v
        };
        let g_coeffs: Vec<u16> = (0..=params.t).map(|_| read_u16(bytes)).collect();
        let support: Vec<u16> = (0..params.n).map(|_| read_u16(bytes)).collect();
        let p_map: Vec<u32> = (0..params.n).map(|_| read_u16(bytes) as u32).collect();
        let g = Gf2mPoly::from_coeffs(g_coeffs);
        let goppa = GoppaPrivateData::new(field, g, support, ctr)?;
        let p = Permutation::from_map(p_map)?;
        let kk = params.k * params.k.div_ceil(8);
        let s_inv = BitMatrix::from_bytes(params.k, params.k, &bytes[pos..pos + kk])?;
        let nk = params.n * params.k.div_ceil(8);
        let g_right_inv =
            BitMatrix::from_bytes(params.n, params.k, &bytes[pos + kk..pos + kk + nk])?;
        Ok(Self {
            params: *params,
            variant,
            goppa,
            s_inv,
            p,
            g_right_inv,
        })
    }
}
