//! Binary Goppa code construction.
//!
//! A code is defined by a monic irreducible polynomial g of degree t over
//! GF(2^m) and a support of n distinct field elements with g(alpha) != 0.
//! The mt x n parity check H has rows formed by bit-expanding
//! alpha_i^j / g(alpha_i); the k x n generator G is a null-space basis of H.

use super::{McElieceError, McElieceParams};
use crate::costmodel::Counters;
use crate::fields::{Gf2m, Gf2mPoly, GfElem};
use crate::gf2linalg::BitMatrix;
use crate::xof::XofRng;

/// How many fresh Goppa polynomials to try before giving up.
const KEYGEN_RETRIES: usize = 100;

/// The decoder's private data: g, the support, and the precomputed tables
/// Patterson decoding needs (sqrt(x) mod g and the per-point inverse factors
/// (x + alpha_i)^-1 mod g).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoppaPrivateData {
    field: Gf2m,
    g: Gf2mPoly,
    support: Vec<GfElem>,
    sqrt_x: Gf2mPoly,
    inv_factors: Vec<Gf2mPoly>,
}

impl GoppaPrivateData {
    /// Builds the decoding tables for a given (g, support) pair.
    pub fn new(
        field: Gf2m,
        g: Gf2mPoly,
        support: Vec<GfElem>,
        ctr: &Counters,
    ) -> Result<Self, McElieceError> {
        if !g.is_monic() || g.degree() < 1 {
            return Err(McElieceError::InvalidParams(
                "goppa polynomial must be monic of degree >= 1".into(),
            ));
        }
        let mut seen = vec![false; field.order() as usize];
        for &alpha in &support {
            if seen[alpha as usize] {
                return Err(McElieceError::InvalidParams(
                    "support elements must be distinct".into(),
                ));
            }
            seen[alpha as usize] = true;
        }
        let sqrt_x = Gf2mPoly::sqrt_of_x_mod(&g, &field, ctr);
        let inv_factors = support
            .iter()
            .map(|&alpha| {
                // g = (x + alpha) h + g(alpha), so (x + alpha)^-1 = h / g(alpha).
                let (h, g_alpha) = g.div_by_linear(alpha, &field, ctr);
                if g_alpha == 0 {
                    return Err(McElieceError::InvalidParams(
                        "support element is a root of g".into(),
                    ));
                }
                let scale = field.inv(g_alpha).expect("nonzero");
                Ok(h.mul_scalar(scale, &field, ctr))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            field,
            g,
            support,
            sqrt_x,
            inv_factors,
        })
    }

    pub fn field(&self) -> &Gf2m {
        &self.field
    }

    pub fn g(&self) -> &Gf2mPoly {
        &self.g
    }

    pub fn support(&self) -> &[GfElem] {
        &self.support
    }

    pub fn sqrt_x(&self) -> &Gf2mPoly {
        &self.sqrt_x
    }

    pub(crate) fn inv_factor(&self, i: usize) -> &Gf2mPoly {
        &self.inv_factors[i]
    }

    pub fn n(&self) -> usize {
        self.support.len()
    }

    pub fn t(&self) -> usize {
        self.g.degree() as usize
    }

    /// Reorders the support (and tables) by a column gather; used when the
    /// generator is put in systematic form.
    pub(crate) fn gather(&self, idx: &[usize]) -> Self {
        Self {
            field: self.field,
            g: self.g.clone(),
            support: idx.iter().map(|&i| self.support[i]).collect(),
            sqrt_x: self.sqrt_x.clone(),
            inv_factors: idx.iter().map(|&i| self.inv_factors[i].clone()).collect(),
        }
    }
}

/// Samples a Goppa code for `params`: monic irreducible g of degree t, a
/// seeded-shuffle support, the mt x n parity check H, and the k x n
/// generator G (null-space basis of H). Retries with a fresh g if the
/// parity check is rank-deficient.
pub fn goppa_generate(
    params: &McElieceParams,
    rng: &mut XofRng,
    ctr: &Counters,
) -> Result<(GoppaPrivateData, BitMatrix, BitMatrix), McElieceError> {
    params.validate()?;
    let field = Gf2m::new(params.m).map_err(|e| McElieceError::InvalidParams(e.to_string()))?;
    let (n, t) = (params.n, params.t);
    let mt = params.m as usize * t;

    for _ in 0..KEYGEN_RETRIES {
        let g = loop {
            let cand = Gf2mPoly::random_monic(t, &field, rng);
            if cand.is_irreducible(&field, ctr) {
                break cand;
            }
        };
        // First n field elements under a seeded shuffle, skipping roots of g
        // (an irreducible g of degree >= 2 has none; the filter also covers t = 1).
        let mut elements: Vec<GfElem> = (0..field.order() as GfElem).collect();
        rng.shuffle(&mut elements);
        let support: Vec<GfElem> = elements
            .into_iter()
            .filter(|&a| g.eval(a, &field, ctr) != 0)
            .take(n)
            .collect();
        if support.len() < n {
            return Err(McElieceError::InvalidParams(
                "field too small for requested support".into(),
            ));
        }

        let h = parity_check(&field, &g, &support, ctr);
        let (_, _, rank) = h.rref(ctr);
        if rank < mt {
            continue;
        }
        let g_mat = h
            .null_space_basis(ctr)
            .expect("rank mt < n leaves free columns");
        debug_assert_eq!(g_mat.rows(), params.k);
        let private = GoppaPrivateData::new(field, g, support, ctr)?;
        return Ok((private, h, g_mat));
    }
    Err(McElieceError::KeygenRetriesExceeded)
}

/// The mt x n binary parity check: column i stacks the bit expansions of
/// alpha_i^j / g(alpha_i) for j = 0..t.
fn parity_check(field: &Gf2m, g: &Gf2mPoly, support: &[GfElem], ctr: &Counters) -> BitMatrix {
    let m = field.degree() as usize;
    let t = g.degree() as usize;
    let n = support.len();
    let mut h = BitMatrix::zero(m * t, n);
    for (i, &alpha) in support.iter().enumerate() {
        let g_alpha = g.eval(alpha, field, ctr);
        let mut entry = field.inv(g_alpha).expect("support avoids roots of g");
        ctr.add_gf2m_mults(2 * field.degree() as u64 - 1);
        for j in 0..t {
            for b in 0..m {
                if (entry >> b) & 1 == 1 {
                    h.set(j * m + b, i, true);
                }
            }
            entry = field.mul(entry, alpha);
        }
        ctr.add_gf2m_mults(t as u64);
    }
    ctr.add_gf2_word_ops((m * t) as u64 * n.div_ceil(8) as u64);
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2linalg::bm_vec_mul;
    use crate::mceliece::McElieceLevel;

    fn toy() -> McElieceParams {
        McElieceParams::new(McElieceLevel::Toy16)
    }

    #[test]
    fn generator_annihilates_parity_check() {
        let ctr = Counters::new();
        let mut rng = XofRng::new(&[60u8; 32], b"goppa gh");
        let (_, h, g_mat) = goppa_generate(&toy(), &mut rng, &ctr).unwrap();
        let prod = g_mat.mul(&h.transpose(), &ctr).unwrap();
        assert_eq!(prod, BitMatrix::zero(g_mat.rows(), h.rows()));
    }

    #[test]
    fn toy_parity_check_has_full_rank() {
        let ctr = Counters::new();
        let mut rng = XofRng::new(&[61u8; 32], b"goppa rank");
        let (_, h, g_mat) = goppa_generate(&toy(), &mut rng, &ctr).unwrap();
        assert_eq!(h.rank(&ctr), 8); // m*t = 4*2
        assert_eq!(g_mat.rows(), 8); // k = n - m*t
        assert_eq!(g_mat.cols(), 16);
    }

    #[test]
    fn weight_one_syndromes_are_distinct_and_nonzero() {
        let ctr = Counters::new();
        let mut rng = XofRng::new(&[62u8; 32], b"goppa syn");
        let (_, h, _) = goppa_generate(&toy(), &mut rng, &ctr).unwrap();
        let ht = h.transpose();
        let mut seen = std::collections::HashSet::new();
        for i in 0..16 {
            let mut e = crate::gf2linalg::BitVector::zero(16);
            e.set(i, true);
            let syndrome = bm_vec_mul(&e, &ht, &ctr).unwrap();
            assert_ne!(syndrome.weight(), 0, "column {i} has zero syndrome");
            assert!(seen.insert(syndrome.to_bytes()), "syndrome collision at {i}");
        }
    }

    #[test]
    fn inv_factors_invert_linear_terms() {
        let ctr = Counters::new();
        let mut rng = XofRng::new(&[63u8; 32], b"goppa factors");
        let (goppa, _, _) = goppa_generate(&toy(), &mut rng, &ctr).unwrap();
        let f = goppa.field();
        for (i, &alpha) in goppa.support().iter().enumerate() {
            let lin = Gf2mPoly::from_coeffs(vec![alpha, 1]);
            let prod = goppa
                .inv_factor(i)
                .mul(&lin, f, &ctr)
                .rem(goppa.g(), f, &ctr);
            assert_eq!(prod, Gf2mPoly::one());
        }
    }

    #[test]
    fn sqrt_x_table_squares_to_x() {
        let ctr = Counters::new();
        let mut rng = XofRng::new(&[64u8; 32], b"goppa sqrtx");
        let (goppa, _, _) = goppa_generate(&toy(), &mut rng, &ctr).unwrap();
        let f = goppa.field();
        let sq = goppa.sqrt_x().square(f, &ctr).rem(goppa.g(), f, &ctr);
        assert_eq!(sq, Gf2mPoly::x().rem(goppa.g(), f, &ctr));
    }
}
