//! Patterson decoding for binary Goppa codes.
//!
//! For a received word within distance t of a codeword:
//!
//! 1. syndrome S(x) = sum over set bits of (x + alpha_i)^-1 mod g
//! 2. T = S^-1 mod g
//! 3. tau = sqrt(T + x) mod g
//! 4. partial extended Euclid: (a, b) with a = b*tau (mod g), deg a <= t/2
//! 5. error locator sigma = a^2 + x*b^2; roots over the support mark errors
//!
//! Any structural inconsistency (wrong root count, corrected word not a
//! codeword) is reported as a decoding failure rather than a silent wrong
//! answer.

use super::goppa::GoppaPrivateData;
use super::McElieceError;
use crate::costmodel::Counters;
use crate::fields::Gf2mPoly;
use crate::gf2linalg::BitVector;

/// Syndrome polynomial of a received word: zero iff the word is a codeword.
pub fn syndrome(goppa: &GoppaPrivateData, word: &BitVector, ctr: &Counters) -> Gf2mPoly {
    assert_eq!(word.len(), goppa.n());
    let _ = ctr; // additions only; the multiplies were spent building the tables
    let mut s = Gf2mPoly::zero();
    for i in 0..goppa.n() {
        if word.get(i) {
            s = s.add(goppa.inv_factor(i));
        }
    }
    s
}

/// Decodes `received` to (codeword, error) if it lies within distance t of a
/// codeword of the Goppa code.
pub fn decode(
    goppa: &GoppaPrivateData,
    received: &BitVector,
    ctr: &Counters,
) -> Result<(BitVector, BitVector), McElieceError> {
    if received.len() != goppa.n() {
        return Err(McElieceError::InvalidParams(format!(
            "received word length {} != n = {}",
            received.len(),
            goppa.n()
        )));
    }
    let f = goppa.field();
    let g = goppa.g();
    let t = goppa.t() as isize;

    let s = syndrome(goppa, received, ctr);
    if s.is_zero() {
        return Ok((received.clone(), BitVector::zero(goppa.n())));
    }

    // T = S^-1 mod g; tau = sqrt(T + x) mod g.
    let t_poly = Gf2mPoly::inverse_mod(&s, g, f, ctr).expect("nonzero mod irreducible g");
    let tau = t_poly.add(&Gf2mPoly::x()).sqrt_mod(g, goppa.sqrt_x(), f, ctr);

    // sigma = a^2 + x * b^2 with (a, b) from the degree-split Euclid run.
    // (tau = 0 falls out as (a, b) = (0, 1), sigma = x.)
    let (a, b) = Gf2mPoly::partial_ea(&tau, g, (t / 2) as usize, f, ctr);
    let a2 = a.square(f, ctr);
    let b2 = b.square(f, ctr);
    let xb2 = Gf2mPoly::from_coeffs(
        std::iter::once(0)
            .chain(b2.coeffs().iter().copied())
            .collect(),
    );
    let sigma = a2.add(&xb2);
    if sigma.is_zero() || sigma.degree() > t {
        return Err(McElieceError::DecodingFailure);
    }

    // Roots over the support are the error positions.
    let mut error = BitVector::zero(goppa.n());
    let mut roots = 0isize;
    for (i, &alpha) in goppa.support().iter().enumerate() {
        if sigma.eval(alpha, f, ctr) == 0 {
            error.set(i, true);
            roots += 1;
        }
    }
    if roots != sigma.degree() {
        return Err(McElieceError::DecodingFailure);
    }

    let codeword = received.xor(&error, ctr);
    if !syndrome(goppa, &codeword, ctr).is_zero() {
        return Err(McElieceError::DecodingFailure);
    }
    Ok((codeword, error))
}
