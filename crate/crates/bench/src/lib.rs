//! Shared input builders for the benchmark targets.

use pqclab::gf2linalg::BitMatrix;
use pqclab::ring::{Domain, RingElement, N, Q};
use pqclab::xof::XofRng;

pub fn random_poly(rng: &mut XofRng) -> RingElement {
    let mut coeffs = [0u16; N];
    for c in coeffs.iter_mut() {
        *c = (rng.next_u32() % Q as u32) as u16;
    }
    RingElement::from_coeffs(coeffs, Domain::Coefficient)
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut XofRng) -> BitMatrix {
    BitMatrix::random(rows, cols, rng)
}

pub fn rng() -> XofRng {
    XofRng::new(&[99u8; 32], b"bench inputs")
}
