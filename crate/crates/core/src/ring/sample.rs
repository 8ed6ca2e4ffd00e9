//! Noise and matrix sampling.

use super::{Domain, PolyMatrix, RingElement, RingError, Seed, N, Q};
use crate::xof::Xof128;

/// Rejection cap per matrix entry; hit only on a broken XOF.
const REJECTION_CAP: u32 = 1_000_000;

/// Centered binomial sample: each coefficient is the difference of two eta-bit
/// popcounts, mapped into [0, q). Consumes exactly 64*eta bytes.
pub fn cbd_sample(bytes: &[u8], eta: u32) -> Result<RingElement, RingError> {
    assert!(eta == 2 || eta == 3, "eta must be 2 or 3");
    let need = 64 * eta as usize;
    if bytes.len() < need {
        return Err(RingError::StreamExhausted {
            need,
            have: bytes.len(),
        });
    }
    let bit = |idx: usize| (bytes[idx / 8] >> (idx % 8)) & 1;
    let mut coeffs = [0u16; N];
    for (i, c) in coeffs.iter_mut().enumerate() {
        let base = 2 * eta as usize * i;
        let mut a = 0u16;
        let mut b = 0u16;
        for j in 0..eta as usize {
            a += bit(base + j) as u16;
            b += bit(base + eta as usize + j) as u16;
        }
        *c = if a >= b { a - b } else { Q - (b - a) };
    }
    Ok(RingElement::from_coeffs(coeffs, Domain::Coefficient))
}

/// Deterministic k x k matrix expansion: entry (row, col) is rejection-sampled
/// from SHAKE-128(rho || row || col) as 12-bit values < q. The output is
/// NTT-domain by convention.
pub fn expand_matrix(rho: &Seed, k: usize) -> Result<PolyMatrix, RingError> {
    assert!((2..=4).contains(&k), "module rank must be 2, 3, or 4");
    let mut entries = Vec::with_capacity(k * k);
    for row in 0..k {
        for col in 0..k {
            entries.push(expand_entry(rho, row as u8, col as u8)?);
        }
    }
    Ok(PolyMatrix::from_entries(k, entries))
}

fn expand_entry(rho: &Seed, row: u8, col: u8) -> Result<RingElement, RingError> {
    let mut xof = Xof128::new(&[rho.as_bytes(), &[row, col]]);
    let mut coeffs = [0u16; N];
    let mut filled = 0;
    let mut rejected = 0u32;
    let mut buf = [0u8; 3];
    while filled < N {
        xof.read(&mut buf);
        let d1 = buf[0] as u16 | ((buf[1] as u16 & 0x0F) << 8);
        let d2 = (buf[1] >> 4) as u16 | ((buf[2] as u16) << 4);
        for d in [d1, d2] {
            if filled == N {
                break;
            }
            if d < Q {
                coeffs[filled] = d;
                filled += 1;
            } else {
                rejected += 1;
                if rejected > REJECTION_CAP {
                    return Err(RingError::RejectionOverflow);
                }
            }
        }
    }
    Ok(RingElement::from_coeffs(coeffs, Domain::Ntt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xof::XofRng;

    #[test]
    fn cbd_of_zero_bytes_is_zero() {
        for eta in [2u32, 3] {
            let bytes = vec![0u8; 64 * eta as usize];
            let p = cbd_sample(&bytes, eta).unwrap();
            assert_eq!(p.coeffs(), &[0u16; N]);
        }
    }

    #[test]
    fn cbd_range_is_centered() {
        let mut rng = XofRng::new(&[30u8; 32], b"cbd range");
        for eta in [2u16, 3] {
            let mut bytes = vec![0u8; 64 * eta as usize];
            for _ in 0..200 {
                rng.fill(&mut bytes);
                let p = cbd_sample(&bytes, eta as u32).unwrap();
                for &c in p.coeffs() {
                    assert!(c <= eta || c >= Q - eta, "coefficient {c} out of range");
                }
            }
        }
    }

    #[test]
    fn cbd_short_stream_is_an_error() {
        let bytes = vec![0u8; 127];
        assert!(matches!(
            cbd_sample(&bytes, 2),
            Err(RingError::StreamExhausted { need: 128, .. })
        ));
    }

    #[test]
    fn cbd_distribution_matches_binomial_pmf() {
        // chi-squared against Binomial(2*eta, 1/2) - eta over one million draws.
        for (eta, crit) in [(2u32, 18.47f64), (3, 22.46)] {
            // critical values: p = 0.001 at df = 2*eta
            let draws = 1_000_000usize;
            let polys = draws.div_ceil(N);
            let mut rng = XofRng::new(&[31u8; 32], b"cbd chi2");
            let mut bytes = vec![0u8; 64 * eta as usize];
            let cats = 2 * eta as usize + 1;
            let mut observed = vec![0u64; cats];
            let mut seen = 0usize;
            'outer: for _ in 0..polys {
                rng.fill(&mut bytes);
                let p = cbd_sample(&bytes, eta).unwrap();
                for &c in p.coeffs() {
                    let signed = if c > Q / 2 {
                        c as i32 - Q as i32
                    } else {
                        c as i32
                    };
                    observed[(signed + eta as i32) as usize] += 1;
                    seen += 1;
                    if seen == draws {
                        break 'outer;
                    }
                }
            }
            // binomial coefficients C(2*eta, j)
            let mut coeff = vec![1f64; cats];
            for j in 1..cats {
                coeff[j] = coeff[j - 1] * (2 * eta as usize - j + 1) as f64 / j as f64;
            }
            let scale = 4f64.powi(eta as i32);
            let mut chi2 = 0f64;
            for j in 0..cats {
                let expect = draws as f64 * coeff[j] / scale;
                let diff = observed[j] as f64 - expect;
                chi2 += diff * diff / expect;
            }
            assert!(chi2 < crit, "eta = {eta}: chi2 = {chi2:.2} >= {crit}");
        }
    }

    #[test]
    fn expand_matrix_is_deterministic() {
        let rho = Seed([42u8; 32]);
        let a = expand_matrix(&rho, 3).unwrap();
        let b = expand_matrix(&rho, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn expand_matrix_coeffs_below_q() {
        let rho = Seed([43u8; 32]);
        let a = expand_matrix(&rho, 2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(a.at(i, j).coeffs().iter().all(|&c| c < Q));
                assert_eq!(a.at(i, j).domain(), Domain::Ntt);
            }
        }
    }

    #[test]
    fn distinct_seeds_give_almost_disjoint_matrices() {
        let a = expand_matrix(&Seed([1u8; 32]), 2).unwrap();
        let b = expand_matrix(&Seed([2u8; 32]), 2).unwrap();
        let mut equal = 0usize;
        let mut total = 0usize;
        for i in 0..2 {
            for j in 0..2 {
                for (x, y) in a.at(i, j).coeffs().iter().zip(b.at(i, j).coeffs()) {
                    equal += (x == y) as usize;
                    total += 1;
                }
            }
        }
        // Expect ~1/q collisions; 99% difference leaves a wide margin.
        assert!(equal * 100 <= total, "{equal}/{total} coefficients collide");
    }
}
