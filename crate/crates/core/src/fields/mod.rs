//! Scalar arithmetic: integers mod q = 3329, the binary extension field
//! GF(2^m), and polynomials over GF(2^m).
//!
//! Everything here is a pure function of its inputs and freely shareable
//! across threads.

pub mod gf2m;
pub mod poly;
pub mod zq;

pub use gf2m::{Gf2m, GfElem};
pub use poly::Gf2mPoly;
pub use zq::Q;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported field degree m = {0} (supported: 3..=13)")]
    UnsupportedDegree(u32),
}
