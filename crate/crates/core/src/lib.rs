//! Two post-quantum public-key cryptosystems with an instrumented cost model:
//!
//! * [`kyber`]: a Module-LWE lattice PKE over `Z_q[X]/(X^256+1)` with NTT
//!   multiplication, in the three standard parameter sets (512/768/1024).
//! * [`mceliece`]: binary-Goppa McEliece with Patterson decoding, in the
//!   three full parameter sets plus toy codes small enough for exhaustive
//!   oracles.
//! * [`costmodel`]: analytical FLOP formulas, live operation counters, byte
//!   sizes, and the CSV/JSON/Markdown comparison reports consumed by the
//!   `pqclab` CLI.
//!
//! All randomness is drawn from explicit 32-byte seeds through SHAKE, so key
//! generation, encryption, and report generation are reproducible bit for bit.

pub mod costmodel;
pub mod fields;
pub mod filefmt;
pub mod gf2linalg;
pub mod kyber;
pub mod mceliece;
pub mod ring;
pub mod xof;

pub use costmodel::report::{build_report, CostReport, ReportConfig};
pub use costmodel::{measure, Counters, OpCounters};
pub use fields::{Gf2m, Gf2mPoly};
pub use gf2linalg::{BitMatrix, BitVector, Permutation};
pub use kyber::{KyberCiphertext, KyberLevel, KyberParams, KyberPublicKey, KyberSecretKey};
pub use mceliece::{
    McElieceCiphertext, McElieceLevel, McElieceParams, McEliecePublicKey, McElieceSecretKey,
    Variant,
};
pub use ring::{PolyMatrix, PolyVec, RingElement, Seed};
