//! The analytical complexity model (FLOP formulas, byte-size formulas,
//! scaling-law fits) plus live instrumentation counters and report emission.
//!
//! The model treats a polynomial multiplication as n pointwise
//! multiply-accumulates (NTT-domain accounting; transforms excluded), so the
//! measured counters are compared to the model by scaling-law fit, not by
//! absolute equality.

pub mod counters;
pub mod report;

pub use counters::{measure, Counters, OpCounters};

use serde::{Deserialize, Serialize};

/// The fixed polynomial degree of the lattice scheme.
pub const KYBER_N: u64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    Kyber,
    McEliece,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Kyber => "kyber",
            Scheme::McEliece => "mceliece",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Operation {
    Keygen,
    Encrypt,
    Decrypt,
}

impl Operation {
    pub fn name(&self) -> &'static str {
        match self {
            Operation::Keygen => "keygen",
            Operation::Encrypt => "encrypt",
            Operation::Decrypt => "decrypt",
        }
    }

    pub fn all() -> [Operation; 3] {
        [Operation::Keygen, Operation::Encrypt, Operation::Decrypt]
    }
}

/// Asymptotic class of a cost formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BigO {
    KSquaredN,
    KN,
    NCubed,
    NSquared,
}

impl BigO {
    pub fn label(&self) -> &'static str {
        match self {
            BigO::KSquaredN => "O(k²n)",
            BigO::KN => "O(kn)",
            BigO::NCubed => "O(n³)",
            BigO::NSquared => "O(n²)",
        }
    }
}

/// One symbolic cost formula: constant times the big-O monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CostFormula {
    pub scheme: Scheme,
    pub operation: Operation,
    pub constant: u64,
    pub class: BigO,
}

impl CostFormula {
    /// Evaluates the formula at (k, n).
    pub fn eval(&self, k: u64, n: u64) -> u64 {
        self.constant
            * match self.class {
                BigO::KSquaredN => k * k * n,
                BigO::KN => k * n,
                BigO::NCubed => n * n * n,
                BigO::NSquared => n * n,
            }
    }
}

/// The six-cell complexity comparison: both schemes, all three operations.
pub fn complexity_table() -> [CostFormula; 6] {
    [
        CostFormula {
            scheme: Scheme::Kyber,
            operation: Operation::Keygen,
            constant: 2,
            class: BigO::KSquaredN,
        },
        CostFormula {
            scheme: Scheme::Kyber,
            operation: Operation::Encrypt,
            constant: 4,
            class: BigO::KSquaredN,
        },
        CostFormula {
            scheme: Scheme::Kyber,
            operation: Operation::Decrypt,
            constant: 2,
            class: BigO::KN,
        },
        CostFormula {
            scheme: Scheme::McEliece,
            operation: Operation::Keygen,
            constant: 2,
            class: BigO::NCubed,
        },
        CostFormula {
            scheme: Scheme::McEliece,
            operation: Operation::Encrypt,
            constant: 2,
            class: BigO::NSquared,
        },
        CostFormula {
            scheme: Scheme::McEliece,
            operation: Operation::Decrypt,
            constant: 2,
            class: BigO::NSquared,
        },
    ]
}

/// Model FLOPs for the lattice scheme: keygen 2k²n, encryption 4k²n (two
/// matrix/vector products), decryption 2kn (one inner product).
pub fn kyber_model_flops(k: u64, n: u64) -> (u64, u64, u64) {
    (2 * k * k * n, 4 * k * k * n, 2 * k * n)
}

/// Model FLOPs for the code scheme: keygen 2n³ (matrix-matrix product),
/// encryption and decryption 2n² each.
pub fn mceliece_model_flops(n: u64) -> (u64, u64, u64) {
    (2 * n * n * n, 2 * n * n, 2 * n * n)
}

/// Least-squares power-law fit y = c * x^e on log-log coordinates;
/// returns (exponent, coefficient).
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2);
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in lx.iter().zip(&ly) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    let exponent = num / den;
    let coeff = (my - exponent * mx).exp();
    (exponent, coeff)
}

/// Largest relative deviation of y_i from c * x_i, with c the least-squares
/// proportionality constant. Zero means a perfect linear fit through the
/// origin.
pub fn proportionality_error(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let den: f64 = xs.iter().map(|x| x * x).sum();
    let c = num / den;
    xs.iter()
        .zip(ys)
        .map(|(x, y)| ((y - c * x) / (c * x)).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kyber_flops_at_reference_points() {
        // The bar-chart values for the smallest parameter set.
        assert_eq!(kyber_model_flops(2, 256), (2048, 4096, 1024));
        // Evaluated at k = 3 and k = 4.
        assert_eq!(kyber_model_flops(3, 256), (4608, 9216, 1536));
        assert_eq!(kyber_model_flops(4, 256), (8192, 16384, 2048));
        // Degenerate rank.
        assert_eq!(kyber_model_flops(0, 256), (0, 0, 0));
    }

    #[test]
    fn mceliece_flops_at_reference_points() {
        let (kg, enc, dec) = mceliece_model_flops(3488);
        assert_eq!(kg, 84_871_020_544); // 2 * 3488^3
        assert_eq!(enc, 24_332_288); // 2 * 3488^2
        assert_eq!(dec, 24_332_288);
        // Within 2% of the chart's rounded 8.5e10 / 2.4e7.
        assert!((kg as f64 - 8.5e10).abs() / 8.5e10 < 0.02);
        assert!((enc as f64 - 2.4e7).abs() / 2.4e7 < 0.02);
        // Degenerate length.
        assert_eq!(mceliece_model_flops(1), (2, 2, 2));
    }

    #[test]
    fn complexity_table_cells() {
        let cells: Vec<&str> = complexity_table().iter().map(|f| f.class.label()).collect();
        assert_eq!(
            cells,
            ["O(k²n)", "O(k²n)", "O(kn)", "O(n³)", "O(n²)", "O(n²)"]
        );
    }

    #[test]
    fn formula_eval_matches_direct_functions() {
        for f in complexity_table() {
            let direct = match (f.scheme, f.operation) {
                (Scheme::Kyber, Operation::Keygen) => kyber_model_flops(3, 256).0,
                (Scheme::Kyber, Operation::Encrypt) => kyber_model_flops(3, 256).1,
                (Scheme::Kyber, Operation::Decrypt) => kyber_model_flops(3, 256).2,
                (Scheme::McEliece, Operation::Keygen) => mceliece_model_flops(4608).0,
                (Scheme::McEliece, Operation::Encrypt) => mceliece_model_flops(4608).1,
                (Scheme::McEliece, Operation::Decrypt) => mceliece_model_flops(4608).2,
            };
            let (k, n) = match f.scheme {
                Scheme::Kyber => (3, 256),
                Scheme::McEliece => (0, 4608),
            };
            assert_eq!(f.eval(k, n), direct);
        }
    }

    #[test]
    fn power_law_fit_recovers_exact_cubic() {
        let xs = [16.0, 32.0, 64.0];
        let ys: Vec<f64> = xs.iter().map(|x| 7.0 * x * x * x).collect();
        let (e, c) = fit_power_law(&xs, &ys);
        assert!((e - 3.0).abs() < 1e-9);
        assert!((c - 7.0).abs() < 1e-6);
    }

    #[test]
    fn proportionality_error_of_exact_line_is_zero() {
        let xs = [4.0, 9.0, 16.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * x).collect();
        assert!(proportionality_error(&xs, &ys) < 1e-12);
    }
}
