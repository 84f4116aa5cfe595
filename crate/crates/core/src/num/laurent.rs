//! Laurent principal parts at a finite pole.

use serde::Serialize;

use crate::num::big::BigComplex;

/// The principal part `sum_{s=1}^{m} lambda_s (z - pole)^(-s)` of a
/// function at a pole of order `m`. Index `s` is 1-based; `lambda_m != 0`.
#[derive(Debug, Clone, Serialize)]
pub struct LaurentPrincipalPart {
    pub pole: BigComplex,
    /// `coeffs[s-1]` is the coefficient of `(z - pole)^(-s)`.
    pub coeffs: Vec<BigComplex>,
}

impl LaurentPrincipalPart {
    pub fn new(pole: BigComplex, coeffs: Vec<BigComplex>) -> Self {
        assert!(!coeffs.is_empty(), "principal part needs at least one term");
        LaurentPrincipalPart { pole, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient `lambda_s` (1-based).
    pub fn coeff(&self, s: usize) -> &BigComplex {
        &self.coeffs[s - 1]
    }

    /// Leading coefficient `lambda_m`.
    pub fn top(&self) -> &BigComplex {
        self.coeffs.last().unwrap()
    }

    /// Value of the principal part at `z`.
    pub fn eval(&self, z: &BigComplex) -> BigComplex {
        let prec = self.pole.prec();
        let w = (z - &self.pole).recip();
        let mut acc = BigComplex::new(prec);
        // Horner in powers of 1/(z - pole).
        for lam in self.coeffs.iter().rev() {
            acc = &(&acc * &w) + lam;
        }
        &acc * &w
    }
}
