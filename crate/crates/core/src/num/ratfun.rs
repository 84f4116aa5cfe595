//! Rational functions as numerator/denominator pairs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::big::BigComplex;
use crate::num::poly::{poly_gcd, CPoly};

#[derive(Debug, Clone, Serialize)]
pub struct RationalFunction {
    pub num: CPoly,
    pub den: CPoly,
    /// Set only after gcd reduction, in which case gcd(num, den) has
    /// degree 0.
    pub reduced: bool,
}

impl RationalFunction {
    pub fn new(num: CPoly, den: CPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("rational function with zero denominator".into()));
        }
        Ok(RationalFunction { num, den, reduced: false })
    }

    pub fn from_poly(p: CPoly) -> Self {
        let prec = p.prec();
        RationalFunction { num: p, den: CPoly::one(prec), reduced: true }
    }

    pub fn zero(prec: u32) -> Self {
        RationalFunction {
            num: CPoly::zero(prec),
            den: CPoly::one(prec),
            reduced: true,
        }
    }

    pub fn prec(&self) -> u32 {
        self.den.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Divides out the approximate gcd and makes the denominator monic.
    pub fn reduce(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Ok(Self::zero(self.prec()));
        }
        let g = poly_gcd(&self.num, &self.den)?;
        let (num, den) = if g.is_constant() {
            (self.num.clone(), self.den.clone())
        } else {
            let (n, _) = self.num.divrem(&g)?;
            let (d, _) = self.den.divrem(&g)?;
            (n, d)
        };
        // Normalize so the denominator is monic.
        let lc_inv = den.lc().expect("nonzero denominator").recip();
        Ok(RationalFunction {
            num: num.scale(&lc_inv),
            den: den.monic(),
            reduced: true,
        })
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
            reduced: false,
        }
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
            reduced: self.reduced,
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
            reduced: false,
        }
    }

    /// Derivative `(n'd - nd')/d^2`.
    pub fn derivative(&self) -> RationalFunction {
        let n = &self.num;
        let d = &self.den;
        RationalFunction {
            num: n.derivative().mul(d).sub(&n.mul(&d.derivative())),
            den: d.mul(d),
            reduced: false,
        }
    }

    pub fn eval(&self, z: &BigComplex) -> BigComplex {
        let n = self.num.eval(z);
        let d = self.den.eval(z);
        &n / &d
    }
}
