//! Arbitrary-precision complex scalars on top of MPFR floats.
//!
//! Both parts of a [`BigComplex`] always carry the same precision and all
//! operations produce results at the precision of their left operand.
//! Values serialize as a pair of decimal strings and parse back to an
//! equal value at equal precision.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Special;
use rug::ops::CompleteRound;
use rug::Float;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Minimum precision accepted anywhere in the crate.
pub const MIN_PREC: u32 = 64;

/// Complex number with arbitrary-precision real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    re: Float,
    im: Float,
}

impl BigComplex {
    pub fn new(prec: u32) -> Self {
        debug_assert!(prec >= MIN_PREC);
        BigComplex {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn from_f64s(prec: u32, re: f64, im: f64) -> Self {
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_f64(prec: u32, re: f64) -> Self {
        Self::from_f64s(prec, re, 0.0)
    }

    pub fn from_i64(prec: u32, re: i64) -> Self {
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::new(prec),
        }
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        assert_eq!(re.prec(), im.prec(), "parts must share precision");
        BigComplex { re, im }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        BigComplex {
            re,
            im: Float::new(prec),
        }
    }

    /// Imaginary unit at the given precision.
    pub fn i(prec: u32) -> Self {
        BigComplex {
            re: Float::new(prec),
            im: Float::with_val(prec, 1),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(prec, 1)
    }

    /// `r * exp(i theta)`.
    pub fn from_polar(r: &Float, theta: &Float) -> Self {
        let prec = r.prec();
        let re = Float::with_val(prec, theta.cos_ref()) * r;
        let im = Float::with_val(prec, theta.sin_ref()) * r;
        BigComplex { re, im }
    }

    /// Parses a pair of decimal strings at the requested precision.
    pub fn parse_decimal(prec: u32, re: &str, im: &str) -> Result<Self> {
        let parse = |s: &str| -> Result<Float> {
            let incomplete = Float::parse(s.trim())
                .map_err(|e| Error::InvalidInput(format!("bad decimal literal {s:?}: {e}")))?;
            Ok(Float::with_val(prec, incomplete))
        };
        let v = BigComplex {
            re: parse(re)?,
            im: parse(im)?,
        };
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!(
                "non-finite value parsed from ({re:?}, {im:?})"
            )));
        }
        Ok(v)
    }

    /// Decimal strings with enough digits to parse back to an equal value
    /// at equal precision.
    pub fn to_decimal_strings(&self) -> (String, String) {
        (float_to_decimal(&self.re), float_to_decimal(&self.im))
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn into_parts(self) -> (Float, Float) {
        (self.re, self.im)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// Rounds both parts to a new precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: (-&self.im).complete(self.prec()),
        }
    }

    /// Modulus `|z|`, computed as a hypotenuse to avoid overflow.
    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        let mut n = Float::with_val(prec, self.re.square_ref());
        n += Float::with_val(prec, self.im.square_ref());
        n
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Float {
        let prec = self.prec();
        // A negative zero imaginary part would flip atan2 to -pi on the
        // negative real axis; pin the principal convention instead.
        if self.im.is_zero() {
            return if self.re.is_sign_negative() && !self.re.is_zero() {
                Float::with_val(prec, rug::float::Constant::Pi)
            } else {
                Float::new(prec)
            };
        }
        self.im.clone().atan2(&self.re)
    }

    pub fn scale_f64(&self, s: f64) -> Self {
        let prec = self.prec();
        BigComplex {
            re: &self.re * Float::with_val(prec, s),
            im: &self.im * Float::with_val(prec, s),
        }
    }

    pub fn mul_float(&self, s: &Float) -> Self {
        let prec = self.prec();
        BigComplex {
            re: (&self.re * s).complete(prec),
            im: (&self.im * s).complete(prec),
        }
    }

    pub fn div_float(&self, s: &Float) -> Self {
        let prec = self.prec();
        BigComplex {
            re: (&self.re / s).complete(prec),
            im: (&self.im / s).complete(prec),
        }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let prec = self.prec();
        BigComplex {
            re: (&self.re / &n).complete(prec),
            im: -(&self.im / &n).complete(prec),
        }
    }

    pub fn mul_i(&self) -> Self {
        BigComplex {
            re: (-&self.im).complete(self.prec()),
            im: self.re.clone(),
        }
    }

    /// Complex square root on the principal branch.
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.is_zero() {
            return BigComplex::new(prec);
        }
        // w = sqrt((|z| + |re|)/2); the stable two-case formula.
        let r = self.abs();
        let t = Float::with_val(prec, self.re.abs_ref());
        let w = ((r + t) / 2u32).sqrt();
        if self.re.is_sign_positive() && !self.re.is_zero() {
            let im = &self.im / (&w * 2u32).complete(prec);
            BigComplex { re: w, im }
        } else {
            // For re <= 0 the real part is |im|/(2w) and the imaginary part
            // carries the sign of im (sign(0) = +, matching the principal cut).
            let re = Float::with_val(prec, self.im.abs_ref()) / (&w * 2u32).complete(prec);
            if self.im.is_sign_negative() && !self.im.is_zero() {
                BigComplex { re, im: -w }
            } else {
                BigComplex { re, im: w }
            }
        }
    }

    /// Complex exponential.
    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let m = Float::with_val(prec, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(prec));
        BigComplex {
            re: (&m * &c).complete(prec),
            im: (m * s),
        }
    }

    /// Principal branch of the complex logarithm.
    pub fn ln(&self) -> Self {
        debug_assert!(!self.is_zero(), "log of zero");
        BigComplex {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, e: i64) -> Self {
        let prec = self.prec();
        if e == 0 {
            return BigComplex::one(prec);
        }
        let mut base = if e < 0 { self.recip() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = BigComplex::one(prec);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// `z^w = exp(w log z)` on the principal branch of the logarithm.
    pub fn pow(&self, w: &BigComplex) -> Self {
        if self.is_zero() {
            return BigComplex::new(self.prec());
        }
        (w * &self.ln()).exp()
    }

    /// Principal k-th root: modulus root with argument `Arg(z)/k`.
    pub fn root_principal(&self, k: u32) -> Self {
        let prec = self.prec();
        if self.is_zero() {
            return BigComplex::new(prec);
        }
        let r = self.abs().root(k);
        let theta = self.arg() / Float::with_val(prec, k);
        BigComplex::from_polar(&r, &theta)
    }

    /// Relative distance `|a-b| / max(|a|, |b|)`; absolute when both are tiny.
    pub fn rel_dist(&self, other: &BigComplex) -> f64 {
        let d = (self - other).abs();
        let s = self.abs().max(&other.abs());
        if s.to_f64() <= f64::MIN_POSITIVE {
            d.to_f64()
        } else {
            (d / s).to_f64()
        }
    }
}

/// Decimal string with enough digits for an exact binary round trip.
pub fn float_to_decimal(x: &Float) -> String {
    if x.is_zero() {
        // Preserve the sign of zero but keep the common case short.
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        // Should never appear in artifacts; serialize defensively.
        return if x.is_nan() {
            "nan".into()
        } else if x.is_sign_negative() {
            "-inf".into()
        } else {
            "inf".into()
        };
    }
    // None asks MPFR for a digit count that reads back exactly; trailing
    // zeros in the mantissa denote the same decimal value, so dropping
    // them keeps the round trip exact while shortening common values.
    let s = x.to_string_radix(10, None);
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, Some(e)),
        None => (s.as_str(), None),
    };
    let trimmed = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.')
    } else {
        mantissa
    };
    match exp {
        Some(e) if e != "0" => format!("{trimmed}e{e}"),
        _ => trimmed.to_string(),
    }
}

/// Parses a single decimal string at the requested precision.
pub fn float_from_decimal(prec: u32, s: &str) -> Result<Float> {
    match s.trim() {
        "nan" => return Ok(Float::with_val(prec, Special::Nan)),
        "inf" => return Ok(Float::with_val(prec, Special::Infinity)),
        "-inf" => return Ok(Float::with_val(prec, Special::NegInfinity)),
        t => {
            let incomplete = Float::parse(t)
                .map_err(|e| Error::InvalidInput(format!("bad decimal literal {t:?}: {e}")))?;
            Ok(Float::with_val(prec, incomplete))
        }
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64s();
        if im == 0.0 {
            write!(f, "{re}")
        } else if im > 0.0 {
            write!(f, "{re}+{im}i")
        } else {
            write!(f, "{re}{im}i")
        }
    }
}

impl Serialize for BigComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (re, im) = self.to_decimal_strings();
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&re)?;
        seq.serialize_element(&im)?;
        seq.end()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: &BigComplex) -> BigComplex {
                (&self).$method(rhs)
            }
        }
        impl $trait<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        let prec = self.prec();
        BigComplex {
            re: (&self.re + &rhs.re).complete(prec),
            im: (&self.im + &rhs.im).complete(prec),
        }
    }
}
forward_binop!(Add, add);

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        let prec = self.prec();
        BigComplex {
            re: (&self.re - &rhs.re).complete(prec),
            im: (&self.im - &rhs.im).complete(prec),
        }
    }
}
forward_binop!(Sub, sub);

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let prec = self.prec();
        let re = (&self.re * &rhs.re).complete(prec) - (&self.im * &rhs.im).complete(prec);
        let im = (&self.re * &rhs.im).complete(prec) + (&self.im * &rhs.re).complete(prec);
        BigComplex { re, im }
    }
}
forward_binop!(Mul, mul);

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        self * &rhs.recip()
    }
}
forward_binop!(Div, div);

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        let prec = self.prec();
        BigComplex {
            re: (-&self.re).complete(prec),
            im: (-&self.im).complete(prec),
        }
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}
