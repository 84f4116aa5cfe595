//! Dense univariate polynomials over [`BigComplex`] with the algebraic
//! primitives the rest of the crate consumes: Euclidean division,
//! approximate gcd, squarefree part, Taylor shift, and Laurent
//! principal-part extraction.

use rug::ops::CompleteRound;
use rug::Float;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::num::big::BigComplex;
use crate::num::laurent::LaurentPrincipalPart;

/// Polynomial with coefficients in ascending degree order.
///
/// The coefficient list carries no trailing exact zeros; the zero
/// polynomial is the empty list. The working precision is kept alongside
/// so the zero polynomial still knows its precision.
#[derive(Debug, Clone)]
pub struct CPoly {
    coeffs: Vec<BigComplex>,
    prec: u32,
}

impl CPoly {
    pub fn zero(prec: u32) -> Self {
        CPoly { coeffs: Vec::new(), prec }
    }

    pub fn one(prec: u32) -> Self {
        CPoly::constant(BigComplex::one(prec))
    }

    pub fn constant(c: BigComplex) -> Self {
        let prec = c.prec();
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        CPoly { coeffs, prec }
    }

    pub fn from_coeffs(prec: u32, coeffs: Vec<BigComplex>) -> Self {
        let mut p = CPoly { coeffs, prec };
        p.trim();
        p
    }

    /// Integer coefficients, ascending degree. Test and example helper.
    pub fn from_i64s(prec: u32, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            prec,
            coeffs.iter().map(|&c| BigComplex::from_i64(prec, c)).collect(),
        )
    }

    /// `(re, im)` coefficient pairs, ascending degree.
    pub fn from_f64_pairs(prec: u32, coeffs: &[(f64, f64)]) -> Self {
        Self::from_coeffs(
            prec,
            coeffs
                .iter()
                .map(|&(re, im)| BigComplex::from_f64s(prec, re, im))
                .collect(),
        )
    }

    /// The monomial `c * z^k`.
    pub fn monomial(c: BigComplex, k: usize) -> Self {
        let prec = c.prec();
        if c.is_zero() {
            return CPoly::zero(prec);
        }
        let mut coeffs = vec![BigComplex::new(prec); k];
        coeffs.push(c);
        CPoly { coeffs, prec }
    }

    /// Monic product of linear factors `prod (z - r)`.
    pub fn from_roots(prec: u32, roots: &[BigComplex]) -> Self {
        let mut p = CPoly::one(prec);
        for r in roots {
            p = p.mul_linear_root(r);
        }
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        CPoly {
            coeffs: self.coeffs.iter().map(|c| c.with_prec(prec)).collect(),
            prec,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg_i(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[BigComplex] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigComplex {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| BigComplex::new(self.prec))
    }

    pub fn lc(&self) -> Option<&BigComplex> {
        self.coeffs.last()
    }

    /// Largest coefficient modulus; zero for the zero polynomial.
    pub fn max_coeff_abs(&self) -> Float {
        let mut m = Float::new(self.prec);
        for c in &self.coeffs {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    pub fn eval(&self, z: &BigComplex) -> BigComplex {
        let prec = self.prec;
        let mut acc = BigComplex::new(prec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    /// Evaluates `p` and `p'` in a single Horner pass.
    pub fn eval_with_deriv(&self, z: &BigComplex) -> (BigComplex, BigComplex) {
        let prec = self.prec;
        let mut p = BigComplex::new(prec);
        let mut dp = BigComplex::new(prec);
        for c in self.coeffs.iter().rev() {
            dp = &(&dp * z) + &p;
            p = &(&p * z) + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> CPoly {
        let prec = self.prec;
        if self.coeffs.len() <= 1 {
            return CPoly::zero(prec);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul_float(&Float::with_val(prec, k as u64)))
            .collect();
        CPoly::from_coeffs(prec, coeffs)
    }

    pub fn neg(&self) -> CPoly {
        CPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let prec = self.prec;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &other.coeff(k));
        }
        CPoly::from_coeffs(prec, coeffs)
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        self.add(&other.neg())
    }

    /// Schoolbook product; degrees in this crate stay small enough that
    /// no FFT is warranted.
    pub fn mul(&self, other: &CPoly) -> CPoly {
        let prec = self.prec;
        if self.is_zero() || other.is_zero() {
            return CPoly::zero(prec);
        }
        let mut coeffs = vec![BigComplex::new(prec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        CPoly::from_coeffs(prec, coeffs)
    }

    pub fn scale(&self, s: &BigComplex) -> CPoly {
        CPoly::from_coeffs(self.prec, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul_float(&self, s: &Float) -> CPoly {
        CPoly::from_coeffs(self.prec, self.coeffs.iter().map(|c| c.mul_float(s)).collect())
    }

    /// Multiplies by the monic linear factor `(z - r)`.
    pub fn mul_linear_root(&self, r: &BigComplex) -> CPoly {
        let prec = self.prec;
        if self.is_zero() {
            return CPoly::zero(prec);
        }
        let mut coeffs = vec![BigComplex::new(prec); self.coeffs.len() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[i + 1] = &coeffs[i + 1] + a;
            coeffs[i] = &coeffs[i] - &(a * r);
        }
        CPoly::from_coeffs(prec, coeffs)
    }

    pub fn monic(&self) -> CPoly {
        match self.lc() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                let mut p = self.scale(&inv);
                // Pin the leading coefficient to exactly one.
                if let Some(last) = p.coeffs.last_mut() {
                    *last = BigComplex::one(self.prec);
                }
                p
            }
        }
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &CPoly) -> Result<(CPoly, CPoly)> {
        let prec = self.prec;
        if d.is_zero() {
            return Err(Error::InvalidInput("division by the zero polynomial".into()));
        }
        if self.deg_i() < d.deg_i() {
            return Ok((CPoly::zero(prec), self.clone()));
        }
        let dlc_inv = d.lc().unwrap().recip();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut q = vec![BigComplex::new(prec); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + dd] * &dlc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate().take(dd) {
                    rem[k + j] = &rem[k + j] - &(&c * dc);
                }
            }
            rem[k + dd] = BigComplex::new(prec);
            q[k] = c;
        }
        rem.truncate(dd);
        Ok((CPoly::from_coeffs(prec, q), CPoly::from_coeffs(prec, rem)))
    }

    /// Taylor shift: coefficients of `p(z + c)`.
    pub fn shift(&self, c: &BigComplex) -> CPoly {
        let prec = self.prec;
        if self.coeffs.len() <= 1 {
            return self.clone();
        }
        // Repeated synthetic division by (z - c); the remainders are the
        // shifted coefficients in ascending order.
        let _ = prec;
        let n = self.coeffs.len();
        let mut work = self.coeffs.clone();
        for k in 0..n - 1 {
            for j in (k..n - 1).rev() {
                work[j] = &work[j] + &(&work[j + 1] * c);
            }
        }
        CPoly::from_coeffs(prec, work)
    }

    /// Divides out `(z - a)^k` by repeated synthetic division, dropping
    /// the (necessarily small) remainders; `a` must be a root of
    /// multiplicity at least `k`.
    pub fn deflate(&self, a: &BigComplex, k: usize) -> CPoly {
        let mut cur = self.clone();
        for _ in 0..k {
            let coeffs = cur.coeffs;
            let mut quot = Vec::with_capacity(coeffs.len().saturating_sub(1));
            let mut acc = BigComplex::new(self.prec);
            for c in coeffs.iter().rev() {
                acc = &(&acc * a) + c;
                quot.push(acc.clone());
            }
            quot.pop(); // the remainder p(a)
            quot.reverse();
            cur = CPoly::from_coeffs(self.prec, quot);
        }
        cur
    }

    /// Drops trailing coefficients of modulus below `tol` (absolute).
    pub fn trim_trailing_below(&self, tol: &Float) -> CPoly {
        let mut coeffs = self.coeffs.clone();
        while matches!(coeffs.last(), Some(c) if c.abs() < *tol) {
            coeffs.pop();
        }
        CPoly { coeffs, prec: self.prec }
    }

    /// Divides all coefficients by the largest modulus (gcd-style
    /// normalization; a no-op on the zero polynomial).
    fn normalized_by_max(&self) -> CPoly {
        let m = self.max_coeff_abs();
        if m.is_zero() {
            return self.clone();
        }
        CPoly::from_coeffs(self.prec, self.coeffs.iter().map(|c| c.div_float(&m)).collect())
    }
}

impl Serialize for CPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

/// Parses the JSON polynomial encoding: an array of coefficients in
/// ascending degree, each a 2-array `[re, im]` of decimal strings (bare
/// JSON numbers are accepted too).
pub fn poly_from_json(prec: u32, value: &serde_json::Value) -> Result<CPoly> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::InvalidInput("polynomial must be a JSON array".into()))?;
    let mut coeffs = Vec::with_capacity(arr.len());
    for (k, c) in arr.iter().enumerate() {
        let parse_part = |v: &serde_json::Value| -> Result<String> {
            match v {
                serde_json::Value::String(s) => Ok(s.clone()),
                serde_json::Value::Number(n) => Ok(n.to_string()),
                _ => Err(Error::InvalidInput(format!(
                    "coefficient {k}: parts must be decimal strings or numbers"
                ))),
            }
        };
        let (re, im) = match c {
            serde_json::Value::Array(parts) if parts.len() == 2 => {
                (parse_part(&parts[0])?, parse_part(&parts[1])?)
            }
            serde_json::Value::Number(n) => (n.to_string(), "0".to_string()),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "coefficient {k}: expected [re, im] pair"
                )))
            }
        };
        coeffs.push(BigComplex::parse_decimal(prec, &re, &im)?);
    }
    Ok(CPoly::from_coeffs(prec, coeffs))
}

/// Threshold below which an Euclidean remainder counts as rounding noise:
/// `2^(32 - prec)` relative to the (normalized) input scale.
fn gcd_zero_threshold(prec: u32) -> Float {
    Float::with_val(prec, 1u32) >> (prec - 32)
}

/// Monic approximate gcd by Euclidean remainders with a relative
/// coefficient-drop threshold. Exactly coprime integer inputs at >= 128
/// bits come out as the constant 1.
pub fn poly_gcd(a: &CPoly, b: &CPoly) -> Result<CPoly> {
    let prec = a.prec();
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidInput("gcd of two zero polynomials".into()));
    }
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    let thresh = gcd_zero_threshold(prec);
    let (mut r0, mut r1) = (a.normalized_by_max(), b.normalized_by_max());
    if r0.deg_i() < r1.deg_i() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_zero() {
        // Leading coefficients at rounding-noise size would poison the
        // quotient; drop them first.
        let lead_tol = (&thresh * &r1.max_coeff_abs()).complete(prec);
        let r1t = r1.trim_trailing_below(&lead_tol);
        if r1t.is_zero() {
            break;
        }
        let (_, mut r) = r0.divrem(&r1t)?;
        if r.max_coeff_abs() < thresh {
            r = CPoly::zero(prec);
        } else {
            r = r.normalized_by_max();
        }
        r0 = r1t;
        r1 = r;
    }
    Ok(r0.monic())
}

/// Monic `p / gcd(p, p')`: same distinct zeros as `p`, each simple.
pub fn squarefree_part(p: &CPoly) -> Result<CPoly> {
    if p.is_zero() {
        return Err(Error::InvalidInput("squarefree part of the zero polynomial".into()));
    }
    if p.is_constant() {
        return Ok(CPoly::one(p.prec()));
    }
    let g = poly_gcd(p, &p.derivative())?;
    let (q, _) = p.divrem(&g)?;
    Ok(q.monic())
}

/// Euclidean division exposed under the spec name: `s = h*t + m`,
/// `deg m < deg t`.
pub fn polydiv(s: &CPoly, t: &CPoly) -> Result<(CPoly, CPoly)> {
    s.divrem(t)
}

/// Power-series coefficients of `num(pole + u) / (den(pole + u) / u^order)`
/// through `u^(terms-1)`. The denominator must vanish to exactly `order`
/// at the pole.
pub fn local_expansion(
    num: &CPoly,
    den: &CPoly,
    pole: &BigComplex,
    order: usize,
    terms: usize,
) -> Result<Vec<BigComplex>> {
    let prec = num.prec();
    if den.is_zero() {
        return Err(Error::InvalidInput("denominator is zero".into()));
    }
    let ns = num.shift(pole);
    let ds = den.shift(pole);
    let scale = ds.max_coeff_abs();
    // Graded tolerance: a pole location known to relative eps leaves the
    // k-th shifted coefficient of size scale * eps^((order-k)/order).
    for k in 0..order {
        let exp = ((prec / 2) as i64 * (order - k) as i64) / order as i64;
        let tol_k = Float::with_val(prec, Float::i_exp(1, -(exp as i32))) * &scale;
        if ds.coeff(k).abs() > tol_k {
            return Err(Error::InvalidInput(format!(
                "denominator does not vanish to order {order} at the given pole (coeff {k} too large)"
            )));
        }
    }
    let tol = (Float::with_val(prec, 1u32) >> (prec / 2)) * &scale;
    let d0 = ds.coeff(order);
    if d0.abs() <= tol {
        return Err(Error::DegeneratePole(format!(
            "denominator vanishes beyond order {order} at the given pole"
        )));
    }
    // Truncated series division g = ns / (ds >> order).
    let d0_inv = d0.recip();
    let mut g: Vec<BigComplex> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = ns.coeff(k);
        for (j, gj) in g.iter().enumerate() {
            acc = &acc - &(gj * &ds.coeff(order + k - j));
        }
        g.push(&acc * &d0_inv);
    }
    Ok(g)
}

/// Laurent principal part of `num/den` at a pole of the given order,
/// extracted by Taylor shift and truncated series division.
pub fn principal_parts(
    num: &CPoly,
    den: &CPoly,
    pole: &BigComplex,
    order: usize,
) -> Result<LaurentPrincipalPart> {
    if order == 0 {
        return Err(Error::InvalidInput("pole order must be positive".into()));
    }
    let prec = num.prec();
    let g = local_expansion(num, den, pole, order, order)?;
    // num/den = sum_{r>=0} g_r u^(r-order); lambda_s is the coefficient of
    // u^(-s), i.e. g_(order-s).
    let coeffs: Vec<BigComplex> = (1..=order).map(|s| g[order - s].clone()).collect();
    let lam_top = &coeffs[order - 1];
    let floor = (Float::with_val(prec, 1u32) >> (prec / 2)) * num.max_coeff_abs().max(&Float::with_val(prec, 1));
    if lam_top.abs() <= floor {
        return Err(Error::DegeneratePole(
            "leading Laurent coefficient below the precision floor (non-coprime input?)".into(),
        ));
    }
    Ok(LaurentPrincipalPart::new(pole.clone(), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_poly(prec: u32, coeffs: &[i64]) -> CPoly {
        CPoly::from_i64s(prec, coeffs)
    }

    #[test]
    fn eval_and_shift() {
        let p = z_poly(256, &[1, -3, 0, 2]); // 2z^3 - 3z + 1
        let z = BigComplex::from_f64s(256, 2.0, 1.0);
        let direct = p.eval(&z);
        let shifted = p.shift(&z);
        assert!(direct.rel_dist(&shifted.coeff(0)) < 1e-70);
        // p(z + 1) at z = 1 equals p(2) = 16 - 6 + 1 = 11
        let s1 = p.shift(&BigComplex::one(256));
        assert!((s1.eval(&BigComplex::one(256)).re().to_f64() - 11.0).abs() < 1e-60);
    }

    #[test]
    fn gcd_shared_factor() {
        // gcd(z^2 - 1, z - 1) = z - 1
        let a = z_poly(256, &[-1, 0, 1]);
        let b = z_poly(256, &[-1, 1]);
        let g = poly_gcd(&a, &b).unwrap();
        assert_eq!(g.degree(), Some(1));
        assert!(g.coeff(0).rel_dist(&BigComplex::from_i64(256, -1)) < 1e-60);
    }

    #[test]
    fn gcd_coprime_is_one() {
        // gcd(z, z - 1) = 1
        let a = z_poly(256, &[0, 1]);
        let b = z_poly(256, &[-1, 1]);
        let g = poly_gcd(&a, &b).unwrap();
        assert_eq!(g.degree(), Some(0));
        assert!(g.coeff(0).rel_dist(&BigComplex::one(256)) < 1e-60);
    }

    #[test]
    fn gcd_complex_shared_root() {
        // gcd((z-2i)(z+1), z-2i) = z - 2i
        let two_i = BigComplex::from_f64s(256, 0.0, 2.0);
        let a = CPoly::from_roots(256, &[two_i.clone(), BigComplex::from_i64(256, -1)]);
        let b = CPoly::from_roots(256, &[two_i.clone()]);
        let g = poly_gcd(&a, &b).unwrap();
        assert_eq!(g.degree(), Some(1));
        assert!(g.coeff(0).rel_dist(&-&two_i) < 1e-60);
    }

    #[test]
    fn gcd_both_zero_errors() {
        let z = CPoly::zero(256);
        assert!(poly_gcd(&z, &z).is_err());
    }

    #[test]
    fn squarefree_examples() {
        // rad(z^2) = z
        let r = squarefree_part(&z_poly(256, &[0, 0, 1])).unwrap();
        assert_eq!(r.degree(), Some(1));
        assert!(r.coeff(0).is_zero() || r.coeff(0).abs().to_f64() < 1e-60);

        // rad((z-1)^3 (z+1)) = (z-1)(z+1) = z^2 - 1
        let p = CPoly::from_roots(
            256,
            &[
                BigComplex::one(256),
                BigComplex::one(256),
                BigComplex::one(256),
                BigComplex::from_i64(256, -1),
            ],
        );
        let r = squarefree_part(&p).unwrap();
        let expect = z_poly(256, &[-1, 0, 1]);
        assert_eq!(r.degree(), Some(2));
        for k in 0..=2 {
            assert!((&r.coeff(k) - &expect.coeff(k)).abs().to_f64() < 1e-60);
        }

        // rad(z^2 (z-1)) = z(z-1)
        let p = z_poly(256, &[0, 0, -1, 1]);
        let r = squarefree_part(&p).unwrap();
        let expect = z_poly(256, &[0, -1, 1]);
        assert_eq!(r.degree(), Some(2));
        for k in 0..=2 {
            assert!((&r.coeff(k) - &expect.coeff(k)).abs().to_f64() < 1e-60);
        }

        assert!(squarefree_part(&CPoly::zero(256)).is_err());
    }

    #[test]
    fn polydiv_examples() {
        // (S=1, T=z) -> (0, 1)
        let (h, m) = polydiv(&z_poly(256, &[1]), &z_poly(256, &[0, 1])).unwrap();
        assert!(h.is_zero());
        assert_eq!(m.degree(), Some(0));

        // (S=z^2+1, T=z) -> (z, 1)
        let (h, m) = polydiv(&z_poly(256, &[1, 0, 1]), &z_poly(256, &[0, 1])).unwrap();
        assert_eq!(h.degree(), Some(1));
        assert!(h.coeff(1).rel_dist(&BigComplex::one(256)) < 1e-60);
        assert!(m.coeff(0).rel_dist(&BigComplex::one(256)) < 1e-60);

        // (S=z^3, T=z^2+1) -> (z, -z)
        let (h, m) = polydiv(&z_poly(256, &[0, 0, 0, 1]), &z_poly(256, &[1, 0, 1])).unwrap();
        assert!(h.coeff(1).rel_dist(&BigComplex::one(256)) < 1e-60);
        assert!(m.coeff(1).rel_dist(&BigComplex::from_i64(256, -1)) < 1e-60);

        assert!(polydiv(&z_poly(256, &[1]), &CPoly::zero(256)).is_err());
    }

    #[test]
    fn principal_parts_simple_pole() {
        // 1/z at 0: lambda_1 = 1
        let pp = principal_parts(
            &z_poly(256, &[1]),
            &z_poly(256, &[0, 1]),
            &BigComplex::new(256),
            1,
        )
        .unwrap();
        assert_eq!(pp.order(), 1);
        assert!(pp.coeff(1).rel_dist(&BigComplex::one(256)) < 1e-60);
    }

    #[test]
    fn principal_parts_double_pole_with_tail() {
        // 1/(z^2 (z-1)) at 0: 1/(z-1) = -1 - z - ... so lambda_2 = -1, lambda_1 = -1
        let pp = principal_parts(
            &z_poly(256, &[1]),
            &z_poly(256, &[0, 0, -1, 1]),
            &BigComplex::new(256),
            2,
        )
        .unwrap();
        let m1 = BigComplex::from_i64(256, -1);
        assert!(pp.coeff(2).rel_dist(&m1) < 1e-60);
        assert!(pp.coeff(1).rel_dist(&m1) < 1e-60);
    }

    #[test]
    fn principal_parts_fig2_exponent() {
        // The order-2 exponent pole at -2 + 3i/2 with numerator (3-i)/2 over
        // (z + 2 - 3i/2)^2 (z - 1 + i): lambda_2 = (3-i)/2.
        let prec = 256;
        let c1 = BigComplex::from_f64s(prec, -2.0, 1.5);
        let c2 = BigComplex::from_f64s(prec, 1.0, -1.0);
        let lam = BigComplex::from_f64s(prec, 1.5, -0.5);
        let mu = BigComplex::from_f64s(prec, -1.0, -1.0);
        // S/T = lam/(z-c1)^2 + mu/(z-c2)
        let t = CPoly::from_roots(prec, &[c1.clone(), c1.clone(), c2.clone()]);
        let s = CPoly::from_roots(prec, &[c2.clone()])
            .scale(&lam)
            .add(&CPoly::from_roots(prec, &[c1.clone(), c1.clone()]).scale(&mu));
        let pp = principal_parts(&s, &t, &c1, 2).unwrap();
        assert!(pp.coeff(2).rel_dist(&lam) < 1e-60);
    }

    #[test]
    fn principal_parts_degenerate_pole_detected() {
        // num shares the root: (z)(...)/(z^2): claiming order 2 at 0 with
        // numerator z leaves lambda_2 = 0.
        let res = principal_parts(
            &z_poly(256, &[0, 1]),
            &z_poly(256, &[0, 0, 1]),
            &BigComplex::new(256),
            2,
        );
        assert!(matches!(res, Err(Error::DegeneratePole(_))));
    }

    #[test]
    fn divrem_round_trip() {
        let p = z_poly(256, &[3, -2, 5, 1, -4]);
        let d = z_poly(256, &[7, 0, 2]);
        let (q, r) = p.divrem(&d).unwrap();
        let back = q.mul(&d).add(&r);
        for k in 0..p.coeffs().len() {
            assert!((&back.coeff(k) - &p.coeff(k)).abs().to_f64() < 1e-60);
        }
        assert!(r.deg_i() < d.deg_i());
    }
}
