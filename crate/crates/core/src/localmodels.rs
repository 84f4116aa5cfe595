//! Reduced local models at essential singularities: the Laguerre-type
//! Sheffer sequences `Pi_n^(alpha,m)` in exact rational arithmetic, their
//! m-orthogonality moment functionals, the microscopic limit measures
//! `mu_m` with trigonometric parametrization, and the Marchenko-Pastur
//! specialization at `m = 1`.
//!
//! Every identity of this module (recurrence vs explicit formula,
//! orthogonality vanishing pattern, moment generating polynomials) is
//! exact, so coefficients and moments use rational arithmetic
//! throughout; floats appear only for zeros and measures.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::num::big::BigComplex;
use crate::num::poly::CPoly;
use crate::roots::{self, EmpiricalMeasure, RootSet};

/// Dense polynomial with exact rational coefficients, ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly {
            coeffs: vec![Rational::from(1)],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if *c == 0) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn lc(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        RatPoly::from_coeffs(out)
    }

    pub fn scale(&self, s: &Rational) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| (c * s).into()).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        RatPoly::from_coeffs(out)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Converts to a floating-point polynomial at the given precision.
    pub fn to_cpoly(&self, prec: u32) -> CPoly {
        CPoly::from_coeffs(
            prec,
            self.coeffs
                .iter()
                .map(|c| BigComplex::from_real(Float::with_val(prec, c)))
                .collect(),
        )
    }

    /// Largest bit size over the coefficients (numerators and
    /// denominators), used to pick a working precision for root finding.
    pub fn max_coeff_bits(&self) -> u32 {
        self.coeffs
            .iter()
            .map(|c| {
                c.numer()
                    .significant_bits()
                    .max(c.denom().significant_bits())
            })
            .max()
            .unwrap_or(1)
    }
}

/// The Sheffer family `Pi_0..Pi_N` for parameters `(alpha, m)`.
#[derive(Debug, Clone)]
pub struct ShefferFamily {
    pub alpha: i64,
    pub m: u32,
    pub polys: Vec<RatPoly>,
    /// `beta = -1 - alpha/m`.
    pub beta_param: Rational,
}

/// Computes `Pi_0..Pi_N` by the exact recurrence
/// `Pi_{n+1} = m x Pi_n' + (n - alpha - m x) Pi_n`.
pub fn sheffer_seq(alpha: i64, m: u32, n_max: usize) -> ShefferFamily {
    assert!(m >= 1, "m must be positive");
    let mi = Rational::from(m);
    let mut polys = Vec::with_capacity(n_max + 1);
    polys.push(RatPoly::one());
    for n in 0..n_max {
        let cur = &polys[n];
        let len = cur.coeffs().len() + 1;
        let mut out = vec![Rational::new(); len];
        let shift = Rational::from(n as i64 - alpha);
        for (k, c) in cur.coeffs().iter().enumerate() {
            // m x Pi' contributes m k c_k at degree k;
            // (n - alpha) Pi contributes there too;
            // -m x Pi contributes -m c_k at degree k+1.
            out[k] += Rational::from(&mi * &Rational::from(k as u64)) * c + Rational::from(&shift * c);
            out[k + 1] -= Rational::from(&mi * c);
        }
        polys.push(RatPoly::from_coeffs(out));
    }
    let beta_param = Rational::from(-1) - Rational::from((alpha, m as i64));
    ShefferFamily {
        alpha,
        m,
        polys,
        beta_param,
    }
}

/// Pochhammer symbol `(a)_n = a (a+1) ... (a+n-1)` over the rationals.
fn pochhammer(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::from(1);
    let mut cur = a.clone();
    for _ in 0..n {
        acc *= &cur;
        cur += 1;
    }
    acc
}

/// The explicit double sum
/// `Pi_n = sum_k x^k/k! sum_j (-1)^j C(k,j) (mj - alpha)_n`,
/// which must agree with [`sheffer_seq`] coefficientwise.
pub fn sheffer_explicit(alpha: i64, m: u32, n: usize) -> RatPoly {
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut k_fact = Integer::from(1);
    for k in 0..=n {
        if k > 0 {
            k_fact *= k as u64;
        }
        let mut inner = Rational::new();
        for j in 0..=k {
            let binom = Integer::from(k).binomial(j as u32);
            let base = Rational::from(m as i64 * j as i64 - alpha);
            let mut term = Rational::from(&binom * &pochhammer(&base, n));
            if j % 2 == 1 {
                term = -term;
            }
            inner += term;
        }
        coeffs.push(inner / Rational::from(&k_fact));
    }
    RatPoly::from_coeffs(coeffs)
}

/// Classical generalized Laguerre polynomial `L_n^(a)` in exact rational
/// arithmetic via the three-term recurrence. Test oracle for the `m = 1`
/// reduction.
pub fn laguerre(a: &Rational, n: usize) -> RatPoly {
    let mut lm1 = RatPoly::one();
    if n == 0 {
        return lm1;
    }
    // L_1 = 1 + a - x
    let mut l = RatPoly::from_coeffs(vec![Rational::from(a + Rational::from(1)), Rational::from(-1)]);
    for k in 1..n {
        // (k+1) L_{k+1} = (2k + 1 + a - x) L_k - (k + a) L_{k-1}
        let kq = Rational::from(k as u64);
        let c0 = Rational::from(&kq * &Rational::from(2)) + Rational::from(1) + a.clone();
        let lin = RatPoly::from_coeffs(vec![c0, Rational::from(-1)]);
        let rhs = lin
            .mul(&l)
            .add(&lm1.scale(&-(Rational::from(&kq + a))));
        let next = rhs.scale(&Rational::from((1, k as i64 + 1)));
        lm1 = l;
        l = next;
    }
    l
}

#[derive(Debug, Clone)]
pub struct LaguerreCheck {
    pub n: usize,
    /// Max absolute coefficient difference of `Pi_n^(alpha,1)` against
    /// `n! L_n^(-alpha-1)`; exact zero when the reduction holds.
    pub max_diff: Rational,
}

/// Compares the `m = 1` Sheffer polynomial against the classical
/// Laguerre normalization `Pi_n^(alpha,1) = n! L_n^(-alpha-1)`.
pub fn laguerre_check(alpha: i64, n: usize) -> LaguerreCheck {
    let fam = sheffer_seq(alpha, 1, n);
    let a = Rational::from(-alpha - 1);
    let mut fact = Integer::from(1);
    for k in 2..=n {
        fact *= k as u64;
    }
    let lag = laguerre(&a, n).scale(&Rational::from(&fact));
    let pi_n = &fam.polys[n];
    let len = pi_n.coeffs().len().max(lag.coeffs().len());
    let mut max_diff = Rational::new();
    for k in 0..len {
        let d = Rational::from(pi_n.coeff(k) - lag.coeff(k)).abs();
        if d > max_diff {
            max_diff = d;
        }
    }
    LaguerreCheck { n, max_diff }
}

/// `lambda_r = (r - alpha)/m`, the Gamma parameters of the moment
/// functionals; all positive when `alpha < 0`.
pub fn lambda_params(alpha: i64, m: u32) -> Vec<Rational> {
    (0..m as i64)
        .map(|r| Rational::from((r - alpha, m as i64)))
        .collect()
}

/// Moment of the monomial against the j-th functional:
/// `<u_j, x^k> = (1/j!) sum_r (-1)^r C(j,r) (lambda_r)_k`.
fn monomial_moment(alpha: i64, m: u32, j: usize, k: usize) -> Rational {
    let mut acc = Rational::new();
    for r in 0..=j {
        let binom = Integer::from(j).binomial(r as u32);
        let lam = Rational::from((r as i64 - alpha, m as i64));
        let mut term = Rational::from(&binom * &pochhammer(&lam, k));
        if r % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    let mut j_fact = Integer::from(1);
    for i in 2..=j {
        j_fact *= i as u64;
    }
    acc / Rational::from(&j_fact)
}

/// Exact moment `<u_j, x^nu Pi_n>` of the m-orthogonality structure.
/// Requires `alpha < 0` and `0 <= j <= m-1`.
pub fn morth_moment(alpha: i64, m: u32, j: usize, nu: usize, n: usize) -> Result<Rational> {
    if alpha >= 0 {
        return Err(Error::Domain(
            "m-orthogonality requires a negative integer alpha".into(),
        ));
    }
    if j >= m as usize {
        return Err(Error::Domain(format!("functional index {j} out of range for m = {m}")));
    }
    let fam = sheffer_seq(alpha, m, n);
    let pi_n = &fam.polys[n];
    let mut acc = Rational::new();
    for (k, c) in pi_n.coeffs().iter().enumerate() {
        acc += Rational::from(c * &monomial_moment(alpha, m, j, k + nu));
    }
    Ok(acc)
}

/// Closed form of the moment generating polynomial
/// `sum_n <u_j, x^nu Pi_n> t^n / n!  =  (1-t)^(m nu)/j! sum_r (-1)^r C(j,r) (lambda_r)_nu (1-t)^r`.
pub fn moment_gf_closed_form(alpha: i64, m: u32, j: usize, nu: usize) -> RatPoly {
    let one_minus_t = RatPoly::from_coeffs(vec![Rational::from(1), Rational::from(-1)]);
    let mut pow_cache = RatPoly::one();
    for _ in 0..(m as usize * nu) {
        pow_cache = pow_cache.mul(&one_minus_t);
    }
    let mut acc = RatPoly::zero();
    let mut shifted = pow_cache;
    for r in 0..=j {
        let binom = Integer::from(j).binomial(r as u32);
        let lam = Rational::from((r as i64 - alpha, m as i64));
        let mut s = Rational::from(&binom * &pochhammer(&lam, nu));
        if r % 2 == 1 {
            s = -s;
        }
        acc = acc.add(&shifted.scale(&s));
        shifted = shifted.mul(&one_minus_t);
    }
    let mut j_fact = Integer::from(1);
    for i in 2..=j {
        j_fact *= i as u64;
    }
    acc.scale(&Rational::from((Integer::from(1), j_fact)))
}

/// Truncated moment generating polynomial assembled from exact moments;
/// terminates at degree `m nu + j` by m-orthogonality.
pub fn moment_gf_from_moments(alpha: i64, m: u32, j: usize, nu: usize) -> Result<RatPoly> {
    let deg = m as usize * nu + j;
    let mut coeffs = Vec::with_capacity(deg + 1);
    let mut fact = Integer::from(1);
    for n in 0..=deg {
        if n > 1 {
            fact *= n as u64;
        }
        let mom = morth_moment(alpha, m, j, nu, n)?;
        coeffs.push(mom / Rational::from(&fact));
    }
    Ok(RatPoly::from_coeffs(coeffs))
}

/// Order of vanishing of `Pi_n^(alpha,m)` at the origin: zero for
/// `alpha < 0`, else `q + 1` with `alpha = q m + s`, verified against the
/// exact low-order coefficients.
pub fn ord0(alpha: i64, m: u32, n: usize) -> Result<usize> {
    if alpha >= 0 && (n as i64) < alpha + 1 {
        return Err(Error::Domain(format!(
            "ord0 requires n >= alpha + 1 = {} for alpha >= 0",
            alpha + 1
        )));
    }
    let p = sheffer_explicit(alpha, m, n);
    let mut ord = 0usize;
    while p.coeff(ord) == 0 {
        ord += 1;
    }
    let expected = if alpha < 0 {
        0
    } else {
        (alpha / m as i64) as usize + 1
    };
    if ord != expected {
        return Err(Error::InconsistentStructure(format!(
            "ord_0 Pi_{n}^({alpha},{m}) = {ord}, expected {expected}"
        )));
    }
    Ok(ord)
}

/// `c_m = ((m+1)/m)^(m+1)`, the right endpoint of the support of `mu_m`.
pub fn c_m(m: u32) -> Rational {
    Rational::from((m as i64 + 1, m as i64)).pow(m + 1)
}

/// Distance from a complex point to the segment `[0, c]` on the real
/// axis.
fn dist_to_cut(zeta: (f64, f64), c: f64) -> f64 {
    let (x, y) = zeta;
    let xc = x.clamp(0.0, c);
    (x - xc).hypot(y)
}

/// The distinguished branch of `v^(m+1) = m zeta (v - 1)` with
/// `v = 1 + 1/(m zeta) + O(zeta^-2)` at infinity, continued from large
/// `|zeta|` along a ray and polished by Newton.
pub fn v_branch(m: u32, zeta: &BigComplex) -> Result<BigComplex> {
    let prec = zeta.prec();
    let cm: f64 = c_m(m).to_f64();
    if dist_to_cut(zeta.to_f64s(), cm) < 1e-8 {
        return Err(Error::BranchAmbiguity(
            "zeta is within 1e-8 of the support cut [0, c_m]".into(),
        ));
    }
    let mf = Float::with_val(prec, m);
    let newton = |z: &BigComplex, seed: BigComplex| -> Result<BigComplex> {
        let mut v = seed;
        let mzeta = z.mul_float(&mf);
        for _ in 0..200 {
            let vm = v.powi(m as i64);
            let g = &(&vm * &v) - &(&mzeta * &(&v - &BigComplex::one(prec)));
            let dg = &vm.mul_float(&Float::with_val(prec, m + 1)) - &mzeta;
            if dg.is_zero() {
                return Err(Error::BranchAmbiguity("vanishing derivative in v(zeta) Newton".into()));
            }
            let step = &g / &dg;
            v = &v - &step;
            if step.abs() <= Float::with_val(prec, Float::i_exp(1, -((prec - 8) as i32))) {
                return Ok(v);
            }
        }
        Err(Error::BranchAmbiguity("Newton did not converge for v(zeta)".into()))
    };

    // Continuation along the ray from far out toward zeta.
    let r_target = zeta.abs().to_f64();
    let r_far = (1e6_f64).max(8.0 * cm).max(4.0 * r_target);
    let steps = ((r_far / r_target.max(1e-12)).ln() / 1.5f64.ln()).ceil().max(1.0) as usize;
    let dir = zeta.div_float(&zeta.abs());
    let mut v = {
        let zfar = dir.scale_f64(r_far);
        let seed = &BigComplex::one(prec)
            + &zfar.mul_float(&mf).recip();
        newton(&zfar, seed)?
    };
    for k in (1..steps).rev() {
        let r = r_target * (r_far / r_target).powf(k as f64 / steps as f64);
        let zk = dir.scale_f64(r);
        v = newton(&zk, v)?;
    }
    // Final polish at the exact target point.
    newton(zeta, v)
}

/// Tabulated microscopic limit measure `mu_m` on `[0, c_m]`.
#[derive(Debug, Clone)]
pub struct MicroLimit {
    pub m: u32,
    pub c_m: Rational,
    /// Sample parameters, densities, and positions: `(phi, zeta(phi),
    /// d mu/d zeta)` with `phi` increasing (so `zeta` decreasing).
    pub samples: Vec<(f64, f64, f64)>,
    /// CDF table on ascending `zeta`.
    cdf_zetas: Vec<f64>,
    cdf_vals: Vec<f64>,
}

/// `zeta(phi) = (1/m) sin^{m+1}((m+1)phi) / (sin phi sin^m(m phi))`.
pub fn zeta_of_phi(m: u32, phi: f64) -> f64 {
    let mf = m as f64;
    ((mf + 1.0) * phi).sin().powi(m as i32 + 1) / (mf * phi.sin() * (mf * phi).sin().powi(m as i32))
}

/// Density of `mu_m` at `zeta(phi)`:
/// `sin^{m+1}(m phi) / (pi sin^m((m+1) phi))`.
pub fn density_of_phi(m: u32, phi: f64) -> f64 {
    let mf = m as f64;
    (mf * phi).sin().powi(m as i32 + 1)
        / (std::f64::consts::PI * ((mf + 1.0) * phi).sin().powi(m as i32))
}

fn zeta_prime_of_phi(m: u32, phi: f64) -> f64 {
    // logarithmic derivative: (m+1)^2 cot((m+1)phi) - cot(phi) - m^2 cot(m phi)
    let mf = m as f64;
    let cot = |x: f64| x.cos() / x.sin();
    zeta_of_phi(m, phi)
        * ((mf + 1.0) * (mf + 1.0) * cot((mf + 1.0) * phi) - cot(phi) - mf * mf * cot(mf * phi))
}

/// Tabulates `mu_m` on a Chebyshev-spaced `phi` grid (clustered at both
/// endpoints where the parametrization degenerates) and integrates the
/// CDF by the trapezoid rule.
pub fn micro_limit(m: u32, grid_size: usize) -> Result<MicroLimit> {
    assert!(m >= 1);
    let g = grid_size.max(64);
    let l = std::f64::consts::PI / (m as f64 + 1.0);
    let mut phis = Vec::with_capacity(g + 1);
    for k in 1..g {
        phis.push(l * 0.5 * (1.0 - (std::f64::consts::PI * k as f64 / g as f64).cos()));
    }

    // mass integrand g(phi) = density * (-zeta'); bounded at both ends.
    let integrand: Vec<f64> = phis
        .iter()
        .map(|&p| density_of_phi(m, p) * (-zeta_prime_of_phi(m, p)))
        .collect();

    // CDF(zeta(phi)) = mass of [0, zeta(phi)] = int_phi^L g; accumulate
    // from the right, with linear end extrapolation on the tiny
    // boundary segments.
    let nphi = phis.len();
    let mut tail = vec![0f64; nphi];
    // rightmost segment [phi_last, L]
    let g_last = integrand[nphi - 1];
    let g_prev = integrand[nphi - 2];
    let slope = (g_last - g_prev) / (phis[nphi - 1] - phis[nphi - 2]);
    let g_at_l = g_last + slope * (l - phis[nphi - 1]);
    tail[nphi - 1] = 0.5 * (g_last + g_at_l) * (l - phis[nphi - 1]);
    for k in (0..nphi - 1).rev() {
        tail[k] = tail[k + 1] + 0.5 * (integrand[k] + integrand[k + 1]) * (phis[k + 1] - phis[k]);
    }
    // leading segment [0, phi_0]: g(0) = 0
    let total = tail[0] + 0.5 * integrand[0] * phis[0];

    if (total - 1.0).abs() > 1e-8 {
        return Err(Error::Quadrature(format!(
            "mu_{m} mass integrated to {total}, expected 1"
        )));
    }

    let mut samples = Vec::with_capacity(nphi);
    for (k, &p) in phis.iter().enumerate() {
        samples.push((p, zeta_of_phi(m, p), density_of_phi(m, p)));
        // zeta must be strictly decreasing in phi
        if k > 0 && samples[k].1 >= samples[k - 1].1 {
            return Err(Error::Quadrature("zeta(phi) is not strictly monotone".into()));
        }
    }

    // CDF table on ascending zeta: reverse the phi order.
    let mut cdf_zetas = Vec::with_capacity(nphi + 2);
    let mut cdf_vals = Vec::with_capacity(nphi + 2);
    cdf_zetas.push(0.0);
    cdf_vals.push(0.0);
    for k in (0..nphi).rev() {
        cdf_zetas.push(samples[k].1);
        cdf_vals.push(tail[k] / total);
    }
    cdf_zetas.push(c_m(m).to_f64());
    cdf_vals.push(1.0);

    Ok(MicroLimit {
        m,
        c_m: c_m(m),
        samples,
        cdf_zetas,
        cdf_vals,
    })
}

impl MicroLimit {
    /// CDF by monotone linear interpolation of the table.
    pub fn cdf_at(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= *self.cdf_zetas.last().unwrap() {
            return 1.0;
        }
        let idx = self.cdf_zetas.partition_point(|&z| z <= x);
        let (z0, z1) = (self.cdf_zetas[idx - 1], self.cdf_zetas[idx]);
        let (v0, v1) = (self.cdf_vals[idx - 1], self.cdf_vals[idx]);
        v0 + (v1 - v0) * (x - z0) / (z1 - z0)
    }
}

/// Marchenko-Pastur density on `(0, 4)`: `sqrt(zeta(4-zeta))/(2 pi zeta)`.
pub fn mp_density(zeta: f64) -> f64 {
    if zeta <= 0.0 || zeta >= 4.0 {
        return 0.0;
    }
    (zeta * (4.0 - zeta)).sqrt() / (2.0 * std::f64::consts::PI * zeta)
}

/// Closed-form Marchenko-Pastur CDF via the parametrization
/// `zeta = 4 cos^2 phi`.
pub fn mp_cdf(zeta: f64) -> f64 {
    if zeta <= 0.0 {
        return 0.0;
    }
    if zeta >= 4.0 {
        return 1.0;
    }
    let phi = ((zeta.sqrt() / 2.0).clamp(-1.0, 1.0)).acos();
    1.0 - (2.0 / std::f64::consts::PI) * (phi - phi.sin() * phi.cos())
}

/// One-sample Kolmogorov-Smirnov statistic of `samples` against `cdf`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs: Vec<f64> = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let k = xs.len() as f64;
    let mut worst = 0f64;
    for (i, x) in xs.iter().enumerate() {
        let f = cdf(*x);
        worst = worst
            .max(((i + 1) as f64 / k - f).abs())
            .max((f - i as f64 / k).abs());
    }
    worst
}

/// Zeros of `Pi_n(n zeta)` as an empirical measure on the `zeta` scale,
/// with the underlying root set for diagnostics.
pub fn rescaled_empirical(alpha: i64, m: u32, n: usize) -> Result<(EmpiricalMeasure, RootSet)> {
    let fam = sheffer_seq(alpha, m, n);
    let pi_n = &fam.polys[n];
    // R_n(zeta) = Pi_n(n zeta): scale coefficient k by n^k.
    let mut coeffs = Vec::with_capacity(pi_n.coeffs().len());
    let mut npow = Rational::from(1);
    for c in pi_n.coeffs() {
        coeffs.push(Rational::from(c * &npow));
        npow *= n as u64;
    }
    let r_n = RatPoly::from_coeffs(coeffs);
    // The monomial-basis conditioning grows with the coefficient size;
    // start at the coefficient bit size plus slack and escalate on
    // failure.
    let bits = r_n.max_coeff_bits();
    let mut prec = (bits + 2 * n as u32 + 128).max(256);
    let cap = 8 * prec;
    loop {
        let p = r_n.to_cpoly(prec);
        match roots::find_roots(&p) {
            Ok(rs) if rs.residual < 2f64.powi(-((prec / 4) as i32)) => {
                let emp = roots::empirical_measure(&rs, n as f64)?;
                return Ok((emp, rs));
            }
            Ok(_) | Err(Error::Precision(_)) => {
                prec *= 2;
                if prec > cap {
                    return Err(Error::Precision(format!(
                        "root finding for Pi_{n} did not certify below {cap} bits"
                    )));
                }
            }
            Err(e) => return Err(e),
        }
    }
}

/// Pushes the `zeta`-scale empirical measure to the microscopic
/// `z`-scale: each `zeta` maps to the `m` points `eps_nu eta zeta^(-1/m)`
/// with `eta^m = -lambda`, each carrying `1/m` of the weight. The result
/// is independent of the chosen root of `-lambda`.
pub fn pushforward_micro(
    emp: &EmpiricalMeasure,
    m: u32,
    lambda: &BigComplex,
) -> EmpiricalMeasure {
    let prec = lambda.prec();
    let eta = (-lambda).root_principal(m);
    let mut atoms = Vec::with_capacity(emp.atoms.len() * m as usize);
    for (zeta, w) in &emp.atoms {
        if zeta.is_zero() {
            continue;
        }
        let base = &eta * &zeta.root_principal(m).recip();
        for nu in 0..m {
            let ang = Float::with_val(prec, 2 * nu) * Float::with_val(prec, rug::float::Constant::Pi)
                / Float::with_val(prec, m);
            let eps = BigComplex::from_polar(&Float::with_val(prec, 1), &ang);
            atoms.push((&base * &eps, w / m as f64));
        }
    }
    let total = atoms.iter().map(|(_, w)| w).sum();
    EmpiricalMeasure { atoms, total }
}
