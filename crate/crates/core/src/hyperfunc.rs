//! Validation and normalization of a hyperexponential specification
//! `f = (P/Q) exp(S/T)` and extraction of every structural object the
//! rest of the pipeline consumes: the singular sites with local orders
//! and Laurent data, the polynomials `W` and `U`, the counts `d`,
//! `kappa`, `h`, and the scale constant `sigma`.
//!
//! Also hosts the reconstruction of `(R, H)` with `f = c R e^H` from a
//! rational logarithmic derivative.

use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::big::{float_to_decimal, BigComplex};
use crate::num::laurent::LaurentPrincipalPart;
use crate::num::poly::{local_expansion, poly_gcd, polydiv, CPoly};
use crate::num::ratfun::RationalFunction;
use crate::roots::find_roots;

/// The four input polynomials of `f = (P/Q) exp(S/T)`.
#[derive(Debug, Clone, Serialize)]
pub struct HyperExpSpec {
    pub p: CPoly,
    pub q: CPoly,
    pub s: CPoly,
    pub t: CPoly,
}

impl HyperExpSpec {
    pub fn new(p: CPoly, q: CPoly, s: CPoly, t: CPoly) -> Self {
        HyperExpSpec { p, q, s, t }
    }

    pub fn prec(&self) -> u32 {
        self.t.prec()
    }

    /// `E(z) = S(z)/T(z)`.
    pub fn eval_exponent(&self, z: &BigComplex) -> BigComplex {
        &self.s.eval(z) / &self.t.eval(z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SiteKind {
    /// Zero of `T`: essential singularity of `f`.
    Essential,
    /// Zero of `Q` away from `Z(T)`: pole of `f`.
    Pole,
}

/// One singular site with its local orders and Laurent data.
#[derive(Debug, Clone, Serialize)]
pub struct SiteRecord {
    pub location: BigComplex,
    pub kind: SiteKind,
    /// `ord_a T` (zero for pole sites).
    pub m: usize,
    /// `ord_a P_T`.
    pub p_loc: usize,
    /// `ord_a Q`.
    pub r_loc: usize,
    /// Pole multiplicity `ell_k`; zero for essential sites.
    pub ell: usize,
    /// `beta = p_loc - r_loc`.
    pub beta: i64,
    /// Principal part of `E` at the site; present iff essential.
    pub principal: Option<LaurentPrincipalPart>,
    /// `E_reg(a)`: the regular part of `E` evaluated at the site.
    #[serde(serialize_with = "serialize_complex")]
    pub e_reg_at_site: BigComplex,
}

fn serialize_complex<S: serde::Serializer>(
    v: &BigComplex,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    v.serialize(ser)
}

fn serialize_float<S: serde::Serializer>(v: &Float, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&float_to_decimal(v))
}

/// Everything `analyze` derives from a normalized spec.
#[derive(Debug, Clone, Serialize)]
pub struct StructureData {
    /// The normalized spec the structure was derived from.
    pub spec: HyperExpSpec,
    pub p_t: CPoly,
    pub p_sharp: CPoly,
    pub w: CPoly,
    pub u: CPoly,
    /// Polynomial part `H` of `S/T`.
    pub h_poly: CPoly,
    /// Remainder `M` with `S = H T + M`, `deg M < deg T`.
    pub m_poly: CPoly,
    pub sites: Vec<SiteRecord>,
    /// `deg W = deg T + t_check + q_check`.
    pub d: usize,
    /// `kappa = d + h - 1`.
    pub kappa: usize,
    /// Degree of `H` when nonconstant, else zero.
    pub h: usize,
    /// `sigma = 0` when `h = 0`, else `log|h tau_h|`.
    #[serde(serialize_with = "serialize_float")]
    pub sigma: Float,
    /// Number of distinct zeros of `T`.
    pub t_check: usize,
    /// Number of distinct zeros of `Q` outside `Z(T)`.
    pub q_check: usize,
    /// Smallest `J >= 1` with `G_{-J} != 0`; present iff `h = 0` and
    /// `deg P >= deg Q`.
    pub j_transition: Option<usize>,
    pub g_minus_j: Option<BigComplex>,
}

impl StructureData {
    pub fn prec(&self) -> u32 {
        self.spec.prec()
    }

    /// Site locations in order.
    pub fn site_locations(&self) -> Vec<BigComplex> {
        self.sites.iter().map(|s| s.location.clone()).collect()
    }

    /// `ord_a W` for site `i`: `m + 1` at essential sites, `1` at poles.
    pub fn varpi(&self, i: usize) -> usize {
        let s = &self.sites[i];
        match s.kind {
            SiteKind::Essential => s.m + 1,
            SiteKind::Pole => 1,
        }
    }

    /// Distance from `z` to the singular set.
    pub fn rho(&self, z: &BigComplex) -> Float {
        let prec = self.prec();
        let mut best: Option<Float> = None;
        for s in &self.sites {
            let d = (z - &s.location).abs();
            best = Some(match best {
                None => d,
                Some(b) => b.min(&d),
            });
        }
        best.unwrap_or_else(|| Float::new(prec))
    }

    /// Largest pairwise site distance (zero for a single site).
    pub fn diameter(&self) -> f64 {
        let mut d = 0f64;
        for (i, a) in self.sites.iter().enumerate() {
            for b in self.sites.iter().skip(i + 1) {
                d = d.max((&a.location - &b.location).abs().to_f64());
            }
        }
        d
    }

    /// Index of the nearest site to `z`.
    pub fn nearest_site(&self, z: &BigComplex) -> usize {
        let mut best = 0usize;
        let mut bd = f64::INFINITY;
        for (i, s) in self.sites.iter().enumerate() {
            let d = (z - &s.location).abs().to_f64();
            if d < bd {
                bd = d;
                best = i;
            }
        }
        best
    }
}

/// Parses a spec file object `{"P": [...], "Q": [...], "S": [...],
/// "T": [...], "precision_bits": 256}`. A `precision_bits` argument
/// overrides the file's value.
pub fn spec_from_json(value: &serde_json::Value, prec_override: Option<u32>) -> Result<HyperExpSpec> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::InvalidInput("spec file must be a JSON object".into()))?;
    let prec = match prec_override {
        Some(p) => p,
        None => obj
            .get("precision_bits")
            .and_then(|v| v.as_u64())
            .unwrap_or(256) as u32,
    };
    if !(crate::num::big::MIN_PREC..=4096).contains(&prec) {
        return Err(Error::InvalidInput(format!(
            "precision_bits {prec} outside [64, 4096]"
        )));
    }
    let field = |name: &str| -> Result<CPoly> {
        let v = obj
            .get(name)
            .ok_or_else(|| Error::InvalidInput(format!("spec file is missing {name:?}")))?;
        crate::num::poly::poly_from_json(prec, v)
    };
    Ok(HyperExpSpec::new(field("P")?, field("Q")?, field("S")?, field("T")?))
}

/// Order of vanishing of `p` at `a`, detected by Taylor shift with a
/// half-precision relative threshold.
fn vanishing_order(p: &CPoly, a: &BigComplex) -> usize {
    let prec = p.prec();
    if p.is_zero() {
        return 0;
    }
    let shifted = p.shift(a);
    let tol = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32))) * shifted.max_coeff_abs();
    let mut k = 0usize;
    while k < shifted.coeffs().len() && shifted.coeff(k).abs() <= tol {
        k += 1;
    }
    k
}

fn require_constant_gcd(a: &CPoly, b: &CPoly, what: &str) -> Result<()> {
    let g = poly_gcd(a, b)?;
    if g.degree() != Some(0) {
        return Err(Error::InvalidInput(format!(
            "{what} must be coprime (gcd has degree {})",
            g.deg_i()
        )));
    }
    Ok(())
}

/// Validates and normalizes a raw spec.
///
/// A nonzero constant prefactor `P/Q = alpha` is absorbed into the
/// exponent via the principal logarithm; `T` is rescaled monic with `S`
/// scaled by the same factor (preserving `S/T`); `Q` is rescaled monic
/// (or to the constant 1) with `P` absorbing the factor.
pub fn normalize(spec: &HyperExpSpec) -> Result<HyperExpSpec> {
    let prec = spec.prec();
    if spec.p.is_zero() || spec.q.is_zero() {
        return Err(Error::InvalidInput("P and Q must be nonzero".into()));
    }
    if spec.t.is_constant() {
        return Err(Error::InvalidInput("T must be nonconstant".into()));
    }
    require_constant_gcd(&spec.p, &spec.q, "P and Q")?;
    if !spec.s.is_zero() {
        require_constant_gcd(&spec.s, &spec.t, "S and T")?;
    }

    let mut p = spec.p.clone();
    let mut q = spec.q.clone();
    let mut s = spec.s.clone();
    let mut t = spec.t.clone();

    // Constant-prefactor case: P/Q = alpha != 0 becomes (1, 1, S + cT)
    // with e^c = alpha on the principal branch.
    let is_const_ratio = p.deg_i() == q.deg_i() && {
        let alpha = &p.lc().unwrap().clone() / q.lc().unwrap();
        let diff = p.sub(&q.scale(&alpha));
        let tol = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)))
            * p.max_coeff_abs().max(&q.max_coeff_abs());
        diff.max_coeff_abs() <= tol
    };
    if is_const_ratio {
        let alpha = &p.lc().unwrap().clone() / q.lc().unwrap();
        let c = alpha.ln();
        s = s.add(&t.scale(&c));
        p = CPoly::one(prec);
        q = CPoly::one(prec);
    }

    // T monic, S scaled by the same factor so S/T is unchanged.
    let lct = t.lc().unwrap().clone();
    if !(lct.rel_dist(&BigComplex::one(prec)) == 0.0) {
        let inv = lct.recip();
        t = t.monic();
        s = s.scale(&inv);
    }

    // Q monic (or exactly 1 when constant), P absorbing the factor.
    if q.is_constant() {
        let q0 = q.coeff(0);
        if q0.rel_dist(&BigComplex::one(prec)) != 0.0 {
            p = p.scale(&q0.recip());
        }
        q = CPoly::one(prec);
    } else {
        let lcq = q.lc().unwrap().clone();
        if lcq.rel_dist(&BigComplex::one(prec)) != 0.0 {
            p = p.scale(&lcq.recip());
            q = q.monic();
        }
    }

    Ok(HyperExpSpec { p, q, s, t })
}

/// Derives all structural objects of a normalized spec.
///
/// The zeros of `T` and `Q` are located once here and cached in the site
/// records; downstream modules consume these and never re-solve.
pub fn analyze(spec: &HyperExpSpec) -> Result<StructureData> {
    let prec = spec.prec();
    let one = CPoly::one(prec);

    // E = S/T = H + M/T.
    let (h_poly, m_poly) = polydiv(&spec.s, &spec.t)?;
    if m_poly.is_zero() {
        return Err(Error::InvalidInput(
            "S/T has zero remainder against T; the exponent has no pole and f is not in the class"
                .into(),
        ));
    }
    let h = match h_poly.degree() {
        Some(d) if d >= 1 => d,
        _ => 0,
    };
    let sigma = if h == 0 {
        Float::new(prec)
    } else {
        let tau = h_poly.lc().unwrap().abs();
        (tau * Float::with_val(prec, h as u64)).ln()
    };

    // Distinct zeros of T with multiplicities.
    let t_roots = find_roots(&spec.t)?;
    let coincidence = 2f64.powi(-((prec / 2) as i32));

    // Zeros of Q, split into those on Z(T) and genuine pole sites.
    let mut pole_sites: Vec<(BigComplex, usize)> = Vec::new();
    if spec.q.degree().unwrap_or(0) >= 1 {
        let q_roots = find_roots(&spec.q)?;
        for (b, ell) in q_roots.roots {
            let on_t = t_roots
                .roots
                .iter()
                .any(|(c, _)| c.rel_dist(&b) < coincidence.max(1e-40));
            if !on_t {
                pole_sites.push((b, ell));
            }
        }
    }

    let t_check = t_roots.roots.len();
    let q_check = pole_sites.len();

    // Deterministic site order: essential sites first, then poles, each
    // sorted lexicographically by (re, im).
    let sort_key = |z: &BigComplex| -> (f64, f64) { z.to_f64s() };
    let mut ess: Vec<(BigComplex, usize)> = t_roots.roots.clone();
    ess.sort_by(|a, b| {
        sort_key(&a.0)
            .partial_cmp(&sort_key(&b.0))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    pole_sites.sort_by(|a, b| {
        sort_key(&a.0)
            .partial_cmp(&sort_key(&b.0))
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    // P_T collects the vanishing of P at Z(T).
    let mut p_t = one.clone();
    let mut p_orders = Vec::with_capacity(ess.len());
    for (c, _) in &ess {
        let ord = vanishing_order(&spec.p, c);
        p_orders.push(ord);
        for _ in 0..ord {
            p_t = p_t.mul_linear_root(c);
        }
    }
    let p_sharp = if p_t.is_constant() {
        spec.p.clone()
    } else {
        let (quot, rem) = spec.p.divrem(&p_t)?;
        let tol = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)))
            * spec.p.max_coeff_abs();
        if rem.max_coeff_abs() > tol {
            return Err(Error::InconsistentStructure(
                "P does not factor through the detected zeros on Z(T)".into(),
            ));
        }
        quot
    };

    // W = T * rad(T) * Q_* built from the cached roots.
    let mut w = spec.t.clone();
    for (c, _) in &ess {
        w = w.mul_linear_root(c);
    }
    for (b, _) in &pole_sites {
        w = w.mul_linear_root(b);
    }
    let d = w.degree().unwrap();
    if d != spec.t.degree().unwrap() + t_check + q_check {
        return Err(Error::InconsistentStructure("degree bookkeeping failed for W".into()));
    }
    let kappa = d + h - 1;

    // U = W * (E' + P_T'/P_T - Q'/Q), checked to be a polynomial.
    let e_prime = RationalFunction::new(
        spec.s
            .derivative()
            .mul(&spec.t)
            .sub(&spec.s.mul(&spec.t.derivative())),
        spec.t.mul(&spec.t),
    )?;
    let lam = e_prime
        .add(&RationalFunction::new(p_t.derivative(), p_t.clone())?)
        .sub(&RationalFunction::new(spec.q.derivative(), spec.q.clone())?);
    let u_frac = lam.mul(&RationalFunction::from_poly(w.clone()));
    let (u, u_rem) = u_frac.num.divrem(&u_frac.den)?;
    {
        let tol = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)))
            * u_frac.num.max_coeff_abs().max(&Float::with_val(prec, 1));
        if u_rem.max_coeff_abs() > tol {
            return Err(Error::InconsistentStructure(
                "W*Lambda is not a polynomial to working precision (root finding on T or Q failed?)"
                    .into(),
            ));
        }
    }

    // Site records with Laurent data of E at essential sites.
    let mut sites = Vec::with_capacity(ess.len() + pole_sites.len());
    for ((c, m), p_ord) in ess.iter().zip(&p_orders) {
        let series = local_expansion(&spec.s, &spec.t, c, *m, m + 1)?;
        let lam_coeffs: Vec<BigComplex> = (1..=*m).map(|s| series[m - s].clone()).collect();
        let floor = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)))
            * spec.s.max_coeff_abs().max(&Float::with_val(prec, 1));
        if lam_coeffs.last().unwrap().abs() <= floor {
            return Err(Error::DegeneratePole(
                "leading Laurent coefficient of E vanishes (S and T not coprime?)".into(),
            ));
        }
        let r_loc = vanishing_order(&spec.q, c);
        sites.push(SiteRecord {
            location: c.clone(),
            kind: SiteKind::Essential,
            m: *m,
            p_loc: *p_ord,
            r_loc,
            ell: 0,
            beta: *p_ord as i64 - r_loc as i64,
            principal: Some(LaurentPrincipalPart::new(c.clone(), lam_coeffs)),
            e_reg_at_site: series[*m].clone(),
        });
    }
    for (b, ell) in &pole_sites {
        sites.push(SiteRecord {
            location: b.clone(),
            kind: SiteKind::Pole,
            m: 0,
            p_loc: 0,
            r_loc: *ell,
            ell: *ell,
            beta: -(*ell as i64),
            principal: None,
            e_reg_at_site: spec.eval_exponent(b),
        });
    }

    // The first-form count d = sum (m_j + 1) + q_check must agree.
    let d_alt: usize = sites
        .iter()
        .map(|s| match s.kind {
            SiteKind::Essential => s.m + 1,
            SiteKind::Pole => 1,
        })
        .sum();
    if d_alt != d {
        return Err(Error::InconsistentStructure("site order bookkeeping failed".into()));
    }

    // J and G_{-J} for the two-regime degree law (h = 0, deg P >= deg Q).
    let p_deg = spec.p.deg_i();
    let q_deg = spec.q.deg_i();
    let (j_transition, g_minus_j) = if h == 0 && p_deg >= q_deg {
        let (j, g) = laurent_tail_at_infinity(spec, &m_poly)?;
        (Some(j), Some(g))
    } else {
        (None, None)
    };

    Ok(StructureData {
        spec: spec.clone(),
        p_t,
        p_sharp,
        w,
        u,
        h_poly,
        m_poly,
        sites,
        d,
        kappa,
        h,
        sigma,
        t_check,
        q_check,
        j_transition,
        g_minus_j,
    })
}

/// Smallest `J >= 1` with `G_{-J} != 0` for `G = (P/Q) exp(M/T)`,
/// computed from the Laurent expansion at infinity in the variable
/// `u = 1/z`.
fn laurent_tail_at_infinity(spec: &HyperExpSpec, m_poly: &CPoly) -> Result<(usize, BigComplex)> {
    let prec = spec.prec();
    let p_deg = spec.p.degree().unwrap();
    let q_deg = spec.q.degree().unwrap_or(0);
    let j_cap = 8 * (p_deg + q_deg + spec.t.degree().unwrap() + 4);
    let len = p_deg - q_deg + j_cap + 1;

    let rev = |p: &CPoly| -> Vec<BigComplex> {
        let mut v: Vec<BigComplex> = p.coeffs().iter().rev().cloned().collect();
        v.resize(len, BigComplex::new(prec));
        v
    };

    // s(u) = (M/T)(1/u) = u^(deg T - deg M) * revM(u)/revT(u).
    let gap = spec.t.degree().unwrap() - m_poly.deg_i().max(0) as usize;
    let rev_m = rev(m_poly);
    let rev_t = rev(&spec.t);
    let mut s_series = series_div(&rev_m, &rev_t, len, prec)?;
    // shift up by `gap` powers of u
    s_series.splice(0..0, std::iter::repeat(BigComplex::new(prec)).take(gap));
    s_series.truncate(len);

    let e_series = series_exp(&s_series, len, prec);
    let ratio = series_div(&rev(&spec.p), &rev(&spec.q), len, prec)?;
    let g = series_mul(&ratio, &e_series, len, prec);

    // G_nu = g_{p-q-nu}; we want the smallest J >= 1 with G_{-J} != 0.
    let offset = p_deg - q_deg;
    let mut scale = Float::new(prec);
    for c in &g {
        let a = c.abs();
        if a > scale {
            scale = a;
        }
    }
    let tol = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)))
        * scale.max(&Float::with_val(prec, 1));
    for j in 1..=j_cap {
        let idx = offset + j;
        if idx < g.len() && g[idx].abs() > tol {
            return Ok((j, g[idx].clone()));
        }
    }
    Err(Error::InconsistentStructure(
        "no nonzero Laurent tail coefficient found; f appears to be rational".into(),
    ))
}

fn series_mul(a: &[BigComplex], b: &[BigComplex], len: usize, prec: u32) -> Vec<BigComplex> {
    let mut out = vec![BigComplex::new(prec); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

fn series_div(a: &[BigComplex], b: &[BigComplex], len: usize, prec: u32) -> Result<Vec<BigComplex>> {
    if b.is_empty() || b[0].is_zero() {
        return Err(Error::InvalidInput("series division by a series vanishing at 0".into()));
    }
    let b0_inv = b[0].recip();
    let mut out: Vec<BigComplex> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = if k < a.len() { a[k].clone() } else { BigComplex::new(prec) };
        for (j, oj) in out.iter().enumerate() {
            let bidx = k - j;
            if bidx < b.len() {
                acc = &acc - &(oj * &b[bidx]);
            }
        }
        out.push(&acc * &b0_inv);
    }
    Ok(out)
}

/// exp of a power series with zero constant term, by the ODE recurrence
/// `e' = s' e`.
fn series_exp(s: &[BigComplex], len: usize, prec: u32) -> Vec<BigComplex> {
    let mut out = vec![BigComplex::new(prec); len];
    out[0] = BigComplex::one(prec);
    for k in 1..len {
        let mut acc = BigComplex::new(prec);
        for j in 1..=k {
            if j < s.len() && !s[j].is_zero() {
                let term = &s[j] * &out[k - j];
                acc = &acc + &term.mul_float(&Float::with_val(prec, j as u64));
            }
        }
        out[k] = acc.div_float(&Float::with_val(prec, k as u64));
    }
    out
}

/// Exponent list and rational `H` reconstructed from a logarithmic
/// derivative, so that `f = c R e^H` with `R = prod (z-a)^{n_a}`.
pub fn reconstruct_from_log_derivative(
    r: &RationalFunction,
) -> Result<(Vec<(BigComplex, i64)>, RationalFunction)> {
    let prec = r.prec();
    let r = if r.reduced { r.clone() } else { r.reduce()? };
    if r.is_zero() {
        return Ok((Vec::new(), RationalFunction::zero(prec)));
    }

    // Polynomial part integrates termwise.
    let (poly_part, _) = r.num.divrem(&r.den)?;
    let mut h_poly_coeffs = vec![BigComplex::new(prec)];
    for (k, c) in poly_part.coeffs().iter().enumerate() {
        h_poly_coeffs.push(c.div_float(&Float::with_val(prec, (k + 1) as u64)));
    }
    let mut h = RationalFunction::from_poly(CPoly::from_coeffs(prec, h_poly_coeffs));

    let mut exponents: Vec<(BigComplex, i64)> = Vec::new();
    if r.den.degree().unwrap_or(0) >= 1 {
        let poles = find_roots(&r.den)?;
        let mut pole_data: Vec<(BigComplex, usize, Vec<BigComplex>)> = Vec::new();
        for (a, k) in &poles.roots {
            let series = local_expansion(&r.num, &r.den, a, *k, *k)?;
            // lambda_s = series[k - s], s = 1..k
            let lams: Vec<BigComplex> = (1..=*k).map(|s| series[k - s].clone()).collect();
            pole_data.push((a.clone(), *k, lams));
        }

        // Residues must be integers for f'/f of a hyperexponential f.
        for (a, _, lams) in &pole_data {
            let res = &lams[0];
            let n = res.re().to_f64().round();
            let dist = (res - &BigComplex::from_f64(prec, n)).abs().to_f64();
            if dist > 1e-6 {
                return Err(Error::NotHyperexponential(format!(
                    "residue {res} at {a} is not an integer (distance {dist:.3e})"
                )));
            }
            if n != 0.0 {
                exponents.push((a.clone(), n as i64));
            }
        }

        // Termwise integration of the order >= 2 principal parts over the
        // common denominator prod (z-a)^(k-1).
        let mut den = CPoly::one(prec);
        for (a, k, _) in &pole_data {
            for _ in 0..k.saturating_sub(1) {
                den = den.mul_linear_root(a);
            }
        }
        let mut num = CPoly::zero(prec);
        for (idx, (a, k, lams)) in pole_data.iter().enumerate() {
            if *k < 2 {
                continue;
            }
            // cofactor = den / (z-a)^(k-1)
            let mut cof = CPoly::one(prec);
            for (jdx, (b, kb, _)) in pole_data.iter().enumerate() {
                if jdx != idx {
                    for _ in 0..kb.saturating_sub(1) {
                        cof = cof.mul_linear_root(b);
                    }
                }
            }
            for s in 2..=*k {
                // -lambda_s/(s-1) * (z-a)^(-(s-1)) contributes the
                // coefficient times cof * (z-a)^(k-s).
                let coef = lams[s - 1]
                    .div_float(&Float::with_val(prec, (s - 1) as u64));
                let mut term = cof.scale(&-coef);
                for _ in 0..(k - s) {
                    term = term.mul_linear_root(a);
                }
                num = num.add(&term);
            }
        }
        if !num.is_zero() {
            h = h.add(&RationalFunction::new(num, den)?);
        }
    }

    Ok((exponents, h))
}
