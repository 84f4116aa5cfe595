//! The polynomial sequence `B_n` of `f^(n) = P_T B_n e^E / (Q W^n)`,
//! computed by the exact recurrence `B_{n+1} = W B_n' + (U - n W') B_n`,
//! together with the closed-form degree/leading-coefficient laws, local
//! factorization identities, and an independent generating-function
//! oracle based on contour integration.

use rug::ops::CompleteRound;
use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperfunc::{SiteKind, StructureData};
use crate::num::big::BigComplex;
use crate::num::poly::CPoly;

/// The computed sequence `B_0..B_N` with degrees and leading coefficients.
#[derive(Debug, Clone)]
pub struct DerivSeq {
    pub structure: StructureData,
    pub b: Vec<CPoly>,
    /// Leading coefficients `gamma_n`.
    pub gamma: Vec<BigComplex>,
    pub degs: Vec<usize>,
}

impl DerivSeq {
    pub fn max_n(&self) -> usize {
        self.b.len() - 1
    }

    /// `s_n`: zero when `h = 0`, `log n!` when `h > 0`.
    pub fn s_n(&self, n: usize) -> Float {
        let prec = self.structure.prec();
        if self.structure.h == 0 {
            Float::new(prec)
        } else {
            Float::with_val(prec, Float::factorial(n as u32)).ln()
        }
    }

    /// `C_n(z)/n! = B_n(z) / (n! W(z)^n)`.
    pub fn cn_over_factorial(&self, n: usize, z: &BigComplex) -> BigComplex {
        let prec = self.structure.prec();
        let bn = self.b[n].eval(z);
        let wn = self.structure.w.eval(z).powi(n as i64);
        let fact = Float::with_val(prec, Float::factorial(n as u32));
        (&bn / &wn).div_float(&fact)
    }
}

/// Runs the recurrence up to index `N`.
pub fn b_sequence(sd: &StructureData, n_max: usize) -> Result<DerivSeq> {
    let prec = sd.prec();
    let w_prime = sd.w.derivative();
    let mut b = Vec::with_capacity(n_max + 1);
    let mut gamma = Vec::with_capacity(n_max + 1);
    let mut degs = Vec::with_capacity(n_max + 1);
    let mut cur = sd.p_sharp.clone();
    for n in 0..=n_max {
        if cur.is_zero() {
            return Err(Error::InconsistentStructure(format!("B_{n} vanished identically")));
        }
        let lc = cur.lc().unwrap().clone();
        if !lc.is_finite() {
            return Err(Error::Precision(format!(
                "coefficient overflow in B_{n}; re-run at higher precision"
            )));
        }
        gamma.push(lc);
        degs.push(cur.degree().unwrap());
        b.push(cur.clone());
        if n == n_max {
            break;
        }
        // B_{n+1} = W B_n' + (U - n W') B_n
        let shift = sd
            .u
            .sub(&w_prime.mul_float(&Float::with_val(prec, n as u64)));
        cur = sd.w.mul(&cur.derivative()).add(&shift.mul(&cur));
    }
    Ok(DerivSeq {
        structure: sd.clone(),
        b,
        gamma,
        degs,
    })
}

/// Which case of the degree/leading-coefficient law applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DegreeLawCase {
    /// `h > 0`.
    PolynomialGrowth,
    /// `h = 0`, `deg P < deg Q`.
    SubRational,
    /// `h = 0`, `deg P >= deg Q` (two regimes around `n = p - q + 1`).
    TwoRegime,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeLawRow {
    pub n: usize,
    pub deg_expected: usize,
    pub deg_actual: usize,
    pub deg_ok: bool,
    pub gamma_rel_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeLawReport {
    pub case: DegreeLawCase,
    pub rows: Vec<DegreeLawRow>,
    pub max_gamma_residual: f64,
    pub all_pass: bool,
}

/// Verifies the applicable degree and leading-coefficient law for every
/// computed index.
pub fn check_degree_law(seq: &DerivSeq) -> DegreeLawReport {
    let sd = &seq.structure;
    let prec = sd.prec();
    let p_deg = sd.spec.p.deg_i() as i64;
    let q_deg = sd.spec.q.deg_i() as i64;
    let deg_b0 = seq.degs[0] as i64;
    let gamma0 = seq.gamma[0].clone();
    let pass_tol = 2f64.powi(-((prec / 3) as i32));

    let case = if sd.h > 0 {
        DegreeLawCase::PolynomialGrowth
    } else if p_deg < q_deg {
        DegreeLawCase::SubRational
    } else {
        DegreeLawCase::TwoRegime
    };

    let mut rows = Vec::with_capacity(seq.b.len());
    let mut max_res = 0f64;
    let mut all_pass = true;

    // Expected gamma is built incrementally so every factor stays exact
    // at working precision.
    let mut expected_gamma = gamma0.clone();
    for (n, bn) in seq.b.iter().enumerate() {
        let deg_expected = match case {
            DegreeLawCase::PolynomialGrowth => deg_b0 + (n as i64) * sd.kappa as i64,
            DegreeLawCase::SubRational => deg_b0 + (n as i64) * (sd.d as i64 - 1),
            DegreeLawCase::TwoRegime => {
                let pq = p_deg - q_deg;
                if (n as i64) <= pq {
                    deg_b0 + (n as i64) * (sd.d as i64 - 1)
                } else {
                    let j = sd.j_transition.expect("J present in the two-regime case") as i64;
                    q_deg - sd.p_t.deg_i() as i64 - j + (n as i64) * (sd.d as i64 - 1)
                }
            }
        };
        if n > 0 {
            expected_gamma = match case {
                DegreeLawCase::PolynomialGrowth => {
                    // gamma_{n+1} = (h tau_h) gamma_n
                    let htau = sd
                        .h_poly
                        .lc()
                        .unwrap()
                        .mul_float(&Float::with_val(prec, sd.h as u64));
                    &expected_gamma * &htau
                }
                DegreeLawCase::SubRational => {
                    // gamma_{n+1} = (p - q - n) gamma_n
                    expected_gamma
                        .mul_float(&Float::with_val(prec, p_deg - q_deg - (n as i64 - 1)))
                }
                DegreeLawCase::TwoRegime => {
                    let pq = p_deg - q_deg;
                    if (n as i64) <= pq {
                        // gamma_n = gamma_0 (p-q)!/(p-q-n)!: multiply by
                        // the next falling factor.
                        expected_gamma
                            .mul_float(&Float::with_val(prec, pq - (n as i64) + 1))
                    } else if (n as i64) == pq + 1 {
                        // Regime switch: gamma_n = G_{-J} (-1)^n (J)_n-ish;
                        // restart from the closed form at this n.
                        let j = sd.j_transition.unwrap() as i64;
                        let g = sd.g_minus_j.clone().unwrap();
                        let mut acc = g;
                        // Gamma(n+J)/Gamma(J) = (J)(J+1)...(J+n-1)
                        for k in 0..n as i64 {
                            acc = acc.mul_float(&Float::with_val(prec, j + k));
                        }
                        if n % 2 == 1 {
                            acc = -acc;
                        }
                        acc
                    } else {
                        // gamma_{n+1} = -(n + J) gamma_n
                        let j = sd.j_transition.unwrap() as i64;
                        -expected_gamma
                            .mul_float(&Float::with_val(prec, (n as i64 - 1) + j))
                    }
                }
            };
        }

        let deg_actual = bn.degree().unwrap() as i64;
        let deg_ok = deg_actual == deg_expected;
        let gamma_res = if deg_ok {
            seq.gamma[n].rel_dist(&expected_gamma)
        } else {
            f64::INFINITY
        };
        max_res = max_res.max(gamma_res);
        let row_ok = deg_ok && gamma_res <= pass_tol;
        all_pass &= row_ok;
        rows.push(DegreeLawRow {
            n,
            deg_expected: deg_expected.max(0) as usize,
            deg_actual: deg_actual as usize,
            deg_ok,
            gamma_rel_residual: gamma_res,
        });
    }

    DegreeLawReport {
        case,
        rows,
        max_gamma_residual: max_res,
        all_pass,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalIdentityReport {
    /// max over essential sites and n of the relative residual of
    /// `B_n(c) = U(c)^n P_sharp(c)`.
    pub max_essential_residual: f64,
    /// max over pole sites and n of the relative residual of
    /// `B_{n+1}(b) = -(ell + n) W'(b) B_n(b)`.
    pub max_pole_residual: f64,
    /// True when every `B_n` value at every site is nonzero.
    pub all_nonzero: bool,
}

/// Asserts the exact local factorization identities at every site.
pub fn check_local_identities(seq: &DerivSeq) -> LocalIdentityReport {
    let sd = &seq.structure;
    let prec = sd.prec();
    let w_prime = sd.w.derivative();
    let mut max_ess = 0f64;
    let mut max_pole = 0f64;
    let mut all_nonzero = true;

    for site in &sd.sites {
        match site.kind {
            SiteKind::Essential => {
                let u_c = sd.u.eval(&site.location);
                let p_c = sd.p_sharp.eval(&site.location);
                let mut expect = p_c;
                for bn in &seq.b {
                    let got = bn.eval(&site.location);
                    all_nonzero &= !got.is_zero();
                    max_ess = max_ess.max(got.rel_dist(&expect));
                    expect = &expect * &u_c;
                }
            }
            SiteKind::Pole => {
                let wp = w_prime.eval(&site.location);
                let mut prev = seq.b[0].eval(&site.location);
                all_nonzero &= !prev.is_zero();
                for (n, bn) in seq.b.iter().enumerate().skip(1) {
                    let got = bn.eval(&site.location);
                    all_nonzero &= !got.is_zero();
                    let factor = Float::with_val(prec, site.ell as u64 + (n as u64 - 1));
                    let expect = -(&prev * &wp).mul_float(&factor);
                    max_pole = max_pole.max(got.rel_dist(&expect));
                    prev = got;
                }
            }
        }
    }

    LocalIdentityReport {
        max_essential_residual: max_ess,
        max_pole_residual: max_pole,
        all_nonzero,
    }
}

/// One oracle evaluation: the values `C_n(z)/n!` for `n = 0..=N` computed
/// by trapezoidal contour integrals of the translation generating
/// function, independent of the recurrence.
#[derive(Debug, Clone)]
pub struct OracleSample {
    pub z: BigComplex,
    pub values: Vec<BigComplex>,
    pub radius: Float,
    pub nodes: usize,
}

/// Contour-integral oracle for `C_n(z)/n!`, `n <= n_max`.
///
/// Integrates over `|xi| = rho(z)/2` and doubles the node count until two
/// consecutive refinements agree, which the annulus analyticity turns
/// into a spectral-accuracy error estimate.
pub fn gf_oracle(sd: &StructureData, z: &BigComplex, n_max: usize) -> Result<OracleSample> {
    let prec = sd.prec();
    let rho = sd.rho(z);
    let near = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)))
        * z.abs().max(&Float::with_val(prec, 1));
    if rho <= near {
        return Err(Error::InvalidInput(
            "oracle point coincides with a singular site".into(),
        ));
    }
    let radius = Float::with_val(prec, &rho / 2u32);

    // C(z, xi) = Q(z)/P_T(z) * P(z+xi)/Q(z+xi) * exp(E(z+xi) - E(z)).
    let front = &sd.spec.q.eval(z) / &sd.p_t.eval(z);
    let e_z = sd.spec.eval_exponent(z);

    let eval_nodes = |nodes: usize| -> Vec<BigComplex> {
        let pi2 = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
        let mut sums = vec![BigComplex::new(prec); n_max + 1];
        for k in 0..nodes {
            let theta = Float::with_val(prec, &pi2 * &Float::with_val(prec, k as u64))
                / Float::with_val(prec, nodes as u64);
            let unit = BigComplex::from_polar(&Float::with_val(prec, 1), &theta);
            let xi = unit.mul_float(&radius);
            let w = z + &xi;
            let f_k = &(&front * &(&sd.spec.p.eval(&w) / &sd.spec.q.eval(&w)))
                * &(&sd.spec.eval_exponent(&w) - &e_z).exp();
            // accumulate F_k * conj(unit)^n for every n
            let step = unit.conj();
            let mut rot = BigComplex::one(prec);
            for sum in sums.iter_mut() {
                *sum = &*sum + &(&f_k * &rot);
                rot = &rot * &step;
            }
        }
        // divide by nodes * r^n
        let nn = Float::with_val(prec, nodes as u64);
        let mut r_pow = Float::with_val(prec, 1);
        for (n, sum) in sums.iter_mut().enumerate() {
            *sum = sum.div_float(&(&nn * &r_pow).complete(prec));
            if n < n_max {
                r_pow *= &radius;
            }
        }
        sums
    };

    let tol = 2f64.powi(-((prec / 2) as i32));
    let mut nodes = 256usize;
    let mut prev = eval_nodes(nodes);
    loop {
        nodes *= 2;
        let next = eval_nodes(nodes);
        let scale = next
            .iter()
            .map(|v| v.abs().to_f64())
            .fold(0f64, f64::max)
            .max(f64::MIN_POSITIVE);
        let mut worst = 0f64;
        for (a, b) in prev.iter().zip(&next) {
            let d = (a - b).abs().to_f64() / scale.max(a.abs().to_f64());
            worst = worst.max(d);
        }
        if worst <= tol {
            return Ok(OracleSample {
                z: z.clone(),
                values: next,
                radius,
                nodes,
            });
        }
        if nodes >= 1 << 14 {
            return Err(Error::Precision(
                "oracle quadrature did not stabilize; re-run at higher precision".into(),
            ));
        }
        prev = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfunc::{analyze, normalize, HyperExpSpec};

    fn sd_exp_inv_z() -> StructureData {
        let spec = HyperExpSpec::new(
            CPoly::from_i64s(256, &[1]),
            CPoly::from_i64s(256, &[1]),
            CPoly::from_i64s(256, &[1]),
            CPoly::from_i64s(256, &[0, 1]),
        );
        analyze(&normalize(&spec).unwrap()).unwrap()
    }

    fn sd_exp_inv_z_over_zm1() -> StructureData {
        let spec = HyperExpSpec::new(
            CPoly::from_i64s(256, &[1]),
            CPoly::from_i64s(256, &[-1, 1]),
            CPoly::from_i64s(256, &[1]),
            CPoly::from_i64s(256, &[0, 1]),
        );
        analyze(&normalize(&spec).unwrap()).unwrap()
    }

    fn assert_poly_is(p: &CPoly, coeffs: &[i64]) {
        let expect = CPoly::from_i64s(256, coeffs);
        assert_eq!(p.deg_i(), expect.deg_i(), "degree of {p:?}");
        for k in 0..coeffs.len() {
            assert!(
                (&p.coeff(k) - &expect.coeff(k)).abs().to_f64() < 1e-70,
                "coeff {k}: got {}, want {}",
                p.coeff(k),
                expect.coeff(k)
            );
        }
    }

    #[test]
    fn b_sequence_exp_inv_z() {
        let seq = b_sequence(&sd_exp_inv_z(), 3).unwrap();
        assert_poly_is(&seq.b[0], &[1]);
        assert_poly_is(&seq.b[1], &[-1]);
        assert_poly_is(&seq.b[2], &[1, 2]);
        assert_poly_is(&seq.b[3], &[-1, -6, -6]);
    }

    #[test]
    fn b1_is_u_for_pole_spec() {
        let seq = b_sequence(&sd_exp_inv_z_over_zm1(), 1).unwrap();
        assert_poly_is(&seq.b[1], &[1, -1, -1]);
    }

    #[test]
    fn degree_law_two_regime() {
        // exp(1/z): p = q = 0, J = 1: deg B_n = n - 1, gamma_n = (-1)^n n!
        let seq = b_sequence(&sd_exp_inv_z(), 8).unwrap();
        let rep = check_degree_law(&seq);
        assert_eq!(rep.case, DegreeLawCase::TwoRegime);
        assert!(rep.all_pass, "{rep:?}");
        assert_eq!(seq.degs[3], 2);
        assert!((seq.gamma[3].re().to_f64() + 6.0).abs() < 1e-60);
    }

    #[test]
    fn degree_law_subrational() {
        // exp(1/z)/(z-1): p=0 < q=1: deg B_n = 2n, gamma_n = (-1)^n n!
        let seq = b_sequence(&sd_exp_inv_z_over_zm1(), 8).unwrap();
        let rep = check_degree_law(&seq);
        assert_eq!(rep.case, DegreeLawCase::SubRational);
        assert!(rep.all_pass, "{rep:?}");
        assert_eq!(seq.degs[5], 10);
        assert!((seq.gamma[4].re().to_f64() - 24.0).abs() < 1e-60);
    }

    #[test]
    fn degree_law_h_positive() {
        // S = z^2+1, T = z: h=1, tau=1, deg B_n = 2n, gamma_n = 1
        let spec = HyperExpSpec::new(
            CPoly::from_i64s(256, &[1]),
            CPoly::from_i64s(256, &[1]),
            CPoly::from_i64s(256, &[1, 0, 1]),
            CPoly::from_i64s(256, &[0, 1]),
        );
        let sd = analyze(&normalize(&spec).unwrap()).unwrap();
        let seq = b_sequence(&sd, 8).unwrap();
        let rep = check_degree_law(&seq);
        assert_eq!(rep.case, DegreeLawCase::PolynomialGrowth);
        assert!(rep.all_pass, "{rep:?}");
        assert_eq!(seq.degs[6], 12);
        assert!(seq.gamma[6].rel_dist(&BigComplex::one(256)) < 1e-60);
    }

    #[test]
    fn degree_law_strict_transition() {
        // z exp(1/z): p = 1 > q = 0, J = 1, G_{-1} = 1/2; the transition
        // happens at n = 2 where deg B_2 = 0 and gamma_2 = 1.
        let spec = HyperExpSpec::new(
            CPoly::from_i64s(256, &[0, 1]),
            CPoly::from_i64s(256, &[1]),
            CPoly::from_i64s(256, &[1]),
            CPoly::from_i64s(256, &[0, 1]),
        );
        let sd = analyze(&normalize(&spec).unwrap()).unwrap();
        assert_eq!(sd.j_transition, Some(1));
        assert!((sd.g_minus_j.as_ref().unwrap().re().to_f64() - 0.5).abs() < 1e-60);
        let seq = b_sequence(&sd, 6).unwrap();
        assert_poly_is(&seq.b[1], &[-1, 1]);
        assert_poly_is(&seq.b[2], &[1]);
        assert_poly_is(&seq.b[3], &[-1, -3]);
        let rep = check_degree_law(&seq);
        assert!(rep.all_pass, "{rep:?}");
    }

    #[test]
    fn local_identities() {
        // exp(1/z): B_n(0) = (-1)^n
        let seq = b_sequence(&sd_exp_inv_z(), 10).unwrap();
        let rep = check_local_identities(&seq);
        assert!(rep.all_nonzero);
        assert!(rep.max_essential_residual < 1e-60);
        assert!((seq.b[3].eval(&BigComplex::new(256)).re().to_f64() + 1.0).abs() < 1e-60);

        // exp(1/z)/(z-1): B_1(1) = -1
        let seq = b_sequence(&sd_exp_inv_z_over_zm1(), 10).unwrap();
        let rep = check_local_identities(&seq);
        assert!(rep.all_nonzero);
        assert!(rep.max_essential_residual < 1e-55, "{rep:?}");
        assert!(rep.max_pole_residual < 1e-55, "{rep:?}");
        let one = BigComplex::one(256);
        assert!((seq.b[1].eval(&one).re().to_f64() + 1.0).abs() < 1e-60);
    }

    #[test]
    fn oracle_matches_recurrence() {
        let sd = sd_exp_inv_z();
        let seq = b_sequence(&sd, 6).unwrap();
        let z = BigComplex::from_i64(256, -1);
        let sample = gf_oracle(&sd, &z, 6).unwrap();
        // n = 0: C_0 = P_sharp(z) = 1
        assert!(sample.values[0].rel_dist(&BigComplex::one(256)) < 1e-35);
        // n = 2: B_2(-1)/(2! W(-1)^2) = -1/2
        assert!(
            (sample.values[2].re().to_f64() + 0.5).abs() < 1e-30,
            "{}",
            sample.values[2]
        );
        for n in 0..=6 {
            let exact = seq.cn_over_factorial(n, &z);
            assert!(
                sample.values[n].rel_dist(&exact) < 1e-25,
                "n={n}: {} vs {}",
                sample.values[n],
                exact
            );
        }
    }

    #[test]
    fn oracle_pole_spec_value() {
        let sd = sd_exp_inv_z_over_zm1();
        let z = BigComplex::from_i64(256, 2);
        let sample = gf_oracle(&sd, &z, 3).unwrap();
        // n = 1: B_1(2)/(1! W(2)) = -5/4
        assert!((sample.values[1].re().to_f64() + 1.25).abs() < 1e-25);
    }

    #[test]
    fn oracle_rejects_singular_point() {
        let sd = sd_exp_inv_z();
        assert!(gf_oracle(&sd, &BigComplex::new(256), 3).is_err());
    }
}
