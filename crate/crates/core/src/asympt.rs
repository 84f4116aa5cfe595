//! Cellwise predicted asymptotics for `C_n(z)/n!`: Darboux extraction on
//! pole cells and parameter-uniform multi-saddle expansions on essential
//! cells, plus Stokes classification and the local L1-rate experiment.
//!
//! On an essential cell attached to a site of order `m` the phase is
//! `Phi(t) = sum_s lam~_s t^(-s) - (n+1) log(1-t)` and the `m+1` saddles
//! sit near `omega_nu eta n^(-1/(m+1))`. Each saddle contributes through
//! the steepest-descent Gaussian; the square-root branch is fixed by
//! aligning the descent direction with the negatively oriented circle
//! traversal of the underlying contour split.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use crate::derivseq::DerivSeq;
use crate::error::{Error, Result};
use crate::hyperfunc::{SiteKind, StructureData};
use crate::num::big::BigComplex;
use crate::voronoi;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CellKind {
    /// `m_i = 0`: Darboux extraction applies.
    Algebraic,
    /// `m_i >= 1`: Wright expansion with `m_i + 1` saddles.
    Essential,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellClassification {
    pub site: usize,
    pub kind: CellKind,
    pub m: usize,
    pub beta: i64,
    /// `theta = -(2 beta + m + 2) / (2 (m + 1))` as an exact fraction.
    pub theta_num: i64,
    pub theta_den: i64,
}

impl CellClassification {
    pub fn theta(&self) -> f64 {
        self.theta_num as f64 / self.theta_den as f64
    }
}

pub fn classify(sd: &StructureData, i: usize) -> CellClassification {
    let site = &sd.sites[i];
    let m = site.m;
    let beta = site.beta;
    let num = -(2 * beta + m as i64 + 2);
    let den = 2 * (m as i64 + 1);
    let g = gcd_i64(num.abs().max(1), den);
    CellClassification {
        site: i,
        kind: if site.kind == SiteKind::Essential {
            CellKind::Essential
        } else {
            CellKind::Algebraic
        },
        m,
        beta,
        theta_num: num / g,
        theta_den: den / g,
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// Requires `z` to lie in the open cell of site `i`, off the boundary.
fn require_in_cell(sd: &StructureData, i: usize, z: &BigComplex) -> Result<()> {
    let tol = 1e-9 * sd.diameter().max(1.0);
    let mut d_own = f64::INFINITY;
    let mut d_other = f64::INFINITY;
    for (j, s) in sd.sites.iter().enumerate() {
        let d = (z - &s.location).abs().to_f64();
        if j == i {
            d_own = d;
        } else {
            d_other = d_other.min(d);
        }
    }
    if d_own <= tol {
        return Err(Error::Domain("evaluation point coincides with the site".into()));
    }
    if d_own >= d_other - tol {
        return Err(Error::Domain(format!(
            "point is not in the open Voronoi cell of site {i}"
        )));
    }
    Ok(())
}

/// `R_i(z, 1)`: the holomorphic amplitude at the singular point of the
/// rescaled generating function, evaluated via the cached local
/// factorizations.
pub fn amplitude_r(sd: &StructureData, i: usize, z: &BigComplex) -> Result<BigComplex> {
    let prec = sd.prec();
    let site = &sd.sites[i];
    let a = &site.location;

    let p_tilde = sd.p_t.deflate(a, site.p_loc);
    let q_tilde = sd.spec.q.deflate(a, site.r_loc);

    let p_tilde_z = p_tilde.eval(z);
    let floor = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)))
        * p_tilde.max_coeff_abs().max(&Float::with_val(prec, 1));
    if p_tilde_z.abs() <= floor {
        return Err(Error::SingularAmplitude(
            "evaluation point is a zero of P; the amplitude degenerates there".into(),
        ));
    }

    let num = &(&q_tilde.eval(z) * &p_tilde.eval(a)) * &sd.p_sharp.eval(a);
    let den = &p_tilde_z * &q_tilde.eval(a);
    let exp_part = (&site.e_reg_at_site - &sd.spec.eval_exponent(z)).exp();
    Ok(&(&num / &den) * &exp_part)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    Darboux,
    WrightOneSaddle,
    WrightMultiSaddle,
}

#[derive(Debug, Clone, Serialize)]
pub struct PredictionReport {
    pub predicted: BigComplex,
    pub exact: BigComplex,
    /// `|predicted/exact - 1|` when `exact != 0`.
    pub rel_error: f64,
    pub regime: Regime,
}

fn rel_error_of(predicted: &BigComplex, exact: &BigComplex) -> f64 {
    if exact.is_zero() {
        f64::INFINITY
    } else {
        (&(predicted / exact) - &BigComplex::one(predicted.prec()))
            .abs()
            .to_f64()
    }
}

/// Darboux prediction on an algebraic (pole) cell:
/// `C_n(z)/n! ~ d_i(z)^(-n) n^(-beta-1) R_i(z,1)/Gamma(-beta)`.
pub fn darboux_predict(
    seq: &DerivSeq,
    i: usize,
    z: &BigComplex,
    n: usize,
) -> Result<PredictionReport> {
    let sd = &seq.structure;
    let prec = sd.prec();
    let class = classify(sd, i);
    if class.kind != CellKind::Algebraic {
        return Err(Error::Domain("darboux_predict needs an algebraic cell".into()));
    }
    require_in_cell(sd, i, z)?;
    let r1 = amplitude_r(sd, i, z)?;
    let d_i = &sd.sites[i].location - z;
    let r_i = (-class.beta) as u32;
    let gamma = Float::with_val(prec, Float::factorial(r_i - 1));
    let n_pow = Float::with_val(prec, n as u64).pow(Float::with_val(prec, (-class.beta - 1) as f64));
    let predicted = d_i
        .powi(-(n as i64))
        .mul_float(&n_pow)
        .mul_float(&gamma.recip())
        * &r1;
    let exact = seq.cn_over_factorial(n, z);
    Ok(PredictionReport {
        rel_error: rel_error_of(&predicted, &exact),
        predicted,
        exact,
        regime: Regime::Darboux,
    })
}

/// One saddle of the essential-cell expansion.
#[derive(Debug, Clone, Serialize)]
pub struct Saddle {
    pub nu: usize,
    pub omega: BigComplex,
    /// Solution of `Phi'(t) = 0` near `omega_nu eta n^(-1/(m+1))`.
    pub t: BigComplex,
    /// Effective amplitude: contribution / (n^theta exp(phase)).
    pub amplitude: BigComplex,
    /// `Xi = Phi(t)`.
    pub phase: BigComplex,
    /// The full saddle contribution to `C_n(z) d_i(z)^n / n!`.
    pub contribution: BigComplex,
}

#[derive(Debug, Clone, Serialize)]
pub struct SaddleExpansion {
    pub z: BigComplex,
    pub n: usize,
    pub m: usize,
    pub eta: BigComplex,
    pub saddles: Vec<Saddle>,
    /// Indices whose `Re Xi` ties for the maximum within the gap
    /// tolerance.
    pub dominant: Vec<usize>,
    pub r_at_1: BigComplex,
}

/// The local phase data of an essential cell at a fixed `z`.
struct PhaseData {
    prec: u32,
    /// `lam~_s = lambda_s (z - a)^(-s)`, index s-1.
    lam: Vec<BigComplex>,
}

impl PhaseData {
    fn phi(&self, t: &BigComplex, n: usize) -> BigComplex {
        let prec = self.prec;
        let tinv = t.recip();
        let mut acc = BigComplex::new(prec);
        // Horner in 1/t: acc = sum_s lam_s t^(-s).
        for lam_s in self.lam.iter().rev() {
            acc = &(&acc + lam_s) * &tinv;
        }
        let one_minus = &BigComplex::one(prec) - t;
        &acc - &one_minus.ln().mul_float(&Float::with_val(prec, (n + 1) as u64))
    }

    fn phi_d1(&self, t: &BigComplex, n: usize) -> BigComplex {
        let prec = self.prec;
        let tinv = t.recip();
        let mut acc = BigComplex::new(prec);
        // Horner in 1/t: sum_s (-s) lam_s t^(-s-1).
        for (s, lam_s) in self.lam.iter().enumerate().rev() {
            let coef = lam_s.mul_float(&Float::with_val(prec, -((s + 1) as i64)));
            acc = &(&acc * &tinv) + &coef;
        }
        acc = &acc * &tinv.powi(2);
        let one_minus = &BigComplex::one(prec) - t;
        &acc + &one_minus.recip().mul_float(&Float::with_val(prec, (n + 1) as u64))
    }

    fn phi_d2(&self, t: &BigComplex, n: usize) -> BigComplex {
        let prec = self.prec;
        let tinv = t.recip();
        let mut acc = BigComplex::new(prec);
        for (s, lam_s) in self.lam.iter().enumerate().rev() {
            let s1 = (s + 1) as i64;
            let coef = lam_s.mul_float(&Float::with_val(prec, s1 * (s1 + 1)));
            acc = &(&acc * &tinv) + &coef;
        }
        acc = &acc * &tinv.powi(3);
        let one_minus = &BigComplex::one(prec) - t;
        &acc + &one_minus.powi(-2).mul_float(&Float::with_val(prec, (n + 1) as u64))
    }
}

fn phase_data(sd: &StructureData, i: usize, z: &BigComplex) -> Result<PhaseData> {
    let site = &sd.sites[i];
    let pp = site
        .principal
        .as_ref()
        .ok_or_else(|| Error::Domain("essential cell required".into()))?;
    let w = z - &site.location;
    let winv = w.recip();
    let lam: Vec<BigComplex> = (1..=site.m)
        .map(|s| pp.coeff(s) * &winv.powi(s as i64))
        .collect();
    Ok(PhaseData {
        prec: sd.prec(),
        lam,
    })
}

/// Branch value `eta(z)`: principal `(m+1)`-th root of
/// `m lambda_m (z - a)^(-m)`. The multi-saddle sum and the Stokes
/// dominant set are invariant under the relabeling `eta -> omega eta`, so
/// the principal choice is a pure convention.
pub fn eta_branch(sd: &StructureData, i: usize, z: &BigComplex) -> Result<BigComplex> {
    let site = &sd.sites[i];
    let pp = site
        .principal
        .as_ref()
        .ok_or_else(|| Error::Domain("essential cell required".into()))?;
    let m = site.m;
    let w = &(z - &site.location).powi(-(m as i64)) * pp.top();
    Ok(w.mul_float(&Float::with_val(sd.prec(), m as u64))
        .root_principal(m as u32 + 1))
}

/// Smallest admissible `n` for the saddle machinery: below it the
/// lower-order phase terms can push saddles into collision.
pub fn saddle_n_min(sd: &StructureData, i: usize, z: &BigComplex) -> Result<usize> {
    let site = &sd.sites[i];
    let pd = phase_data(sd, i, z)?;
    let m = site.m;
    let lam_m = pd.lam[m - 1].abs().to_f64();
    let mut bound = 1f64;
    for (s, lam_s) in pd.lam.iter().enumerate() {
        let ratio = (lam_s.abs().to_f64() / lam_m).powf(1.0 / (m - s) as f64);
        bound = bound.max(ratio);
    }
    // n^(1/(m+1)) >= 4 * bound
    Ok((4.0 * bound).powi(m as i32 + 1).ceil() as usize)
}

/// Newton-refined saddles, phases, amplitudes, and the dominant set for
/// the essential cell of site `i` at the point `z` and index `n`.
pub fn wright_saddles(
    sd: &StructureData,
    i: usize,
    z: &BigComplex,
    n: usize,
) -> Result<SaddleExpansion> {
    let eta = eta_branch(sd, i, z)?;
    wright_saddles_with_eta(sd, i, z, n, eta)
}

/// Same as [`wright_saddles`] but with the branch value supplied; any
/// `(m+1)`-th root of `m lambda_m (z-a)^(-m)` yields the same summand
/// set up to relabeling.
pub fn wright_saddles_with_eta(
    sd: &StructureData,
    i: usize,
    z: &BigComplex,
    n: usize,
    eta: BigComplex,
) -> Result<SaddleExpansion> {
    let prec = sd.prec();
    let class = classify(sd, i);
    if class.kind != CellKind::Essential {
        return Err(Error::Domain("wright_saddles needs an essential cell".into()));
    }
    require_in_cell(sd, i, z)?;
    let m = class.m;
    let n_min = saddle_n_min(sd, i, z)?;
    if n < n_min {
        return Err(Error::Domain(format!(
            "n = {n} is below the saddle separation threshold {n_min}"
        )));
    }

    let pd = phase_data(sd, i, z)?;
    let r1 = amplitude_r(sd, i, z)?;

    let n_scale = Float::with_val(prec, n as u64)
        .pow(Float::with_val(prec, -1.0 / (m as f64 + 1.0)));
    let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
    let newton_tol = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)));
    let resid_tol = Float::with_val(prec, 10)
        .pow(Float::with_val(prec, -((prec / 4) as f64)));

    let mut saddles = Vec::with_capacity(m + 1);
    let mut max_correction = Float::new(prec);
    for nu in 0..=m {
        let angle = Float::with_val(prec, 2 * nu as u32) * Float::with_val(prec, rug::float::Constant::Pi)
            / Float::with_val(prec, (m + 1) as u32);
        let omega = BigComplex::from_polar(&Float::with_val(prec, 1), &angle);
        let mut t = (&omega * &eta).mul_float(&n_scale);
        let mut converged = false;
        for _ in 0..200 {
            let d1 = pd.phi_d1(&t, n);
            let d2 = pd.phi_d2(&t, n);
            if d2.is_zero() {
                break;
            }
            let step = &d1 / &d2;
            t = &t - &step;
            let corr = step.abs();
            if corr <= Float::with_val(prec, &newton_tol * &t.abs()) {
                if corr > max_correction {
                    max_correction = corr;
                }
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::SaddleFailure(format!(
                "Newton did not converge for saddle {nu} at n = {n}"
            )));
        }
        // Residual check |Phi'(t)| <= 10^(-prec/4) |Phi''| |t|.
        let d1 = pd.phi_d1(&t, n);
        let d2 = pd.phi_d2(&t, n);
        let bound = Float::with_val(prec, &resid_tol * &d2.abs()) * t.abs();
        if d1.abs() > bound {
            return Err(Error::SaddleFailure(format!(
                "saddle {nu} residual above tolerance at n = {n}"
            )));
        }

        let phase = pd.phi(&t, n);
        // Steepest-descent direction (pi - arg Phi'')/2. The coefficient
        // contour around the singular point, written in the local variable
        // t = 1 - zeta, is traversed counter-clockwise (the substitution's
        // Jacobian flips the clockwise deleted-disc boundary), so the
        // descent arc is aligned with the ccw tangent i t/|t|.
        let psi_axis = (Float::with_val(prec, rug::float::Constant::Pi) - d2.arg()) / 2u32;
        let tangent_arg = t.mul_i().arg();
        // pick psi in {psi_axis, psi_axis + pi} with cos(psi - tangent_arg) > 0
        let mut psi = psi_axis.clone();
        {
            let diff = Float::with_val(prec, &psi - &tangent_arg);
            if diff.cos().is_sign_negative() {
                psi += Float::with_val(prec, rug::float::Constant::Pi);
            }
        }
        // contribution = (1/(2 pi i)) t^beta R e^(i psi) sqrt(2 pi/|Phi''|) e^(Phi)
        let gauss = Float::with_val(prec, &two_pi / &d2.abs()).sqrt();
        let unit = BigComplex::from_polar(&Float::with_val(prec, 1), &psi);
        let contribution = &(&(&t.powi(class.beta) * &r1) * &unit.mul_float(&gauss))
            * &(&phase.exp() / &BigComplex::i(prec).mul_float(&two_pi));
        saddles.push(Saddle {
            nu,
            omega,
            t,
            amplitude: BigComplex::new(prec), // filled below
            phase,
            contribution,
        });
    }

    // Saddle collision guard.
    for a in 0..saddles.len() {
        for b in (a + 1)..saddles.len() {
            let d = (&saddles[a].t - &saddles[b].t).abs();
            if d < Float::with_val(prec, 10u32 * &max_correction) {
                return Err(Error::SaddleFailure(format!(
                    "saddles {a} and {b} collide at n = {n}"
                )));
            }
        }
    }

    // Effective amplitudes relative to n^theta e^(Xi).
    let n_theta = Float::with_val(prec, n as u64).pow(Float::with_val(prec, class.theta()));
    for s in saddles.iter_mut() {
        s.amplitude = (&s.contribution / &s.phase.exp()).div_float(&n_theta);
    }

    // Dominant set: argmax Re Xi within the Stokes margin scaled to the
    // phase size.
    let gap = 1e-3 * eta.abs().to_f64() * (n as f64).powf(m as f64 / (m as f64 + 1.0));
    let best = saddles
        .iter()
        .map(|s| s.phase.re().to_f64())
        .fold(f64::NEG_INFINITY, f64::max);
    let dominant: Vec<usize> = saddles
        .iter()
        .enumerate()
        .filter(|(_, s)| s.phase.re().to_f64() >= best - gap)
        .map(|(k, _)| k)
        .collect();

    Ok(SaddleExpansion {
        z: z.clone(),
        n,
        m,
        eta,
        saddles,
        dominant,
        r_at_1: r1,
    })
}

/// Wright prediction on an essential cell. The regime is one-saddle when
/// the dominant set is a singleton (the sum truncates to it), otherwise
/// the full multi-saddle sum is kept.
pub fn wright_predict(seq: &DerivSeq, i: usize, z: &BigComplex, n: usize) -> Result<PredictionReport> {
    let sd = &seq.structure;
    let prec = sd.prec();
    let exp = wright_saddles(sd, i, z, n)?;
    let one_saddle = exp.dominant.len() == 1;
    let mut sum = BigComplex::new(prec);
    if one_saddle {
        sum = exp.saddles[exp.dominant[0]].contribution.clone();
    } else {
        for s in &exp.saddles {
            sum = &sum + &s.contribution;
        }
    }
    let d_i = &sd.sites[i].location - z;
    let predicted = &d_i.powi(-(n as i64)) * &sum;
    let exact = seq.cn_over_factorial(n, z);
    Ok(PredictionReport {
        rel_error: rel_error_of(&predicted, &exact),
        predicted,
        exact,
        regime: if one_saddle {
            Regime::WrightOneSaddle
        } else {
            Regime::WrightMultiSaddle
        },
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct StokesReport {
    /// Saddle indices within the margin tolerance of the maximal
    /// `Re(omega_nu eta)`.
    pub dominant: Vec<usize>,
    /// Gap between the top two distinct values (zero on a tie).
    pub margin: f64,
}

/// Classifies `z` against the Stokes set of cell `i`: the point is on the
/// set when two or more saddle directions tie for dominance.
pub fn stokes_indicator(sd: &StructureData, i: usize, z: &BigComplex) -> Result<StokesReport> {
    let class = classify(sd, i);
    if class.kind != CellKind::Essential {
        return Err(Error::Domain("stokes_indicator needs an essential cell".into()));
    }
    let eta = eta_branch(sd, i, z)?;
    let m = class.m;
    let (ex, ey) = eta.to_f64s();
    let mut vals = Vec::with_capacity(m + 1);
    for nu in 0..=m {
        let ang = 2.0 * std::f64::consts::PI * nu as f64 / (m as f64 + 1.0);
        vals.push(ex * ang.cos() - ey * ang.sin());
    }
    let margin_tol = 1e-3 * eta.abs().to_f64();
    let best = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let dominant: Vec<usize> = (0..=m).filter(|&nu| vals[nu] >= best - margin_tol).collect();
    let mut margin = 0.0;
    if dominant.len() == 1 {
        let second = vals
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != dominant[0])
            .map(|(_, v)| *v)
            .fold(f64::NEG_INFINITY, f64::max);
        margin = best - second;
    }
    Ok(StokesReport { dominant, margin })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Rectangle {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct L1RateReport {
    pub rows: Vec<(usize, f64)>,
    /// Least-squares slope of log(estimate) against log(n).
    pub fitted_exponent: f64,
    pub grid: usize,
}

/// Estimates `int_K |L~_n - Psi_i|` over a uniform grid for each listed
/// `n` and fits the decay exponent (the predicted rate on an essential
/// cell is `-1/(m_i+1)`).
pub fn l1_rate_experiment(
    seq: &DerivSeq,
    i: usize,
    rect: Rectangle,
    n_list: &[usize],
    grid: usize,
) -> Result<L1RateReport> {
    let sd = &seq.structure;
    let prec = sd.prec();
    let hx = (rect.x1 - rect.x0) / grid as f64;
    let hy = (rect.y1 - rect.y0) / grid as f64;
    let area_cell = hx * hy;

    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if n > seq.max_n() || seq.degs[n] == 0 {
            return Err(Error::Domain(format!("B_{n} not available or constant")));
        }
        let bn = &seq.b[n];
        let deg = seq.degs[n] as f64;
        let log_gamma_n = seq.gamma[n].abs().ln().to_f64();
        let s_n = seq.s_n(n).to_f64();
        // Zero-proximity floor: values this far below scale are treated as
        // grid hits on a zero of B_n and replaced by neighbor averages.
        let floor = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)))
            * bn.max_coeff_abs();

        let values: Vec<Option<f64>> = (0..grid * grid)
            .into_par_iter()
            .map(|idx| {
                let gx = idx % grid;
                let gy = idx / grid;
                let x = rect.x0 + (gx as f64 + 0.5) * hx;
                let y = rect.y0 + (gy as f64 + 0.5) * hy;
                let z = BigComplex::from_f64s(prec, x, y);
                let bval = bn.eval(&z);
                let zpow = z.abs().max(&Float::with_val(prec, 1)).pow(seq.degs[n] as u32);
                if bval.abs() <= Float::with_val(prec, &floor * &zpow) {
                    return None;
                }
                let ltilde = (bval.abs().ln().to_f64() - log_gamma_n - s_n) / deg;
                let psi = voronoi::psi_i(sd, i, &z).ok()?.to_f64();
                Some((ltilde - psi).abs())
            })
            .collect();

        // Neighbor averaging over the integrable log singularities.
        let mut total = 0f64;
        for idx in 0..grid * grid {
            let v = match values[idx] {
                Some(v) => v,
                None => {
                    let gx = (idx % grid) as isize;
                    let gy = (idx / grid) as isize;
                    let mut acc = 0f64;
                    let mut cnt = 0usize;
                    for dx in -1..=1isize {
                        for dy in -1..=1isize {
                            let nx = gx + dx;
                            let ny = gy + dy;
                            if (dx != 0 || dy != 0)
                                && nx >= 0
                                && ny >= 0
                                && (nx as usize) < grid
                                && (ny as usize) < grid
                            {
                                if let Some(w) = values[ny as usize * grid + nx as usize] {
                                    acc += w;
                                    cnt += 1;
                                }
                            }
                        }
                    }
                    if cnt > 0 {
                        acc / cnt as f64
                    } else {
                        0.0
                    }
                }
            };
            total += v * area_cell;
        }
        rows.push((n, total));
    }

    // Least-squares fit of log(estimate) vs log(n).
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|(_, e)| *e > 0.0)
        .map(|(n, e)| ((*n as f64).ln(), e.ln()))
        .collect();
    let fitted_exponent = fit_slope(&pts);

    Ok(L1RateReport {
        rows,
        fitted_exponent,
        grid,
    })
}

pub fn fit_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return f64::NAN;
    }
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
