//! High-precision simultaneous root finding and empirical zero-counting
//! measures.
//!
//! All roots of a polynomial are located at once by Aberth-Ehrlich
//! iteration started from a Cauchy-bound circle. Multiplicities are
//! recovered by merging clusters of converged points; a cluster of k
//! points around a k-fold root has centroid error of the order of the
//! k-th power of the point error, so the merged location is far more
//! accurate than the individual points.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::num::big::BigComplex;
use crate::num::poly::CPoly;

/// Golden angle in radians; used to offset the initial points so that
/// symmetric root sets do not trap the iteration on a symmetry axis.
const GOLDEN_ANGLE: f64 = 2.399963229728653;

/// All roots of a polynomial with multiplicities and a scaled residual.
#[derive(Debug, Clone)]
pub struct RootSet {
    /// Distinct root locations with multiplicities.
    pub roots: Vec<(BigComplex, usize)>,
    pub poly_degree: usize,
    /// max over roots of |p(root)| / (max|coeff| * max(1,|root|)^deg).
    pub residual: f64,
    /// Merge radius used for multiplicity clustering, also the per-root
    /// uncertainty radius for boundary flagging.
    pub cluster_radius: f64,
}

impl RootSet {
    /// Total number of roots counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    /// Flattens to one entry per root, repeating multiplicities.
    pub fn flattened(&self) -> Vec<BigComplex> {
        let mut out = Vec::with_capacity(self.poly_degree);
        for (r, m) in &self.roots {
            for _ in 0..*m {
                out.push(r.clone());
            }
        }
        out
    }
}

/// Zero-counting measure: point masses with positive weights.
#[derive(Debug, Clone)]
pub struct EmpiricalMeasure {
    pub atoms: Vec<(BigComplex, f64)>,
    pub total: f64,
}

/// Disc count with boundary-grazing diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct DiscCount {
    /// Multiplicity-weighted count of roots strictly inside the disc.
    pub count: usize,
    /// Roots within ten uncertainty radii of the disc boundary.
    pub flagged: usize,
}

/// Finds all roots of `p` by Aberth-Ehrlich iteration.
///
/// Convergence requires the maximum correction to fall below
/// `2^(-prec/2) * scale`; failing that after the iteration budget is a
/// precision error and the caller should re-run at higher precision.
pub fn find_roots(p: &CPoly) -> Result<RootSet> {
    let prec = p.prec();
    let deg = match p.degree() {
        None | Some(0) => {
            return Err(Error::InvalidInput("root finding needs degree >= 1".into()))
        }
        Some(d) => d,
    };

    // Exact zero roots (trailing zero low-order coefficients) are stripped
    // first; they would otherwise slow the iteration without need.
    let mut zeros_at_origin = 0usize;
    while p.coeff(zeros_at_origin).is_zero() && zeros_at_origin < deg {
        zeros_at_origin += 1;
    }
    let work = if zeros_at_origin > 0 {
        CPoly::from_coeffs(
            prec,
            p.coeffs()[zeros_at_origin..].to_vec(),
        )
    } else {
        p.clone()
    };

    let mut clusters = if work.degree() == Some(0) {
        Vec::new()
    } else {
        let mut cl = aberth_clusters(&work)?;
        polish_multiple_roots(&work, &mut cl);
        cl
    };
    if zeros_at_origin > 0 {
        clusters.push((BigComplex::new(prec), zeros_at_origin));
    }

    // Residual of the original polynomial at every reported root.
    let scale = p.max_coeff_abs();
    let mut residual = 0f64;
    for (r, _) in &clusters {
        let v = p.eval(r).abs();
        let denom_pow = r.abs().max(&Float::with_val(prec, 1)).pow(deg as u32);
        let res = (v / (&scale * denom_pow)).to_f64();
        residual = residual.max(res);
    }

    // Certification: pointwise residuals cannot see regions where the
    // polynomial dips below evaluation noise (deep zero basins next to
    // essential singularities), so compare p against lc * prod (z - root)
    // on a circle of twice the root bound. Out there every linear factor
    // is well conditioned, so an honest root set matches to rounding
    // noise while a corrupted one misses by orders of magnitude.
    {
        let mut r_bound = Float::with_val(prec, 1);
        for (r, _) in &clusters {
            let a = r.abs();
            if a > r_bound {
                r_bound = a;
            }
        }
        r_bound *= 2u32;
        // Root locations are limited by the polynomial's own conditioning
        // (the basin depth next to an essential singularity can eat
        // hundreds of bits), so certify against a fixed macroscopic
        // threshold: honest sets land below it once the precision covers
        // the dynamic range, corrupted ones miss by orders of magnitude.
        let cert_tol = 1e-6;
        for k in 0..4u32 {
            let theta = Float::with_val(prec, GOLDEN_ANGLE) * Float::with_val(prec, 2 * k + 1);
            let z = BigComplex::from_polar(&r_bound, &theta);
            let direct = p.eval(&z);
            let mut product = p.lc().expect("nonzero").clone();
            for (r, m) in &clusters {
                product = &product * &(&z - r).powi(*m as i64);
            }
            let denom = direct.abs().max(&product.abs());
            let diff = ((&direct - &product).abs() / denom).to_f64();
            if diff > cert_tol {
                return Err(Error::Precision(format!(
                    "root set fails off-circle reconstruction (rel. {diff:.3e});                      the zero set is unresolvable at {prec} bits, re-run higher"
                )));
            }
        }
    }

    let cluster_radius = 2f64.powi(-((prec / 4) as i32));
    let rs = RootSet {
        roots: clusters,
        poly_degree: deg,
        residual,
        cluster_radius,
    };
    debug_assert_eq!(rs.total_multiplicity(), deg);
    Ok(rs)
}

/// Re-runs [`find_roots`] at doubled precision until the root sets of two
/// consecutive runs agree to `tol` (relative), then returns the finer run.
pub fn find_roots_certified(p: &CPoly, tol: f64, max_prec: u32) -> Result<RootSet> {
    let mut prec = p.prec();
    let mut prev = find_roots(&p.with_prec(prec))?;
    loop {
        if prec.saturating_mul(2) > max_prec {
            return Err(Error::Precision(format!(
                "root set did not stabilize below {max_prec} bits"
            )));
        }
        prec *= 2;
        let next = find_roots(&p.with_prec(prec))?;
        if root_sets_agree(&prev, &next, tol) {
            return Ok(next);
        }
        prev = next;
    }
}

fn root_sets_agree(a: &RootSet, b: &RootSet, tol: f64) -> bool {
    if a.total_multiplicity() != b.total_multiplicity() {
        return false;
    }
    // Greedy nearest matching is adequate: both sets approximate the same
    // zeros and the tolerance is far below root separations.
    for (ra, ma) in &a.roots {
        let mut best = f64::INFINITY;
        let mut best_m = 0usize;
        for (rb, mb) in &b.roots {
            let d = ra.rel_dist(rb);
            if d < best {
                best = d;
                best_m = *mb;
            }
        }
        if best > tol || best_m != *ma {
            return false;
        }
    }
    true
}

/// Core iteration on a polynomial with nonzero constant term.
fn aberth_clusters(p: &CPoly) -> Result<Vec<(BigComplex, usize)>> {
    let prec = p.prec();
    let n = p.degree().unwrap();
    let monic = p.monic();

    // Root bound for the outermost initial circle. The naive Cauchy
    // bound 1 + max|a_i| explodes when coefficients span many orders of
    // magnitude (B_n coefficients grow like n! kappa^n); the Fujiwara
    // bound 2 max_k |a_(n-k)/a_n|^(1/k) tracks the true root radius
    // within a factor of two.
    let mut radius = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    for k in 1..=n {
        let ratio = monic.coeff(n - k).abs().root(k as u32);
        if ratio > radius {
            radius = ratio;
        }
    }
    radius *= 2u32;

    // Initial radii from the Newton polygon (upper convex hull of
    // (k, log|a_k|)): each hull segment contributes its slope as a root
    // modulus estimate, which spreads the starting points across the
    // right magnitude scales instead of one far-out circle.
    let logs: Vec<Option<f64>> = monic
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_zero() {
                None
            } else {
                Some(c.abs().ln().to_f64())
            }
        })
        .collect();
    let mut hull: Vec<usize> = Vec::new();
    for k in 0..=n {
        let Some(yk) = logs[k] else { continue };
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b as f64 - a as f64) * (yk - logs[a].unwrap())
                - (k as f64 - a as f64) * (logs[b].unwrap() - logs[a].unwrap());
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    let mut radii: Vec<f64> = Vec::with_capacity(n);
    for seg in hull.windows(2) {
        let (k1, k2) = (seg[0], seg[1]);
        let slope = (logs[k1].unwrap() - logs[k2].unwrap()) / (k2 - k1) as f64;
        let r = slope.exp();
        for _ in 0..(k2 - k1) {
            radii.push(r);
        }
    }
    debug_assert_eq!(radii.len(), n);
    let rmax = radius.to_f64();
    let mut pts: Vec<BigComplex> = (0..n)
        .map(|k| {
            let theta = Float::with_val(prec, 2) * Float::with_val(prec, rug::float::Constant::Pi)
                * Float::with_val(prec, k as u64)
                / Float::with_val(prec, n as u64)
                + Float::with_val(prec, GOLDEN_ANGLE);
            let r = radii[k].min(rmax).max(rmax * 1e-12);
            BigComplex::from_polar(&Float::with_val(prec, r), &theta)
        })
        .collect();

    let eps = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)));
    // Attainable evaluation accuracy: below this the residual is rounding
    // noise and neither multiple nor clustered roots can shrink the
    // correction any further. Scales with the largest monic coefficient.
    let noise = Float::with_val(prec, Float::i_exp((n as i32 + 1) * 64, -(prec as i32)))
        * monic.max_coeff_abs().max(&Float::with_val(prec, 1));
    let one = Float::with_val(prec, 1);
    let max_sweeps = 400 + 4 * n;
    let parallel = n >= 48;

    let debug_sweeps = std::env::var_os("HXZ_ABERTH_DEBUG").is_some();
    let mut converged = false;
    let mut sweep_dbg = 0usize;
    let mut frozen = vec![false; n];
    for _ in 0..max_sweeps {
        let step = |i: usize| -> (BigComplex, bool) {
            let z = &pts[i];
            if frozen[i] {
                return (z.clone(), true);
            }
            let (pv, dv) = monic.eval_with_deriv(z);
            if pv.is_zero() {
                return (z.clone(), true);
            }
            let zscale = z.abs().max(&one);
            let floor = Float::with_val(prec, &noise * &zscale.clone().pow(n as u32));
            if pv.abs() <= floor {
                return (z.clone(), true);
            }
            let newton = if dv.is_zero() {
                // Flat spot: nudge off it instead of dividing by zero.
                BigComplex::from_f64s(prec, 1e-3, 1e-3).mul_float(&radius)
            } else {
                &pv / &dv
            };
            let mut s = BigComplex::new(prec);
            for (j, w) in pts.iter().enumerate() {
                if j != i {
                    s = &s + &(z - w).recip();
                }
            }
            let denom = &BigComplex::one(prec) - &(&newton * &s);
            let w = if denom.is_zero() { newton } else { &newton / &denom };
            let nz = z - &w;
            let ok = w.abs() <= Float::with_val(prec, &eps * &zscale);
            (nz, ok)
        };

        let updates: Vec<(BigComplex, bool)> = if parallel {
            (0..n).into_par_iter().map(step).collect()
        } else {
            (0..n).map(step).collect()
        };

        let mut all_ok = true;
        let mut n_bad = 0usize;
        for (i, (nz, ok)) in updates.into_iter().enumerate() {
            all_ok &= ok;
            n_bad += usize::from(!ok);
            frozen[i] = ok;
            pts[i] = nz;
        }
        if debug_sweeps {
            sweep_dbg += 1;
            if sweep_dbg % 25 == 0 {
                eprintln!("sweep {sweep_dbg}: {n_bad} unconverged of {n}");
            }
        }
        if all_ok {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Precision(
            "Aberth iteration did not converge; re-run at higher precision".into(),
        ));
    }

    Ok(merge_clusters(pts, prec))
}

/// A cluster centroid approximates an m-fold root only to roughly the
/// m-th root of the working precision; Newton on the (m-1)-th derivative,
/// where the root is simple, recovers it to full precision.
fn polish_multiple_roots(p: &CPoly, clusters: &mut [(BigComplex, usize)]) {
    let prec = p.prec();
    let mut derivs: Vec<CPoly> = vec![p.clone()];
    for (root, m) in clusters.iter_mut() {
        if *m < 2 {
            continue;
        }
        while derivs.len() < *m {
            let next = derivs.last().unwrap().derivative();
            derivs.push(next);
        }
        let target = &derivs[*m - 1];
        let tol = Float::with_val(prec, Float::i_exp(1, 16 - prec as i32));
        let mut z = root.clone();
        for _ in 0..prec {
            let (v, dv) = target.eval_with_deriv(&z);
            if dv.is_zero() {
                break;
            }
            let step = &v / &dv;
            z = &z - &step;
            let scale = Float::with_val(prec, &tol * &z.abs().max(&Float::with_val(prec, 1)));
            if step.abs() <= scale {
                break;
            }
        }
        // Accept the polish only if it stays inside the cluster radius.
        if root.rel_dist(&z) <= 2f64.powi(-((prec / 4) as i32) + 8) {
            *root = z;
        }
    }
}

/// Greedy transitive clustering with the quarter-precision radius; the
/// cluster centroid is reported as the root location.
fn merge_clusters(pts: Vec<BigComplex>, prec: u32) -> Vec<(BigComplex, usize)> {
    let merge_eps = 2f64.powi(-((prec / 4) as i32));
    let n = pts.len();
    let mut assigned = vec![usize::MAX; n];
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if assigned[i] != usize::MAX {
            continue;
        }
        let id = clusters.len();
        assigned[i] = id;
        let mut members = vec![i];
        let mut queue = vec![i];
        while let Some(k) = queue.pop() {
            for j in 0..n {
                if assigned[j] == usize::MAX && pts[k].rel_dist(&pts[j]) < merge_eps {
                    assigned[j] = id;
                    members.push(j);
                    queue.push(j);
                }
            }
        }
        clusters.push(members);
    }
    clusters
        .into_iter()
        .map(|members| {
            let m = members.len();
            let mut c = BigComplex::new(prec);
            for &i in &members {
                c = &c + &pts[i];
            }
            let c = c.div_float(&Float::with_val(prec, m as u64));
            (c, m)
        })
        .collect()
}

/// Scaled residual of `p` at a single point:
/// `|p(z)| / (max|coeff| max(1,|z|)^deg)`.
pub fn scaled_residual(p: &CPoly, z: &BigComplex) -> f64 {
    let prec = p.prec();
    let deg = p.degree().unwrap_or(0) as u32;
    let v = p.eval(z).abs();
    let denom = z.abs().max(&Float::with_val(prec, 1)).pow(deg) * p.max_coeff_abs();
    (v / denom).to_f64()
}

/// Turns a root set into an empirical measure with weights
/// `multiplicity / norm`.
pub fn empirical_measure(rs: &RootSet, norm: f64) -> Result<EmpiricalMeasure> {
    if !(norm > 0.0) {
        return Err(Error::InvalidInput("normalization must be positive".into()));
    }
    let atoms: Vec<(BigComplex, f64)> = rs
        .roots
        .iter()
        .map(|(r, m)| (r.clone(), *m as f64 / norm))
        .collect();
    let total = atoms.iter().map(|(_, w)| w).sum();
    Ok(EmpiricalMeasure { atoms, total })
}

/// Multiplicity-weighted count of roots inside a disc, with a flag count
/// for roots grazing the boundary within ten uncertainty radii.
pub fn count_in_disc(rs: &RootSet, center: &BigComplex, r: f64) -> Result<DiscCount> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput("disc radius must be positive".into()));
    }
    let mut count = 0usize;
    let mut flagged = 0usize;
    let graze = 10.0 * rs.cluster_radius;
    for (root, m) in &rs.roots {
        let d = (root - center).abs().to_f64();
        if d < r {
            count += m;
        }
        if (d - r).abs() <= graze {
            flagged += m;
        }
    }
    Ok(DiscCount { count, flagged })
}
