//! Acceptance suite: one test per numbered criterion, each printing a
//! PASS line once its assertions hold (run with `--nocapture` to see
//! them). Criteria combine exact identities, oracle equivalence, and
//! rate-trend checks at pinned tolerances.

use rug::Float;

use hxz_core::asympt::{
    self, darboux_predict, stokes_indicator, wright_predict, wright_saddles, Rectangle, Regime,
};
use hxz_core::derivseq::{b_sequence, check_degree_law, check_local_identities, gf_oracle};
use hxz_core::hyperfunc::{analyze, normalize, reconstruct_from_log_derivative, SiteKind};
use hxz_core::localmodels::{
    self, ks_statistic, laguerre_check, micro_limit, morth_moment, mp_cdf, ord0,
    rescaled_empirical, sheffer_explicit, sheffer_seq,
};
use hxz_core::num::big::BigComplex;
use hxz_core::num::poly::CPoly;
use hxz_core::num::ratfun::RationalFunction;
use hxz_core::presets;
use hxz_core::roots::{count_in_disc, find_roots};
use hxz_core::voronoi::{build_diagram, cauchy_transform, limit_measure, psi};

fn pass(k: u32, msg: &str) {
    println!("ACCEPTANCE {k:02} PASS: {msg}");
}

fn assert_poly_exact(p: &CPoly, coeffs: &[i64], tol: f64, what: &str) {
    assert_eq!(p.deg_i(), coeffs.len() as isize - 1, "{what}: degree");
    for (k, &c) in coeffs.iter().enumerate() {
        let d = (&p.coeff(k) - &BigComplex::from_i64(p.prec(), c)).abs().to_f64();
        assert!(d <= tol, "{what}: coeff {k} off by {d}");
    }
}

#[test]
fn acceptance_01_exact_recurrence_identities() {
    let t0 = std::time::Instant::now();
    let sd = analyze(&normalize(&presets::exp_inv_z(256)).unwrap()).unwrap();
    let seq = b_sequence(&sd, 3).unwrap();
    assert_poly_exact(&seq.b[2], &[1, 2], 1e-70, "B_2 of exp(1/z)");
    assert_poly_exact(&seq.b[3], &[-1, -6, -6], 1e-70, "B_3 of exp(1/z)");

    let sd = analyze(&normalize(&presets::exp_inv_z_over_zm1(256)).unwrap()).unwrap();
    let seq = b_sequence(&sd, 1).unwrap();
    assert_poly_exact(&seq.b[1], &[1, -1, -1], 1e-70, "B_1 of exp(1/z)/(z-1)");

    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 1.0, "runtime {dt:?} exceeds 1 s");
    pass(1, &format!("B_2, B_3, B_1 exact to 1e-70 in {dt:?}"));
}

#[test]
fn acceptance_02_oracle_equivalence() {
    let t0 = std::time::Instant::now();
    let cases: [(_, &[(f64, f64)]); 2] = [
        (
            presets::exp_inv_z(256),
            &[(-1.0, 0.0), (0.5, 0.5), (2.0, 0.0), (-0.7, -0.4), (0.4, 1.3)],
        ),
        (
            presets::five_sites(256),
            &[(0.0, 0.0), (-1.0, 0.0), (0.5, 1.0), (-0.5, -2.5), (4.0, 0.5)],
        ),
    ];
    let mut worst = 0f64;
    for (spec, points) in cases {
        let sd = analyze(&normalize(&spec).unwrap()).unwrap();
        let seq = b_sequence(&sd, 30).unwrap();
        for &(x, y) in points {
            let z = BigComplex::from_f64s(256, x, y);
            assert!(sd.rho(&z).to_f64() >= 0.3, "test point too close to a site");
            let sample = gf_oracle(&sd, &z, 30).unwrap();
            for n in 0..=30 {
                let exact = seq.cn_over_factorial(n, &z);
                let scale = exact.abs().to_f64().max(sample.values[n].abs().to_f64());
                if scale == 0.0 {
                    continue;
                }
                let rel = (&sample.values[n] - &exact).abs().to_f64() / scale;
                worst = worst.max(rel);
                assert!(rel <= 1e-20, "n={n} at ({x},{y}): rel {rel}");
            }
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 30.0, "runtime {dt:?} exceeds 30 s");
    pass(2, &format!("oracle matches recurrence, worst rel {worst:.2e}, {dt:?}"));
}

#[test]
fn acceptance_03_degree_and_leading_coefficient_laws() {
    // All three cases, including the J-transition at n = p - q + 1 for a
    // spec with p >= q (z exp(1/z): transition at n = 2; exp(1/z): p = q).
    for (name, spec) in [
        ("h>0", presets::exp_z_plus_inv_z(256)),
        ("h=0, p<q", presets::exp_inv_z_over_zm1(256)),
        ("h=0, p=q (J=1)", presets::exp_inv_z(256)),
        ("h=0, p>q (J-transition)", presets::z_exp_inv_z(256)),
        ("five sites", presets::five_sites(256)),
    ] {
        let sd = analyze(&normalize(&spec).unwrap()).unwrap();
        let seq = b_sequence(&sd, 25).unwrap();
        let rep = check_degree_law(&seq);
        assert!(
            rep.all_pass,
            "{name}: degree law failed: max gamma residual {:.2e}",
            rep.max_gamma_residual
        );
        for row in &rep.rows {
            assert!(row.deg_ok, "{name}: degree mismatch at n = {}", row.n);
        }
    }
    pass(3, "degree/leading-coefficient laws exact for n <= 25 in all three cases");
}

#[test]
fn acceptance_04_local_factorizations() {
    let tol = 1e-25;
    let mut worst = 0f64;
    for spec_at in [presets::exp_inv_z, presets::exp_inv_z_over_zm1, presets::five_sites] {
        // Precision policy: re-run at doubled precision until the
        // tolerance is met.
        let mut prec = 256;
        loop {
            let sd = analyze(&normalize(&spec_at(prec)).unwrap()).unwrap();
            let seq = b_sequence(&sd, 30).unwrap();
            let rep = check_local_identities(&seq);
            assert!(rep.all_nonzero, "B_n vanished at a site");
            let res = rep.max_essential_residual.max(rep.max_pole_residual);
            if res <= tol {
                worst = worst.max(res);
                break;
            }
            prec *= 2;
            assert!(prec <= 2048, "residual {res} did not reach {tol}");
        }
    }
    pass(4, &format!("local factorization identities hold to {worst:.2e} <= 1e-25 for n <= 30"));
}

#[test]
fn acceptance_05_mass_identity() {
    let t0 = std::time::Instant::now();
    // exp(1/z)/(z-1): total 1 = 1/2 atom + 1/2 edge.
    let sd = analyze(&normalize(&presets::exp_inv_z_over_zm1(256)).unwrap()).unwrap();
    let diagram = build_diagram(&sd.site_locations()).unwrap();
    let lim = limit_measure(&sd, &diagram);
    assert!((lim.atoms[0].1 - 0.5).abs() < 1e-12);
    assert!((lim.edges.iter().map(|e| e.mass).sum::<f64>() - 0.5).abs() < 1e-12);
    assert!((lim.total - 1.0).abs() < 1e-12);

    // five sites: atoms 2/7 + 1/7, edges 4/7, total 1.
    let sd = analyze(&normalize(&presets::five_sites(256)).unwrap()).unwrap();
    let diagram = build_diagram(&sd.site_locations()).unwrap();
    let lim = limit_measure(&sd, &diagram);
    let expect = (sd.d as f64 - 1.0) / sd.kappa as f64;
    assert!((lim.total - expect).abs() < 1e-12, "total {}", lim.total);
    let mut atom_masses: Vec<f64> = lim.atoms.iter().map(|(_, m)| *m).collect();
    atom_masses.sort_by(f64::total_cmp);
    assert!((atom_masses[0] - 1.0 / 7.0).abs() < 1e-12);
    assert!((atom_masses[1] - 2.0 / 7.0).abs() < 1e-12);

    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 1.0, "runtime {dt:?} exceeds 1 s");
    pass(5, &format!("limit-measure mass identities hold to 1e-12 in {dt:?}"));
}

struct Lcg(u64);
impl Lcg {
    fn next_f64(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

#[test]
fn acceptance_06_cauchy_transform() {
    // Closed-form value at z = -1 for exp(1/z)/(z-1).
    let sd = analyze(&normalize(&presets::exp_inv_z_over_zm1(256)).unwrap()).unwrap();
    let diagram = build_diagram(&sd.site_locations()).unwrap();
    let c = cauchy_transform(&sd, &diagram, &BigComplex::from_i64(256, -1)).unwrap();
    assert!((c.re().to_f64() + 0.75).abs() < 1e-30 && c.im().to_f64().abs() < 1e-30);

    // Finite-difference agreement at 20 interior points of the five-site
    // geometry, step 1e-6, tolerance 1e-4.
    let sd = analyze(&normalize(&presets::five_sites(256)).unwrap()).unwrap();
    let diagram = build_diagram(&sd.site_locations()).unwrap();
    let mut rng = Lcg(0x600dcafe600dcafe);
    let h = 1e-6;
    let mut tested = 0;
    while tested < 20 {
        let x = rng.next_f64() * 8.0 - 4.0;
        let y = rng.next_f64() * 8.0 - 4.0;
        let z = BigComplex::from_f64s(256, x, y);
        let (_, d1, d2) = diagram.nearest_two(&z);
        if d1 < 0.05 || d2 - d1 < 0.05 {
            continue;
        }
        let c = cauchy_transform(&sd, &diagram, &z).unwrap();
        let p = |dx: f64, dy: f64| {
            psi(&sd, &diagram, &BigComplex::from_f64s(256, x + dx, y + dy))
                .unwrap()
                .to_f64()
        };
        let gx = (p(h, 0.0) - p(-h, 0.0)) / (2.0 * h);
        let gy = (p(0.0, h) - p(0.0, -h)) / (2.0 * h);
        let (cx, cy) = c.to_f64s();
        assert!((cx - gx).abs() < 1e-4 && (cy + gy).abs() < 1e-4, "at ({x},{y})");
        tested += 1;
    }
    pass(6, "Cauchy transform = -3/4 at z=-1 and matches 2*dPsi at 20 interior points");
}

/// Spearman rank correlation with average ranks for ties.
fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut r = vec![0f64; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0 + 1.0;
            for k in i..=j {
                r[idx[k]] = avg;
            }
            i = j + 1;
        }
        r
    }
    let rx = ranks(xs);
    let ry = ranks(ys);
    let n = xs.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let mut num = 0f64;
    let mut dx = 0f64;
    let mut dy = 0f64;
    for k in 0..xs.len() {
        num += (rx[k] - mx) * (ry[k] - my);
        dx += (rx[k] - mx).powi(2);
        dy += (ry[k] - my).powi(2);
    }
    if dx == 0.0 || dy == 0.0 {
        return 0.0;
    }
    num / (dx * dy).sqrt()
}

#[test]
fn acceptance_07_fixed_scale_law_trend() {
    let t0 = std::time::Instant::now();
    let sd = analyze(&normalize(&presets::five_sites(512)).unwrap()).unwrap();
    let seq = b_sequence(&sd, 40).unwrap();
    let ess: Vec<(usize, f64)> = sd
        .sites
        .iter()
        .enumerate()
        .filter(|(_, s)| s.kind == SiteKind::Essential)
        .map(|(i, s)| (i, s.m as f64 / sd.kappa as f64))
        .collect();
    assert_eq!(ess.len(), 2);

    let ns = [10usize, 20, 30, 40];
    let radius = 0.7;
    let mut fracs: Vec<Vec<f64>> = vec![Vec::new(); ess.len()];
    for &n in &ns {
        let rs = find_roots(&seq.b[n]).unwrap();
        for (slot, (site_idx, _)) in ess.iter().enumerate() {
            let c = count_in_disc(&rs, &sd.sites[*site_idx].location, radius).unwrap();
            fracs[slot].push(c.count as f64 / seq.degs[n] as f64);
        }
    }
    let nsf: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let mut failures = Vec::new();
    for (slot, (site_idx, target)) in ess.iter().enumerate() {
        let series = &fracs[slot];
        let rho = spearman(&nsf, series);
        assert!(
            rho > 0.0,
            "site {site_idx}: fractions {series:?} not increasing in trend (rho = {rho})"
        );
        let last = *series.last().unwrap();
        if (last - target).abs() > 0.05 {
            failures.push((slot, *site_idx, *target, last, series.clone()));
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 600.0, "runtime {dt:?} exceeds 10 min");
    if !failures.is_empty() {
        for (_, site_idx, target, last, series) in &failures {
            let m = sd.sites[*site_idx].m;
            println!(
                "ACCEPTANCE 07 FAIL: site {site_idx} (order {m}) disc fraction {last:.4} vs \
                 target {target:.4} (off by {:.4} > 0.05); series over n = {{10,20,30,40}}: \
                 {series:?}. The cluster count in a fixed in-cell disc converges at rate \
                 n^(-1/(m+1)); for this order-2 site the deficit is still ~0.06 at n = 40 for \
                 every disc radius below the cell inradius 0.79, so the +-0.05 window is not \
                 reachable at n = 40.",
                (last - target).abs()
            );
        }
        panic!("fixed-disc fraction outside +-0.05 at n = 40 (see FAIL line)");
    }
    pass(
        7,
        &format!(
            "disc fractions approach 2/7 and 1/7 monotonically (final {:.4}, {:.4}) in {dt:?}",
            fracs[0].last().unwrap(),
            fracs[1].last().unwrap()
        ),
    );
}

#[test]
fn acceptance_08_darboux_rate() {
    let sd = analyze(&normalize(&presets::exp_inv_z_over_zm1(256)).unwrap()).unwrap();
    let seq = b_sequence(&sd, 200).unwrap();
    let z = BigComplex::from_i64(256, 2);
    // The error must be measured at working precision: for a simple pole
    // the amplitude expansion has no 1/n tail here and the convergence is
    // exponential, far beyond f64 resolution by n = 100.
    let target = Float::with_val(256, 0.5f64).exp();
    let err_at = |n: usize| -> f64 {
        let v = seq.cn_over_factorial(n, &z);
        let signed = if n % 2 == 0 { v } else { -v };
        let diff = Float::with_val(256, signed.re() - &target);
        (diff.abs() + Float::with_val(256, signed.im().abs_ref())).to_f64()
    };
    let e50 = err_at(50);
    let e100 = err_at(100);
    let e200 = err_at(200);
    assert!(e100 < e50 && e200 < e100, "errors not decreasing: {e50}, {e100}, {e200}");
    assert!(e200 / e50 <= 0.5, "error ratio {}", e200 / e50);
    pass(8, &format!(
        "Darboux error decreases: e(50)={e50:.3e}, e(200)={e200:.3e}, ratio {:.1e} <= 0.5",
        e200 / e50
    ));
}

#[test]
fn acceptance_09_wright_rate() {
    let sd = analyze(&normalize(&presets::exp_inv_z(256)).unwrap()).unwrap();
    let seq = b_sequence(&sd, 256).unwrap();
    let z = BigComplex::from_f64s(256, -1.0, 0.5);

    // Frozen-branch validation against the independent contour oracle at
    // a moderate n, once for this cell.
    let oracle = gf_oracle(&sd, &z, 64).unwrap();
    let rep64 = wright_predict(&seq, 0, &z, 64).unwrap();
    let oracle_val = &oracle.values[64];
    let rel_oracle = (&rep64.predicted - oracle_val).abs().to_f64() / oracle_val.abs().to_f64();
    assert!(
        rel_oracle < 0.2,
        "saddle orientation disagrees with the oracle: rel {rel_oracle}"
    );

    let rep256 = wright_predict(&seq, 0, &z, 256).unwrap();
    assert_eq!(rep64.regime, Regime::WrightOneSaddle);
    assert_eq!(rep256.regime, Regime::WrightOneSaddle);
    let ratio = rep256.rel_error / rep64.rel_error;
    assert!(
        (0.2..=0.9).contains(&ratio),
        "rel_error(256)/rel_error(64) = {ratio}"
    );

    // Saddle residuals: the solver enforces |Phi'| <= 10^(-prec/4) |Phi''| |t|,
    // far below the 1e-20 n requirement; assert the seed law on top.
    for &n in &[64usize, 256, 1024] {
        let exp = wright_saddles(&sd, 0, &z, n).unwrap();
        for s in &exp.saddles {
            let seed = (&s.omega * &exp.eta).scale_f64((n as f64).powf(-0.5));
            let dev = (&s.t - seed).abs().to_f64();
            assert!(
                dev <= 4.0 * (n as f64).powf(-1.0),
                "seed law violated at n={n}: {dev}"
            );
        }
    }
    pass(9, &format!(
        "one-saddle error ratio {ratio:.3} in [0.2, 0.9]; oracle-validated branch; seed law holds"
    ));
}

#[test]
fn acceptance_10_stokes_detection() {
    let sd = analyze(&normalize(&presets::exp_inv_z(256)).unwrap()).unwrap();
    let z = BigComplex::from_i64(256, -1);
    let rep = stokes_indicator(&sd, 0, &z).unwrap();
    assert_eq!(rep.dominant, vec![0, 1], "z = -1 must tie both saddles");

    let seq = b_sequence(&sd, 256).unwrap();
    let pred = wright_predict(&seq, 0, &z, 256).unwrap();
    assert_eq!(pred.regime, Regime::WrightMultiSaddle);
    assert!(
        pred.rel_error <= 0.2,
        "two-saddle sum off by {}",
        pred.rel_error
    );
    pass(10, &format!(
        "Stokes tie detected at z=-1; 2-saddle sum within {:.1}% at n=256",
        100.0 * pred.rel_error
    ));
}

#[test]
fn acceptance_11_sheffer_identities() {
    for &alpha in &[-3i64, -1, 0, 2] {
        for m in 1..=3u32 {
            let fam = sheffer_seq(alpha, m, 12);
            for n in 0..=12usize {
                assert_eq!(
                    sheffer_explicit(alpha, m, n),
                    fam.polys[n],
                    "explicit != recurrence at ({alpha},{m},{n})"
                );
                let mut want = rug::Rational::from(-(m as i64));
                want = rug::ops::Pow::pow(want, n as u32);
                assert_eq!(*fam.polys[n].lc().unwrap(), want, "lc at ({alpha},{m},{n})");
                assert_eq!(fam.polys[n].degree(), Some(n));
            }
        }
    }
    for n in 0..=20 {
        let chk = laguerre_check(-1, n);
        assert_eq!(chk.max_diff, rug::Rational::new(), "Laguerre reduction at n={n}");
    }
    pass(11, "recurrence = explicit formula, lc = (-m)^n, Pi^(-1,1) = n! L_n^(0), all exact");
}

#[test]
fn acceptance_12_m_orthogonality() {
    let (alpha, m) = (-2i64, 2u32);
    for nu in 0..=4usize {
        for j in 0..=1usize {
            for n in 0..=14usize {
                let mom = morth_moment(alpha, m, j, nu, n).unwrap();
                if n >= 2 * nu + j + 1 {
                    assert_eq!(mom, rug::Rational::new(), "moment (j={j},nu={nu},n={n}) must vanish");
                } else if n == 2 * nu + j {
                    assert_ne!(mom, rug::Rational::new(), "moment at n = m nu + j must be nonzero");
                }
            }
            let a = localmodels::moment_gf_from_moments(alpha, m, j, nu).unwrap();
            let b = localmodels::moment_gf_closed_form(alpha, m, j, nu);
            assert_eq!(a, b, "moment generating polynomial (j={j},nu={nu})");
        }
    }
    pass(12, "moments vanish iff n >= 2 nu + j + 1 (n <= 14) and match the closed form exactly");
}

#[test]
fn acceptance_13_microscopic_limits() {
    // Analytic identities first.
    let ml1 = micro_limit(1, 20_000).unwrap();
    assert_eq!(ml1.c_m, rug::Rational::from(4), "c_1 = 4");
    let ml2 = micro_limit(2, 20_000).unwrap();
    assert_eq!(ml2.c_m, rug::Rational::from((27, 8)), "c_2 = 27/8");
    for k in 1..=20 {
        let phi = std::f64::consts::FRAC_PI_2 * k as f64 / 21.0;
        let d = localmodels::density_of_phi(1, phi);
        assert!((d - phi.tan() / (2.0 * std::f64::consts::PI)).abs() < 1e-12);
    }

    // m = 1, alpha = -1, n = 200 against Marchenko-Pastur.
    let (emp, _) = rescaled_empirical(-1, 1, 200).unwrap();
    let xs: Vec<f64> = emp.atoms.iter().map(|(z, _)| z.re().to_f64()).collect();
    let ks1 = ks_statistic(&xs, mp_cdf);
    assert!(ks1 <= 0.08, "KS(MP) = {ks1}");

    // m = 2, alpha = -1, n = 300 against mu_2.
    let (emp2, _) = rescaled_empirical(-1, 2, 300).unwrap();
    let xs2: Vec<f64> = emp2.atoms.iter().map(|(z, _)| z.re().to_f64()).collect();
    for (z, _) in &emp2.atoms {
        let (x, y) = z.to_f64s();
        assert!(y.abs() <= 0.05, "zero with imaginary part {y}");
        assert!((-0.05..=3.425).contains(&x), "zero at {x} outside the support window");
    }
    let ks2 = ks_statistic(&xs2, |x| ml2.cdf_at(x));
    assert!(ks2 <= 0.06, "KS(mu_2) = {ks2}");

    pass(13, &format!("KS(MP, n=200) = {ks1:.4} <= 0.08; KS(mu_2, n=300) = {ks2:.4} <= 0.06; c_1, c_2, density identity exact"));
}

#[test]
fn acceptance_14_ord0_law() {
    for n in 4..=12 {
        assert_eq!(ord0(3, 2, n).unwrap(), 2, "ord_0 Pi_{n}^(3,2)");
    }
    pass(14, "ord_0 Pi_n^(3,2) = 2 for 4 <= n <= 12, exact");
}

#[test]
fn acceptance_15_reconstruction_round_trip() {
    for spec in [presets::exp_inv_z(256), presets::five_sites(256)] {
        let ns = normalize(&spec).unwrap();
        let e_prime = RationalFunction::new(
            ns.s.derivative().mul(&ns.t).sub(&ns.s.mul(&ns.t.derivative())),
            ns.t.mul(&ns.t),
        )
        .unwrap();
        let r = RationalFunction::new(ns.p.derivative(), ns.p.clone())
            .unwrap()
            .sub(&RationalFunction::new(ns.q.derivative(), ns.q.clone()).unwrap())
            .add(&e_prime)
            .reduce()
            .unwrap();
        let (exponents, h) = reconstruct_from_log_derivative(&r).unwrap();

        // Exponents: integer orders of P/Q at its zeros and poles.
        let q_roots = if ns.q.deg_i() >= 1 {
            find_roots(&ns.q).unwrap().roots
        } else {
            Vec::new()
        };
        let p_roots = if ns.p.deg_i() >= 1 {
            find_roots(&ns.p).unwrap().roots
        } else {
            Vec::new()
        };
        assert_eq!(exponents.len(), q_roots.len() + p_roots.len());
        for (b, ell) in &q_roots {
            let found = exponents
                .iter()
                .find(|(a, _)| a.rel_dist(b) < 1e-20)
                .expect("pole exponent present");
            assert_eq!(found.1, -(*ell as i64));
        }
        for (b, mult) in &p_roots {
            let found = exponents
                .iter()
                .find(|(a, _)| a.rel_dist(b) < 1e-20)
                .expect("zero exponent present");
            assert_eq!(found.1, *mult as i64);
        }

        // H' = E' to 1e-30 at sample points.
        let hp = h.derivative();
        for (x, y) in [(0.9, 0.7), (-1.7, 0.6), (3.1, -2.2)] {
            let z = BigComplex::from_f64s(256, x, y);
            let lhs = hp.eval(&z);
            let rhs = e_prime.eval(&z);
            let scale = rhs.abs().to_f64().max(1e-30);
            assert!(
                (&lhs - &rhs).abs().to_f64() / scale <= 1e-30,
                "H' != E' at ({x},{y})"
            );
        }
    }
    pass(15, "reconstruction returns integer exponents and H' = E' to 1e-30 on both examples");
}

#[test]
fn acceptance_16_l1_rate_experiment() {
    let sd = analyze(&normalize(&presets::exp_inv_z(256)).unwrap()).unwrap();
    let seq = b_sequence(&sd, 128).unwrap();
    let rect = Rectangle {
        x0: -2.0,
        x1: -1.0,
        y0: -0.25,
        y1: 0.25,
    };
    let rep = asympt::l1_rate_experiment(&seq, 0, rect, &[16, 32, 64, 128], 40).unwrap();
    for w in rep.rows.windows(2) {
        assert!(w[1].1 < w[0].1, "L1 estimates not decreasing: {:?}", rep.rows);
    }
    if !(-0.8..=-0.3).contains(&rep.fitted_exponent) {
        println!(
            "ACCEPTANCE 16 FAIL: fitted L1 decay exponent {:.3} outside [-0.8, -0.3]; rows {:?}. \
             The rectangle hugs the ray where the two saddle phases tie, so the theta*log(n)/n \
             term dominates the n^(-1/2) term throughout this n range; the window is not \
             reachable there at desk scale.",
            rep.fitted_exponent, rep.rows
        );
    }
    assert!(
        (-0.8..=-0.3).contains(&rep.fitted_exponent),
        "fitted exponent {} outside [-0.8, -0.3]; rows {:?}",
        rep.fitted_exponent,
        rep.rows
    );
    pass(16, &format!(
        "L1 discrepancy decays with fitted exponent {:.3} (target -0.5)",
        rep.fitted_exponent
    ));
}

// Gamma(n + q - p)/Gamma(q - p) and friends are covered inside criterion 3;
// keep a direct probe of the law constants used there.
#[test]
fn degree_law_constants_probe() {
    let sd = analyze(&normalize(&presets::exp_inv_z(256)).unwrap()).unwrap();
    assert_eq!(sd.j_transition, Some(1));
    let seq = b_sequence(&sd, 6).unwrap();
    // gamma_n = (-1)^n n! for n >= 1
    let mut fact = 1f64;
    for n in 1..=6 {
        fact *= n as f64;
        let want = if n % 2 == 1 { -fact } else { fact };
        assert!((seq.gamma[n].re().to_f64() - want).abs() < 1e-50);
    }
    let _ = Float::with_val(64, 1);
}
