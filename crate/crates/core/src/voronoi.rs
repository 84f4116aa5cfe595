//! Voronoi geometry of the singular set and the predicted fixed-scale
//! limit measure: atoms `m_j/kappa` at essential singularities plus edge
//! densities `|a_i-a_j| / (2 pi kappa |z-a_i||z-a_j|)` with closed-form
//! arctan masses, the potentials `Psi`, `Psi_i`, and the cellwise Cauchy
//! transform.
//!
//! Cells are built by half-plane intersection, which is O(N^2) per cell;
//! site counts here stay below ~50 where that is both simple and robust.

use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperfunc::{SiteKind, StructureData};
use crate::num::big::BigComplex;
use crate::roots::EmpiricalMeasure;

/// One Voronoi edge: a clipped segment of the perpendicular bisector of
/// two sites, parameterized as `z(t) = midpoint + t * direction`.
#[derive(Debug, Clone, Serialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub midpoint: BigComplex,
    /// Unit direction along the bisector.
    pub direction: BigComplex,
    /// Half-distance `|a_i - a_j| / 2`; on the edge
    /// `|z(t) - a_i|^2 = delta^2 + t^2`.
    pub delta: f64,
    /// Clip parameters; infinities mark unbounded edges.
    pub t_lo: f64,
    pub t_hi: f64,
}

impl Edge {
    pub fn point_at(&self, t: f64) -> (f64, f64) {
        let (mx, my) = self.midpoint.to_f64s();
        let (dx, dy) = self.direction.to_f64s();
        (mx + t * dx, my + t * dy)
    }

    /// Parameter of the orthogonal projection of `(x, y)` onto the edge
    /// line, and the distance to that line.
    pub fn project(&self, x: f64, y: f64) -> (f64, f64) {
        let (mx, my) = self.midpoint.to_f64s();
        let (dx, dy) = self.direction.to_f64s();
        let vx = x - mx;
        let vy = y - my;
        let t = vx * dx + vy * dy;
        let dist = (vx - t * dx).hypot(vy - t * dy);
        (t, dist)
    }
}

/// A cell: the site it belongs to, the constraining half-planes (one per
/// other site), and the chain of finite Voronoi vertices around it.
#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub site: usize,
    /// Indices j of the sites whose bisector half-plane bounds the cell.
    pub halfplanes: Vec<usize>,
    /// Finite vertices sorted by angle around the site.
    pub vertices: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VoronoiDiagram {
    /// Site locations, in the order of the structure's site records.
    pub sites: Vec<BigComplex>,
    pub cells: Vec<Cell>,
    pub edges: Vec<Edge>,
}

impl VoronoiDiagram {
    /// Distance from `z` to the site set.
    pub fn rho(&self, z: &BigComplex) -> Float {
        let prec = z.prec();
        let mut best = Float::with_val(prec, rug::float::Special::Infinity);
        for a in &self.sites {
            let d = (z - a).abs();
            best = best.min(&d);
        }
        best
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0f64;
        for (i, a) in self.sites.iter().enumerate() {
            for b in self.sites.iter().skip(i + 1) {
                d = d.max((a - b).abs().to_f64());
            }
        }
        d
    }

    /// Index of the nearest site and the two smallest distances.
    pub fn nearest_two(&self, z: &BigComplex) -> (usize, f64, f64) {
        let mut best = (0usize, f64::INFINITY);
        let mut second = f64::INFINITY;
        for (i, a) in self.sites.iter().enumerate() {
            let d = (z - a).abs().to_f64();
            if d < best.1 {
                second = best.1;
                best = (i, d);
            } else if d < second {
                second = d;
            }
        }
        (best.0, best.1, second)
    }
}

/// Builds the diagram of the given sites by pairwise bisector clipping.
pub fn build_diagram(sites: &[BigComplex]) -> Result<VoronoiDiagram> {
    if sites.is_empty() {
        return Err(Error::InvalidInput("at least one site is required".into()));
    }
    let prec = sites[0].prec();
    let n = sites.len();

    let pts: Vec<(f64, f64)> = sites.iter().map(|s| s.to_f64s()).collect();
    let mut diam = 0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (pts[i].0 - pts[j].0).hypot(pts[i].1 - pts[j].1);
            if d == 0.0 || !d.is_finite() {
                return Err(Error::InvalidInput(format!("duplicate sites {i} and {j}")));
            }
            diam = diam.max(d);
        }
    }
    let coincidence = 1e-9 * diam.max(1.0);

    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (ax, ay) = pts[i];
            let (bx, by) = pts[j];
            let mx = 0.5 * (ax + bx);
            let my = 0.5 * (ay + by);
            let sep = (bx - ax).hypot(by - ay);
            // Unit direction along the bisector: i * (a_j - a_i)/|a_j - a_i|.
            let dx = -(by - ay) / sep;
            let dy = (bx - ax) / sep;
            let mut t_lo = f64::NEG_INFINITY;
            let mut t_hi = f64::INFINITY;
            let mut alive = true;
            for (k, &(kx, ky)) in pts.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                // |z - a_i|^2 <= |z - a_k|^2 along z = m + t d is affine:
                // c0 + c1 t <= 0.
                let c0 = (mx - ax).powi(2) + (my - ay).powi(2)
                    - (mx - kx).powi(2)
                    - (my - ky).powi(2);
                let c1 = 2.0 * (dx * (kx - ax) + dy * (ky - ay));
                if c1.abs() * diam < 1e-14 * c0.abs().max(1e-300) || c1 == 0.0 {
                    if c0 > 0.0 {
                        alive = false;
                        break;
                    }
                    continue;
                }
                let bound = -c0 / c1;
                if c1 > 0.0 {
                    t_hi = t_hi.min(bound);
                } else {
                    t_lo = t_lo.max(bound);
                }
                if t_lo >= t_hi {
                    alive = false;
                    break;
                }
            }
            if !alive || t_lo >= t_hi - coincidence {
                continue;
            }
            edges.push(Edge {
                i,
                j,
                midpoint: BigComplex::from_f64s(prec, mx, my),
                direction: BigComplex::from_f64s(prec, dx, dy),
                delta: sep / 2.0,
                t_lo,
                t_hi,
            });
        }
    }

    let mut cells = Vec::with_capacity(n);
    for i in 0..n {
        let halfplanes: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        // Vertex chain: finite endpoints of this cell's edges, merged
        // within the coincidence radius (cocircular degeneracies) and
        // sorted by angle around the site.
        let mut verts: Vec<(f64, f64)> = Vec::new();
        for e in edges.iter().filter(|e| e.i == i || e.j == i) {
            for t in [e.t_lo, e.t_hi] {
                if t.is_finite() {
                    let v = e.point_at(t);
                    if !verts
                        .iter()
                        .any(|w| (w.0 - v.0).hypot(w.1 - v.1) < coincidence)
                    {
                        verts.push(v);
                    }
                }
            }
        }
        let (cx, cy) = pts[i];
        verts.sort_by(|a, b| {
            let ta = (a.1 - cy).atan2(a.0 - cx);
            let tb = (b.1 - cy).atan2(b.0 - cx);
            ta.partial_cmp(&tb).unwrap_or(std::cmp::Ordering::Equal)
        });
        cells.push(Cell {
            site: i,
            halfplanes,
            vertices: verts,
        });
    }

    Ok(VoronoiDiagram {
        sites: sites.to_vec(),
        cells,
        edges,
    })
}

/// Density of the limit measure along an edge at parameter `t`.
pub fn edge_density(edge: &Edge, kappa: usize, t: f64) -> f64 {
    edge.delta / (std::f64::consts::PI * kappa as f64 * (edge.delta * edge.delta + t * t))
}

/// Closed-form mass of the edge piece between `t0` and `t1`
/// (antiderivative `arctan(t/delta) / (pi kappa)` of the density).
pub fn edge_mass_between(edge: &Edge, kappa: usize, t0: f64, t1: f64) -> f64 {
    let at = |t: f64| -> f64 {
        if t == f64::INFINITY {
            std::f64::consts::FRAC_PI_2
        } else if t == f64::NEG_INFINITY {
            -std::f64::consts::FRAC_PI_2
        } else {
            (t / edge.delta).atan()
        }
    };
    (at(t1) - at(t0)) / (std::f64::consts::PI * kappa as f64)
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeMass {
    pub edge_index: usize,
    pub mass: f64,
}

/// The predicted fixed-scale limit measure.
#[derive(Debug, Clone, Serialize)]
pub struct LimitMeasure {
    /// (site index, mass m_j/kappa) at essential sites.
    pub atoms: Vec<(usize, f64)>,
    pub edges: Vec<EdgeMass>,
    /// `h/kappa`.
    pub point_at_infinity_mass: f64,
    /// Total finite-plane mass; equals `(d-1)/kappa`.
    pub total: f64,
}

/// Assembles the limit measure of a structure over its diagram. Atom and
/// edge masses are exact closed forms, no quadrature.
pub fn limit_measure(sd: &StructureData, diagram: &VoronoiDiagram) -> LimitMeasure {
    let kappa = sd.kappa;
    let mut atoms = Vec::new();
    for (idx, site) in sd.sites.iter().enumerate() {
        if site.kind == SiteKind::Essential {
            atoms.push((idx, site.m as f64 / kappa as f64));
        }
    }
    let edges: Vec<EdgeMass> = diagram
        .edges
        .iter()
        .enumerate()
        .map(|(k, e)| EdgeMass {
            edge_index: k,
            mass: edge_mass_between(e, kappa, e.t_lo, e.t_hi),
        })
        .collect();
    let total = atoms.iter().map(|(_, m)| m).sum::<f64>()
        + edges.iter().map(|e| e.mass).sum::<f64>();
    LimitMeasure {
        atoms,
        edges,
        point_at_infinity_mass: sd.h as f64 / kappa as f64,
        total,
    }
}

impl LimitMeasure {
    /// Mass the limit measure assigns to the open disc `|z - c| < r`.
    pub fn mass_in_disc(
        &self,
        sd: &StructureData,
        diagram: &VoronoiDiagram,
        c: (f64, f64),
        r: f64,
    ) -> f64 {
        let mut mass = 0f64;
        for (idx, m) in &self.atoms {
            let (x, y) = sd.sites[*idx].location.to_f64s();
            if (x - c.0).hypot(y - c.1) < r {
                mass += m;
            }
        }
        for em in &self.edges {
            let e = &diagram.edges[em.edge_index];
            // Intersection of the disc with the edge line is an interval:
            // t^2 + 2bt + (|m - c|^2 - r^2) <= 0.
            let (mx, my) = e.midpoint.to_f64s();
            let (dx, dy) = e.direction.to_f64s();
            let vx = mx - c.0;
            let vy = my - c.1;
            let b = vx * dx + vy * dy;
            let q = vx * vx + vy * vy - r * r;
            let disc = b * b - q;
            if disc <= 0.0 {
                continue;
            }
            let s = disc.sqrt();
            let lo = (-b - s).max(e.t_lo);
            let hi = (-b + s).min(e.t_hi);
            if lo < hi {
                mass += edge_mass_between(e, sd.kappa, lo, hi);
            }
        }
        mass
    }
}

/// `Psi(z) = (log|W(z)| - log rho(z) - sigma) / kappa`.
pub fn psi(sd: &StructureData, diagram: &VoronoiDiagram, z: &BigComplex) -> Result<Float> {
    let prec = sd.prec();
    let rho = diagram.rho(z);
    let floor = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)))
        * z.abs().max(&Float::with_val(prec, 1));
    if rho <= floor {
        return Err(Error::InvalidInput("Psi is undefined at a singular site".into()));
    }
    let w = sd.w.eval(z).abs();
    Ok((w.ln() - rho.ln() - &sd.sigma) / Float::with_val(prec, sd.kappa as u64))
}

/// `Psi_i(z)`: the branch with `rho` replaced by `|z - a_i|`.
pub fn psi_i(sd: &StructureData, i: usize, z: &BigComplex) -> Result<Float> {
    let prec = sd.prec();
    let dist = (z - &sd.sites[i].location).abs();
    if dist.is_zero() {
        return Err(Error::InvalidInput("Psi_i is undefined at its own site".into()));
    }
    let w = sd.w.eval(z).abs();
    if w.is_zero() {
        return Err(Error::InvalidInput("Psi_i is undefined where W vanishes".into()));
    }
    Ok((w.ln() - dist.ln() - &sd.sigma) / Float::with_val(prec, sd.kappa as u64))
}

/// Cauchy transform of the limit measure on the open cell containing `z`:
/// `(1/kappa) sum_j (varpi_j - delta_{ij}) / (z - a_j)`.
pub fn cauchy_transform(
    sd: &StructureData,
    diagram: &VoronoiDiagram,
    z: &BigComplex,
) -> Result<BigComplex> {
    let prec = sd.prec();
    let (i, d1, d2) = diagram.nearest_two(z);
    let tol = 1e-9 * diagram.diameter().max(1.0);
    if d1 <= tol {
        return Err(Error::InvalidInput("point coincides with a site".into()));
    }
    if (d2 - d1) <= tol {
        return Err(Error::Boundary(
            "point lies on the Voronoi diagram within tolerance".into(),
        ));
    }
    let mut acc = BigComplex::new(prec);
    for (j, site) in sd.sites.iter().enumerate() {
        let weight = sd.varpi(j) as i64 - i64::from(j == i);
        if weight != 0 {
            let term = (z - &site.location).recip();
            acc = &acc + &term.mul_float(&Float::with_val(prec, weight));
        }
    }
    Ok(acc.div_float(&Float::with_val(prec, sd.kappa as u64)))
}

/// Options for [`compare_measures`].
#[derive(Debug, Clone)]
pub struct CompareOptions {
    /// Disc radius for per-atom counts; default quarter of the minimum
    /// site separation.
    pub atom_radius: Option<f64>,
    /// Corridor half-width for per-edge statistics; default
    /// `1.5 n^(-1/2) diam(Sigma)` using `n`.
    pub corridor_width: Option<f64>,
    /// The derivative order behind the empirical measure (sets the
    /// default corridor width).
    pub n: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AtomCheck {
    pub site: usize,
    pub radius: f64,
    pub expected_mass: f64,
    pub empirical_fraction: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeCheck {
    pub edge_index: usize,
    pub corridor_width: f64,
    pub zeros_in_corridor: usize,
    /// One-sample KS statistic of the projected zeros against the
    /// normalized arctan CDF; `None` when the corridor is empty.
    pub ks: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub atoms: Vec<AtomCheck>,
    pub edges: Vec<EdgeCheck>,
    /// max over the fixed disc family of |empirical - limit| mass.
    pub global_discrepancy: f64,
    pub discs_tested: usize,
}

/// Compares an empirical zero measure against the limit measure:
/// per-atom disc fractions, per-edge projected KS statistics, and a
/// global disc-family discrepancy.
pub fn compare_measures(
    emp: &EmpiricalMeasure,
    lim: &LimitMeasure,
    sd: &StructureData,
    diagram: &VoronoiDiagram,
    opts: &CompareOptions,
) -> CompareReport {
    let diam = diagram.diameter().max(1.0);
    let min_sep = min_site_separation(diagram);
    let atom_radius = opts.atom_radius.unwrap_or(0.25 * min_sep);
    let corridor = opts
        .corridor_width
        .unwrap_or(1.5 * (opts.n.max(1) as f64).powf(-0.5) * diam);

    let atoms_f64: Vec<((f64, f64), f64)> = emp
        .atoms
        .iter()
        .map(|(z, w)| (z.to_f64s(), *w))
        .collect();

    let mut atom_checks = Vec::new();
    for (idx, expected) in &lim.atoms {
        let (cx, cy) = sd.sites[*idx].location.to_f64s();
        let frac: f64 = atoms_f64
            .iter()
            .filter(|((x, y), _)| (x - cx).hypot(y - cy) < atom_radius)
            .map(|(_, w)| *w)
            .sum();
        atom_checks.push(AtomCheck {
            site: *idx,
            radius: atom_radius,
            expected_mass: *expected,
            empirical_fraction: frac,
        });
    }

    let mut edge_checks = Vec::new();
    for em in &lim.edges {
        let e = &diagram.edges[em.edge_index];
        let mut ts: Vec<f64> = Vec::new();
        if corridor > 0.0 {
            for ((x, y), _) in &atoms_f64 {
                let (t, dist) = e.project(*x, *y);
                if dist <= corridor && t >= e.t_lo && t <= e.t_hi {
                    ts.push(t);
                }
            }
        }
        let ks = if ts.is_empty() {
            None
        } else {
            ts.sort_by(f64::total_cmp);
            let full = edge_mass_between(e, sd.kappa, e.t_lo, e.t_hi);
            let k = ts.len() as f64;
            let mut worst = 0f64;
            for (idx, t) in ts.iter().enumerate() {
                let f = edge_mass_between(e, sd.kappa, e.t_lo, *t) / full;
                let hi = ((idx + 1) as f64 / k - f).abs();
                let lo = (f - idx as f64 / k).abs();
                worst = worst.max(hi).max(lo);
            }
            Some(worst)
        };
        edge_checks.push(EdgeCheck {
            edge_index: em.edge_index,
            corridor_width: corridor,
            zeros_in_corridor: ts.len(),
            ks,
        });
    }

    // Fixed disc family: three radii around every site, plus one disc on
    // every edge around its parameter midpoint.
    let mut discrepancy = 0f64;
    let mut discs = 0usize;
    let mut check_disc = |c: (f64, f64), r: f64| {
        let lim_mass = lim.mass_in_disc(sd, diagram, c, r);
        let emp_mass: f64 = atoms_f64
            .iter()
            .filter(|((x, y), _)| (x - c.0).hypot(y - c.1) < r)
            .map(|(_, w)| *w)
            .sum();
        discrepancy = discrepancy.max((lim_mass - emp_mass).abs());
        discs += 1;
    };
    for site in &diagram.sites {
        let c = site.to_f64s();
        for f in [0.3, 0.6, 0.9] {
            check_disc(c, f * 0.5 * min_sep);
        }
    }
    for e in &diagram.edges {
        let tm = if e.t_lo.is_finite() && e.t_hi.is_finite() {
            0.5 * (e.t_lo + e.t_hi)
        } else if e.t_lo.is_finite() {
            e.t_lo + e.delta
        } else if e.t_hi.is_finite() {
            e.t_hi - e.delta
        } else {
            0.0
        };
        check_disc(e.point_at(tm), e.delta);
    }

    CompareReport {
        atoms: atom_checks,
        edges: edge_checks,
        global_discrepancy: discrepancy,
        discs_tested: discs,
    }
}

fn min_site_separation(diagram: &VoronoiDiagram) -> f64 {
    let mut sep = f64::INFINITY;
    let pts: Vec<(f64, f64)> = diagram.sites.iter().map(|s| s.to_f64s()).collect();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            sep = sep.min((pts[i].0 - pts[j].0).hypot(pts[i].1 - pts[j].1));
        }
    }
    if sep.is_finite() {
        sep
    } else {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfunc::{analyze, normalize, HyperExpSpec};
    use crate::num::poly::CPoly;

    fn points(prec: u32, pts: &[(f64, f64)]) -> Vec<BigComplex> {
        pts.iter().map(|&(x, y)| BigComplex::from_f64s(prec, x, y)).collect()
    }

    #[test]
    fn two_site_diagram() {
        let d = build_diagram(&points(256, &[(0.0, 0.0), (1.0, 0.0)])).unwrap();
        assert_eq!(d.edges.len(), 1);
        let e = &d.edges[0];
        assert_eq!(e.t_lo, f64::NEG_INFINITY);
        assert_eq!(e.t_hi, f64::INFINITY);
        assert!((e.delta - 0.5).abs() < 1e-15);
        let (mx, my) = e.midpoint.to_f64s();
        assert!((mx - 0.5).abs() < 1e-15 && my.abs() < 1e-15);
    }

    #[test]
    fn three_site_circumcenter() {
        // sites {0, 1, i}: three edges meeting at (1+i)/2
        let d = build_diagram(&points(256, &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])).unwrap();
        assert_eq!(d.edges.len(), 3);
        for e in &d.edges {
            let t = if e.t_lo.is_finite() { e.t_lo } else { e.t_hi };
            assert!(t.is_finite());
            let (x, y) = e.point_at(t);
            assert!((x - 0.5).abs() < 1e-12 && (y - 0.5).abs() < 1e-12, "({x},{y})");
        }
    }

    #[test]
    fn single_site_no_edges() {
        let d = build_diagram(&points(256, &[(0.3, -0.7)])).unwrap();
        assert!(d.edges.is_empty());
        assert_eq!(d.cells.len(), 1);
        assert!(d.cells[0].halfplanes.is_empty());
    }

    #[test]
    fn duplicate_sites_rejected() {
        assert!(build_diagram(&points(256, &[(0.0, 0.0), (0.0, 0.0)])).is_err());
    }

    #[test]
    fn rho_examples() {
        let d = build_diagram(&points(256, &[(0.0, 0.0), (1.0, 0.0)])).unwrap();
        let z = BigComplex::from_f64s(256, 0.2, 0.0);
        assert!((d.rho(&z).to_f64() - 0.2).abs() < 1e-15);
        let on_edge = BigComplex::from_f64s(256, 0.5, 3.0);
        let da = (&on_edge - &d.sites[0]).abs().to_f64();
        let db = (&on_edge - &d.sites[1]).abs().to_f64();
        assert!((da - db).abs() < 1e-15);
    }

    fn sd_pole_spec() -> StructureData {
        let spec = HyperExpSpec::new(
            CPoly::from_i64s(256, &[1]),
            CPoly::from_i64s(256, &[-1, 1]),
            CPoly::from_i64s(256, &[1]),
            CPoly::from_i64s(256, &[0, 1]),
        );
        analyze(&normalize(&spec).unwrap()).unwrap()
    }

    #[test]
    fn limit_measure_pole_spec() {
        // exp(1/z)/(z-1): atom 1/2 at 0, one full-line edge of mass 1/2.
        let sd = sd_pole_spec();
        let diagram = build_diagram(&sd.site_locations()).unwrap();
        let lim = limit_measure(&sd, &diagram);
        assert_eq!(lim.atoms.len(), 1);
        assert!((lim.atoms[0].1 - 0.5).abs() < 1e-15);
        assert_eq!(lim.edges.len(), 1);
        assert!((lim.edges[0].mass - 0.5).abs() < 1e-15);
        assert!((lim.total - 1.0).abs() < 1e-12);
        assert_eq!(lim.point_at_infinity_mass, 0.0);
    }

    #[test]
    fn limit_measure_h_positive() {
        // S = z^2+1, T = z: mass h/kappa = 1/2 at infinity, total 1/2.
        let spec = HyperExpSpec::new(
            CPoly::from_i64s(256, &[1]),
            CPoly::from_i64s(256, &[1]),
            CPoly::from_i64s(256, &[1, 0, 1]),
            CPoly::from_i64s(256, &[0, 1]),
        );
        let sd = analyze(&normalize(&spec).unwrap()).unwrap();
        let diagram = build_diagram(&sd.site_locations()).unwrap();
        let lim = limit_measure(&sd, &diagram);
        assert!((lim.point_at_infinity_mass - 0.5).abs() < 1e-15);
        assert!((lim.total - 0.5).abs() < 1e-12);
    }

    #[test]
    fn psi_values() {
        let sd = sd_pole_spec();
        let diagram = build_diagram(&sd.site_locations()).unwrap();
        let z = BigComplex::from_i64(256, -1);
        // Psi(-1) = (log 2)/2
        let v = psi(&sd, &diagram, &z).unwrap().to_f64();
        assert!((v - 0.5 * 2f64.ln()).abs() < 1e-15);
        // On the edge Re z = 1/2 the two branches agree.
        let ze = BigComplex::from_f64s(256, 0.5, 0.8);
        let p0 = psi_i(&sd, 0, &ze).unwrap().to_f64();
        let p1 = psi_i(&sd, 1, &ze).unwrap().to_f64();
        assert!((p0 - p1).abs() < 1e-14);
        // Psi errors at a site
        assert!(psi(&sd, &diagram, &BigComplex::new(256)).is_err());
    }

    #[test]
    fn cauchy_transform_examples() {
        let sd = sd_pole_spec();
        let diagram = build_diagram(&sd.site_locations()).unwrap();
        let z = BigComplex::from_i64(256, -1);
        let c = cauchy_transform(&sd, &diagram, &z).unwrap();
        assert!((c.re().to_f64() + 0.75).abs() < 1e-20, "{c}");
        assert!(c.im().to_f64().abs() < 1e-20);
        // z C(z) -> (d-1)/kappa = 1 far away inside a cell
        let far = BigComplex::from_f64s(256, -1e8, 1e-3);
        let cf = cauchy_transform(&sd, &diagram, &far).unwrap();
        let prod = (&cf * &far).re().to_f64();
        assert!((prod - 1.0).abs() < 1e-6);
        // boundary point errors
        let on_edge = BigComplex::from_f64s(256, 0.5, 0.1);
        assert!(matches!(
            cauchy_transform(&sd, &diagram, &on_edge),
            Err(Error::Boundary(_))
        ));
    }

    #[test]
    fn compare_quantile_sampling_has_small_ks() {
        // Sampling the edge CDF at midpoint quantiles gives KS = 1/(2k).
        let sd = sd_pole_spec();
        let diagram = build_diagram(&sd.site_locations()).unwrap();
        let lim = limit_measure(&sd, &diagram);
        let e = &diagram.edges[0];
        let k = 64usize;
        let full = edge_mass_between(e, sd.kappa, e.t_lo, e.t_hi);
        let mut atoms = Vec::new();
        for i in 0..k {
            let target = (i as f64 + 0.5) / k as f64 * full;
            // invert the arctan CDF
            let theta = target * std::f64::consts::PI * sd.kappa as f64
                - std::f64::consts::FRAC_PI_2;
            let t = e.delta * theta.tan();
            let (x, y) = e.point_at(t);
            atoms.push((BigComplex::from_f64s(256, x, y), 1.0 / k as f64));
        }
        let emp = EmpiricalMeasure { total: 1.0, atoms };
        let rep = compare_measures(
            &emp,
            &lim,
            &sd,
            &diagram,
            &CompareOptions { atom_radius: None, corridor_width: Some(0.05), n: 20 },
        );
        let ks = rep.edges[0].ks.unwrap();
        assert!(ks <= 0.5 / k as f64 + 1e-12, "ks = {ks}");
    }

    #[test]
    fn compare_zero_corridor_reports_null() {
        let sd = sd_pole_spec();
        let diagram = build_diagram(&sd.site_locations()).unwrap();
        let lim = limit_measure(&sd, &diagram);
        let emp = EmpiricalMeasure {
            atoms: vec![(BigComplex::from_f64s(256, 0.1, 0.0), 1.0)],
            total: 1.0,
        };
        let rep = compare_measures(
            &emp,
            &lim,
            &sd,
            &diagram,
            &CompareOptions { atom_radius: None, corridor_width: Some(0.0), n: 1 },
        );
        assert!(rep.edges[0].ks.is_none());
    }
}
