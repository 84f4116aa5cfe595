//! Dependency-light SVG rendering: sites as triangles, zeros as dots,
//! Voronoi edges as solid segments with a warm density band whose
//! opacity follows the limiting edge density.

use hxz_core::hyperfunc::StructureData;
use hxz_core::voronoi::{edge_density, VoronoiDiagram};

pub struct Frame {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub width: f64,
}

impl Frame {
    pub fn around(points: impl Iterator<Item = (f64, f64)>, margin: f64) -> Frame {
        let mut x0 = f64::INFINITY;
        let mut x1 = f64::NEG_INFINITY;
        let mut y0 = f64::INFINITY;
        let mut y1 = f64::NEG_INFINITY;
        for (x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        let dx = (x1 - x0).max(1e-3);
        let dy = (y1 - y0).max(1e-3);
        Frame {
            x0: x0 - margin * dx,
            x1: x1 + margin * dx,
            y0: y0 - margin * dy,
            y1: y1 + margin * dy,
            width: 720.0,
        }
    }

    fn height(&self) -> f64 {
        self.width * (self.y1 - self.y0) / (self.x1 - self.x0)
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let px = (x - self.x0) / (self.x1 - self.x0) * self.width;
        // SVG y grows downward
        let py = (self.y1 - y) / (self.y1 - self.y0) * self.height();
        (px, py)
    }

    fn clamp_seg(&self, a: (f64, f64), b: (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
        // Liang-Barsky clip of a segment to the frame.
        let (mut t0, mut t1) = (0f64, 1f64);
        let dx = b.0 - a.0;
        let dy = b.1 - a.1;
        for (p, q) in [
            (-dx, a.0 - self.x0),
            (dx, self.x1 - a.0),
            (-dy, a.1 - self.y0),
            (dy, self.y1 - a.1),
        ] {
            if p == 0.0 {
                if q < 0.0 {
                    return None;
                }
            } else {
                let r = q / p;
                if p < 0.0 {
                    t0 = t0.max(r);
                } else {
                    t1 = t1.min(r);
                }
                if t0 > t1 {
                    return None;
                }
            }
        }
        Some((
            (a.0 + t0 * dx, a.1 + t0 * dy),
            (a.0 + t1 * dx, a.1 + t1 * dy),
        ))
    }
}

pub struct Scene {
    body: String,
    frame: Frame,
}

impl Scene {
    pub fn new(frame: Frame) -> Scene {
        let body = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {:.1} {:.1}\" width=\"{:.0}\" height=\"{:.0}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
            frame.width,
            frame.height(),
            frame.width,
            frame.height()
        );
        Scene { body, frame }
    }

    /// Voronoi edges as solid black segments plus a warm band whose
    /// opacity tracks the edge density (lighter = denser, on a dark
    /// base); unbounded edges are clipped to the frame.
    pub fn edges(&mut self, sd: &StructureData, diagram: &VoronoiDiagram) {
        // find density scale
        let mut dmax = 0f64;
        for e in &diagram.edges {
            let t = e.t_lo.max(-1e6).min(e.t_hi).max(e.t_lo.min(1e6));
            let tm = if e.t_lo.is_finite() && e.t_hi.is_finite() {
                0.5 * (e.t_lo + e.t_hi)
            } else {
                t.clamp(-1e6, 1e6)
            };
            dmax = dmax.max(edge_density(e, sd.kappa, tm)).max(edge_density(e, sd.kappa, 0.0));
        }
        let span = (self.frame.x1 - self.frame.x0).hypot(self.frame.y1 - self.frame.y0);
        for e in &diagram.edges {
            let lo = if e.t_lo.is_finite() { e.t_lo } else { -2.0 * span };
            let hi = if e.t_hi.is_finite() { e.t_hi } else { 2.0 * span };
            // density band in short strokes
            let strokes = 48;
            for k in 0..strokes {
                let ta = lo + (hi - lo) * k as f64 / strokes as f64;
                let tb = lo + (hi - lo) * (k + 1) as f64 / strokes as f64;
                let d = edge_density(e, sd.kappa, 0.5 * (ta + tb));
                let op = (d / dmax).clamp(0.0, 1.0);
                if let Some((a, b)) = self.frame.clamp_seg(e.point_at(ta), e.point_at(tb)) {
                    let (ax, ay) = self.frame.map(a.0, a.1);
                    let (bx, by) = self.frame.map(b.0, b.1);
                    self.body.push_str(&format!(
                        "<line x1=\"{ax:.2}\" y1=\"{ay:.2}\" x2=\"{bx:.2}\" y2=\"{by:.2}\" \
                         stroke=\"#e2620f\" stroke-width=\"5\" stroke-opacity=\"{op:.3}\"/>\n"
                    ));
                }
            }
            // solid curve on top
            if let Some((a, b)) = self.frame.clamp_seg(e.point_at(lo), e.point_at(hi)) {
                let (ax, ay) = self.frame.map(a.0, a.1);
                let (bx, by) = self.frame.map(b.0, b.1);
                self.body.push_str(&format!(
                    "<line x1=\"{ax:.2}\" y1=\"{ay:.2}\" x2=\"{bx:.2}\" y2=\"{by:.2}\" \
                     stroke=\"black\" stroke-width=\"1.2\"/>\n"
                ));
            }
        }
    }

    pub fn sites(&mut self, pts: impl Iterator<Item = (f64, f64)>) {
        for (x, y) in pts {
            let (px, py) = self.frame.map(x, y);
            let r = 6.0;
            self.body.push_str(&format!(
                "<polygon points=\"{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}\" fill=\"#c81e1e\"/>\n",
                px,
                py - r,
                px - 0.866 * r,
                py + 0.5 * r,
                px + 0.866 * r,
                py + 0.5 * r
            ));
        }
    }

    pub fn dots(&mut self, pts: impl Iterator<Item = (f64, f64)>, color: &str, radius: f64) {
        for (x, y) in pts {
            if x < self.frame.x0 || x > self.frame.x1 || y < self.frame.y0 || y > self.frame.y1 {
                continue;
            }
            let (px, py) = self.frame.map(x, y);
            self.body.push_str(&format!(
                "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"{radius}\" fill=\"{color}\"/>\n"
            ));
        }
    }

    /// Polyline through data points in frame coordinates.
    pub fn polyline(&mut self, pts: &[(f64, f64)], color: &str) {
        let mut s = String::from("<polyline fill=\"none\" stroke=\"");
        s.push_str(color);
        s.push_str("\" stroke-width=\"1.5\" points=\"");
        for (x, y) in pts {
            let (px, py) = self.frame.map(*x, *y);
            s.push_str(&format!("{px:.2},{py:.2} "));
        }
        s.push_str("\"/>\n");
        self.body.push_str(&s);
    }

    pub fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}
