//! Deterministic SVG rendering of a projected patch and its contour.

use std::fmt::Write;

use cuspgeom::{ContourAnalysis, SurfacePatch};

/// Grid lines per parameter direction.
pub const GRID_LINES: usize = 33;
const SAMPLES_PER_LINE: usize = 64;
const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;

/// `{:.3}` without a negative zero.
fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

struct Frame {
    lo: [f64; 2],
    scale: f64,
    offset: [f64; 2],
}

impl Frame {
    fn fit(points: impl Iterator<Item = [f64; 2]>) -> Self {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        if !lo[0].is_finite() {
            lo = [-1.0, -1.0];
            hi = [1.0, 1.0];
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        let offset = [
            MARGIN + 0.5 * (SIZE - 2.0 * MARGIN - scale * (hi[0] - lo[0])),
            MARGIN + 0.5 * (SIZE - 2.0 * MARGIN - scale * (hi[1] - lo[1])),
        ];
        Self { lo, scale, offset }
    }

    /// Plane coordinates to SVG user units (`z` up).
    fn map(&self, p: [f64; 2]) -> [f64; 2] {
        [
            self.offset[0] + self.scale * (p[0] - self.lo[0]),
            SIZE - (self.offset[1] + self.scale * (p[1] - self.lo[1])),
        ]
    }

    fn path(&self, pts: &[[f64; 2]]) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let q = self.map(*p);
            let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, num(q[0]), num(q[1]));
        }
        d
    }
}

/// Wireframe lines of the patch through the view map, `u`-lines then `v`-lines.
fn wireframe(patch: &SurfacePatch, contour: &ContourAnalysis) -> Vec<Vec<[f64; 2]>> {
    let d = patch.domain;
    let lerp = |r: [f64; 2], k: usize, n: usize| r[0] + (r[1] - r[0]) * k as f64 / (n - 1) as f64;
    let mut lines = Vec::with_capacity(2 * GRID_LINES);
    for axis in 0..2 {
        for i in 0..GRID_LINES {
            let line: Vec<[f64; 2]> = (0..SAMPLES_PER_LINE)
                .filter_map(|k| {
                    let p = if axis == 0 {
                        [lerp(d.u, i, GRID_LINES), lerp(d.v, k, SAMPLES_PER_LINE)]
                    } else {
                        [lerp(d.u, k, SAMPLES_PER_LINE), lerp(d.v, i, GRID_LINES)]
                    };
                    contour.view.eval(p).ok()
                })
                .collect();
            if line.len() > 1 {
                lines.push(line);
            }
        }
    }
    lines
}

/// The projected wireframe, the contour and its cusp and degenerate points.
pub fn render(title: &str, patch: &SurfacePatch, contour: &ContourAnalysis) -> String {
    let wires = wireframe(patch, contour);
    let curve: Vec<[f64; 2]> = contour.points.iter().map(|p| p.position).collect();
    let frame = Frame::fit(wires.iter().flatten().chain(curve.iter()).copied());

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {w}" width="{w}" height="{w}">"#,
        w = SIZE
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    s.push_str(
        "<style>.wire{fill:none;stroke:#9a9a9a;stroke-width:0.5}.contour{fill:none;stroke:#c0392b;stroke-width:2}\
         .cusp{fill:#1f4e9c}.degenerate{fill:none;stroke:#1f4e9c;stroke-width:1.5}</style>\n",
    );
    s.push_str("<g class=\"wireframe\">\n");
    for w in &wires {
        let _ = writeln!(s, r#"<path class="wire" d="{}"/>"#, frame.path(w));
    }
    s.push_str("</g>\n");
    if curve.len() > 1 {
        let _ = writeln!(s, r#"<path class="contour" d="{}"/>"#, frame.path(&curve));
    }
    for c in &contour.cusps.cusps {
        let q = frame.map(c.location);
        let _ = writeln!(s, r#"<circle class="cusp" cx="{}" cy="{}" r="4"/>"#, num(q[0]), num(q[1]));
    }
    for d in &contour.cusps.degenerate {
        let q = frame.map(d.position);
        let _ = writeln!(s, r#"<circle class="degenerate" cx="{}" cy="{}" r="5"/>"#, num(q[0]), num(q[1]));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_negative_zero() {
        assert_eq!(num(-1e-9), "0.000");
        assert_eq!(num(-0.5), "-0.500");
    }
}
