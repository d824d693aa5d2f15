//! Invariants of an asymptotic direction: the asymptotic curve (β, δ), the
//! asymptotic tangential curve (α) and the asymptotic normal section (ρ).

use nalgebra::Vector3;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::jets::{Jet1, Jet2, Scalar};
use crate::surface::{
    asymptotic_directions, curvature_data, AdaptedFrame, FrameCoordinates, PatchJet, SurfacePatch,
    TangentDirection,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticInvariants {
    /// Horizontal curvature, 1/length.
    pub alpha: f64,
    /// Asymptotic curvature, 1/length.
    pub beta: f64,
    /// Asymptotic torsion, 1/length.
    pub delta: f64,
    /// Vertical torsion, 1/length².
    pub rho: f64,
}

fn check_asymptotic(frame: &AdaptedFrame) -> Result<f64> {
    if !frame.is_asymptotic() {
        return Err(GeomError::Contract(format!(
            "direction is not asymptotic (h_yy = {:e})",
            frame.h_yy()
        )));
    }
    let hxy = frame.h_xy();
    let scale = frame.h_xx().abs().max(hxy.abs());
    if hxy == 0.0 || hxy.abs() <= 1e-12 * scale {
        return Err(GeomError::Parabolic(hxy));
    }
    Ok(hxy)
}

/// `ρ = h_yyy`, `β = |h_yyy/(2h_xy)|`, `δ = −h_xy`, `α = h_yyy/(3h_xy)`.
pub fn asymptotic_invariants_closed_form(frame: &AdaptedFrame) -> Result<AsymptoticInvariants> {
    let hxy = check_asymptotic(frame)?;
    let rho = frame.h_yyy();
    Ok(AsymptoticInvariants {
        alpha: rho / (3.0 * hxy),
        beta: (rho / (2.0 * hxy)).abs(),
        delta: -hxy,
        rho,
    })
}

/// `τ̂', τ̂'', τ̂'''` of a space curve at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpaceJet {
    pub d1: Vector3<f64>,
    pub d2: Vector3<f64>,
    pub d3: Vector3<f64>,
}

fn cross_jets(a: &[Jet2; 3], b: &[Jet2; 3]) -> [Jet2; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Third-order jet of `f ∘ τ` where `τ` is the asymptotic curve through `q`
/// with `τ'(0) = w`. Only `τ''` is needed: `τ'''` adds a tangential term,
/// which changes neither curvature nor torsion since the osculating plane of
/// an asymptotic curve is the tangent plane.
pub fn asymptotic_space_jet(patch: &SurfacePatch, q: [f64; 2], w: [f64; 2]) -> Result<SpaceJet> {
    let jet = patch.jet_at(q)?;
    space_jet_from(&jet, w)
}

fn space_jet_from(jet: &PatchJet, w: [f64; 2]) -> Result<SpaceJet> {
    let comps = jet.components();
    let fu: [Jet2; 3] = std::array::from_fn(|k| comps[k].dx());
    let fv: [Jet2; 3] = std::array::from_fn(|k| comps[k].dy());
    let normal = cross_jets(&fu, &fv);
    let [a, b] = w;
    let q_form = (0..3).fold(Jet2::zero(jet.base()), |acc, k| {
        let second = fu[k].dx().scale(a * a) + fu[k].dy().scale(2.0 * a * b) + fv[k].dy().scale(b * b);
        acc + normal[k] * second
    });
    let grad = q_form.gradient();
    let dq = grad[0] * a + grad[1] * b;

    let forms = jet.forms();
    let (e, f, g) = (forms.first[(0, 0)], forms.first[(0, 1)], forms.first[(1, 1)]);
    let perp = [-(f * a + g * b), e * a + f * b];
    let n0 = Vector3::new(normal[0].value(), normal[1].value(), normal[2].value());
    let cross_term = n0.dot(&jet.second(w, perp));
    let scale = n0.norm() * jet.second(perp, perp).norm().max(jet.second(w, w).norm());
    if !(cross_term.abs() > 1e-12 * scale) {
        return Err(GeomError::Parabolic(cross_term));
    }
    let m = -dq / (2.0 * cross_term);
    let tau2 = [m * perp[0], m * perp[1]];
    Ok(SpaceJet {
        d1: jet.differential(w),
        d2: jet.second(w, w) + jet.differential(tau2),
        d3: jet.third(w) + jet.second(w, tau2) * 3.0,
    })
}

/// Frenet curvature and torsion. On an inflection (`τ̂' × τ̂'' ≈ 0`) the
/// torsion is undefined and the error carries the curvature.
pub fn curve_curvature_torsion(jet: &SpaceJet) -> Result<(f64, f64)> {
    let n1 = jet.d1.norm();
    if !(n1 > 0.0) {
        return Err(GeomError::Contract("curve velocity vanishes".into()));
    }
    let c = jet.d1.cross(&jet.d2);
    let cn = c.norm();
    let beta = cn / (n1 * n1 * n1);
    if cn == 0.0 || cn <= 1e-12 * n1 * jet.d2.norm() {
        return Err(GeomError::TorsionUndefined { beta });
    }
    Ok((beta, c.dot(&jet.d3) / (cn * cn)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticSample {
    pub point: [f64; 2],
    /// Unit (first fundamental form) asymptotic tangent.
    pub tangent: [f64; 2],
    pub jet: SpaceJet,
    pub gaussian: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticCurve {
    pub samples: Vec<AsymptoticSample>,
    pub diagnostics: Vec<String>,
}

/// The asymptotic direction at `q` closest to `prev`, signed to agree with it.
fn follow(patch: &SurfacePatch, q: [f64; 2], prev: [f64; 2]) -> Option<[f64; 2]> {
    let dirs = asymptotic_directions(patch, q).ok()?;
    let dirs = dirs.directions();
    if dirs.len() != 2 {
        return None;
    }
    let dot = |w: [f64; 2]| w[0] * prev[0] + w[1] * prev[1];
    let best = dirs
        .iter()
        .map(|d| d.components)
        .max_by(|a, b| dot(*a).abs().total_cmp(&dot(*b).abs()))?;
    Some(if dot(best) < 0.0 { [-best[0], -best[1]] } else { best })
}

/// Integrates the asymptotic line field from `start` with classical RK4 at a
/// fixed step of `10⁻³ ×` the domain diameter, stopping at the boundary or
/// where `K ≥ 0`.
pub fn trace_asymptotic_curve(
    patch: &SurfacePatch,
    start: &TangentDirection,
    budget: f64,
) -> Result<AsymptoticCurve> {
    let q0 = start.basepoint;
    let w0 = follow(patch, q0, start.components).ok_or_else(|| {
        GeomError::NotApplicable("no pair of asymptotic directions at the start point (K ≥ 0)".into())
    })?;
    let dot = w0[0] * start.components[0] + w0[1] * start.components[1];
    let n = start.components[0].hypot(start.components[1]) * w0[0].hypot(w0[1]);
    if dot.abs() < (1.0 - 1e-9) * n {
        return Err(GeomError::Contract("start direction is not asymptotic".into()));
    }

    let h = 1e-3 * patch.domain.diameter();
    let mut curve = AsymptoticCurve {
        samples: Vec::new(),
        diagnostics: Vec::new(),
    };
    let sample = |q: [f64; 2], w: [f64; 2]| -> Result<AsymptoticSample> {
        let jet = patch.jet_at(q)?;
        Ok(AsymptoticSample {
            point: q,
            tangent: w,
            jet: space_jet_from(&jet, w)?,
            gaussian: jet.forms().gaussian(),
        })
    };
    curve.samples.push(sample(q0, w0)?);
    let (mut q, mut w, mut s) = (q0, w0, 0.0);
    let add = |q: [f64; 2], k: [f64; 2], c: f64| [q[0] + c * k[0], q[1] + c * k[1]];
    while s < budget {
        let step = || -> Option<[f64; 2]> {
            let k1 = follow(patch, q, w)?;
            let k2 = follow(patch, add(q, k1, 0.5 * h), k1)?;
            let k3 = follow(patch, add(q, k2, 0.5 * h), k2)?;
            let k4 = follow(patch, add(q, k3, h), k3)?;
            Some([
                q[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                q[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            ])
        };
        let Some(next) = step() else {
            curve
                .diagnostics
                .push(format!("stopped near ({:.6}, {:.6}): K ≥ 0 or outside domain", q[0], q[1]));
            break;
        };
        if !patch.domain.contains(next) {
            curve.diagnostics.push("reached the domain boundary".into());
            break;
        }
        let Some(nw) = follow(patch, next, w) else {
            curve
                .diagnostics
                .push(format!("stopped at ({:.6}, {:.6}): K ≥ 0", next[0], next[1]));
            break;
        };
        let data = sample(next, nw)?;
        s += data.jet.d1.norm() * h;
        curve.samples.push(data);
        q = next;
        w = nw;
    }
    Ok(curve)
}

impl AsymptoticCurve {
    /// `(|δ|, √(−K))` at every sample with `K < k_max` whose torsion is
    /// defined. Samples with `β ≤ 10⁻⁶√(−K)` count as inflections.
    pub fn beltrami_enneper_pairs(&self, k_max: f64) -> Vec<(f64, f64)> {
        self.samples
            .iter()
            .filter(|s| s.gaussian < k_max)
            .filter_map(|s| {
                let root = (-s.gaussian).sqrt();
                match curve_curvature_torsion(&s.jet) {
                    Ok((beta, delta)) if beta > 1e-6 * root => Some((delta.abs(), root)),
                    _ => None,
                }
            })
            .collect()
    }
}

/// The branch of `{h = 0}` tangent to the `y`-axis, `x = ξ(y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangentialCurveGerm {
    /// `ξ` through order 2 (`ξ(0) = ξ'(0) = 0`, `3ξ''(0) = −h_yyy/h_xy`).
    #[serde(skip)]
    pub xi: Jet1,
    /// Frame points `(ξ(y), y)` on the traced branch, ordered by `y`.
    pub samples: Vec<[f64; 2]>,
    /// `−ξ''(0)` from the germ.
    pub alpha_germ: f64,
    /// Curvature at `o` extrapolated from the traced branch.
    pub alpha_traced: Option<f64>,
    pub diagnostics: Vec<String>,
}

/// Solves `h(x, y) = 0` for `x` near the guess at fixed `y`; returns `x` and the height jet there.
fn branch_point(
    frame: &AdaptedFrame,
    coords: &FrameCoordinates,
    y: f64,
    mut x: f64,
) -> Result<(f64, Jet2)> {
    for _ in 0..40 {
        let jet = frame.height_jet_at(coords, [x, y])?;
        let hx = jet.partial(1, 0);
        if !(hx.abs() > 0.0) {
            return Err(GeomError::NoConvergence("h_x vanishes on the branch".into()));
        }
        let dx = jet.value() / hx;
        x -= dx;
        if dx.abs() <= 1e-16 * (1.0 + x.abs()) {
            let jet = frame.height_jet_at(coords, [x, y])?;
            return Ok((x, jet));
        }
    }
    Err(GeomError::NoConvergence(format!("branch point at y = {y:e}")))
}

/// Curvature of the branch `x = ξ(y)` at a regular branch point, in the
/// tangent plane oriented by `(e₂, −e₁)`.
fn branch_curvature(jet: &Jet2) -> f64 {
    let (hx, hy) = (jet.partial(1, 0), jet.partial(0, 1));
    let (hxx, hxy, hyy) = (jet.partial(2, 0), jet.partial(1, 1), jet.partial(0, 2));
    let xi1 = -hy / hx;
    let xi2 = -(hyy + 2.0 * hxy * xi1 + hxx * xi1 * xi1) / hx;
    -xi2 / (1.0 + xi1 * xi1).powf(1.5)
}

/// The asymptotic tangential curve of an asymptotic frame: the germ from the
/// Monge jet plus a numerical continuation of the branch by Newton on `h` at
/// fixed `y = k·step`, `|y| ≤ budget`.
pub fn trace_tangential_curve(
    patch: &SurfacePatch,
    frame: &AdaptedFrame,
    budget: f64,
    step: f64,
) -> Result<TangentialCurveGerm> {
    let hxy = check_asymptotic(frame)?;
    let xi2 = -frame.h_yyy() / (3.0 * hxy);
    let xi = Jet1::new(0.0, [0.0, 0.0, 0.5 * xi2, 0.0, 0.0]);
    let mut germ = TangentialCurveGerm {
        xi,
        samples: Vec::new(),
        alpha_germ: -xi2,
        alpha_traced: None,
        diagnostics: Vec::new(),
    };
    let coords = frame.coordinates(patch);

    let len = frame.characteristic_length();
    let hs = 2e-3 * len;
    let mut s = [0.0; 3];
    let mut ok = true;
    for (k, slot) in s.iter_mut().enumerate() {
        let y = hs * (k + 1) as f64;
        let mut acc = 0.0;
        for y in [y, -y] {
            match branch_point(frame, &coords, y, xi.eval_offset(y)) {
                Ok((_, jet)) => acc += 0.5 * branch_curvature(&jet),
                Err(e) => {
                    germ.diagnostics.push(format!("branch failed near o: {e}"));
                    ok = false;
                }
            }
        }
        *slot = acc;
    }
    if ok {
        germ.alpha_traced = Some((15.0 * s[0] - 6.0 * s[1] + s[2]) / 10.0);
    }

    if ok && step > 0.0 {
        let n = (budget / step).floor() as i64;
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (dir, out) in [(1.0, &mut pos), (-1.0, &mut neg)] {
            let mut x = 0.0;
            for k in 1..=n {
                let y = dir * step * k as f64;
                let guess = if k == 1 { xi.eval_offset(y) } else { x };
                match branch_point(frame, &coords, y, guess) {
                    Ok((xn, _)) => {
                        x = xn;
                        out.push([xn, y]);
                    }
                    Err(e) => {
                        germ.diagnostics.push(format!("branch stopped at y = {y:.6}: {e}"));
                        break;
                    }
                }
            }
        }
        neg.reverse();
        germ.samples = neg;
        germ.samples.push([0.0, 0.0]);
        germ.samples.extend(pos);
    }
    Ok(germ)
}

/// The section by `N_V` as the graph `z(y) = h(0, y)` through order 3.
pub fn normal_section(frame: &AdaptedFrame) -> Result<Jet1> {
    if !frame.is_asymptotic() {
        return Err(GeomError::Contract("direction is not asymptotic".into()));
    }
    let h = &frame.monge_jet;
    Ok(Jet1::new(
        0.0,
        [h.coeff(0, 0), h.coeff(0, 1), h.coeff(0, 2), h.coeff(0, 3), 0.0],
    ))
}

/// `ρ` by its definition: the derivative at `o` of the curvature of the
/// normal section, from a sixth-order central stencil on section curvatures
/// evaluated off `o`.
pub fn vertical_torsion_traced(patch: &SurfacePatch, frame: &AdaptedFrame) -> Result<f64> {
    let coords = frame.coordinates(patch);
    let h = 1e-2 * frame.characteristic_length();
    let kappa = |y: f64| -> Result<f64> {
        let jet = frame.height_jet_at(&coords, [0.0, y])?;
        let (z1, z2) = (jet.partial(0, 1), jet.partial(0, 2));
        Ok(z2 / (1.0 + z1 * z1).powf(1.5))
    };
    let k = |m: f64| kappa(m * h);
    Ok((-k(-3.0)? + 9.0 * k(-2.0)? - 45.0 * k(-1.0)? + 45.0 * k(1.0)? - 9.0 * k(2.0)? + k(3.0)?)
        / (60.0 * h))
}

/// `(β, δ)` of the asymptotic curve at the frame's base point.
pub fn asymptotic_curve_invariants(patch: &SurfacePatch, dir: &TangentDirection) -> Result<(f64, f64)> {
    let data = curvature_data(patch, dir.basepoint)?;
    if data.gaussian >= 0.0 {
        return Err(GeomError::NotApplicable("asymptotic curve invariants need K < 0".into()));
    }
    curve_curvature_torsion(&asymptotic_space_jet(patch, dir.basepoint, dir.components)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::surface::{monge_normal_form, Domain};

    fn monge(entries: &[(u32, u32, f64)]) -> SurfacePatch {
        SurfacePatch::monge(Field::poly_from(entries), Domain::default())
    }

    fn ey() -> TangentDirection {
        TangentDirection::new([0.0, 0.0], [0.0, 1.0]).unwrap()
    }

    #[test]
    fn closed_form_on_f1_and_f0() {
        let f1 = monge(&[(1, 1, 1.0), (0, 3, 1.0)]);
        let inv = asymptotic_invariants_closed_form(&monge_normal_form(&f1, &ey()).unwrap()).unwrap();
        assert_eq!(inv, AsymptoticInvariants { alpha: 2.0, beta: 3.0, delta: -1.0, rho: 6.0 });
        let f0 = monge(&[(1, 1, 1.0)]);
        let inv = asymptotic_invariants_closed_form(&monge_normal_form(&f0, &ey()).unwrap()).unwrap();
        assert_eq!(inv, AsymptoticInvariants { alpha: 0.0, beta: 0.0, delta: -1.0, rho: 0.0 });
    }

    #[test]
    fn closed_form_rejects_bad_frames() {
        let fp = monge(&[(2, 0, 2.0), (0, 2, 1.0)]);
        assert!(matches!(
            asymptotic_invariants_closed_form(&monge_normal_form(&fp, &ey()).unwrap()),
            Err(GeomError::Contract(_))
        ));
        let cyl = monge(&[(2, 0, 1.0)]);
        assert!(matches!(
            asymptotic_invariants_closed_form(&monge_normal_form(&cyl, &ey()).unwrap()),
            Err(GeomError::Parabolic(_))
        ));
    }

    #[test]
    fn helix_and_parabola() {
        let helix = SpaceJet {
            d1: Vector3::new(0.0, 1.0, 1.0),
            d2: Vector3::new(-1.0, 0.0, 0.0),
            d3: Vector3::new(0.0, -1.0, 0.0),
        };
        let (b, d) = curve_curvature_torsion(&helix).unwrap();
        assert!((b - 0.5).abs() < 1e-15 && (d - 0.5).abs() < 1e-15);
        let parabola = SpaceJet {
            d1: Vector3::x(),
            d2: Vector3::new(0.0, 2.0, 0.0),
            d3: Vector3::zeros(),
        };
        assert_eq!(curve_curvature_torsion(&parabola).unwrap(), (2.0, 0.0));
        let line = SpaceJet {
            d1: Vector3::x(),
            d2: Vector3::zeros(),
            d3: Vector3::zeros(),
        };
        assert!(matches!(
            curve_curvature_torsion(&line),
            Err(GeomError::TorsionUndefined { beta }) if beta == 0.0
        ));
    }

    #[test]
    fn space_jet_of_f1() {
        let f1 = monge(&[(1, 1, 1.0), (0, 3, 1.0)]);
        let j = asymptotic_space_jet(&f1, [0.0, 0.0], [0.0, 1.0]).unwrap();
        assert_eq!(j.d2, Vector3::new(-3.0, 0.0, 0.0));
        let (b, d) = curve_curvature_torsion(&j).unwrap();
        assert!((b - 3.0).abs() < 1e-15 && (d + 1.0).abs() < 1e-15);
    }

    #[test]
    fn f1_asymptotic_curve_starts_as_parabola() {
        let f1 = monge(&[(1, 1, 1.0), (0, 3, 1.0)]);
        let c = trace_asymptotic_curve(&f1, &ey(), 0.05).unwrap();
        assert!(c.samples.len() > 10);
        for s in c.samples.iter().take(8) {
            let [x, y] = s.point;
            assert!((x + 1.5 * y * y).abs() < 10.0 * y.abs().powi(3) + 1e-12);
        }
        for (d, k) in c.beltrami_enneper_pairs(-1e-4) {
            assert!((d - k).abs() < 1e-9);
        }
    }

    #[test]
    fn saddle_asymptotic_curves_are_coordinate_lines() {
        let f0 = monge(&[(1, 1, 1.0)]);
        let start = TangentDirection::new([0.2, -0.1], [0.0, 1.0]).unwrap();
        let c = trace_asymptotic_curve(&f0, &start, 0.3).unwrap();
        assert!(c.samples.iter().all(|s| (s.point[0] - 0.2).abs() < 1e-14));
    }

    #[test]
    fn tangential_curve_of_f1() {
        let f1 = monge(&[(1, 1, 1.0), (0, 3, 1.0)]);
        let frame = monge_normal_form(&f1, &ey()).unwrap();
        let g = trace_tangential_curve(&f1, &frame, 0.1, 0.01).unwrap();
        assert_eq!(g.xi.derivative(2), -2.0);
        assert_eq!(g.alpha_germ, 2.0);
        assert!((g.alpha_traced.unwrap() - 2.0).abs() < 1e-9);
        for [x, y] in &g.samples {
            assert!((x * y + y * y * y).abs() < 1e-15);
        }
    }

    #[test]
    fn normal_section_of_f1() {
        let f1 = monge(&[(1, 1, 1.0), (0, 3, 1.0)]);
        let frame = monge_normal_form(&f1, &ey()).unwrap();
        let z = normal_section(&frame).unwrap();
        assert_eq!(z.derivative(3), 6.0);
        assert!((vertical_torsion_traced(&f1, &frame).unwrap() - 6.0).abs() < 1e-8);
    }
}
