#![allow(dead_code)]

use cuspgeom::{
    analyze_contour, asymptotic_invariants_closed_form, contour_curvature, cuspidal_curvature_closed_form,
    curvature_data, monge_normal_form, normal_curvature, Domain, Field, Matrix3, SurfacePatch, TangentDirection,
    Vector3,
};
use nalgebra::{Rotation3, Unit};
use rand::Rng;

pub fn monge(entries: &[(u32, u32, f64)]) -> SurfacePatch {
    SurfacePatch::monge(Field::poly_from(entries), Domain::default())
}

pub fn f_plus() -> SurfacePatch {
    monge(&[(2, 0, 2.0), (0, 2, 1.0)])
}

pub fn f_minus() -> SurfacePatch {
    monge(&[(2, 0, 2.0), (0, 2, -1.0)])
}

pub fn f0() -> SurfacePatch {
    monge(&[(1, 1, 1.0)])
}

pub fn f1() -> SurfacePatch {
    monge(&[(1, 1, 1.0), (0, 3, 1.0)])
}

pub fn sphere() -> SurfacePatch {
    let r2 = Field::constant(1.0) - Field::u().powi(2) - Field::v().powi(2);
    SurfacePatch::monge(Field::constant(1.0) - r2.sqrt(), Domain::square([0.0, 0.0], 0.5))
}

pub fn cylinder() -> SurfacePatch {
    let r2 = Field::constant(1.0) - Field::u().powi(2);
    SurfacePatch::monge(Field::constant(1.0) - r2.sqrt(), Domain::square([0.0, 0.0], 0.5))
}

/// Catalog surfaces with a direction at the origin that is non-degenerate for
/// every pipeline that applies.
pub fn catalog() -> Vec<(&'static str, SurfacePatch, [f64; 2])> {
    vec![
        ("f_plus", f_plus(), [0.0, 1.0]),
        ("f_minus", f_minus(), [0.0, 1.0]),
        ("f0", f0(), [0.0, 1.0]),
        ("f1", f1(), [0.0, 1.0]),
        ("sphere", sphere(), [0.6, 0.8]),
        ("cylinder", cylinder(), [1.0, 0.0]),
    ]
}

pub fn dir(p: [f64; 2], w: [f64; 2]) -> TangentDirection {
    TangentDirection::new(p, w).unwrap()
}

/// Named scalar invariants at a point and direction. Asymptotic directions
/// at hyperbolic points get the cusp invariants, other directions the contour
/// curvature.
pub fn invariants(patch: &SurfacePatch, d: &TangentDirection) -> Vec<(&'static str, f64)> {
    let data = curvature_data(patch, d.basepoint).unwrap();
    let mut out = vec![
        ("K", data.gaussian),
        ("H", data.mean),
        ("lambda1", data.lambda1),
        ("lambda2", data.lambda2),
        ("kappa", normal_curvature(patch, d).unwrap()),
    ];
    let frame = monge_normal_form(patch, d).unwrap();
    let len = frame.characteristic_length().min(patch.domain.diameter());
    let contour = analyze_contour(patch, d, 0.05 * len, 0.005 * len).unwrap();
    if frame.is_asymptotic() && data.gaussian < 0.0 {
        let c = asymptotic_invariants_closed_form(&frame).unwrap();
        out.extend([("alpha", c.alpha), ("beta", c.beta), ("delta", c.delta), ("rho", c.rho)]);
        if let Some(w) = cuspidal_curvature_closed_form(&frame) {
            out.push(("omega", w));
            let cusp = contour.cusp_near(d.basepoint, 1e-6 * patch.domain.diameter()).unwrap_or_else(|| panic!("no cusp: {:?} {:?}", contour.cusps, contour.trace.diagnostics));
            out.push(("omega_traced", cusp.cuspidal_curvature));
        }
    } else if !frame.is_asymptotic() {
        out.push(("mu", contour_curvature(contour.seed_point()).unwrap()));
    }
    out
}

pub fn random_rotation<R: Rng>(rng: &mut R) -> Matrix3<f64> {
    let axis = Vector3::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    );
    let axis = Unit::try_new(axis, 1e-6).unwrap_or(Vector3::z_axis());
    Rotation3::from_axis_angle(&axis, rng.random_range(0.0..std::f64::consts::TAU)).into_inner()
}

/// A random orientation-preserving polynomial reparametrization fixing `p`:
/// returns the new patch and the direction expressed in the new source.
pub fn random_reparametrization<R: Rng>(
    rng: &mut R,
    patch: &SurfacePatch,
    d: &TangentDirection,
) -> (SurfacePatch, TangentDirection) {
    let p = d.basepoint;
    let a = loop {
        let m = [
            [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)],
            [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)],
        ];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let norm = m.iter().flatten().map(|x| x * x).sum::<f64>();
        if det > 0.3 && det < 2.0 && norm < 3.0 {
            break m;
        }
    };
    let q: [f64; 6] = std::array::from_fn(|_| rng.random_range(-0.3..0.3));
    let u = Field::poly_from(&[(0, 0, p[0]), (1, 0, a[0][0]), (0, 1, a[0][1]), (2, 0, q[0]), (1, 1, q[1]), (0, 2, q[2])]);
    let v = Field::poly_from(&[(0, 0, p[1]), (1, 0, a[1][0]), (0, 1, a[1][1]), (2, 0, q[3]), (1, 1, q[4]), (0, 2, q[5])]);
    let r = 0.1 * patch.domain.diameter() / 2f64.sqrt();
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let w = d.components;
    let w_new = [
        (a[1][1] * w[0] - a[0][1] * w[1]) / det,
        (-a[1][0] * w[0] + a[0][0] * w[1]) / det,
    ];
    (
        patch.reparametrized(&u, &v, Domain::square([0.0, 0.0], r)),
        TangentDirection::new([0.0, 0.0], w_new).unwrap(),
    )
}

/// `|a − b| ≤ tol·max(1, |a|, |b|)` for every named pair.
pub fn assert_close(a: &[(&str, f64)], b: &[(&str, f64)], tol: f64, what: &str) {
    assert_eq!(a.len(), b.len(), "{what}: {a:?} vs {b:?}");
    for ((n, x), (m, y)) in a.iter().zip(b) {
        assert_eq!(n, m);
        let scale = 1f64.max(x.abs()).max(y.abs());
        assert!((x - y).abs() <= tol * scale, "{what}: {n} {x} vs {y}");
    }
}
