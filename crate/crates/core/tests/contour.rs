//! Singular sets, contours and the singularity classifier on cubic Monge patches.

mod common;

use common::*;
use cuspgeom::{
    analyze_contour, build_projection, classify_singularity, contour_curvature, curvature_data, view_map, CubicMonge,
    Domain, Field, SingularityTag, SurfacePatch,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cubic() -> impl Strategy<Value = CubicMonge> {
    any::<u64>().prop_map(|s| CubicMonge::random(&mut ChaCha8Rng::seed_from_u64(s)))
}

/// Weights of the derivative of order `m` at `x0` from values at `nodes`
/// (Fornberg's recursion).
fn fd_weights(x0: f64, nodes: &[f64], m: usize) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|row| row[m]).collect()
}

#[test]
fn fornberg_weights() {
    let w = fd_weights(0.0, &[-1.0, 0.0, 1.0], 2);
    assert_eq!(w, vec![1.0, -2.0, 1.0]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn whitney_cusp_iff_cubic_term(c in cubic(), zero in any::<bool>(), small in 0.1f64..0.2) {
        let mut c = c;
        if zero {
            c.h_yyy = 0.0;
        } else if c.h_yyy.abs() > 1.0 {
            c.h_yyy = small.copysign(c.h_yyy);
        }
        let patch = c.patch(0.5);
        let vm = view_map(&build_projection(&patch, &CubicMonge::direction()).unwrap(), &patch);
        let tag = classify_singularity(&vm, [0.0, 0.0]).unwrap().tag;
        prop_assert_eq!(tag == SingularityTag::WhitneyCusp, !zero, "{:?} {:?}", c, tag);
    }

    #[test]
    fn classifier_ignores_affine_source_changes(
        c in cubic(),
        m in prop::array::uniform4(-1.0f64..1.0),
        zero in any::<bool>(),
    ) {
        let det = m[0] * m[3] - m[1] * m[2];
        prop_assume!(det.abs() > 0.2);
        let mut c = c;
        if zero {
            c.h_yyy = 0.0;
        }
        let patch = c.patch(0.5);
        let vm = view_map(&build_projection(&patch, &CubicMonge::direction()).unwrap(), &patch);
        let u = Field::poly_from(&[(1, 0, m[0]), (0, 1, m[1])]);
        let v = Field::poly_from(&[(1, 0, m[2]), (0, 1, m[3])]);
        let moved = vm.reparametrized(&u, &v, Domain::square([0.0, 0.0], 0.1));
        let a = classify_singularity(&vm, [0.0, 0.0]).unwrap().tag;
        let b = classify_singularity(&moved, [0.0, 0.0]).unwrap().tag;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn jacobian_slope_squared_is_minus_k(c in cubic()) {
        let patch = c.patch(0.5);
        let vm = view_map(&build_projection(&patch, &CubicMonge::direction()).unwrap(), &patch);
        let jx = vm.jacobian_gradient_at([0.0, 0.0]).unwrap()[0];
        let k = curvature_data(&patch, [0.0, 0.0]).unwrap().gaussian;
        prop_assert!((jx * jx - k.abs()).abs() < 1e-10 * k.abs().max(1.0));
    }

    #[test]
    fn traced_cusp_matches_closed_form(c in cubic()) {
        let patch = c.patch(0.5);
        let a = analyze_contour(&patch, &CubicMonge::direction(), 0.02, 0.002).unwrap();
        let cusp = a.cusp_near([0.0, 0.0], 1e-9).unwrap();
        let closed = 2.0 * c.h_xy.abs().powf(1.5) / c.h_yyy.abs().sqrt();
        prop_assert!((cusp.cuspidal_curvature.abs() - closed).abs() < 1e-6 * closed.max(1.0));
    }

    /// `ψ'(0) = 0`, `ψ''(0) = −h_yyy/h_xy` for the singular set `x = ψ(y)`,
    /// against interpolation of the traced samples.
    #[test]
    fn singular_set_jet(c in cubic()) {
        let patch = c.patch(0.5);
        let h = 2e-2 / (1.0 + c.h_yyy.abs() / c.h_xy.abs());
        let a = analyze_contour(&patch, &CubicMonge::direction(), 3.5 * h, h).unwrap();
        let s = a.trace.seed_index;
        prop_assert!(s >= 3 && s + 3 < a.trace.samples.len());
        let pts: Vec<[f64; 2]> = a.trace.samples[s - 3..=s + 3].iter().map(|q| q.point).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p[1]).collect();
        let d1: f64 = fd_weights(0.0, &ys, 1).iter().zip(&pts).map(|(w, p)| w * p[0]).sum();
        let d2: f64 = fd_weights(0.0, &ys, 2).iter().zip(&pts).map(|(w, p)| w * p[0]).sum();
        let expected = -c.h_yyy / c.h_xy;
        prop_assert!(d1.abs() < 1e-8, "ψ' = {}", d1);
        prop_assert!((d2 - expected).abs() < 1e-8 * expected.abs().max(1.0), "ψ'' = {} vs {}", d2, expected);
        let psi = a.trace.psi.unwrap();
        prop_assert!((psi.derivative(2) - expected).abs() < 1e-10 * expected.abs().max(1.0));
    }
}

#[test]
fn catalog_classification() {
    let d = dir([0.0, 0.0], [0.0, 1.0]);
    let tag = |p: &SurfacePatch| {
        classify_singularity(&view_map(&build_projection(p, &d).unwrap(), p), [0.0, 0.0]).unwrap().tag
    };
    assert_eq!(tag(&f_plus()), SingularityTag::Fold);
    assert_eq!(tag(&f_minus()), SingularityTag::Fold);
    assert_eq!(tag(&f0()), SingularityTag::Degenerate);
    assert_eq!(tag(&f1()), SingularityTag::WhitneyCusp);
}

/// `f±` contours are the parabolas `z = ±2x²` seen from `e₂`, with `μ = 4`
/// along the whole trace for `f₊` (a convex contour).
#[test]
fn fold_contours_of_f_plus_and_f_minus() {
    let d = dir([0.0, 0.0], [0.0, 1.0]);
    let plus = analyze_contour(&f_plus(), &d, 0.9, 0.01).unwrap();
    assert!(plus.cusps.cusps.is_empty() && plus.cusps.degenerate.is_empty());
    for p in &plus.points {
        let [x, z] = p.position;
        assert!((z - 2.0 * x * x).abs() < 1e-12);
        let mu = contour_curvature(p).unwrap();
        assert!(mu > 0.0);
    }
    assert!((contour_curvature(plus.seed_point()).unwrap() - 4.0).abs() < 1e-9);
    let minus = analyze_contour(&f_minus(), &d, 0.9, 0.01).unwrap();
    assert!(minus.cusps.cusps.is_empty());
    assert!((contour_curvature(minus.seed_point()).unwrap() - 4.0).abs() < 1e-9);
}

#[test]
fn sphere_contour_is_a_unit_circle() {
    let d = dir([0.0, 0.0], [0.6, 0.8]);
    let a = analyze_contour(&sphere(), &d, 0.3, 0.01).unwrap();
    for p in &a.points {
        assert!((contour_curvature(p).unwrap() - 1.0).abs() < 1e-9);
    }
}

/// Reparametrizing the source leaves `μ` and `μ_Γ` unchanged.
#[test]
fn contour_curvatures_survive_reparametrization() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (patch, w) in [(f_plus(), [0.0, 1.0]), (f1(), [0.0, 1.0])] {
        let d = dir([0.0, 0.0], w);
        let base = analyze_contour(&patch, &d, 0.05, 0.005).unwrap();
        for _ in 0..5 {
            let (re, d2) = random_reparametrization(&mut rng, &patch, &d);
            let other = analyze_contour(&re, &d2, 0.05, 0.005).unwrap();
            match (base.cusp_near([0.0, 0.0], 1e-9), other.cusp_near([0.0, 0.0], 1e-9)) {
                (Some(a), Some(b)) => {
                    assert!((a.cuspidal_curvature - b.cuspidal_curvature).abs() < 1e-9)
                }
                (None, None) => {
                    let a = contour_curvature(base.seed_point()).unwrap();
                    let b = contour_curvature(other.seed_point()).unwrap();
                    assert!((a - b).abs() < 1e-9 * a.abs());
                }
                _ => panic!("cusp found in only one parametrization"),
            }
        }
    }
}

/// The corrector stays inside the domain when the singular set runs close to
/// the edge of a reparametrized cylinder, whose contour is a straight ruling.
#[test]
fn corrector_never_leaves_the_domain() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_231);
    let d = dir([0.0, 0.0], [1.0, 0.0]);
    for _ in 0..200 {
        let (re, d2) = random_reparametrization(&mut rng, &cylinder(), &d);
        let len = 0.05 * re.domain.diameter();
        let a = analyze_contour(&re, &d2, len, 0.1 * len).unwrap();
        let mu = contour_curvature(a.seed_point()).unwrap();
        assert!(mu.abs() < 1e-9, "{mu}");
    }
}
