//! Curvature identities across the closed-form and traced pipelines.

mod common;

use common::*;
use cuspgeom::{
    asymptotic_directions, check_all, check_asymptotic_identities, check_cusp_formulas, check_mdk,
    curvature_data, fundamental_forms, monge_normal_form, normal_curvature, reconstruct, theorem_equivalences,
    traced_invariants, trace_tangential_curve, CubicMonge, Field, GeomError, Pipeline, Status, SurfacePatch,
    Tolerances, Vector3,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cubic() -> impl Strategy<Value = CubicMonge> {
    any::<u64>().prop_map(|s| CubicMonge::random(&mut ChaCha8Rng::seed_from_u64(s)))
}

/// A general cubic graph, not adapted to any direction.
fn general_cubic<R: Rng>(rng: &mut R) -> SurfacePatch {
    let mut entries = Vec::new();
    for (i, j) in [(2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)] {
        entries.push((i, j, rng.random_range(-2.0..2.0)));
    }
    monge(&entries)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn euler_formula(seed in any::<u64>(), angle in 0.0f64..std::f64::consts::PI, p in prop::array::uniform2(-0.5f64..0.5)) {
        let patch = general_cubic(&mut ChaCha8Rng::seed_from_u64(seed));
        let data = curvature_data(&patch, p).unwrap();
        let w = [angle.cos(), angle.sin()];
        let kappa = normal_curvature(&patch, &dir(p, w)).unwrap();
        let euler = data.euler_normal_curvature(data.angle_to_principal(w));
        prop_assert!((kappa - euler).abs() < 1e-10);
    }

    #[test]
    fn asymptotic_directions_are_null(seed in any::<u64>(), p in prop::array::uniform2(-0.5f64..0.5)) {
        let patch = general_cubic(&mut ChaCha8Rng::seed_from_u64(seed));
        let forms = fundamental_forms(&patch, p).unwrap();
        for d in asymptotic_directions(&patch, p).unwrap().directions() {
            let w = d.components;
            prop_assert!(forms.second_form(w, w).abs() < 1e-10);
            prop_assert!((forms.first_form(w, w) - 1.0).abs() < 1e-12);
        }
    }

    /// `K = −h_xy²` in the adapted frame of an asymptotic direction, after a
    /// rigid motion and away from the origin.
    #[test]
    fn gaussian_curvature_from_monge_form(seed in any::<u64>(), p in prop::array::uniform2(-0.5f64..0.5)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rot = random_rotation(&mut rng);
        let patch = general_cubic(&mut rng).rigid_motion(&rot, &Vector3::new(1.0, 2.0, 3.0));
        let k = curvature_data(&patch, p).unwrap().gaussian;
        for d in asymptotic_directions(&patch, p).unwrap().directions() {
            let frame = monge_normal_form(&patch, d).unwrap();
            prop_assert!(frame.is_asymptotic());
            prop_assert!((k + frame.h_xy().powi(2)).abs() < 1e-10 * k.abs().max(1.0));
        }
    }

    #[test]
    fn asymptotic_identities_hold(c in cubic()) {
        let recs = check_asymptotic_identities(&c.patch(0.5), &CubicMonge::direction(), &Tolerances::default()).unwrap();
        for r in &recs {
            prop_assert_eq!(r.status, Status::Pass, "{:?}", r);
        }
    }

    #[test]
    fn tangential_branch_curvature(c in cubic()) {
        let patch = c.patch(0.5);
        let frame = monge_normal_form(&patch, &CubicMonge::direction()).unwrap();
        let germ = trace_tangential_curve(&patch, &frame, 0.05, 0.005).unwrap();
        let alpha = c.h_yyy / (3.0 * c.h_xy);
        prop_assert!((germ.alpha_germ - alpha).abs() < 1e-12 * alpha.abs().max(1.0));
        let traced = germ.alpha_traced.unwrap();
        prop_assert!((traced - alpha).abs() < 1e-6 * alpha.abs().max(1.0));
        // Every traced sample lies on {h = 0}.
        let h = c.height();
        for s in &germ.samples {
            prop_assert!(h.value_at(*s).unwrap().abs() < 1e-14);
        }
    }
}

#[test]
fn f1_worked_example() {
    let tol = Tolerances::default();
    let d = dir([0.0, 0.0], [0.0, 1.0]);
    let rep = check_all(&f1(), &d, &tol).unwrap();
    assert!(rep.failures().next().is_none());
    let rec = |n: &str, p| rep.get(n, p).unwrap();
    let k3 = rec("k3_from_rho_omega", Pipeline::ClosedForm);
    assert_eq!(k3.left, Some(-1.0));
    assert!((k3.right.unwrap() + 1.0).abs() < 1e-12);
    let kab = rec("k_from_alpha_omega", Pipeline::Traced);
    assert!(kab.abs_residual.unwrap() < 1e-6);
    let frame = monge_normal_form(&f1(), &d).unwrap();
    let t = traced_invariants(&f1(), &frame).unwrap();
    assert!((t.alpha.unwrap() - 2.0).abs() < 1e-6);
    assert!((t.beta.unwrap() - 3.0).abs() < 1e-12);
    assert!((t.delta.unwrap().abs() - 1.0).abs() < 1e-12);
    assert!((t.rho - 6.0).abs() < 1e-6);
}

#[test]
fn mdk_on_sphere() {
    let tol = Tolerances::default();
    let recs = check_mdk(&sphere(), &dir([0.0, 0.0], [0.6, 0.8]), &tol).unwrap();
    for r in &recs {
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }
    let signed = recs.iter().find(|r| r.name == "mdk_signed").unwrap();
    assert!((signed.left.unwrap() - 1.0).abs() < 1e-12);
    assert!((signed.right.unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn mdk_signs_on_f_plus_and_f_minus() {
    let tol = Tolerances::default();
    let d = dir([0.0, 0.0], [0.0, 1.0]);
    for (patch, k) in [(f_plus(), 8.0), (f_minus(), -8.0)] {
        let recs = check_mdk(&patch, &d, &tol).unwrap();
        let signed = recs.iter().find(|r| r.name == "mdk_signed").unwrap();
        assert_eq!(signed.status, Status::Pass);
        assert_eq!(signed.left, Some(k));
    }
}

/// `h = xy + c·y³ + quartic terms`: `K = −1`, `ρ = 6c`, `α = 2c`, `ω = 2/√(6c)`.
#[test]
fn cusp_formulas_on_f1_family() {
    let tol = Tolerances::default();
    let d = dir([0.0, 0.0], [0.0, 1.0]);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 0..25 {
        let c = 0.1 * 100f64.powf(k as f64 / 24.0);
        let q: Vec<(u32, u32, f64)> = [(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)]
            .iter()
            .map(|&(i, j)| (i, j, rng.random_range(-1.0..1.0)))
            .collect();
        let mut entries = vec![(1, 1, 1.0), (0, 3, c)];
        entries.extend(q);
        let patch = SurfacePatch::monge(Field::poly_from(&entries), cuspgeom::Domain::square([0.0, 0.0], 0.5));
        let recs = check_cusp_formulas(&patch, &d, &tol).unwrap();
        for r in &recs {
            assert_eq!(r.status, Status::Pass, "c = {c}: {r:?}");
            assert!(r.abs_residual.unwrap() < 1e-6);
        }
        let omega = recs.iter().find(|r| r.name == "omega_closed_form").unwrap();
        assert!((omega.right.unwrap() - 2.0 / (6.0 * c).sqrt()).abs() < 1e-12);
    }
}

/// Any two of `K, α, ω, ρ` from the traced pipeline recover the other two.
#[test]
fn any_two_invariants_determine_the_rest() {
    let d = dir([0.0, 0.0], [0.0, 1.0]);
    for c in [0.2, 1.0, 3.0, 7.5] {
        let patch = monge(&[(1, 1, 1.0), (0, 3, c), (2, 2, 0.3)]);
        let frame = monge_normal_form(&patch, &d).unwrap();
        let t = traced_invariants(&patch, &frame).unwrap();
        let k = curvature_data(&patch, [0.0, 0.0]).unwrap().gaussian;
        let setup = cuspgeom::analyze_contour(&patch, &d, 0.05, 0.005).unwrap();
        let omega = setup.cusp_near([0.0, 0.0], 1e-9).unwrap().cuspidal_curvature.abs();
        let truth = [k, t.alpha.unwrap().abs(), omega, t.rho.abs()];
        for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            let pick = |n: usize| (n == i || n == j).then_some(truth[n]);
            let q = reconstruct(pick(0), pick(1), pick(2), pick(3)).unwrap();
            for (x, y) in [q.k, q.alpha, q.omega, q.rho].iter().zip(truth) {
                assert!((x - y).abs() < 1e-8 * y.abs(), "pair ({i}, {j}): {x} vs {y}");
            }
        }
    }
}

#[test]
fn equivalence_families() {
    let tol = Tolerances::default();
    let d = dir([0.0, 0.0], [0.0, 1.0]);
    assert!(theorem_equivalences(&f1(), &d, &tol).unwrap().all_true());
    assert!(theorem_equivalences(&f0(), &d, &tol).unwrap().all_false());
    let quartic = monge(&[(1, 1, 1.0), (0, 4, 1.0)]);
    assert!(theorem_equivalences(&quartic, &d, &tol).unwrap().all_false());
}

#[test]
fn contract_errors() {
    let tol = Tolerances::default();
    let not_asymptotic = dir([0.0, 0.0], [1.0, 1.0]);
    assert!(matches!(
        check_asymptotic_identities(&f1(), &not_asymptotic, &tol),
        Err(GeomError::Contract(_))
    ));
    let recs = check_mdk(&f1(), &dir([0.0, 0.0], [0.0, 1.0]), &tol).unwrap();
    assert!(recs.iter().any(|r| r.status == Status::Inapplicable && r.reason.as_deref().unwrap().contains("cusp")));
}
