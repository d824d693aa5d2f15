//! Invariants under rigid motions, reparametrizations and dilations.

mod common;

use common::*;
use cuspgeom::{
    asymptotic_invariants_closed_form, contour_curvature, cuspidal_curvature_closed_form, monge_normal_form,
    analyze_contour, curvature_data, CubicMonge, Vector3,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn rigid_motions_preserve_catalog_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, patch, w) in catalog() {
        let d = dir([0.0, 0.0], w);
        eprintln!("surface {name}");
        let base = invariants(&patch, &d);
        for _ in 0..5 {
            let rot = random_rotation(&mut rng);
            let t = Vector3::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let moved = patch.rigid_motion(&rot, &t);
            assert_close(&base, &invariants(&moved, &d), 1e-9, name);
        }
    }
}

#[test]
fn reparametrizations_preserve_catalog_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (name, patch, w) in catalog() {
        let d = dir([0.0, 0.0], w);
        eprintln!("surface {name}");
        let base = invariants(&patch, &d);
        for _ in 0..5 {
            let (re, d2) = random_reparametrization(&mut rng, &patch, &d);
            assert_close(&base, &invariants(&re, &d2), 1e-9, name);
        }
    }
}

#[test]
fn random_cubics_are_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let c = CubicMonge::random(&mut rng);
        let patch = c.patch(0.5);
        let d = CubicMonge::direction();
        let base = invariants(&patch, &d);
        let rot = random_rotation(&mut rng);
        let moved = patch.rigid_motion(&rot, &Vector3::new(0.3, -1.0, 2.0));
        assert_close(&base, &invariants(&moved, &d), 1e-9, "rigid");
        let (re, d2) = random_reparametrization(&mut rng, &patch, &d);
        assert_close(&base, &invariants(&re, &d2), 1e-9, "reparametrized");
    }
}

/// `value(s·f) = s^e · value(f)` for each invariant and its exponent.
#[test]
fn scaling_exponents() {
    let d = dir([0.0, 0.0], [0.0, 1.0]);
    for s in [0.25, 0.5, 2.0, 3.0] {
        let f1 = f1();
        let scaled = f1.scaled(s);
        let (a, b) = (monge_normal_form(&f1, &d).unwrap(), monge_normal_form(&scaled, &d).unwrap());
        let (ia, ib) = (asymptotic_invariants_closed_form(&a).unwrap(), asymptotic_invariants_closed_form(&b).unwrap());
        let ka = curvature_data(&f1, [0.0, 0.0]).unwrap().gaussian;
        let kb = curvature_data(&scaled, [0.0, 0.0]).unwrap().gaussian;
        let wa = cuspidal_curvature_closed_form(&a).unwrap();
        let wb = cuspidal_curvature_closed_form(&b).unwrap();
        let cusp = |p: &cuspgeom::SurfacePatch| {
            analyze_contour(p, &d, 0.05, 0.005).unwrap().cusp_near([0.0, 0.0], 1e-9).unwrap().cuspidal_curvature
        };
        let mu = |p: &cuspgeom::SurfacePatch| contour_curvature(analyze_contour(p, &d, 0.05, 0.005).unwrap().seed_point()).unwrap();
        let checks = [
            ("K", ka, kb, -2.0),
            ("alpha", ia.alpha, ib.alpha, -1.0),
            ("rho", ia.rho, ib.rho, -2.0),
            ("omega", wa, wb, -0.5),
            ("omega_traced", cusp(&f1), cusp(&scaled), -0.5),
            ("mu", mu(&f_plus()), mu(&f_plus().scaled(s)), -1.0),
        ];
        for (name, x, y, e) in checks {
            let exponent = (y / x).ln() / s.ln();
            assert!((exponent - e).abs() < 1e-9, "{name} at s = {s}: exponent {exponent}");
        }
    }
}
