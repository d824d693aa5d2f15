//! Jet arithmetic against finite differences and symbolic expansion.

use cuspgeom::{jet2_eval_field, jet_compose, jet_invert, Field, Jet2, JetMap2};
use proptest::prelude::*;

const ORDERS: [(usize, usize); 10] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

/// Nested central differences, `i` times in `u` and `j` times in `v`.
fn nested(f: &dyn Fn(f64, f64) -> f64, p: [f64; 2], i: usize, j: usize, h: f64) -> f64 {
    if i > 0 {
        let g = |s: f64| nested(f, [p[0] + s, p[1]], i - 1, j, h);
        (g(h) - g(-h)) / (2.0 * h)
    } else if j > 0 {
        let g = |s: f64| nested(f, [p[0], p[1] + s], 0, j - 1, h);
        (g(h) - g(-h)) / (2.0 * h)
    } else {
        f(p[0], p[1])
    }
}

/// Finite-difference partial `∂^{i+j} f / ∂uⁱ∂vʲ`. First derivatives use step
/// `1e−4`; higher orders use Richardson-extrapolated steps large enough to
/// keep rounding below the truncation error.
fn fd_partial(f: &dyn Fn(f64, f64) -> f64, p: [f64; 2], i: usize, j: usize) -> f64 {
    let h = match i + j {
        0 => return f(p[0], p[1]),
        1 => 1e-4,
        2 => 1e-3,
        _ => 4e-3,
    };
    (4.0 * nested(f, p, i, j, h / 2.0) - nested(f, p, i, j, h)) / 3.0
}

/// `a·sin(bu + cv)·exp(d·uv) + e·√(1 + u² + v²) + k·cos(u)·v³`.
fn composite(c: [f64; 6]) -> Field {
    let (u, v) = (Field::u(), Field::v());
    let arg = u.clone().scale(c[1]) + v.clone().scale(c[2]);
    let uv = u.clone() * v.clone();
    let root = (Field::constant(1.0) + u.clone().powi(2) + v.clone().powi(2)).sqrt();
    arg.sin().scale(c[0]) * uv.scale(c[3]).exp() + root.scale(c[4]) + u.cos().scale(c[5]) * v.powi(3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn partials_match_finite_differences(
        c in prop::array::uniform6(-1.5f64..1.5),
        p in prop::array::uniform2(-0.8f64..0.8),
    ) {
        let field = composite(c);
        let jet = jet2_eval_field(&field, p).unwrap();
        let f = |u: f64, v: f64| field.value_at([u, v]).unwrap();
        for (i, j) in ORDERS {
            let exact = jet.partial(i, j);
            let fd = fd_partial(&f, p, i, j);
            prop_assert!(
                (exact - fd).abs() <= 1e-6 * exact.abs().max(1.0),
                "∂({i},{j}) jet {exact} fd {fd}"
            );
        }
    }

    #[test]
    fn cubic_polynomials_are_exact(
        coeffs in prop::array::uniform10(-9i32..10),
        b in prop::array::uniform2(-3i32..4),
    ) {
        let entries: Vec<(u32, u32, f64)> = ORDERS
            .iter()
            .zip(coeffs)
            .map(|(&(i, j), c)| (i as u32, j as u32, c as f64))
            .collect();
        let base = [b[0] as f64, b[1] as f64];
        let jet = jet2_eval_field(&Field::poly_from(&entries), base).unwrap();
        // Taylor coefficient of (u−b₀)ⁱ(v−b₁)ʲ by binomial expansion.
        let binom = |n: usize, k: usize| -> f64 {
            (0..k).fold(1.0, |acc, m| acc * (n - m) as f64 / (m + 1) as f64)
        };
        for (i, j) in ORDERS {
            let mut expected = 0.0;
            for (&(k, l), &c) in ORDERS.iter().zip(&coeffs) {
                if k >= i && l >= j {
                    expected += c as f64
                        * binom(k, i)
                        * binom(l, j)
                        * base[0].powi((k - i) as i32)
                        * base[1].powi((l - j) as i32);
                }
            }
            prop_assert_eq!(jet.coeff(i, j), expected, "coefficient ({}, {})", i, j);
        }
    }

    #[test]
    fn inversion_round_trip(
        angle in 0.0f64..std::f64::consts::TAU,
        sv in prop::array::uniform2(0.2f64..3.0),
        hi in prop::array::uniform14(-1.0f64..1.0),
        base in prop::array::uniform2(-1.0f64..1.0),
        value in prop::array::uniform2(-1.0f64..1.0),
    ) {
        // Linear part R(θ)·diag(σ), condition number below 15.
        let (s, c) = angle.sin_cos();
        let lin = [[c * sv[0], -s * sv[1]], [s * sv[0], c * sv[1]]];
        let comp = |k: usize| {
            let mut coeffs = [0.0; 10];
            coeffs[0] = value[k];
            coeffs[1] = lin[k][0];
            coeffs[2] = lin[k][1];
            coeffs[3..10].copy_from_slice(&hi[7 * k..7 * k + 7]);
            Jet2::new(base, coeffs)
        };
        let map = JetMap2::new(comp(0), comp(1)).unwrap();
        let inv = jet_invert(&map).unwrap();
        let ident = JetMap2::identity(value);
        for k in 0..2 {
            let round = jet_compose(&map.components[k], &inv).unwrap();
            prop_assert!(round.max_abs_diff(&ident.components[k]) < 1e-12);
        }
        // The inverse's coefficients grow like powers of 1/σ_min; the reverse
        // composition is accurate relative to them.
        let scale = inv.components.iter().flat_map(|c| c.coeffs().iter()).fold(1f64, |m, x| m.max(x.abs()));
        let back = JetMap2::identity(base);
        for k in 0..2 {
            let round = jet_compose(&inv.components[k], &map).unwrap();
            let err = round.max_abs_diff(&back.components[k]);
            prop_assert!(err < 1e-12 * scale, "error {err:e}, coefficient scale {scale:e}");
        }
    }
}

#[test]
fn finite_difference_oracle_is_sharp() {
    // sin(u)·e^v at the origin: ∂³/∂u³ = −1, ∂³/∂u∂v² = 1.
    let f = |u: f64, v: f64| u.sin() * v.exp();
    assert!((fd_partial(&f, [0.0, 0.0], 3, 0) + 1.0).abs() < 1e-8);
    assert!((fd_partial(&f, [0.0, 0.0], 1, 2) - 1.0).abs() < 1e-8);
}
