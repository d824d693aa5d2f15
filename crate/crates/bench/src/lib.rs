//! Fixtures shared by the benchmarks in `benches/`.

use cuspgeom::{CubicMonge, Domain, Field, SurfacePatch, TangentDirection};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `h = xy + y³` on the unit square.
pub fn f1() -> SurfacePatch {
    SurfacePatch::monge(Field::poly_from(&[(1, 1, 1.0), (0, 3, 1.0)]), Domain::default())
}

/// `∂y` at the origin.
pub fn ey() -> TangentDirection {
    TangentDirection::new([0.0, 0.0], [0.0, 1.0]).unwrap()
}

/// `a·sin(bu + cv)·exp(d·uv) + e·√(1 + u² + v²)`.
pub fn composite_field() -> Field {
    let (u, v) = (Field::u(), Field::v());
    let root = (Field::constant(1.0) + u.clone().powi(2) + v.clone().powi(2)).sqrt();
    (u.clone().scale(0.7) + v.clone().scale(-1.3)).sin() * (u * v).scale(0.4).exp() + root.scale(0.9)
}

/// Seeded random cubic Monge patches, adapted to `∂y`.
pub fn cubics(n: usize, seed: u64) -> Vec<SurfacePatch> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| CubicMonge::random(&mut rng).patch(0.5)).collect()
}
