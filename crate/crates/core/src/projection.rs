//! The planes at `p`, the orthogonal projection along `V = df_p(v)` and the
//! fold / Whitney-cusp classification of the view map.

use nalgebra::Vector3;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::field::{jet2_eval_field, Field, Var};
use crate::jets::{Jet2, JetMap2, Scalar};
use crate::surface::{monge_normal_form, AdaptedFrame, Domain, SurfacePatch, TangentDirection};

/// Absolute threshold applied to normalized Jacobian data.
pub const TOL_SING: f64 = 1e-8;

/// An affine plane through `origin` spanned by an orthonormal pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    pub origin: Vector3<f64>,
    pub basis: [Vector3<f64>; 2],
}

impl Plane {
    pub fn normal(&self) -> Vector3<f64> {
        self.basis[0].cross(&self.basis[1])
    }

    /// Coordinates of the orthogonal projection of `q` onto the plane.
    pub fn coordinates(&self, q: &Vector3<f64>) -> [f64; 2] {
        let d = q - self.origin;
        [d.dot(&self.basis[0]), d.dot(&self.basis[1])]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionSetup {
    pub frame: AdaptedFrame,
    /// `V / |V|`, which equals `e₂`.
    pub view_direction: Vector3<f64>,
    /// Tangent plane, oriented by `(v, ν × v) = (e₂, −e₁)`.
    pub plane_t: Plane,
    /// Normal plane `span(e₂, e₃)`.
    pub plane_n: Plane,
    /// V-plane `span(e₁, e₃)`, the target of the projection.
    pub plane_pi: Plane,
}

impl ProjectionSetup {
    /// `π_V(q)` in the basis `(e₁, e₃)` of the V-plane.
    pub fn project(&self, q: &Vector3<f64>) -> [f64; 2] {
        self.plane_pi.coordinates(q)
    }
}

pub fn build_projection(patch: &SurfacePatch, dir: &TangentDirection) -> Result<ProjectionSetup> {
    let frame = monge_normal_form(patch, dir)?;
    let o = frame.origin;
    Ok(ProjectionSetup {
        frame,
        view_direction: frame.e2,
        plane_t: Plane {
            origin: o,
            basis: [frame.e2, -frame.e1],
        },
        plane_n: Plane {
            origin: o,
            basis: [frame.e2, frame.e3],
        },
        plane_pi: Plane {
            origin: o,
            basis: [frame.e1, frame.e3],
        },
    })
}

/// The planar map `g = π_V ∘ f` and its Jacobian determinant, as fields on
/// the source domain.
#[derive(Debug, Clone, PartialEq)]
pub struct ViewMap {
    pub g: [Field; 2],
    pub jacobian: Field,
    /// `(∂J/∂u, ∂J/∂v)`.
    pub jacobian_grad: [Field; 2],
    /// Adapted coordinates `(X, Y)` of the source points: `X = g₁` and `Y`
    /// the coordinate along the view direction. `None` for model germs.
    pub chart: Option<[Field; 2]>,
    pub domain: Domain,
}

impl ViewMap {
    /// Builds the map from its two components; `J` is differentiated symbolically.
    pub fn from_components(g: [Field; 2], chart: Option<[Field; 2]>, domain: Domain) -> Self {
        let jacobian = g[0].diff(Var::U) * g[1].diff(Var::V) - g[0].diff(Var::V) * g[1].diff(Var::U);
        let jacobian_grad = [jacobian.diff(Var::U), jacobian.diff(Var::V)];
        Self {
            g,
            jacobian,
            jacobian_grad,
            chart,
            domain,
        }
    }

    fn check(&self, p: [f64; 2]) -> Result<()> {
        if self.domain.contains(p) {
            Ok(())
        } else {
            Err(GeomError::OutsideDomain { u: p[0], v: p[1] })
        }
    }

    pub fn eval(&self, p: [f64; 2]) -> Result<[f64; 2]> {
        self.check(p)?;
        Ok([self.g[0].value_at(p)?, self.g[1].value_at(p)?])
    }

    pub fn jet_at(&self, p: [f64; 2]) -> Result<JetMap2> {
        self.check(p)?;
        JetMap2::new(jet2_eval_field(&self.g[0], p)?, jet2_eval_field(&self.g[1], p)?)
    }

    pub fn jacobian_at(&self, p: [f64; 2]) -> Result<f64> {
        self.jacobian.value_at(p)
    }

    pub fn jacobian_gradient_at(&self, p: [f64; 2]) -> Result<[f64; 2]> {
        Ok([
            self.jacobian_grad[0].value_at(p)?,
            self.jacobian_grad[1].value_at(p)?,
        ])
    }

    pub fn jacobian_jet(&self, p: [f64; 2]) -> Result<Jet2> {
        self.check(p)?;
        jet2_eval_field(&self.jacobian, p)
    }

    /// Coordinates used to parametrize traced curves: the adapted chart if
    /// present, `(u, v)` otherwise.
    pub fn chart_or_source(&self) -> [Field; 2] {
        self.chart.clone().unwrap_or_else(|| [Field::u(), Field::v()])
    }

    /// `g(u(s, t), v(s, t))` on a new domain.
    pub fn reparametrized(&self, u: &Field, v: &Field, domain: Domain) -> Self {
        let g = [self.g[0].compose(u, v), self.g[1].compose(u, v)];
        let chart = self
            .chart
            .as_ref()
            .map(|c| [c[0].compose(u, v), c[1].compose(u, v)]);
        Self::from_components(g, chart, domain)
    }
}

pub fn view_map(setup: &ProjectionSetup, patch: &SurfacePatch) -> ViewMap {
    let coords = setup.frame.coordinates(patch);
    ViewMap::from_components(
        [coords.x.clone(), coords.z],
        Some([coords.x, coords.y]),
        patch.domain,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Fold,
    WhitneyCusp,
}

/// `(u, v²)` or `(u, v³ − 3uv)` on `[−2, 2]²`.
pub fn normal_form_model(kind: ModelKind) -> ViewMap {
    let second = match kind {
        ModelKind::Fold => Field::poly_from(&[(0, 2, 1.0)]),
        ModelKind::WhitneyCusp => Field::poly_from(&[(0, 3, 1.0), (1, 1, -3.0)]),
    };
    ViewMap::from_components([Field::u(), second], None, Domain::square([0.0, 0.0], 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityTag {
    Regular,
    Fold,
    WhitneyCusp,
    Degenerate,
    NondegenerateUnclassified,
}

/// Quantities behind a classification, all divided by `‖dg_p‖²` (the kernel
/// field is unit length at `p`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularityWitness {
    pub j: f64,
    pub grad_j: [f64; 2],
    /// Kernel direction of `dg_p` (unit, `b ≥ 0` then `a ≥ 0`).
    pub eta: [f64; 2],
    pub eta_j: f64,
    pub eta_eta_j: f64,
    /// `‖dg_p‖²`, the normalization applied to the other entries.
    pub scale: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularityClass {
    pub tag: SingularityTag,
    pub witness: SingularityWitness,
}

pub fn classify_singularity(vm: &ViewMap, p: [f64; 2]) -> Result<SingularityClass> {
    classify_singularity_with(vm, p, TOL_SING)
}

pub fn classify_singularity_with(vm: &ViewMap, p: [f64; 2], tol: f64) -> Result<SingularityClass> {
    let map = vm.jet_at(p)?;
    let lin = map.linear_part();
    let scale = lin.norm_squared();
    if !(scale > 0.0) {
        return Err(GeomError::NotApplicable("dg vanishes at the point".into()));
    }
    let jac = vm.jacobian_jet(p)?;
    let j = jac.value() / scale;
    let g = jac.gradient();
    let grad_j = [g[0] / scale, g[1] / scale];

    // null-vector field (−∂_v gᵢ, ∂_u gᵢ) built from the dominant row of dg_p
    let [g0, g1] = map.components;
    let row = if g0.gradient()[0].hypot(g0.gradient()[1]) >= g1.gradient()[0].hypot(g1.gradient()[1]) {
        g0
    } else {
        g1
    };
    let (mut ea, mut eb) = (-row.dy(), row.dx());
    let n = ea.value().hypot(eb.value());
    let (a0, b0) = (ea.value() / n, eb.value() / n);
    let sign = if b0 < 0.0 || (b0 == 0.0 && a0 < 0.0) { -1.0 } else { 1.0 };
    ea = ea.scale(sign / n);
    eb = eb.scale(sign / n);

    let eta_j_field = ea * jac.dx() + eb * jac.dy();
    let eta_eta_j_field = ea * eta_j_field.dx() + eb * eta_j_field.dy();
    let witness = SingularityWitness {
        j,
        grad_j,
        eta: [ea.value(), eb.value()],
        eta_j: eta_j_field.value() / scale,
        eta_eta_j: eta_eta_j_field.value() / scale,
        scale,
    };

    let tag = if j.abs() >= tol {
        SingularityTag::Regular
    } else if grad_j[0].hypot(grad_j[1]) < tol {
        SingularityTag::Degenerate
    } else if witness.eta_j.abs() > tol {
        SingularityTag::Fold
    } else if witness.eta_eta_j.abs() > tol {
        SingularityTag::WhitneyCusp
    } else if witness.eta_j.abs().max(witness.eta_eta_j.abs()) < 1e-3 * tol {
        SingularityTag::Degenerate
    } else {
        SingularityTag::NondegenerateUnclassified
    };
    Ok(SingularityClass { tag, witness })
}
