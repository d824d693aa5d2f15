//! Surface patches, fundamental forms, curvature and the adapted (Monge) frame.

use nalgebra::{Matrix2, Matrix3, SymmetricEigen, Vector2, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::field::{jet2_eval_field, Field};
use crate::jets::{jet_compose, jet_invert, Jet2, JetMap2, Scalar};

/// Components below this magnitude are snapped to zero before sign normalization.
const SNAP: f64 = 1e-14;

/// Axis-aligned rectangle in the parameter plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub u: [f64; 2],
    pub v: [f64; 2],
}

impl Domain {
    pub fn new(u: [f64; 2], v: [f64; 2]) -> Self {
        Self { u, v }
    }

    /// `[c - r, c + r]²` around `center`.
    pub fn square(center: [f64; 2], r: f64) -> Self {
        Self::new([center[0] - r, center[0] + r], [center[1] - r, center[1] + r])
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        let slack = 1e-12 * self.diameter().max(1.0);
        p[0] >= self.u[0] - slack
            && p[0] <= self.u[1] + slack
            && p[1] >= self.v[0] - slack
            && p[1] <= self.v[1] + slack
    }

    pub fn diameter(&self) -> f64 {
        (self.u[1] - self.u[0]).hypot(self.v[1] - self.v[0])
    }

    pub fn center(&self) -> [f64; 2] {
        [0.5 * (self.u[0] + self.u[1]), 0.5 * (self.v[0] + self.v[1])]
    }
}

impl Default for Domain {
    fn default() -> Self {
        Self::square([0.0, 0.0], 1.0)
    }
}

/// A parametric surface `(u, v) ↦ (f¹, f², f³)` over a rectangular domain.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfacePatch {
    pub components: [Field; 3],
    pub domain: Domain,
}

impl SurfacePatch {
    pub fn new(components: [Field; 3], domain: Domain) -> Self {
        Self { components, domain }
    }

    /// The graph `(u, v, h(u, v))`.
    pub fn monge(height: Field, domain: Domain) -> Self {
        Self::new([Field::u(), Field::v(), height], domain)
    }

    /// Order-3 jets of the three components at `p`, after checking the
    /// domain and the immersion condition.
    pub fn jet_at(&self, p: [f64; 2]) -> Result<PatchJet> {
        if !self.domain.contains(p) {
            return Err(GeomError::OutsideDomain { u: p[0], v: p[1] });
        }
        let jet = PatchJet {
            base: p,
            components: [
                jet2_eval_field(&self.components[0], p)?,
                jet2_eval_field(&self.components[1], p)?,
                jet2_eval_field(&self.components[2], p)?,
            ],
        };
        let fu = jet.fu();
        let fv = jet.fv();
        let cross = fu.cross(&fv).norm();
        if !(cross > 1e-12 * fu.norm() * fv.norm()) {
            return Err(GeomError::DegeneratePatch { u: p[0], v: p[1] });
        }
        Ok(jet)
    }

    pub fn point_at(&self, p: [f64; 2]) -> Result<Vector3<f64>> {
        Ok(Vector3::new(
            self.components[0].value_at(p)?,
            self.components[1].value_at(p)?,
            self.components[2].value_at(p)?,
        ))
    }

    /// `R·f + t`.
    pub fn rigid_motion(&self, rotation: &Matrix3<f64>, translation: &Vector3<f64>) -> Self {
        let c = &self.components;
        let comps = std::array::from_fn(|k| {
            Field::linear_combination(
                &[
                    (rotation[(k, 0)], &c[0]),
                    (rotation[(k, 1)], &c[1]),
                    (rotation[(k, 2)], &c[2]),
                ],
                translation[k],
            )
        });
        Self::new(comps, self.domain)
    }

    /// Ambient dilation by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self::new(
            std::array::from_fn(|k| self.components[k].scale(s)),
            self.domain,
        )
    }

    /// `f(u(s, t), v(s, t))` on a new domain.
    pub fn reparametrized(&self, u: &Field, v: &Field, domain: Domain) -> Self {
        Self::new(
            std::array::from_fn(|k| self.components[k].compose(u, v)),
            domain,
        )
    }
}

/// Jets of the three embedding components at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatchJet {
    base: [f64; 2],
    components: [Jet2; 3],
}

impl PatchJet {
    pub fn base(&self) -> [f64; 2] {
        self.base
    }

    pub fn components(&self) -> &[Jet2; 3] {
        &self.components
    }

    pub fn position(&self) -> Vector3<f64> {
        self.partial(0, 0)
    }

    /// Raw partial derivative `∂ⁱ⁺ʲf / ∂uⁱ∂vʲ`.
    pub fn partial(&self, i: usize, j: usize) -> Vector3<f64> {
        Vector3::new(
            self.components[0].partial(i, j),
            self.components[1].partial(i, j),
            self.components[2].partial(i, j),
        )
    }

    pub fn fu(&self) -> Vector3<f64> {
        self.partial(1, 0)
    }

    pub fn fv(&self) -> Vector3<f64> {
        self.partial(0, 1)
    }

    /// `ν = f_u × f_v / |f_u × f_v|`.
    pub fn normal(&self) -> Vector3<f64> {
        self.fu().cross(&self.fv()).normalize()
    }

    pub fn differential(&self, w: [f64; 2]) -> Vector3<f64> {
        self.fu() * w[0] + self.fv() * w[1]
    }

    /// `D²f(a, b)`.
    pub fn second(&self, a: [f64; 2], b: [f64; 2]) -> Vector3<f64> {
        self.partial(2, 0) * (a[0] * b[0])
            + self.partial(1, 1) * (a[0] * b[1] + a[1] * b[0])
            + self.partial(0, 2) * (a[1] * b[1])
    }

    /// `D³f(w, w, w)`.
    pub fn third(&self, w: [f64; 2]) -> Vector3<f64> {
        let [a, b] = w;
        self.partial(3, 0) * (a * a * a)
            + self.partial(2, 1) * (3.0 * a * a * b)
            + self.partial(1, 2) * (3.0 * a * b * b)
            + self.partial(0, 3) * (b * b * b)
    }

    pub fn forms(&self) -> FundamentalForms {
        let fu = self.fu();
        let fv = self.fv();
        let nu = self.normal();
        let (l, m, n) = (
            self.partial(2, 0).dot(&nu),
            self.partial(1, 1).dot(&nu),
            self.partial(0, 2).dot(&nu),
        );
        FundamentalForms {
            first: Matrix2::new(fu.dot(&fu), fu.dot(&fv), fv.dot(&fu), fv.dot(&fv)),
            second: Matrix2::new(l, m, m, n),
        }
    }
}

/// First and second fundamental forms in the coordinate basis `(∂u, ∂v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub first: Matrix2<f64>,
    pub second: Matrix2<f64>,
}

impl FundamentalForms {
    pub fn first_form(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        (Vector2::from(a).transpose() * self.first * Vector2::from(b))[0]
    }

    pub fn second_form(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        (Vector2::from(a).transpose() * self.second * Vector2::from(b))[0]
    }

    pub fn first_norm(&self, a: [f64; 2]) -> f64 {
        self.first_form(a, a).sqrt()
    }

    pub fn gaussian(&self) -> f64 {
        self.second.determinant() / self.first.determinant()
    }
}

pub fn fundamental_forms(patch: &SurfacePatch, p: [f64; 2]) -> Result<FundamentalForms> {
    Ok(patch.jet_at(p)?.forms())
}

/// A non-zero tangent vector at a parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentDirection {
    pub basepoint: [f64; 2],
    /// Coefficients in the coordinate basis `(∂u, ∂v)`.
    pub components: [f64; 2],
    /// Angle in `[0, π)` to the first principal direction, measured in the
    /// first fundamental form.
    pub angle_to_principal: Option<f64>,
}

impl TangentDirection {
    pub fn new(basepoint: [f64; 2], components: [f64; 2]) -> Result<Self> {
        if components[0] == 0.0 && components[1] == 0.0 || components.iter().any(|c| !c.is_finite())
        {
            return Err(GeomError::Contract("tangent direction must be non-zero".into()));
        }
        Ok(Self {
            basepoint,
            components,
            angle_to_principal: None,
        })
    }
}

/// Principal curvature data at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureData {
    pub lambda1: f64,
    pub lambda2: f64,
    pub gaussian: f64,
    pub mean: f64,
    pub dir1: TangentDirection,
    pub dir2: TangentDirection,
    pub normal: Vector3<f64>,
    /// Set when `λ₁ = λ₂` to rounding; `dir1` is then the `∂u` direction.
    pub umbilic: bool,
    pub forms: FundamentalForms,
}

impl CurvatureData {
    /// Angle in `[0, π)` from `dir1` to `w`, measured in the first fundamental form.
    pub fn angle_to_principal(&self, w: [f64; 2]) -> f64 {
        let c = self.forms.first_form(w, self.dir1.components);
        let s = self.forms.first_form(w, self.dir2.components);
        let theta = s.atan2(c).rem_euclid(std::f64::consts::PI);
        if theta >= std::f64::consts::PI {
            0.0
        } else {
            theta
        }
    }

    /// `λ₁cos²θ + λ₂sin²θ`.
    pub fn euler_normal_curvature(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        self.lambda1 * c * c + self.lambda2 * s * s
    }
}

fn snap(x: f64) -> f64 {
    if x.abs() < SNAP {
        0.0
    } else {
        x
    }
}

/// Scales `w` to unit first-fundamental-form length with the sign fixed by
/// `a ≥ 0` (then `b ≥ 0`).
fn unit_first_component_positive(forms: &FundamentalForms, w: [f64; 2]) -> [f64; 2] {
    let n = forms.first_norm(w);
    let mut w = [snap(w[0] / n), snap(w[1] / n)];
    if w[0] < 0.0 || (w[0] == 0.0 && w[1] < 0.0) {
        w = [-w[0], -w[1]];
    }
    w
}

/// Same as [`unit_first_component_positive`] with the roles of `a`, `b` swapped:
/// `b ≥ 0` first.
fn unit_second_component_positive(forms: &FundamentalForms, w: [f64; 2]) -> [f64; 2] {
    let n = forms.first_norm(w);
    let mut w = [snap(w[0] / n), snap(w[1] / n)];
    if w[1] < 0.0 || (w[1] == 0.0 && w[0] < 0.0) {
        w = [-w[0], -w[1]];
    }
    w
}

pub fn curvature_data(patch: &SurfacePatch, p: [f64; 2]) -> Result<CurvatureData> {
    let jet = patch.jet_at(p)?;
    let forms = jet.forms();
    let (e, f, g) = (forms.first[(0, 0)], forms.first[(0, 1)], forms.first[(1, 1)]);
    let (l, m, n) = (forms.second[(0, 0)], forms.second[(0, 1)], forms.second[(1, 1)]);
    let det_i = e * g - f * f;
    let gaussian = (l * n - m * m) / det_i;
    let mean = (e * n - 2.0 * f * m + g * l) / (2.0 * det_i);
    // Eigenvalues of the symmetric L⁻¹·II·L⁻ᵀ with I = LLᵀ: the discriminant is
    // a sum of squares, so rounding near umbilics stays O(ε).
    let l11 = e.sqrt();
    let l21 = f / l11;
    let l22 = (g - l21 * l21).sqrt();
    let a = l / e;
    let b = (m - l21 * a * l11) / (l11 * l22);
    let c = (n - 2.0 * l21 * m / l11 + l21 * l21 * l / e) / (l22 * l22);
    let half = 0.5 * (a - c);
    let disc = half * half + b * b;
    let root = disc.sqrt();
    let (lambda1, lambda2) = if mean > 0.0 {
        let l1 = mean + root;
        (l1, gaussian / l1)
    } else if mean < 0.0 {
        let l2 = mean - root;
        (gaussian / l2, l2)
    } else {
        (root, -root)
    };
    let umbilic = disc <= 1e-14 * mean * mean || (lambda1 == 0.0 && lambda2 == 0.0);

    let d1 = if umbilic {
        [1.0, 0.0]
    } else {
        let a = forms.second - forms.first * lambda1;
        let c1 = [-a[(0, 1)], a[(0, 0)]];
        let c2 = [-a[(1, 1)], a[(1, 0)]];
        if c1[0].hypot(c1[1]) >= c2[0].hypot(c2[1]) {
            c1
        } else {
            c2
        }
    };
    let d1 = unit_first_component_positive(&forms, d1);
    let d2 = [-(f * d1[0] + g * d1[1]), e * d1[0] + f * d1[1]];
    let d2 = unit_first_component_positive(&forms, d2);

    Ok(CurvatureData {
        lambda1,
        lambda2,
        gaussian,
        mean,
        dir1: TangentDirection::new(p, d1)?,
        dir2: TangentDirection::new(p, d2)?,
        normal: jet.normal(),
        umbilic,
        forms,
    })
}

/// `κ_p(v) = II(v, v) / I(v, v)`.
pub fn normal_curvature(patch: &SurfacePatch, dir: &TangentDirection) -> Result<f64> {
    let forms = fundamental_forms(patch, dir.basepoint)?;
    let w = dir.components;
    Ok(forms.second_form(w, w) / forms.first_form(w, w))
}

/// Fills in `angle_to_principal`.
pub fn with_principal_angle(patch: &SurfacePatch, dir: &TangentDirection) -> Result<TangentDirection> {
    let data = curvature_data(patch, dir.basepoint)?;
    let mut out = *dir;
    out.angle_to_principal = Some(data.angle_to_principal(dir.components));
    Ok(out)
}

/// Result of [`asymptotic_directions`].
#[derive(Debug, Clone, PartialEq)]
pub enum AsymptoticDirections {
    /// Zero, one or two directions, each of unit first-form length with
    /// `b ≥ 0` (then `a ≥ 0`), ordered by decreasing `b` then decreasing `a`.
    Directions(Vec<TangentDirection>),
    /// `II ≡ 0`: every direction is asymptotic.
    Planar,
}

impl AsymptoticDirections {
    pub fn directions(&self) -> &[TangentDirection] {
        match self {
            Self::Directions(d) => d,
            Self::Planar => &[],
        }
    }
}

/// Unit asymptotic directions at `p` (the solutions of `II(w, w) = 0`).
pub fn asymptotic_directions(patch: &SurfacePatch, p: [f64; 2]) -> Result<AsymptoticDirections> {
    let forms = fundamental_forms(patch, p)?;
    let shape = forms.first.try_inverse().unwrap_or_else(Matrix2::zeros) * forms.second;
    if shape.norm() <= 1e-12 {
        return Ok(AsymptoticDirections::Planar);
    }
    let raw = asymptotic_roots(&forms.second);
    let mut dirs: Vec<[f64; 2]> = raw
        .into_iter()
        .map(|w| unit_second_component_positive(&forms, w))
        .collect();
    dirs.sort_by(|a, b| {
        if (a[1] - b[1]).abs() > 1e-12 {
            b[1].total_cmp(&a[1])
        } else {
            b[0].total_cmp(&a[0])
        }
    });
    dirs.into_iter()
        .map(|w| TangentDirection::new(p, w))
        .collect::<Result<Vec<_>>>()
        .map(AsymptoticDirections::Directions)
}

/// Null vectors of the quadratic form `second` (unnormalized).
pub(crate) fn asymptotic_roots(second: &Matrix2<f64>) -> Vec<[f64; 2]> {
    let scale = second.norm_squared();
    if scale == 0.0 {
        return Vec::new();
    }
    let disc = -second.determinant() / scale;
    let eig = SymmetricEigen::new(*second);
    let (i_max, i_min) = if eig.eigenvalues[0] >= eig.eigenvalues[1] {
        (0, 1)
    } else {
        (1, 0)
    };
    let (m1, m2) = (eig.eigenvalues[i_max], eig.eigenvalues[i_min]);
    let e1 = eig.eigenvectors.column(i_max);
    let e2 = eig.eigenvectors.column(i_min);
    if disc > 1e-12 {
        let a = (-m2).sqrt();
        let b = m1.sqrt();
        vec![
            [a * e1[0] + b * e2[0], a * e1[1] + b * e2[1]],
            [a * e1[0] - b * e2[0], a * e1[1] - b * e2[1]],
        ]
    } else if disc >= -1e-12 {
        let e = if m1.abs() <= m2.abs() { e1 } else { e2 };
        vec![[e[0], e[1]]]
    } else {
        Vec::new()
    }
}

/// Mannheim's radius `|sin²θ/λ₁ + cos²θ/λ₂|` of the contour line.
pub fn mannheim_radius(patch: &SurfacePatch, dir: &TangentDirection) -> Result<f64> {
    let data = curvature_data(patch, dir.basepoint)?;
    let w = dir.components;
    let kappa = data.forms.second_form(w, w) / data.forms.first_form(w, w);
    let scale = data.lambda1.abs().max(data.lambda2.abs());
    if kappa.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(GeomError::NotApplicable(
            "direction is asymptotic (κ = 0); the contour has a singular point, use the cuspidal curvature".into(),
        ));
    }
    if data.lambda1.abs() <= 1e-14 * scale || data.lambda2.abs() <= 1e-14 * scale {
        return Err(GeomError::Division);
    }
    let theta = dir
        .angle_to_principal
        .unwrap_or_else(|| data.angle_to_principal(w));
    let (s, c) = theta.sin_cos();
    Ok((s * s / data.lambda1 + c * c / data.lambda2).abs())
}

/// The frame coordinates `(X, Y, Z)` of `f − f(p)` as fields on the parameter plane.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameCoordinates {
    pub x: Field,
    pub y: Field,
    pub z: Field,
}

/// Orthonormal frame at `f(p)` with `e₂` along `df_p(v)` and `e₃ = ν_p`,
/// together with the Monge jet of the height function in that frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptedFrame {
    pub basepoint: [f64; 2],
    pub direction: TangentDirection,
    pub origin: Vector3<f64>,
    pub e1: Vector3<f64>,
    pub e2: Vector3<f64>,
    pub e3: Vector3<f64>,
    /// Jet at `(0, 0)` of `h` where the surface is locally `z = h(x, y)`.
    pub monge_jet: Jet2,
}

impl AdaptedFrame {
    /// Coordinates of the ambient point `q` in the frame.
    pub fn to_frame(&self, q: &Vector3<f64>) -> Vector3<f64> {
        let d = q - self.origin;
        Vector3::new(d.dot(&self.e1), d.dot(&self.e2), d.dot(&self.e3))
    }

    pub fn from_frame(&self, c: &Vector3<f64>) -> Vector3<f64> {
        self.origin + self.e1 * c[0] + self.e2 * c[1] + self.e3 * c[2]
    }

    pub fn coordinates(&self, patch: &SurfacePatch) -> FrameCoordinates {
        let f = &patch.components;
        let axis = |e: &Vector3<f64>| {
            Field::linear_combination(
                &[(e[0], &f[0]), (e[1], &f[1]), (e[2], &f[2])],
                -e.dot(&self.origin),
            )
        };
        FrameCoordinates {
            x: axis(&self.e1),
            y: axis(&self.e2),
            z: axis(&self.e3),
        }
    }

    pub fn h_xx(&self) -> f64 {
        self.monge_jet.partial(2, 0)
    }

    pub fn h_xy(&self) -> f64 {
        self.monge_jet.partial(1, 1)
    }

    pub fn h_yy(&self) -> f64 {
        self.monge_jet.partial(0, 2)
    }

    pub fn h_yyy(&self) -> f64 {
        self.monge_jet.partial(0, 3)
    }

    /// Largest absolute second-order Monge coefficient.
    fn second_order_scale(&self) -> f64 {
        [(2, 0), (1, 1), (0, 2)]
            .iter()
            .map(|&(i, j)| self.monge_jet.coeff(i, j).abs())
            .fold(0.0, f64::max)
    }

    /// `true` when `v` is an asymptotic direction (`h_yy(o) ≈ 0`).
    pub fn is_asymptotic(&self) -> bool {
        self.monge_jet.coeff(0, 2).abs() <= 1e-10 * self.second_order_scale().max(1.0)
    }

    /// A length on which the cubic Monge terms stay comparable to the
    /// quadratic ones. Used to size finite-difference stencils.
    pub fn characteristic_length(&self) -> f64 {
        let c2 = self.second_order_scale();
        let c3 = [(3, 0), (2, 1), (1, 2), (0, 3)]
            .iter()
            .map(|&(i, j)| self.monge_jet.coeff(i, j).abs())
            .fold(0.0, f64::max);
        let mut len = f64::INFINITY;
        if c2 > 0.0 {
            len = len.min(1.0 / c2);
            if c3 > 0.0 {
                len = len.min(c2 / c3);
            }
        } else if c3 > 0.0 {
            len = len.min(1.0 / c3.sqrt());
        }
        if len.is_finite() {
            len
        } else {
            1.0
        }
    }

    /// The parameter point whose frame coordinates `(X, Y)` equal `xy`.
    pub fn locate(&self, coords: &FrameCoordinates, xy: [f64; 2]) -> Result<[f64; 2]> {
        let mut uv = self.basepoint;
        for _ in 0..60 {
            let jx = jet2_eval_field(&coords.x, uv)?;
            let jy = jet2_eval_field(&coords.y, uv)?;
            let r = Vector2::new(jx.value() - xy[0], jy.value() - xy[1]);
            let scale = 1.0 + xy[0].abs() + xy[1].abs();
            if r.norm() <= 1e-15 * scale {
                return Ok(uv);
            }
            let jac = JetMap2::new(jx, jy)?.linear_part();
            let step = jac
                .try_inverse()
                .ok_or(GeomError::Rank { det: jac.determinant() })?
                * r;
            uv = [uv[0] - step[0], uv[1] - step[1]];
            if step.norm() <= 1e-17 * (1.0 + uv[0].abs() + uv[1].abs()) {
                return Ok(uv);
            }
        }
        Err(GeomError::NoConvergence(format!(
            "could not locate frame point {xy:?} on the patch"
        )))
    }

    /// Jet of the height function at the frame point `xy`.
    pub fn height_jet_at(&self, coords: &FrameCoordinates, xy: [f64; 2]) -> Result<Jet2> {
        let uv = self.locate(coords, xy)?;
        let map = JetMap2::new(jet2_eval_field(&coords.x, uv)?, jet2_eval_field(&coords.y, uv)?)?;
        let inv = jet_invert(&map)?;
        jet_compose(&jet2_eval_field(&coords.z, uv)?, &inv)
    }

    pub fn normal_field(&self) -> NormalField {
        let h = self.monge_jet;
        let o = h.base();
        NormalField {
            components: [-h.dx(), -h.dy(), Jet2::constant(o, 1.0)],
        }
    }
}

/// The unscaled normal `(−h_x, −h_y, 1)` in the adapted frame, as jets at `o`
/// (exact through order 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalField {
    pub components: [Jet2; 3],
}

impl NormalField {
    pub fn at_origin(&self) -> Vector3<f64> {
        Vector3::new(
            self.components[0].value(),
            self.components[1].value(),
            self.components[2].value(),
        )
    }
}

/// Moves `f(p)` to the origin, aligns `df_p(v)` with `e₂` and `ν_p` with `e₃`
/// and writes the surface as a graph `z = h(x, y)` through order 3.
pub fn monge_normal_form(patch: &SurfacePatch, dir: &TangentDirection) -> Result<AdaptedFrame> {
    let p = dir.basepoint;
    let jet = patch.jet_at(p)?;
    let e3 = jet.normal();
    let v = jet.differential(dir.components);
    let v = v - e3 * v.dot(&e3);
    if !(v.norm() > 0.0) {
        return Err(GeomError::Contract("df_p(v) vanishes".into()));
    }
    let e2 = v.normalize();
    let e1 = e2.cross(&e3);
    let origin = jet.position();

    let [c0, c1, c2] = *jet.components();
    let axis = |e: &Vector3<f64>| {
        c0.scale(e[0]) + c1.scale(e[1]) + c2.scale(e[2]) - Jet2::constant(p, e.dot(&origin))
    };
    let (x, y, z) = (axis(&e1), axis(&e2), axis(&e3));
    let inv = jet_invert(&JetMap2::new(x, y)?)?;
    let monge_jet = jet_compose(&z, &inv)?;

    Ok(AdaptedFrame {
        basepoint: p,
        direction: *dir,
        origin,
        e1,
        e2,
        e3,
        monge_jet,
    })
}
