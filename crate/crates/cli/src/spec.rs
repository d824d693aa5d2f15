//! Surface specification files.

use cuspgeom::{Domain, Field, SurfacePatch};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Monomial `c·uⁱvʲ`, written `[i, j, c]`.
pub type Term = (u32, u32, f64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogSurface {
    FPlus,
    FMinus,
    F0,
    F1,
    Sphere,
    Cylinder,
}

impl CatalogSurface {
    pub const ALL: [CatalogSurface; 6] = [
        Self::FPlus,
        Self::FMinus,
        Self::F0,
        Self::F1,
        Self::Sphere,
        Self::Cylinder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::FPlus => "f_plus",
            Self::FMinus => "f_minus",
            Self::F0 => "f0",
            Self::F1 => "f1",
            Self::Sphere => "sphere",
            Self::Cylinder => "cylinder",
        }
    }

    pub fn default_domain(self) -> Domain {
        match self {
            Self::Sphere | Self::Cylinder => Domain::square([0.0, 0.0], 0.5),
            _ => Domain::default(),
        }
    }

    /// Height over the `(x, y)` plane.
    pub fn height(self) -> Field {
        let (x, y) = (Field::u(), Field::v());
        match self {
            Self::FPlus => Field::poly_from(&[(2, 0, 2.0), (0, 2, 1.0)]),
            Self::FMinus => Field::poly_from(&[(2, 0, 2.0), (0, 2, -1.0)]),
            Self::F0 => Field::poly_from(&[(1, 1, 1.0)]),
            Self::F1 => Field::poly_from(&[(1, 1, 1.0), (0, 3, 1.0)]),
            Self::Sphere => Field::constant(1.0) - (Field::constant(1.0) - x.powi(2) - y.powi(2)).sqrt(),
            Self::Cylinder => Field::constant(1.0) - (Field::constant(1.0) - x.powi(2)).sqrt(),
        }
    }

    pub fn patch(self) -> SurfacePatch {
        SurfacePatch::monge(self.height(), self.default_domain())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceKind {
    /// Graph `(u, v, h(u, v))`.
    MongePoly { coeffs: Vec<Term> },
    ParametricPoly { components: [Vec<Term>; 3] },
    Catalog { name: CatalogSurface },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(flatten)]
    pub surface: SurfaceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Domain>,
}

impl SurfaceSpec {
    pub fn catalog(name: CatalogSurface) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            id: Some(name.name().into()),
            surface: SurfaceKind::Catalog { name },
            domain: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let spec: SurfaceSpec = serde_json::from_str(text).map_err(|e| SpecError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if spec.schema_version != SCHEMA_VERSION {
            return Err(SpecError::Schema(spec.schema_version));
        }
        let d = spec.domain();
        if !(d.u[0] < d.u[1] && d.v[0] < d.v[1]) {
            return Err(SpecError::Domain(d));
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn label(&self) -> String {
        match (&self.id, &self.surface) {
            (Some(id), _) => id.clone(),
            (None, SurfaceKind::Catalog { name }) => name.name().into(),
            (None, SurfaceKind::MongePoly { .. }) => "monge_poly".into(),
            (None, SurfaceKind::ParametricPoly { .. }) => "parametric_poly".into(),
        }
    }

    pub fn domain(&self) -> Domain {
        match (&self.domain, &self.surface) {
            (Some(d), _) => *d,
            (None, SurfaceKind::Catalog { name }) => name.default_domain(),
            (None, _) => Domain::default(),
        }
    }

    pub fn patch(&self) -> SurfacePatch {
        let domain = self.domain();
        match &self.surface {
            SurfaceKind::MongePoly { coeffs } => SurfacePatch::monge(Field::poly_from(coeffs), domain),
            SurfaceKind::ParametricPoly { components } => SurfacePatch::new(
                [
                    Field::poly_from(&components[0]),
                    Field::poly_from(&components[1]),
                    Field::poly_from(&components[2]),
                ],
                domain,
            ),
            SurfaceKind::Catalog { name } => SurfacePatch::monge(name.height(), domain),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported schema_version {0} (expected {SCHEMA_VERSION})")]
    Schema(u32),
    #[error("empty domain {0:?}")]
    Domain(Domain),
}
