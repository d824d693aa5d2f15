//! The JSON document written by `analyze`.

use cuspgeom::{
    analyze_contour, asymptotic_invariants_closed_form, check_all, classify_singularity_with, contour_curvature,
    cuspidal_curvature_closed_form, curvature_data, mannheim_radius, monge_normal_form, normal_curvature,
    traced_invariants, GeomError, IdentityRecord, SingularityTag, SingularityWitness, SurfacePatch,
    TangentDirection, Tolerances,
};
use serde::Serialize;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// A number or the reason there is none.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantity {
    pub value: Option<f64>,
    pub units: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Quantity {
    fn new(r: Result<f64, String>, units: &'static str) -> Self {
        match r {
            Ok(v) if v.is_finite() => Self { value: Some(v), units, reason: None },
            Ok(v) => Self { value: None, units, reason: Some(format!("non-finite result {v}")) },
            Err(e) => Self { value: None, units, reason: Some(e) },
        }
    }
}

const INV_LEN: &str = "1/length";
const INV_AREA: &str = "1/length^2";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Invariants {
    pub gaussian_curvature: Quantity,
    pub mean_curvature: Quantity,
    pub principal_curvature_1: Quantity,
    pub principal_curvature_2: Quantity,
    pub normal_curvature: Quantity,
    pub contour_curvature: Quantity,
    pub mannheim_radius: Quantity,
    pub horizontal_curvature: Quantity,
    pub vertical_torsion: Quantity,
    pub asymptotic_curvature: Quantity,
    pub asymptotic_torsion: Quantity,
    pub cuspidal_curvature: Quantity,
    pub cuspidal_curvature_traced: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Singularity {
    pub tag: Option<SingularityTag>,
    pub witness: Option<SingularityWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub surface: String,
    pub point: [f64; 2],
    pub direction: [f64; 2],
    pub direction_source: String,
    pub asymptotic: bool,
    pub tolerances: Tolerances,
    pub invariants: Invariants,
    pub singularity: Singularity,
    pub identities: Vec<IdentityRecord>,
    pub diagnostics: Vec<String>,
}

fn err(e: GeomError) -> String {
    e.to_string()
}

fn not_asymptotic<T>(_: T) -> Result<f64, String> {
    Err("direction is not asymptotic".into())
}

/// Runs every pipeline at `dir` and collects the results; failures of one
/// quantity never abort the others.
pub fn analyze(
    patch: &SurfacePatch,
    surface: &str,
    dir: &TangentDirection,
    direction_source: &str,
    tol: &Tolerances,
) -> Result<InvariantReport, GeomError> {
    let data = curvature_data(patch, dir.basepoint)?;
    let frame = monge_normal_form(patch, dir)?;
    let asymptotic = frame.is_asymptotic();
    let mut diagnostics = Vec::new();

    let len = frame.characteristic_length().min(patch.domain.diameter());
    let contour = analyze_contour(patch, dir, 0.05 * len, 0.005 * len);
    if let Ok(c) = &contour {
        diagnostics.extend(c.trace.diagnostics.iter().cloned());
    }

    let mu = match &contour {
        _ if asymptotic => Err("asymptotic direction: the contour has a cusp at p".into()),
        Ok(c) => contour_curvature(c.seed_point()).map_err(err),
        Err(e) => Err(err(e.clone())),
    };
    let radius = if asymptotic {
        Err("asymptotic direction".into())
    } else {
        mannheim_radius(patch, dir).map_err(err)
    };

    let closed = if asymptotic {
        asymptotic_invariants_closed_form(&frame).map_err(err)
    } else {
        Err("direction is not asymptotic".into())
    };
    let traced = if asymptotic && data.gaussian < 0.0 {
        traced_invariants(patch, &frame).map_err(err)
    } else {
        Err("needs an asymptotic direction with K < 0".into())
    };
    if let Err(e) = &traced {
        if asymptotic {
            diagnostics.push(format!("traced invariants: {e}"));
        }
    }
    let omega = if asymptotic {
        cuspidal_curvature_closed_form(&frame).ok_or_else(|| "ρ = 0: no cusp".to_string())
    } else {
        Err("direction is not asymptotic".into())
    };
    let omega_traced = match &contour {
        Ok(c) if asymptotic => c
            .cusp_near(dir.basepoint, 1e-6 * patch.domain.diameter())
            .map(|c| c.cuspidal_curvature)
            .ok_or_else(|| "no cusp on the traced contour at p".to_string()),
        Ok(_) => not_asymptotic(()),
        Err(e) => Err(err(e.clone())),
    };
    let beta = traced
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|t| t.beta.ok_or_else(|| "curvature undefined".to_string()));
    let delta = traced
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|t| t.delta.ok_or_else(|| "torsion undefined at an inflection".to_string()));

    let invariants = Invariants {
        gaussian_curvature: Quantity::new(Ok(data.gaussian), INV_AREA),
        mean_curvature: Quantity::new(Ok(data.mean), INV_LEN),
        principal_curvature_1: Quantity::new(Ok(data.lambda1), INV_LEN),
        principal_curvature_2: Quantity::new(Ok(data.lambda2), INV_LEN),
        normal_curvature: Quantity::new(normal_curvature(patch, dir).map_err(err), INV_LEN),
        contour_curvature: Quantity::new(mu, INV_LEN),
        mannheim_radius: Quantity::new(radius, "length"),
        horizontal_curvature: Quantity::new(closed.clone().map(|c| c.alpha), INV_LEN),
        vertical_torsion: Quantity::new(closed.clone().map(|c| c.rho), INV_AREA),
        asymptotic_curvature: Quantity::new(beta, INV_LEN),
        asymptotic_torsion: Quantity::new(delta, INV_LEN),
        cuspidal_curvature: Quantity::new(omega, "1/length^(1/2)"),
        cuspidal_curvature_traced: Quantity::new(omega_traced, "1/length^(1/2)"),
    };

    let singularity = match &contour {
        Ok(c) => match classify_singularity_with(&c.view, dir.basepoint, tol.sing) {
            Ok(s) => Singularity { tag: Some(s.tag), witness: Some(s.witness), reason: None },
            Err(e) => Singularity { tag: None, witness: None, reason: Some(err(e)) },
        },
        Err(e) => Singularity { tag: None, witness: None, reason: Some(err(e.clone())) },
    };

    let identities = match check_all(patch, dir, tol) {
        Ok(r) => r.records,
        Err(e) => {
            diagnostics.push(format!("identity checks: {e}"));
            Vec::new()
        }
    };

    Ok(InvariantReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        surface: surface.into(),
        point: dir.basepoint,
        direction: dir.components,
        direction_source: direction_source.into(),
        asymptotic,
        tolerances: *tol,
        invariants,
        singularity,
        identities,
        diagnostics,
    })
}
