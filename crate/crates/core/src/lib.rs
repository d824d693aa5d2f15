//! Cuspidal and asymptotic curvature invariants of surfaces in ℝ³.

pub mod asymptotic;
pub mod contour;
pub mod error;
pub mod field;
pub mod identities;
pub mod jets;
pub mod projection;
pub mod surface;

pub use nalgebra::{Matrix3, Vector3};

pub use error::{GeomError, Result};
pub use field::{jet2_eval_field, Field, Monomial, Var};
pub use jets::{jet_compose, jet_invert, Jet1, Jet2, JetMap2, Scalar};
pub use surface::{
    asymptotic_directions, curvature_data, fundamental_forms, mannheim_radius,
    monge_normal_form, normal_curvature, with_principal_angle, AdaptedFrame,
    AsymptoticDirections, CurvatureData, Domain, FrameCoordinates, FundamentalForms,
    NormalField, PatchJet, SurfacePatch, TangentDirection,
};
pub use projection::{
    build_projection, classify_singularity, classify_singularity_with, normal_form_model,
    view_map, ModelKind, Plane, ProjectionSetup, SingularityClass, SingularityTag,
    SingularityWitness, ViewMap,
};
pub use contour::{
    analyze_contour, contour_curvature, contour_line, cuspidal_curvature, locate_cusps, singular_curve_jet,
    trace_singular_set, ContourAnalysis, CuspData, CuspSearch, DegenerateContourPoint, PlaneCurvePoint,
    SingularSample, SingularSetTrace,
};
pub use asymptotic::{
    asymptotic_curve_invariants, asymptotic_invariants_closed_form, asymptotic_space_jet,
    curve_curvature_torsion, normal_section, trace_asymptotic_curve, trace_tangential_curve,
    vertical_torsion_traced, AsymptoticCurve, AsymptoticInvariants, AsymptoticSample, SpaceJet,
    TangentialCurveGerm,
};
pub use identities::{
    check_all, check_asymptotic_identities, check_cusp_formulas, check_mdk, check_theorem_equivalences,
    cuspidal_curvature_closed_form, reconstruct, theorem_equivalences, traced_invariants, CubicMonge, CuspQuad,
    Equivalence, IdentityRecord, IdentityReport, Pipeline, Status, Tolerances, TracedInvariants,
};
