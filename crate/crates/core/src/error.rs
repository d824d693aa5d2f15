use thiserror::Error;

/// Errors raised by the geometric pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    /// A primitive was evaluated where it is not smooth (e.g. `sqrt(0)`).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("singular linear part (determinant {det:e})")]
    Rank { det: f64 },
    #[error("patch is not an immersion at ({u}, {v})")]
    DegeneratePatch { u: f64, v: f64 },
    #[error("point ({u}, {v}) lies outside the patch domain")]
    OutsideDomain { u: f64, v: f64 },
    /// The requested construction does not apply to this configuration.
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("parabolic point (h_xy = {0:e}); asymptotic invariants need K < 0")]
    Parabolic(f64),
    #[error("division by a vanishing principal curvature")]
    Division,
    #[error("contour point is a cusp (|Γ'| = {0:e}); use the cuspidal curvature")]
    Cusp(f64),
    #[error("higher degeneracy at the cusp candidate (|Γ''| = {0:e})")]
    HigherDegeneracy(f64),
    /// The curvature is still reported; only the torsion is undefined.
    #[error("torsion undefined at an inflection (curvature {beta:e})")]
    TorsionUndefined { beta: f64 },
    #[error("Newton iteration failed: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
