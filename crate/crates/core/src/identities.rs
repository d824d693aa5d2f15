//! Residuals of the curvature identities at a point and direction, each
//! evaluated from closed-form invariants and from traced curves.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::asymptotic::{
    asymptotic_curve_invariants, asymptotic_invariants_closed_form, trace_asymptotic_curve,
    trace_tangential_curve, vertical_torsion_traced, AsymptoticInvariants,
};
use crate::contour::{analyze_contour, contour_curvature, ContourAnalysis};
use crate::error::{GeomError, Result};
use crate::field::Field;
use crate::projection::{classify_singularity_with, SingularityTag};
use crate::surface::{
    curvature_data, mannheim_radius, monge_normal_form, AdaptedFrame, CurvatureData, Domain,
    SurfacePatch, TangentDirection,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Singularity classification threshold.
    pub sing: f64,
    /// Relative residual bound for closed-form checks.
    pub closed_form: f64,
    /// Relative residual bound for checks involving traced curves.
    pub traced: f64,
    /// Normalized magnitude above which a quantity counts as non-zero.
    pub nonzero: f64,
    /// Normalized magnitude below which a quantity counts as zero.
    pub dead_zone_low: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            sing: 1e-8,
            closed_form: 1e-10,
            traced: 1e-6,
            nonzero: 1e-4,
            dead_zone_low: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pipeline {
    ClosedForm,
    Traced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub name: String,
    pub pipeline: Pipeline,
    pub left: Option<f64>,
    pub right: Option<f64>,
    pub abs_residual: Option<f64>,
    /// `|l − r| / max(1, |l|, |r|)`.
    pub rel_residual: Option<f64>,
    pub status: Status,
    pub reason: Option<String>,
    /// Which computation produced each operand.
    pub provenance: String,
}

impl IdentityRecord {
    fn compare(name: &str, pipeline: Pipeline, left: f64, right: f64, tol: &Tolerances, provenance: &str) -> Self {
        let abs = (left - right).abs();
        let rel = abs / 1f64.max(left.abs()).max(right.abs());
        let bound = match pipeline {
            Pipeline::ClosedForm => tol.closed_form,
            Pipeline::Traced => tol.traced,
        };
        let finite = left.is_finite() && right.is_finite();
        Self {
            name: name.into(),
            pipeline,
            left: finite.then_some(left),
            right: finite.then_some(right),
            abs_residual: finite.then_some(abs),
            rel_residual: finite.then_some(rel),
            status: if finite && rel <= bound { Status::Pass } else { Status::Fail },
            reason: (!finite).then(|| "non-finite operand".to_string()),
            provenance: provenance.into(),
        }
    }

    fn skipped(name: &str, pipeline: Pipeline, status: Status, reason: impl Into<String>, provenance: &str) -> Self {
        Self {
            name: name.into(),
            pipeline,
            left: None,
            right: None,
            abs_residual: None,
            rel_residual: None,
            status,
            reason: Some(reason.into()),
            provenance: provenance.into(),
        }
    }

    fn failed(name: &str, pipeline: Pipeline, reason: impl Into<String>, provenance: &str) -> Self {
        Self::skipped(name, pipeline, Status::Fail, reason, provenance)
    }

    fn inapplicable(name: &str, pipeline: Pipeline, reason: impl Into<String>, provenance: &str) -> Self {
        Self::skipped(name, pipeline, Status::Inapplicable, reason, provenance)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct IdentityReport {
    pub records: Vec<IdentityRecord>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn get(&self, name: &str, pipeline: Pipeline) -> Option<&IdentityRecord> {
        self.records
            .iter()
            .find(|r| r.name == name && r.pipeline == pipeline)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }
}

/// Trace lengths sized to the local geometry and the patch domain.
fn trace_lengths(patch: &SurfacePatch, frame: &AdaptedFrame) -> (f64, f64) {
    let budget = (0.05 * frame.characteristic_length()).min(0.05 * patch.domain.diameter());
    (budget, budget / 10.0)
}

fn contour_for(patch: &SurfacePatch, dir: &TangentDirection, frame: &AdaptedFrame) -> Result<ContourAnalysis> {
    let (budget, step) = trace_lengths(patch, frame);
    analyze_contour(patch, dir, budget, step)
}

/// Mannheim–d'Ocagne–Koenderink `K = μκ` (signed and absolute), Mannheim's
/// `|μ| = 1/R` and Euler's formula, at a non-asymptotic direction.
pub fn check_mdk(patch: &SurfacePatch, dir: &TangentDirection, tol: &Tolerances) -> Result<Vec<IdentityRecord>> {
    const NAMES: [&str; 3] = ["mdk_abs", "mdk_signed", "mannheim_radius"];
    let data = curvature_data(patch, dir.basepoint)?;
    let mut out = vec![euler_record(&data, dir, tol)];
    let w = dir.components;
    let kappa = data.forms.second_form(w, w) / data.forms.first_form(w, w);
    let scale = data.lambda1.abs().max(data.lambda2.abs());
    if kappa.abs() <= tol.nonzero * scale || scale == 0.0 {
        for n in NAMES {
            out.push(IdentityRecord::inapplicable(
                n,
                Pipeline::Traced,
                "asymptotic direction (κ = 0); see the cusp formulas",
                "",
            ));
        }
        return Ok(out);
    }
    let frame = monge_normal_form(patch, dir)?;
    let contour = contour_for(patch, dir, &frame)?;
    let mu = contour_curvature(contour.seed_point())?;
    let k = data.gaussian;
    let prov = "K: curvature_data; κ: normal_curvature; μ: traced contour";
    out.push(IdentityRecord::compare(NAMES[0], Pipeline::Traced, k.abs(), (mu * kappa).abs(), tol, prov));
    out.push(IdentityRecord::compare(NAMES[1], Pipeline::Traced, k, mu * kappa, tol, prov));
    match mannheim_radius(patch, dir) {
        Ok(r) => out.push(IdentityRecord::compare(
            NAMES[2],
            Pipeline::Traced,
            mu.abs(),
            1.0 / r,
            tol,
            "μ: traced contour; R: Mannheim formula",
        )),
        Err(e) => out.push(IdentityRecord::inapplicable(NAMES[2], Pipeline::Traced, e.to_string(), "")),
    }
    Ok(out)
}

fn euler_record(data: &CurvatureData, dir: &TangentDirection, tol: &Tolerances) -> IdentityRecord {
    let w = dir.components;
    let kappa = data.forms.second_form(w, w) / data.forms.first_form(w, w);
    let theta = data.angle_to_principal(w);
    IdentityRecord::compare(
        "euler",
        Pipeline::ClosedForm,
        kappa,
        data.euler_normal_curvature(theta),
        tol,
        "κ: II(v,v)/I(v,v); λ, θ: curvature_data",
    )
}

/// Closed-form and traced invariants at an asymptotic direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracedInvariants {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub delta: Option<f64>,
    pub rho: f64,
}

fn asymptotic_context(
    patch: &SurfacePatch,
    dir: &TangentDirection,
) -> Result<(CurvatureData, AdaptedFrame, AsymptoticInvariants)> {
    let frame = monge_normal_form(patch, dir)?;
    if !frame.is_asymptotic() {
        return Err(GeomError::Contract(format!(
            "direction is not asymptotic (h_yy = {:e})",
            frame.h_yy()
        )));
    }
    let data = curvature_data(patch, dir.basepoint)?;
    let closed = asymptotic_invariants_closed_form(&frame)?;
    Ok((data, frame, closed))
}

pub fn traced_invariants(patch: &SurfacePatch, frame: &AdaptedFrame) -> Result<TracedInvariants> {
    let germ = trace_tangential_curve(patch, frame, 0.0, 0.0)?;
    let (beta, delta) = match asymptotic_curve_invariants(patch, &frame.direction) {
        Ok((b, d)) => (Some(b), Some(d)),
        Err(GeomError::TorsionUndefined { beta }) => (Some(beta), None),
        Err(e) => return Err(e),
    };
    Ok(TracedInvariants {
        alpha: germ.alpha_traced,
        beta,
        delta,
        rho: vertical_torsion_traced(patch, frame)?,
    })
}

/// Prop. A, `2β|δ| = |ρ|`, Beltrami–Enneper, and `K` recovered from `α` and
/// from `β`, in both pipelines.
pub fn check_asymptotic_identities(
    patch: &SurfacePatch,
    dir: &TangentDirection,
    tol: &Tolerances,
) -> Result<Vec<IdentityRecord>> {
    let (data, frame, closed) = asymptotic_context(patch, dir)?;
    let k = data.gaussian;
    let mut out = Vec::new();
    let cf = Pipeline::ClosedForm;
    out.push(IdentityRecord::compare(
        "monge_gaussian",
        cf,
        k,
        -frame.h_xy().powi(2),
        tol,
        "K: curvature_data; h_xy: Monge jet",
    ));
    asymptotic_records(&mut out, cf, k, Some(closed.alpha), Some(closed.beta), Some(closed.delta), closed.rho, tol, "closed forms");

    let traced = traced_invariants(patch, &frame)?;
    asymptotic_records(
        &mut out,
        Pipeline::Traced,
        k,
        traced.alpha,
        traced.beta,
        traced.delta,
        traced.rho,
        tol,
        "α: tangential branch; β, δ: asymptotic curve jet; ρ: normal-section curvature",
    );

    let budget = (0.05 * frame.characteristic_length()).min(0.05 * patch.domain.diameter());
    match trace_asymptotic_curve(patch, dir, budget) {
        Ok(curve) => {
            let pairs = curve.beltrami_enneper_pairs(-1e-4);
            if let Some((d, s)) = pairs
                .iter()
                .copied()
                .max_by(|a, b| (a.0 - a.1).abs().total_cmp(&(b.0 - b.1).abs()))
            {
                out.push(IdentityRecord::compare(
                    "beltrami_enneper_along_curve",
                    Pipeline::Traced,
                    d,
                    s,
                    tol,
                    "worst sample of the traced asymptotic curve",
                ));
            } else {
                out.push(IdentityRecord::inapplicable(
                    "beltrami_enneper_along_curve",
                    Pipeline::Traced,
                    "no samples with K < −1e−4 and defined torsion",
                    "",
                ));
            }
        }
        Err(e) => out.push(IdentityRecord::inapplicable(
            "beltrami_enneper_along_curve",
            Pipeline::Traced,
            e.to_string(),
            "",
        )),
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn asymptotic_records(
    out: &mut Vec<IdentityRecord>,
    p: Pipeline,
    k: f64,
    alpha: Option<f64>,
    beta: Option<f64>,
    delta: Option<f64>,
    rho: f64,
    tol: &Tolerances,
    prov: &str,
) {
    let s = k.abs().sqrt();
    let nonzero = |x: f64, power: i32| x.abs() > tol.nonzero * s.powi(power);
    match (alpha, beta) {
        (Some(a), Some(b)) if nonzero(b, 1) => {
            out.push(IdentityRecord::compare("prop_a", p, a.abs(), 2.0 / 3.0 * b, tol, prov))
        }
        (Some(_), Some(_)) => out.push(IdentityRecord::inapplicable("prop_a", p, "β = 0: both sides vanish", prov)),
        _ => out.push(IdentityRecord::inapplicable("prop_a", p, "α or β unavailable", prov)),
    }
    match (beta, delta) {
        (Some(b), Some(d)) => out.push(IdentityRecord::compare("beta_delta_rho", p, 2.0 * b * d.abs(), rho.abs(), tol, prov)),
        (Some(_), None) if !nonzero(rho, 2) => {
            out.push(IdentityRecord::inapplicable("beta_delta_rho", p, "torsion undefined at an inflection", prov))
        }
        _ => out.push(IdentityRecord::failed("beta_delta_rho", p, "torsion unavailable while ρ ≠ 0", prov)),
    }
    match delta {
        Some(d) if k < 0.0 => out.push(IdentityRecord::compare("beltrami_enneper", p, d.abs(), (-k).sqrt(), tol, prov)),
        Some(_) => out.push(IdentityRecord::inapplicable("beltrami_enneper", p, "K ≥ 0", prov)),
        None => out.push(IdentityRecord::inapplicable("beltrami_enneper", p, "torsion undefined", prov)),
    }
    match alpha {
        Some(a) if nonzero(a, 1) => {
            out.push(IdentityRecord::compare("k_from_alpha", p, k, -rho * rho / (9.0 * a * a), tol, prov))
        }
        _ => out.push(IdentityRecord::inapplicable("k_from_alpha", p, "α = 0", prov)),
    }
    match beta {
        Some(b) if nonzero(b, 1) => {
            out.push(IdentityRecord::compare("k_from_beta", p, k, -rho * rho / (4.0 * b * b), tol, prov))
        }
        _ => out.push(IdentityRecord::inapplicable("k_from_beta", p, "β = 0", prov)),
    }
}

/// `|ω| = 2|h_xy|^{3/2}/|h_yyy|^{1/2}` with the sign of `h_xy`; `None` when
/// `|h_yyy| ≤ 10⁻¹⁰ h_xy²`.
pub fn cuspidal_curvature_closed_form(frame: &AdaptedFrame) -> Option<f64> {
    let (hxy, hyyy) = (frame.h_xy(), frame.h_yyy());
    (hyyy.abs() > 1e-10 * hxy * hxy).then(|| 2.0 * hxy.signum() * hxy.abs().powf(1.5) / hyyy.abs().sqrt())
}

/// `K³ = −ρ²ω⁴/16` and `K = −(3/4)|α|ω²`, plus the traced `ω` against its
/// closed form.
pub fn check_cusp_formulas(
    patch: &SurfacePatch,
    dir: &TangentDirection,
    tol: &Tolerances,
) -> Result<Vec<IdentityRecord>> {
    const NAMES: [&str; 2] = ["k3_from_rho_omega", "k_from_alpha_omega"];
    let (data, frame, closed) = asymptotic_context(patch, dir)?;
    let k = data.gaussian;
    let s = k.abs().sqrt();
    let mut out = Vec::new();
    if !(closed.rho.abs() > tol.nonzero * s * s) {
        for p in [Pipeline::ClosedForm, Pipeline::Traced] {
            for n in NAMES.iter().chain(["omega_closed_form"].iter()) {
                out.push(IdentityRecord::inapplicable(
                    n,
                    p,
                    "ρ = 0, so α = 0 and the contour has no cusp",
                    "",
                ));
            }
        }
        return Ok(out);
    }
    let omega = cuspidal_curvature_closed_form(&frame).unwrap_or(f64::NAN);
    let cusp_records = |out: &mut Vec<IdentityRecord>, p, rho: f64, alpha: f64, omega: f64, prov: &str| {
        out.push(IdentityRecord::compare(NAMES[0], p, k.powi(3), -rho * rho * omega.powi(4) / 16.0, tol, prov));
        out.push(IdentityRecord::compare(NAMES[1], p, k, -0.75 * alpha.abs() * omega * omega, tol, prov));
    };
    cusp_records(&mut out, Pipeline::ClosedForm, closed.rho, closed.alpha, omega, "closed forms");

    let contour = contour_for(patch, dir, &frame)?;
    let traced = traced_invariants(patch, &frame)?;
    match contour.cusp_near(dir.basepoint, 1e-6 * patch.domain.diameter()) {
        Some(c) => {
            let w = c.cuspidal_curvature;
            match traced.alpha {
                Some(a) => cusp_records(
                    &mut out,
                    Pipeline::Traced,
                    traced.rho,
                    a,
                    w,
                    "ω: traced contour cusp; ρ, α: traced sections",
                ),
                None => {
                    for n in NAMES {
                        out.push(IdentityRecord::failed(n, Pipeline::Traced, "tangential branch failed", ""));
                    }
                }
            }
            out.push(IdentityRecord::compare(
                "omega_closed_form",
                Pipeline::Traced,
                w.abs(),
                omega.abs(),
                tol,
                "traced cusp vs 2|h_xy|^{3/2}/|h_yyy|^{1/2}",
            ));
        }
        None => {
            for n in NAMES.iter().chain(["omega_closed_form"].iter()) {
                out.push(IdentityRecord::failed(n, Pipeline::Traced, "no cusp found on the traced contour", ""));
            }
        }
    }
    Ok(out)
}

/// The four conditions of the cusp theorem with their normalized witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Equivalence {
    pub alpha_nonzero: bool,
    pub rho_nonzero: bool,
    pub contour_cusp: bool,
    pub whitney_cusp: bool,
    /// `|α|/√|K|`, `|ρ|/|K|`, `√|K|/ω²` (0 without a cusp), `|ηηJ|/|K|`.
    pub witnesses: [f64; 4],
    pub tag: SingularityTag,
    pub status: Status,
}

impl Equivalence {
    pub fn all_true(&self) -> bool {
        self.alpha_nonzero && self.rho_nonzero && self.contour_cusp && self.whitney_cusp
    }

    pub fn all_false(&self) -> bool {
        !(self.alpha_nonzero || self.rho_nonzero || self.contour_cusp || self.whitney_cusp)
    }
}

pub fn theorem_equivalences(patch: &SurfacePatch, dir: &TangentDirection, tol: &Tolerances) -> Result<Equivalence> {
    let (data, frame, _) = asymptotic_context(patch, dir)?;
    let k = data.gaussian;
    if k >= 0.0 {
        return Err(GeomError::NotApplicable("the cusp theorem needs K < 0".into()));
    }
    let s = (-k).sqrt();
    let traced = traced_invariants(patch, &frame)?;
    let contour = contour_for(patch, dir, &frame)?;
    let class = classify_singularity_with(&contour.view, dir.basepoint, tol.sing)?;

    let alpha = traced.alpha.map_or(f64::NAN, |a| a.abs() / s);
    let rho = traced.rho.abs() / (s * s);
    let cusp = contour
        .cusp_near(dir.basepoint, 1e-6 * patch.domain.diameter())
        .map_or(0.0, |c| s / (c.cuspidal_curvature * c.cuspidal_curvature));
    let whitney = match class.tag {
        SingularityTag::WhitneyCusp | SingularityTag::NondegenerateUnclassified | SingularityTag::Degenerate => {
            class.witness.eta_eta_j.abs() / (s * s)
        }
        _ => f64::NAN,
    };
    let witnesses = [alpha, rho, cusp, whitney];
    let flags = [
        alpha > tol.nonzero,
        rho > tol.nonzero,
        cusp > tol.nonzero,
        class.tag == SingularityTag::WhitneyCusp,
    ];
    let ambiguous = witnesses
        .iter()
        .any(|w| !w.is_finite() || (*w >= tol.dead_zone_low && *w <= tol.nonzero));
    let status = if ambiguous {
        Status::Indeterminate
    } else if flags.iter().all(|f| *f == flags[0]) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(Equivalence {
        alpha_nonzero: flags[0],
        rho_nonzero: flags[1],
        contour_cusp: flags[2],
        whitney_cusp: flags[3],
        witnesses,
        tag: class.tag,
        status,
    })
}

pub fn check_theorem_equivalences(
    patch: &SurfacePatch,
    dir: &TangentDirection,
    tol: &Tolerances,
) -> Result<IdentityRecord> {
    let e = theorem_equivalences(patch, dir, tol)?;
    let mut rec = IdentityRecord::skipped(
        "theorem_equivalence",
        Pipeline::Traced,
        e.status,
        format!(
            "α≠0: {}, ρ≠0: {}, contour cusp: {}, Whitney cusp: {} (witnesses {:?}, classifier {:?})",
            e.alpha_nonzero, e.rho_nonzero, e.contour_cusp, e.whitney_cusp, e.witnesses, e.tag
        ),
        "α, ρ: traced sections; cusp: traced contour; classifier: view map",
    );
    if e.status == Status::Pass {
        rec.abs_residual = Some(0.0);
        rec.rel_residual = Some(0.0);
    }
    Ok(rec)
}

/// Runs every check that applies to the direction.
pub fn check_all(patch: &SurfacePatch, dir: &TangentDirection, tol: &Tolerances) -> Result<IdentityReport> {
    let frame = monge_normal_form(patch, dir)?;
    let mut records = Vec::new();
    if frame.is_asymptotic() {
        let data = curvature_data(patch, dir.basepoint)?;
        records.push(euler_record(&data, dir, tol));
        if data.gaussian < 0.0 {
            records.extend(check_asymptotic_identities(patch, dir, tol)?);
            records.extend(check_cusp_formulas(patch, dir, tol)?);
            records.push(check_theorem_equivalences(patch, dir, tol)?);
        } else {
            records.push(IdentityRecord::inapplicable(
                "asymptotic_identities",
                Pipeline::ClosedForm,
                "asymptotic direction at a point with K ≥ 0",
                "",
            ));
        }
    } else {
        records.extend(check_mdk(patch, dir, tol)?);
    }
    Ok(IdentityReport { records })
}

/// Magnitudes of `K` (signed, negative), `α`, `ω`, `ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CuspQuad {
    pub k: f64,
    pub alpha: f64,
    pub omega: f64,
    pub rho: f64,
}

/// Recovers the two missing members of `{K, |α|, |ω|, |ρ|}` from any two
/// given ones.
pub fn reconstruct(k: Option<f64>, alpha: Option<f64>, omega: Option<f64>, rho: Option<f64>) -> Result<CuspQuad> {
    let (a, w, r) = (alpha.map(f64::abs), omega.map(f64::abs), rho.map(f64::abs));
    let from_k_alpha = |k: f64, a: f64| CuspQuad {
        k,
        alpha: a,
        omega: (-4.0 * k / (3.0 * a)).sqrt(),
        rho: (-9.0 * a * a * k).sqrt(),
    };
    let q = match (k, a, w, r) {
        (Some(k), Some(a), None, None) => from_k_alpha(k, a),
        (Some(k), None, Some(w), None) => from_k_alpha(k, -4.0 * k / (3.0 * w * w)),
        (Some(k), None, None, Some(r)) => from_k_alpha(k, (-r * r / (9.0 * k)).sqrt()),
        (None, Some(a), Some(w), None) => from_k_alpha(-0.75 * a * w * w, a),
        (None, Some(a), None, Some(r)) => from_k_alpha(-r * r / (9.0 * a * a), a),
        (None, None, Some(w), Some(r)) => {
            let k = -(r * r * w.powi(4) / 16.0).cbrt();
            from_k_alpha(k, -4.0 * k / (3.0 * w * w))
        }
        _ => {
            return Err(GeomError::Contract(
                "exactly two of K, α, ω, ρ must be given".into(),
            ))
        }
    };
    Ok(q)
}

/// Partial derivatives at `o` of a cubic Monge height
/// `h = h_xx x²/2 + h_xy xy + h_xxx x³/6 + h_xxy x²y/2 + h_xyy xy²/2 + h_yyy y³/6`,
/// for which `∂y` is asymptotic at `o`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicMonge {
    pub h_xx: f64,
    pub h_xy: f64,
    pub h_xxx: f64,
    pub h_xxy: f64,
    pub h_xyy: f64,
    pub h_yyy: f64,
}

impl CubicMonge {
    /// `|h_xy|, |h_yyy| ∈ [0.2, 5]` with random signs, other terms in `[−1, 1]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let signed = |rng: &mut R, lo: f64, hi: f64| {
            let m = rng.random_range(lo..=hi);
            if rng.random_bool(0.5) {
                m
            } else {
                -m
            }
        };
        Self {
            h_xx: rng.random_range(-1.0..=1.0),
            h_xy: signed(rng, 0.2, 5.0),
            h_xxx: rng.random_range(-1.0..=1.0),
            h_xxy: rng.random_range(-1.0..=1.0),
            h_xyy: rng.random_range(-1.0..=1.0),
            h_yyy: signed(rng, 0.2, 5.0),
        }
    }

    pub fn height(&self) -> Field {
        Field::poly_from(&[
            (2, 0, 0.5 * self.h_xx),
            (1, 1, self.h_xy),
            (3, 0, self.h_xxx / 6.0),
            (2, 1, 0.5 * self.h_xxy),
            (1, 2, 0.5 * self.h_xyy),
            (0, 3, self.h_yyy / 6.0),
        ])
    }

    /// The graph over `[−r, r]²`.
    pub fn patch(&self, r: f64) -> SurfacePatch {
        SurfacePatch::monge(self.height(), Domain::square([0.0, 0.0], r))
    }

    pub fn direction() -> TangentDirection {
        TangentDirection {
            basepoint: [0.0, 0.0],
            components: [0.0, 1.0],
            angle_to_principal: None,
        }
    }
}
