//! The singular set of a view map, the contour line `Γ = g ∘ γ` and the
//! curvature `μ` / cuspidal curvature `μ_Γ` of `Γ`.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::field::{jet2_eval_field, Field};
use crate::jets::{Jet1, Scalar};
use crate::projection::{build_projection, view_map, ProjectionSetup, ViewMap};
use crate::surface::{SurfacePatch, TangentDirection};

/// `|Γ'|` below this marks a contour point as singular.
pub const REGULAR_TOL: f64 = 1e-8;
/// `|Γ''|` below this at a singular point means worse than a cusp.
pub const CUSP_SECOND_TOL: f64 = 1e-8;
const MAX_CORRECTOR_ITERS: usize = 10;
const MAX_HALVINGS: usize = 2;

/// One point of a traced singular set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularSample {
    pub point: [f64; 2],
    /// Unit tangent in the source, oriented along the trace.
    pub tangent: [f64; 2],
    /// Signed chord-length from the seed.
    pub arclength: f64,
    pub j: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularSetTrace {
    pub samples: Vec<SingularSample>,
    pub seed_index: usize,
    /// `ψ` with the set written `(ψ(y), y)` in adapted coordinates, expanded
    /// at the seed's `y`. `None` without a chart or when the set is tangent
    /// to the `x`-direction there.
    pub psi: Option<Jet1>,
    /// Points where `∇J` vanished and tracing stopped.
    pub degenerate_points: Vec<[f64; 2]>,
    pub diagnostics: Vec<String>,
    pub step: f64,
    /// Unit vector in chart coordinates along which the curve parameter is measured.
    pub chart_direction: [f64; 2],
    /// Chart coordinates of the seed.
    pub chart_origin: [f64; 2],
}

impl SingularSetTrace {
    pub fn seed(&self) -> &SingularSample {
        &self.samples[self.seed_index]
    }

    /// The curve parameter: `chart_direction · (chart − chart_origin)`.
    pub fn parameter_field(&self, vm: &ViewMap) -> Field {
        let [x, y] = vm.chart_or_source();
        let [a, b] = self.chart_direction;
        Field::linear_combination(
            &[(a, &x), (b, &y)],
            -(a * self.chart_origin[0] + b * self.chart_origin[1]),
        )
    }
}

fn hypot2(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

/// Newton projection onto `J = 0` along `∇J`.
fn correct(vm: &ViewMap, mut q: [f64; 2], tol: f64) -> Result<Option<[f64; 2]>> {
    for _ in 0..=MAX_CORRECTOR_ITERS {
        if !vm.domain.contains(q) {
            return Ok(None);
        }
        let j = vm.jacobian_at(q)?;
        let g = vm.jacobian_gradient_at(q)?;
        let n2 = g[0] * g[0] + g[1] * g[1];
        if !(n2 > 0.0) || !j.is_finite() {
            return Ok(None);
        }
        if j.abs() / n2.sqrt() < tol {
            return Ok(Some(q));
        }
        q = [q[0] - j * g[0] / n2, q[1] - j * g[1] / n2];
    }
    Ok(None)
}

struct March {
    samples: Vec<SingularSample>,
    degenerate: Option<[f64; 2]>,
    diagnostics: Vec<String>,
}

fn march(
    vm: &ViewMap,
    start: [f64; 2],
    dir: [f64; 2],
    budget: f64,
    step: f64,
    tol: f64,
    grad_scale: f64,
) -> Result<March> {
    let mut out = March {
        samples: Vec::new(),
        degenerate: None,
        diagnostics: Vec::new(),
    };
    let (mut q, mut d, mut s) = (start, dir, 0.0);
    'outer: while s < budget - 1e-12 * step {
        let mut h = step.min(budget - s);
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let pred = [q[0] + h * d[0], q[1] + h * d[1]];
            if !vm.domain.contains(pred) {
                break 'outer;
            }
            if let Some(c) = correct(vm, pred, tol)? {
                let jump = hypot2([c[0] - q[0], c[1] - q[1]]);
                if vm.domain.contains(c) && jump <= 2.5 * h {
                    accepted = Some(c);
                    break;
                }
            }
            h *= 0.5;
        }
        let Some(c) = accepted else {
            out.diagnostics
                .push(format!("corrector failed near ({:.6}, {:.6})", q[0], q[1]));
            break;
        };
        let g = vm.jacobian_gradient_at(c)?;
        let gn = hypot2(g);
        if gn < 1e-8 * grad_scale {
            out.degenerate = Some(c);
            out.diagnostics
                .push(format!("∇J vanishes near ({:.6}, {:.6})", c[0], c[1]));
            break;
        }
        let mut t = [-g[1] / gn, g[0] / gn];
        if t[0] * d[0] + t[1] * d[1] < 0.0 {
            t = [-t[0], -t[1]];
        }
        s += hypot2([c[0] - q[0], c[1] - q[1]]);
        out.samples.push(SingularSample {
            point: c,
            tangent: t,
            arclength: s,
            j: vm.jacobian_at(c)?,
        });
        q = c;
        d = t;
    }
    Ok(out)
}

/// Predictor–corrector continuation of `{J = 0}` through `seed` in both
/// directions, up to `arclength_budget` each way.
pub fn trace_singular_set(
    vm: &ViewMap,
    seed: [f64; 2],
    arclength_budget: f64,
    step: f64,
) -> Result<SingularSetTrace> {
    if !(step > 0.0) || !(arclength_budget >= 0.0) {
        return Err(GeomError::Contract("step must be positive and budget nonnegative".into()));
    }
    let tol = 1e-13 * vm.domain.diameter().max(1.0);
    let mut q = seed;
    for _ in 0..MAX_CORRECTOR_ITERS {
        match correct(vm, q, tol)? {
            Some(c) => {
                q = c;
                break;
            }
            None => break,
        }
    }
    if !vm.domain.contains(q) {
        return Err(GeomError::OutsideDomain { u: q[0], v: q[1] });
    }
    let j = vm.jacobian_at(q)?;
    if !(j.abs() < 1e-6) {
        return Err(GeomError::Contract(format!(
            "seed is not on the singular set (J = {j:e})"
        )));
    }
    let g = vm.jacobian_gradient_at(q)?;
    let gn = hypot2(g);
    if !(gn > 1e-12) {
        return Err(GeomError::Contract("∇J vanishes at the seed".into()));
    }
    let mut t0 = [-g[1] / gn, g[0] / gn];

    let chart = vm.chart_or_source();
    let cx = jet2_eval_field(&chart[0], q)?;
    let cy = jet2_eval_field(&chart[1], q)?;
    let chart_t = |t: [f64; 2]| {
        let (gx, gy) = (cx.gradient(), cy.gradient());
        [gx[0] * t[0] + gx[1] * t[1], gy[0] * t[0] + gy[1] * t[1]]
    };
    let mut ct = chart_t(t0);
    let cn = hypot2(ct);
    if ct[1] < -1e-12 * cn || (ct[1].abs() <= 1e-12 * cn && ct[0] < 0.0) {
        t0 = [-t0[0], -t0[1]];
        ct = [-ct[0], -ct[1]];
    }
    let chart_direction = [ct[0] / cn, ct[1] / cn];
    let chart_origin = [cx.value(), cy.value()];

    let fwd = march(vm, q, t0, arclength_budget, step, tol, gn)?;
    let bwd = march(vm, q, [-t0[0], -t0[1]], arclength_budget, step, tol, gn)?;

    let mut samples: Vec<SingularSample> = bwd
        .samples
        .iter()
        .rev()
        .map(|s| SingularSample {
            tangent: [-s.tangent[0], -s.tangent[1]],
            arclength: -s.arclength,
            ..*s
        })
        .collect();
    let seed_index = samples.len();
    samples.push(SingularSample {
        point: q,
        tangent: t0,
        arclength: 0.0,
        j,
    });
    samples.extend(fwd.samples.iter().copied());

    let psi = if vm.chart.is_some() && ct[1].abs() > 1e-8 * cn {
        let c = singular_curve_jet(vm, q, &chart[1])?;
        Some(chart[0].eval(&c[0], &c[1])?)
    } else {
        None
    };

    let mut diagnostics = bwd.diagnostics;
    diagnostics.extend(fwd.diagnostics);
    Ok(SingularSetTrace {
        samples,
        seed_index,
        psi,
        degenerate_points: bwd.degenerate.into_iter().chain(fwd.degenerate).collect(),
        diagnostics,
        step,
        chart_direction,
        chart_origin,
    })
}

/// The singular curve through `q` (which must satisfy `J(q) ≈ 0`) as a pair
/// of order-4 jets in the parameter `t = gauge − gauge(q)`.
pub fn singular_curve_jet(vm: &ViewMap, q: [f64; 2], gauge: &Field) -> Result<[Jet1; 2]> {
    let jg = vm.jacobian_gradient_at(q)?;
    let gg = jet2_eval_field(gauge, q)?;
    let g0 = gg.value();
    let gg = gg.gradient();
    let det = jg[0] * gg[1] - jg[1] * gg[0];
    let scale = hypot2(jg) * hypot2(gg);
    if !(det.abs() > 1e-12 * scale) {
        return Err(GeomError::Rank { det });
    }
    let inv = [[gg[1] / det, -jg[1] / det], [-gg[0] / det, jg[0] / det]];
    let t = Jet1::variable(0.0);
    let mut c = [Jet1::constant(0.0, q[0]), Jet1::constant(0.0, q[1])];
    for _ in 0..6 {
        let r0 = vm.jacobian.eval(&c[0], &c[1])?;
        let r1 = gauge.eval(&c[0], &c[1])? - t - Jet1::constant(0.0, g0);
        c = [
            c[0] - (r0.scale(inv[0][0]) + r1.scale(inv[0][1])),
            c[1] - (r0.scale(inv[1][0]) + r1.scale(inv[1][1])),
        ];
    }
    Ok(c)
}

/// A point of the contour line with derivatives with respect to its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneCurvePoint {
    pub param: f64,
    /// Source point of the singular set (zero for curves given directly).
    pub source: [f64; 2],
    /// Position in the V-plane basis `(e₁, e₃)`.
    pub position: [f64; 2],
    pub d1: [f64; 2],
    pub d2: [f64; 2],
    pub d3: [f64; 2],
    pub regular: bool,
}

impl PlaneCurvePoint {
    pub fn from_jets(param: f64, source: [f64; 2], x: &Jet1, y: &Jet1) -> Self {
        let d = |k| [x.derivative(k), y.derivative(k)];
        let d1 = d(1);
        Self {
            param,
            source,
            position: d(0),
            d1,
            d2: d(2),
            d3: d(3),
            regular: hypot2(d1) > REGULAR_TOL,
        }
    }
}

fn det2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn contour_point(vm: &ViewMap, q: [f64; 2], gauge: &Field, param: f64) -> Result<PlaneCurvePoint> {
    let c = singular_curve_jet(vm, q, gauge)?;
    let x = vm.g[0].eval(&c[0], &c[1])?;
    let y = vm.g[1].eval(&c[0], &c[1])?;
    Ok(PlaneCurvePoint::from_jets(param, q, &x, &y))
}

fn tangent_gauge(q: [f64; 2], t: [f64; 2]) -> Field {
    Field::linear_combination(
        &[(t[0], &Field::u()), (t[1], &Field::v())],
        -(t[0] * q[0] + t[1] * q[1]),
    )
}

/// `Γ = g ∘ γ` at every sample of the trace. Derivatives are taken with
/// respect to the trace parameter where it is a valid coordinate on the
/// singular set, and with respect to the local chord length otherwise.
pub fn contour_line(trace: &SingularSetTrace, vm: &ViewMap) -> Result<Vec<PlaneCurvePoint>> {
    let param = trace.parameter_field(vm);
    trace
        .samples
        .iter()
        .map(|s| {
            let pj = jet2_eval_field(&param, s.point)?;
            let g = pj.gradient();
            let rate = g[0] * s.tangent[0] + g[1] * s.tangent[1];
            if rate.abs() > 1e-6 * hypot2(g) {
                contour_point(vm, s.point, &param, pj.value())
            } else {
                contour_point(vm, s.point, &tangent_gauge(s.point, s.tangent), pj.value())
            }
        })
        .collect()
}

/// Signed curvature `det(Γ', Γ'')/|Γ'|³`, with `Γ` oriented so that `Γ'`
/// has nonnegative `e₁`-component; positive when `Γ` bends toward `+e₃ = ν_p`.
pub fn contour_curvature(pt: &PlaneCurvePoint) -> Result<f64> {
    let n = hypot2(pt.d1);
    if !(n > REGULAR_TOL) {
        return Err(GeomError::Cusp(n));
    }
    let sign = if pt.d1[0] > 0.0 || (pt.d1[0] == 0.0 && pt.d1[1] > 0.0) {
        1.0
    } else {
        -1.0
    };
    Ok(sign * det2(pt.d1, pt.d2) / (n * n * n))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CuspData {
    pub location: [f64; 2],
    pub source: [f64; 2],
    pub param: f64,
    /// `det(Γ'', Γ''')/|Γ''|^{5/2}`, units 1/length^{1/2}.
    pub cuspidal_curvature: f64,
    pub d2: [f64; 2],
    pub d3: [f64; 2],
}

/// `μ_Γ` at a singular point of a plane curve.
pub fn cuspidal_curvature(pt: &PlaneCurvePoint) -> Result<CuspData> {
    let n1 = hypot2(pt.d1);
    let n2 = hypot2(pt.d2);
    if !(n1 <= 1e-6 * n2.max(1.0)) {
        return Err(GeomError::Contract(format!(
            "point is regular (|Γ'| = {n1:e}); use the contour curvature"
        )));
    }
    if !(n2 > CUSP_SECOND_TOL) {
        return Err(GeomError::HigherDegeneracy(n2));
    }
    Ok(CuspData {
        location: pt.position,
        source: pt.source,
        param: pt.param,
        cuspidal_curvature: det2(pt.d2, pt.d3) / n2.powf(2.5),
        d2: pt.d2,
        d3: pt.d3,
    })
}

/// A point where the whole 2-jet of the contour vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegenerateContourPoint {
    pub source: [f64; 2],
    pub position: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CuspSearch {
    pub cusps: Vec<CuspData>,
    pub degenerate: Vec<DegenerateContourPoint>,
}

enum Refined {
    Cusp(PlaneCurvePoint),
    Degenerate(PlaneCurvePoint),
    Regular,
}

fn refine_cusp(vm: &ViewMap, trace: &SingularSetTrace, sample: &SingularSample) -> Result<Refined> {
    let tol = 1e-13 * vm.domain.diameter().max(1.0);
    let param = trace.parameter_field(vm);
    let (mut q, mut t) = (sample.point, sample.tangent);
    for _ in 0..40 {
        let c = singular_curve_jet(vm, q, &tangent_gauge(q, t))?;
        let x = vm.g[0].eval(&c[0], &c[1])?;
        let y = vm.g[1].eval(&c[0], &c[1])?;
        let pt = PlaneCurvePoint::from_jets(0.0, q, &x, &y);
        if hypot2(pt.d2) <= CUSP_SECOND_TOL {
            break;
        }
        let phi = pt.d1[0] * pt.d2[0] + pt.d1[1] * pt.d2[1];
        let dphi = pt.d2[0] * pt.d2[0] + pt.d2[1] * pt.d2[1] + pt.d1[0] * pt.d3[0] + pt.d1[1] * pt.d3[1];
        let dt = -phi / dphi;
        if !dt.is_finite() {
            break;
        }
        let next = [c[0].eval_offset(dt), c[1].eval_offset(dt)];
        let Some(next) = correct(vm, next, tol)? else {
            return Ok(Refined::Regular);
        };
        if !vm.domain.contains(next) {
            return Ok(Refined::Regular);
        }
        let g = vm.jacobian_gradient_at(next)?;
        let gn = hypot2(g);
        let mut nt = [-g[1] / gn, g[0] / gn];
        if nt[0] * t[0] + nt[1] * t[1] < 0.0 {
            nt = [-nt[0], -nt[1]];
        }
        let moved = hypot2([next[0] - q[0], next[1] - q[1]]);
        q = next;
        t = nt;
        if moved <= 1e-15 * (1.0 + hypot2(q)) {
            break;
        }
    }
    let pj = jet2_eval_field(&param, q)?;
    let g = pj.gradient();
    let gauge = if (g[0] * t[0] + g[1] * t[1]).abs() > 1e-6 * hypot2(g) {
        param
    } else {
        tangent_gauge(q, t)
    };
    let pt = contour_point(vm, q, &gauge, pj.value())?;
    let n1 = hypot2(pt.d1);
    let n2 = hypot2(pt.d2);
    Ok(if n1 <= 1e-7 && n2 <= CUSP_SECOND_TOL {
        Refined::Degenerate(pt)
    } else if n1 <= 1e-7 * n2.max(1.0) {
        Refined::Cusp(pt)
    } else {
        Refined::Regular
    })
}

/// Finds the cusps (and fully degenerate points) of the contour along a trace.
pub fn locate_cusps(trace: &SingularSetTrace, vm: &ViewMap, points: &[PlaneCurvePoint]) -> Result<CuspSearch> {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in points {
        for k in 0..2 {
            lo[k] = lo[k].min(p.position[k]);
            hi[k] = hi[k].max(p.position[k]);
        }
    }
    let diam = if points.is_empty() {
        0.0
    } else {
        hypot2([hi[0] - lo[0], hi[1] - lo[1]])
    };
    let phi = |p: &PlaneCurvePoint| p.d1[0] * p.d2[0] + p.d1[1] * p.d2[1];

    let mut candidates: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if hypot2(p.d1) <= 1e-6 * diam {
            candidates.push(i);
        }
    }
    for i in 1..points.len() {
        if phi(&points[i - 1]) < 0.0 && phi(&points[i]) > 0.0 {
            let k = if hypot2(points[i - 1].d1) <= hypot2(points[i].d1) {
                i - 1
            } else {
                i
            };
            candidates.push(k);
        }
    }
    candidates.sort_unstable();
    candidates.dedup();

    let mut out = CuspSearch {
        cusps: Vec::new(),
        degenerate: Vec::new(),
    };
    for i in candidates {
        match refine_cusp(vm, trace, &trace.samples[i])? {
            Refined::Cusp(pt) => {
                let data = cuspidal_curvature(&pt)?;
                if !out
                    .cusps
                    .iter()
                    .any(|c| hypot2([c.source[0] - pt.source[0], c.source[1] - pt.source[1]]) < 1e-7)
                {
                    out.cusps.push(data);
                }
            }
            Refined::Degenerate(pt) => {
                if !out.degenerate.iter().any(|d| {
                    hypot2([d.position[0] - pt.position[0], d.position[1] - pt.position[1]]) < 1e-9
                }) {
                    out.degenerate.push(DegenerateContourPoint {
                        source: pt.source,
                        position: pt.position,
                    });
                }
            }
            Refined::Regular => {}
        }
    }
    out.cusps.sort_by(|a, b| a.param.total_cmp(&b.param));
    Ok(out)
}

/// Everything computed along the contour of one view direction.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourAnalysis {
    pub setup: ProjectionSetup,
    pub view: ViewMap,
    pub trace: SingularSetTrace,
    pub points: Vec<PlaneCurvePoint>,
    pub cusps: CuspSearch,
}

impl ContourAnalysis {
    pub fn seed_point(&self) -> &PlaneCurvePoint {
        &self.points[self.trace.seed_index]
    }

    /// The cusp whose source point is closest to `p`, if within `radius`.
    pub fn cusp_near(&self, p: [f64; 2], radius: f64) -> Option<&CuspData> {
        let dist = |c: &CuspData| hypot2([c.source[0] - p[0], c.source[1] - p[1]]);
        self.cusps
            .cusps
            .iter()
            .filter(|c| dist(c) <= radius)
            .min_by(|a, b| dist(a).total_cmp(&dist(b)))
    }
}

/// Builds the projection along `df_p(v)`, traces the singular set through
/// `p` and evaluates the contour and its cusps.
pub fn analyze_contour(
    patch: &SurfacePatch,
    dir: &TangentDirection,
    budget: f64,
    step: f64,
) -> Result<ContourAnalysis> {
    let setup = build_projection(patch, dir)?;
    let view = view_map(&setup, patch);
    let trace = trace_singular_set(&view, dir.basepoint, budget, step)?;
    let points = contour_line(&trace, &view)?;
    let cusps = locate_cusps(&trace, &view, &points)?;
    Ok(ContourAnalysis {
        setup,
        view,
        trace,
        points,
        cusps,
    })
}
