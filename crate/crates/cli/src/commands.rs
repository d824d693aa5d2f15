use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use cuspgeom::{
    analyze_contour, asymptotic_directions, check_all, curvature_data, AsymptoticDirections, CubicMonge,
    ContourAnalysis, IdentityRecord, Pipeline, Status, SurfacePatch, TangentDirection, Tolerances,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::report::analyze;
use crate::spec::{CatalogSurface, SpecError, SurfaceSpec};
use crate::svg;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Spec { path: PathBuf, source: SpecError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Geom(#[from] cuspgeom::GeomError),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    /// The request makes no sense for this surface (exit code 2).
    #[error("{0}")]
    Inapplicable(String),
    /// The command ran but its result is a failure (exit code 1).
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Inapplicable(_) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "cuspgeom", version, about = "Contours, cusps and asymptotic invariants of surfaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Threshold of the singularity classifier.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol_sing: f64,
    /// Relative residual bound for closed-form identity checks.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_identity: f64,
    /// Relative residual bound for identity checks on traced curves.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol_traced: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl GlobalArgs {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            sing: self.tol_sing,
            closed_form: self.tol_identity,
            traced: self.tol_traced,
            ..Tolerances::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every invariant at a point and direction as JSON.
    Analyze(AnalyzeArgs),
    /// Trace the contour of the projection along a direction.
    Contour(ContourArgs),
    /// Check the curvature identities and print the worst residuals.
    Verify(VerifyArgs),
    /// Write the four example figures.
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct PointDirection {
    /// Parameter point `u,v`.
    #[arg(long, value_parser = parse_pair, default_value = "0,0", allow_hyphen_values = true)]
    pub point: [f64; 2],
    /// Tangent direction `a,b` in parameter coordinates.
    #[arg(long, value_parser = parse_pair, conflicts_with = "asymptotic", allow_hyphen_values = true)]
    pub direction: Option<[f64; 2]>,
    /// Use the first or second asymptotic direction at the point.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub asymptotic: Option<u8>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub spec: PathBuf,
    #[command(flatten)]
    pub at: PointDirection,
}

#[derive(Debug, Args)]
pub struct ContourArgs {
    pub spec: PathBuf,
    #[command(flatten)]
    pub at: PointDirection,
    /// Source arclength traced on each side of the point.
    #[arg(long, default_value_t = 4.0)]
    pub budget: f64,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Surface spec; checks every asymptotic direction at the point, or the
    /// given direction.
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    pub spec: Option<PathBuf>,
    #[command(flatten)]
    pub at: PointDirection,
    /// Number of seeded random cubic Monge patches.
    #[arg(long)]
    pub random: Option<usize>,
    /// Write every record as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long, default_value = "figures")]
    pub out: PathBuf,
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok([
            a.parse().map_err(|e| format!("{a}: {e}"))?,
            b.parse().map_err(|e| format!("{b}: {e}"))?,
        ]),
        _ => Err(format!("expected two comma-separated numbers, got `{s}`")),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let tol = cli.global.tolerances();
    match cli.command {
        Command::Analyze(a) => cmd_analyze(&a, &tol, out),
        Command::Contour(a) => cmd_contour(&a, out),
        Command::Verify(a) => cmd_verify(&a, &tol, cli.global.seed, out),
        Command::Figures(a) => cmd_figures(&a.out, out),
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.into(), source }
}

pub fn load_spec(path: &Path) -> CliResult<SurfaceSpec> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    SurfaceSpec::parse(&text).map_err(|source| CliError::Spec { path: path.into(), source })
}

/// The direction requested on the command line, and how it was chosen.
fn resolve_direction(patch: &SurfacePatch, at: &PointDirection) -> CliResult<(TangentDirection, String)> {
    if !patch.domain.contains(at.point) {
        return Err(CliError::Usage(format!("point {:?} is outside the domain", at.point)));
    }
    if let Some(k) = at.asymptotic {
        let dirs = asymptotic_directions(patch, at.point)?;
        let list = match &dirs {
            AsymptoticDirections::Planar => {
                return Err(CliError::Inapplicable("every direction is asymptotic: II = 0".into()))
            }
            AsymptoticDirections::Directions(d) => d,
        };
        return match list.get(k as usize - 1) {
            Some(d) => Ok((*d, format!("asymptotic {k}"))),
            None if list.is_empty() => Err(CliError::Inapplicable("no asymptotic direction: K > 0".into())),
            None => Err(CliError::Inapplicable(format!(
                "only one asymptotic direction at a parabolic point; asymptotic {k} does not exist"
            ))),
        };
    }
    let w = at.direction.unwrap_or([0.0, 1.0]);
    Ok((TangentDirection::new(at.point, w)?, "given".into()))
}

fn cmd_analyze(a: &AnalyzeArgs, tol: &Tolerances, out: &mut dyn Write) -> CliResult<()> {
    let spec = load_spec(&a.spec)?;
    let patch = spec.patch();
    let (dir, source) = resolve_direction(&patch, &a.at)?;
    let report = analyze(&patch, &spec.label(), &dir, &source, tol)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    writeln!(out, "{json}").map_err(io_err(Path::new("<stdout>")))
}

#[derive(Debug, Serialize)]
struct CsvRow {
    t: f64,
    u: f64,
    v: f64,
    #[serde(rename = "x_Pi")]
    x_pi: f64,
    #[serde(rename = "z_Pi")]
    z_pi: f64,
    #[serde(rename = "J")]
    j: f64,
    regular_flag: u8,
}

pub fn write_csv<W: Write>(contour: &ContourAnalysis, w: W) -> CliResult<()> {
    let mut wtr = csv::Writer::from_writer(w);
    if contour.points.is_empty() {
        wtr.write_record(["t", "u", "v", "x_Pi", "z_Pi", "J", "regular_flag"])?;
    }
    for (p, s) in contour.points.iter().zip(&contour.trace.samples) {
        wtr.serialize(CsvRow {
            t: p.param,
            u: p.source[0],
            v: p.source[1],
            x_pi: p.position[0],
            z_pi: p.position[1],
            j: s.j,
            regular_flag: p.regular as u8,
        })?;
    }
    wtr.flush().map_err(io_err(Path::new("<csv>")))?;
    Ok(())
}

fn cmd_contour(a: &ContourArgs, out: &mut dyn Write) -> CliResult<()> {
    let spec = load_spec(&a.spec)?;
    let patch = spec.patch();
    let (dir, _) = resolve_direction(&patch, &a.at)?;
    if !(a.budget > 0.0 && a.step > 0.0) {
        return Err(CliError::Usage("--budget and --step must be positive".into()));
    }
    let contour = match analyze_contour(&patch, &dir, a.budget, a.step) {
        Ok(c) => c,
        Err(e) => {
            if let Some(p) = &a.csv {
                let f = fs::File::create(p).map_err(io_err(p))?;
                let mut wtr = csv::Writer::from_writer(f);
                wtr.write_record(["t", "u", "v", "x_Pi", "z_Pi", "J", "regular_flag"])?;
                wtr.flush().map_err(io_err(p))?;
            }
            return Err(CliError::Failed(format!("contour tracing failed: {e}")));
        }
    };
    if let Some(p) = &a.csv {
        write_csv(&contour, fs::File::create(p).map_err(io_err(p))?)?;
    }
    if let Some(p) = &a.svg {
        fs::write(p, svg::render(&spec.label(), &patch, &contour)).map_err(io_err(p))?;
    }
    let stdout = Path::new("<stdout>");
    writeln!(
        out,
        "{} contour points, {} cusps, {} degenerate points",
        contour.points.len(),
        contour.cusps.cusps.len(),
        contour.cusps.degenerate.len()
    )
    .map_err(io_err(stdout))?;
    for c in &contour.cusps.cusps {
        writeln!(
            out,
            "cusp at source ({:.6}, {:.6}), image ({:.6}, {:.6}), cuspidal curvature {:.9}",
            c.source[0], c.source[1], c.location[0], c.location[1], c.cuspidal_curvature
        )
        .map_err(io_err(stdout))?;
    }
    for d in &contour.trace.diagnostics {
        writeln!(out, "note: {d}").map_err(io_err(stdout))?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct VerifyCase {
    pub index: usize,
    pub label: String,
    pub direction: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cubic: Option<CubicMonge>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub records: Vec<IdentityRecord>,
}

/// Worst relative residual and status counts of one identity in one pipeline.
#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub worst: Option<f64>,
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
    pub indeterminate: usize,
}

pub fn summarize(cases: &[VerifyCase]) -> BTreeMap<(String, &'static str), Summary> {
    let mut table: BTreeMap<(String, &'static str), Summary> = BTreeMap::new();
    for r in cases.iter().flat_map(|c| &c.records) {
        let pipeline = match r.pipeline {
            Pipeline::ClosedForm => "closed_form",
            Pipeline::Traced => "traced",
        };
        let s = table.entry((r.name.clone(), pipeline)).or_default();
        if let Some(x) = r.rel_residual {
            s.worst = Some(s.worst.map_or(x, |w: f64| w.max(x)));
        }
        match r.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Inapplicable => s.inapplicable += 1,
            Status::Indeterminate => s.indeterminate += 1,
        }
    }
    table
}

/// Every check on `n` seeded random cubic patches, in index order.
pub fn random_cases(n: usize, seed: u64, tol: &Tolerances) -> Vec<VerifyCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cubics: Vec<CubicMonge> = (0..n).map(|_| CubicMonge::random(&mut rng)).collect();
    let mut cases: Vec<VerifyCase> = cubics
        .into_par_iter()
        .enumerate()
        .map(|(index, c)| {
            let dir = CubicMonge::direction();
            let (records, error) = match check_all(&c.patch(0.5), &dir, tol) {
                Ok(r) => (r.records, None),
                Err(e) => (Vec::new(), Some(e.to_string())),
            };
            VerifyCase {
                index,
                label: format!("random_{index}"),
                direction: dir.components,
                cubic: Some(c),
                error,
                records,
            }
        })
        .collect();
    cases.sort_by_key(|c| c.index);
    cases
}

fn spec_cases(spec: &SurfaceSpec, at: &PointDirection, tol: &Tolerances) -> CliResult<Vec<VerifyCase>> {
    let patch = spec.patch();
    let dirs = if at.direction.is_some() || at.asymptotic.is_some() {
        vec![resolve_direction(&patch, at)?.0]
    } else {
        if !patch.domain.contains(at.point) {
            return Err(CliError::Usage(format!("point {:?} is outside the domain", at.point)));
        }
        let k = curvature_data(&patch, at.point)?.gaussian;
        let asym = asymptotic_directions(&patch, at.point)?;
        if k < 0.0 && !asym.directions().is_empty() {
            asym.directions().to_vec()
        } else {
            vec![TangentDirection::new(at.point, [0.0, 1.0])?]
        }
    };
    Ok(dirs
        .iter()
        .enumerate()
        .map(|(index, dir)| {
            let (records, error) = match check_all(&patch, dir, tol) {
                Ok(r) => (r.records, None),
                Err(e) => (Vec::new(), Some(e.to_string())),
            };
            VerifyCase {
                index,
                label: spec.label(),
                direction: dir.components,
                cubic: None,
                error,
                records,
            }
        })
        .collect())
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |x| format!("{x:.3e}"))
}

fn cmd_verify(a: &VerifyArgs, tol: &Tolerances, seed: u64, out: &mut dyn Write) -> CliResult<()> {
    let cases = match (&a.spec, a.random) {
        (_, Some(n)) => random_cases(n, seed, tol),
        (Some(p), None) => spec_cases(&load_spec(p)?, &a.at, tol)?,
        (None, None) => unreachable!("clap requires a spec or --random"),
    };
    if let Some(p) = &a.json {
        let json = serde_json::to_string_pretty(&cases).expect("records serialize");
        fs::write(p, json + "\n").map_err(io_err(p))?;
    }
    let table = summarize(&cases);
    let stdout = Path::new("<stdout>");
    writeln!(
        out,
        "{:<30} {:<12} {:>11} {:>5} {:>5} {:>5} {:>5}",
        "identity", "pipeline", "worst_rel", "pass", "fail", "n/a", "indet"
    )
    .map_err(io_err(stdout))?;
    for ((name, pipeline), s) in &table {
        writeln!(
            out,
            "{:<30} {:<12} {:>11} {:>5} {:>5} {:>5} {:>5}",
            name,
            pipeline,
            fmt_opt(s.worst),
            s.pass,
            s.fail,
            s.inapplicable,
            s.indeterminate
        )
        .map_err(io_err(stdout))?;
    }
    let errors: Vec<_> = cases.iter().filter_map(|c| c.error.as_ref().map(|e| (c, e))).collect();
    for (c, e) in &errors {
        writeln!(out, "error in {} {:?}: {e}", c.label, c.direction).map_err(io_err(stdout))?;
    }
    for c in &cases {
        for r in c.records.iter().filter(|r| r.status == Status::Fail) {
            let why = r.reason.as_deref().unwrap_or("");
            writeln!(out, "FAIL {} {:?} {} {:?} {why}", c.label, c.direction, r.name, r.pipeline)
                .map_err(io_err(stdout))?;
        }
    }
    let failures: usize = table.values().map(|s| s.fail).sum();
    if failures > 0 || !errors.is_empty() {
        return Err(CliError::Failed(format!(
            "{failures} failed checks, {} cases with errors",
            errors.len()
        )));
    }
    Ok(())
}

/// Name, surface and contour of each example figure.
pub const FIGURES: [(&str, CatalogSurface); 4] = [
    ("fig1_fplus", CatalogSurface::FPlus),
    ("fig1_fminus", CatalogSurface::FMinus),
    ("fig2_f0", CatalogSurface::F0),
    ("fig2_f1", CatalogSurface::F1),
];

/// The four figures as `(file stem, SVG text)`, viewing each catalog surface
/// along `df(∂y)` at the origin.
pub fn figure_svgs() -> CliResult<Vec<(&'static str, String, ContourAnalysis)>> {
    FIGURES
        .iter()
        .map(|(name, surface)| {
            let patch = surface.patch();
            let dir = TangentDirection::new([0.0, 0.0], [0.0, 1.0])?;
            let contour = analyze_contour(&patch, &dir, 4.0, 0.01)?;
            let text = svg::render(surface.name(), &patch, &contour);
            Ok((*name, text, contour))
        })
        .collect()
}

fn cmd_figures(dir: &Path, out: &mut dyn Write) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    for (name, text, _) in figure_svgs()? {
        let path = dir.join(format!("{name}.svg"));
        fs::write(&path, text).map_err(io_err(&path))?;
        writeln!(out, "{}", path.display()).map_err(io_err(Path::new("<stdout>")))?;
    }
    Ok(())
}
