//! The `mzquad` command line: argument definitions and the four commands.
//!
//! Exit codes: 0 success, 2 input or geometry problems, 3 numerical or
//! solver failures, 4 oracle budget exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::expr::Integrand;
use crate::geometry::{Point2, Polygon, Triangle};
use crate::io::{read_scattered, standin_scattered, to_json, write_text, RunManifest};
use crate::mesh::{refine_uniform, triangulate, Mesh, ScatteredSet};
use crate::mz_verify::{mz_ensemble, reports_to_csv, RuleDescriptor};
use crate::oracle::{integrate_triangles, OracleConfig};
use crate::poly_rule::polygon_weights;
use crate::repro::{
    fmt_sig5, references_csv, relative_error, table1, table1_csv, table1_triangle, table2, table2_csv,
    TABLE1_DEGREES, TABLE_FUNCTIONS,
};
use crate::tri_rule::triangle_weights;

/// Weights at or below this fraction of the triangle area are reported as
/// nonpositive (the degree-2 vertex weights vanish up to rounding).
const NONPOSITIVE_REL: f64 = 1e-13;

#[derive(Debug, Parser)]
#[command(name = "mzquad", version, about = "Scattered-point and domain-point quadrature on triangles and polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the domain-point rule of degree d on a triangle.
    TriRule(TriRuleArgs),
    /// Integrate a function with a rule and compare with the oracle.
    Integrate(IntegrateArgs),
    /// Run Marcinkiewicz–Zygmund ratio ensembles.
    Mz(MzArgs),
    /// Regenerate the benchmark tables.
    Repro(ReproArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainKind {
    Tri,
    Poly,
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    /// Vertices as x,y pairs, e.g. `--vertices 0,0 1,0 0,1`.
    #[arg(long, num_args = 3.., value_parser = parse_point)]
    pub vertices: Vec<Point2>,
    /// Polygon or scattered-set JSON file.
    #[arg(long, conflicts_with = "vertices")]
    pub polygon: Option<PathBuf>,
    /// Use the shipped stand-in polygon with its interior points.
    #[arg(long, conflicts_with_all = ["vertices", "polygon"])]
    pub standin: bool,
    /// Ignore interior points of a scattered-set file.
    #[arg(long)]
    pub boundary_only: bool,
}

#[derive(Debug, Args)]
pub struct TriRuleArgs {
    #[arg(long, num_args = 3, value_parser = parse_point)]
    pub vertices: Option<Vec<Point2>>,
    #[arg(long)]
    pub degree: usize,
    /// Write the rule JSON here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    #[arg(long, value_enum, default_value = "tri")]
    pub domain: DomainKind,
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Rule degree on triangles (polygon rules are always degree 1).
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
    /// `f1`, `f2`, `f3`, or an expression in x and y.
    #[arg(long = "fn", default_value = "f1", allow_hyphen_values = true)]
    pub function: String,
    #[arg(long, default_value_t = 1e-12)]
    pub oracle_tol: f64,
    /// Uniform refinement levels applied to the polygon mesh.
    #[arg(long, default_value_t = 0)]
    pub refine: usize,
}

#[derive(Debug, Args)]
pub struct MzArgs {
    #[arg(long, value_enum, default_value = "tri")]
    pub domain: DomainKind,
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Triangle rule degree, 1, 3 or 5.
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
    /// Comma-separated p values; `inf` for the sup-norm.
    #[arg(long = "p", value_delimiter = ',', value_parser = parse_p, default_value = "inf")]
    pub p: Vec<f64>,
    /// Comma-separated polynomial degrees.
    #[arg(long = "N", value_delimiter = ',', default_value = "1")]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report every uniform refinement level from 0 to this (polygons).
    #[arg(long, default_value_t = 0)]
    pub refine: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub oracle_tol: f64,
    /// CSV destination; a manifest is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub table: u8,
    #[arg(long, default_value = "repro-out")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1e-12)]
    pub oracle_tol: f64,
}

fn parse_point(s: &str) -> std::result::Result<Point2, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y but got `{s}`"))?;
    let x: f64 = x.trim().parse().map_err(|e| format!("bad x in `{s}`: {e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("bad y in `{s}`: {e}"))?;
    Ok(Point2::new(x, y))
}

fn parse_p(s: &str) -> std::result::Result<f64, String> {
    match s.trim() {
        "inf" | "Inf" | "infinity" => Ok(f64::INFINITY),
        t => {
            let p: f64 = t.parse().map_err(|e| format!("bad p `{s}`: {e}"))?;
            if p >= 1.0 {
                Ok(p)
            } else {
                Err(format!("p must be at least 1, got {p}"))
            }
        }
    }
}

// Coordinates such as `-84.3,33.7` would otherwise be read as short flags.
// No flag starts with a digit, so a leading space keeps them values;
// `parse_point` trims it again.
fn protect_negative<T: Into<OsString>>(arg: T) -> OsString {
    let arg: OsString = arg.into();
    match arg.to_str() {
        Some(s) if s.len() > 1 && s.starts_with('-') && s[1..].starts_with(|c: char| c.is_ascii_digit() || c == '.') => {
            format!(" {s}").into()
        }
        _ => arg,
    }
}

/// Maps an error onto the documented exit codes.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::OracleBudgetExceeded { .. } => 4,
        Error::IllConditionedCollocation { .. } | Error::NonFiniteSample { .. } | Error::Triangulation(_) => 3,
        _ => 2,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to `err`, results to `out`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let cli = match Cli::try_parse_from(args.into_iter().map(protect_negative)) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match run(&cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::TriRule(a) => cmd_tri_rule(a, out, err),
        Command::Integrate(a) => cmd_integrate(a, out, err),
        Command::Mz(a) => cmd_mz(a, out, err),
        Command::Repro(a) => cmd_repro(a, out, err),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn triangle_from(vertices: Option<&[Point2]>) -> Result<Triangle> {
    match vertices {
        None | Some([]) => Ok(table1_triangle()),
        Some(&[a, b, c]) => Triangle::new(a, b, c),
        Some(v) => Err(Error::InvalidArgument(format!("a triangle needs 3 vertices, got {}", v.len()))),
    }
}

fn scattered_from(g: &GeometryArgs) -> Result<ScatteredSet> {
    let s = if g.standin {
        standin_scattered()
    } else if let Some(path) = &g.polygon {
        read_scattered(path)?
    } else if !g.vertices.is_empty() {
        ScatteredSet::boundary_only(Polygon::new(g.vertices.clone())?)
    } else {
        return Err(Error::InvalidArgument(
            "a polygon domain needs --vertices, --polygon or --standin".into(),
        ));
    };
    Ok(if g.boundary_only {
        ScatteredSet::boundary_only(s.polygon().clone())
    } else {
        s
    })
}

fn polygon_mesh(g: &GeometryArgs, refine: usize) -> Result<Mesh> {
    Ok(refine_uniform(&triangulate(&scattered_from(g)?)?, refine))
}

pub fn cmd_tri_rule(a: &TriRuleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let t = triangle_from(a.vertices.as_deref())?;
    let rule = triangle_weights(&t, a.degree)?;
    let threshold = NONPOSITIVE_REL * t.area();
    let nonpositive = rule.weights().iter().filter(|&&w| w <= threshold).count();
    let min = rule.weights().iter().cloned().fold(f64::INFINITY, f64::min);
    let text = to_json(&rule);
    match &a.out {
        Some(path) => write_text(path, &text)?,
        None => out.write_all(text.as_bytes()).map_err(io_err)?,
    }
    writeln!(
        err,
        "degree {}: {} points, weight sum {:.16e}, min weight {:.6e}, condition estimate {:.3e}",
        rule.degree(),
        rule.len(),
        rule.weights().iter().sum::<f64>(),
        min,
        rule.condition()
    )
    .map_err(io_err)?;
    if nonpositive > 0 {
        writeln!(err, "warning: nonpositive weights present ({nonpositive} of {})", rule.len()).map_err(io_err)?;
    } else {
        writeln!(err, "all weights positive").map_err(io_err)?;
    }
    Ok(())
}

pub fn cmd_integrate(a: &IntegrateArgs, out: &mut dyn Write, _err: &mut dyn Write) -> Result<()> {
    let f = Integrand::from_spec(&a.function)?;
    let cfg = OracleConfig::with_tolerance(a.oracle_tol);
    cfg.validate()?;
    let (quad, tris, label) = match a.domain {
        DomainKind::Tri => {
            let t = triangle_from(Some(&a.geometry.vertices))?;
            let rule = triangle_weights(&t, a.degree)?;
            (rule.apply(|p| f.at(p))?, vec![t], format!("triangle rule, degree {}", a.degree))
        }
        DomainKind::Poly => {
            if a.degree != 1 {
                return Err(Error::InvalidArgument("polygon rules have degree 1".into()));
            }
            let m = polygon_mesh(&a.geometry, a.refine)?;
            let rule = polygon_weights(&m);
            let label = format!("polygon rule, {} points, {} triangles", rule.len(), m.count());
            (rule.apply(|p| f.at(p))?, m.iter_triangles().collect(), label)
        }
    };
    let oracle = integrate_triangles(&tris, |p| f.at(p), &cfg);
    let (value, estimate, failure) = match oracle {
        Ok(e) => (e.value, e.error_estimate, None),
        Err(Error::OracleBudgetExceeded { value, error_estimate }) => {
            (value, error_estimate, Some(Error::OracleBudgetExceeded { value, error_estimate }))
        }
        Err(e) => return Err(e),
    };
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_err);
    w(out, format!("integrand       {}", f.name()))?;
    w(out, format!("rule            {label}"))?;
    w(out, format!("quadrature      {quad:.16e}"))?;
    w(out, format!("oracle          {value:.16e} ± {estimate:.3e}"))?;
    w(out, format!("absolute error  {}", fmt_sig5((value - quad).abs())))?;
    if value == 0.0 {
        w(out, "relative error  undefined (reference is zero)".into())?;
    } else {
        w(out, format!("relative error  {}", fmt_sig5(relative_error(value, quad))))?;
    }
    match failure {
        Some(e) => {
            w(out, "oracle budget exhausted; the reference above is a best estimate".into())?;
            Err(e)
        }
        None => Ok(()),
    }
}

pub fn cmd_mz(a: &MzArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let cfg = OracleConfig {
        tolerance: a.oracle_tol,
        ..crate::mz_verify::ensemble_oracle()
    };
    cfg.validate()?;
    let mut manifest = RunManifest::start(
        "mz",
        json!({
            "domain": format!("{:?}", a.domain).to_lowercase(),
            "vertices": a.geometry.vertices,
            "polygon": a.geometry.polygon,
            "standin": a.geometry.standin,
            "boundary_only": a.geometry.boundary_only,
            "degree": a.degree,
            "p": a.p.iter().map(|p| if p.is_infinite() { "inf".to_string() } else { p.to_string() }).collect::<Vec<_>>(),
            "N": a.n,
            "trials": a.trials,
            "refine": a.refine,
            "oracle_tol": a.oracle_tol,
        }),
        Some(a.seed),
    );
    let rules: Vec<RuleDescriptor> = match a.domain {
        DomainKind::Tri => {
            if a.refine > 0 {
                return Err(Error::InvalidArgument("--refine applies to polygon domains".into()));
            }
            vec![RuleDescriptor::Triangle {
                triangle: triangle_from(Some(&a.geometry.vertices))?,
                degree: a.degree,
            }]
        }
        DomainKind::Poly => {
            let base = triangulate(&scattered_from(&a.geometry)?)?;
            (0..=a.refine)
                .map(|l| RuleDescriptor::polygon(&refine_uniform(&base, l), format!("mesh-r{l}")))
                .collect()
        }
    };
    let mut reports = Vec::new();
    for rule in &rules {
        for &n in &a.n {
            if let RuleDescriptor::Triangle { degree, .. } = rule {
                if n > *degree {
                    writeln!(err, "note: N = {n} exceeds the rule degree {degree}").map_err(io_err)?;
                }
            }
            for &p in &a.p {
                reports.push(mz_ensemble(rule, p, n, a.trials, a.seed, &cfg)?);
            }
        }
    }
    let csv = reports_to_csv(&reports)?;
    match &a.out {
        Some(path) => {
            write_text(path, &csv)?;
            let manifest_path = path.with_extension("manifest.json");
            manifest.finish(vec![path.clone()]);
            write_text(&manifest_path, &to_json(&manifest))?;
        }
        None => out.write_all(csv.as_bytes()).map_err(io_err)?,
    }
    Ok(())
}

pub fn cmd_repro(a: &ReproArgs, out: &mut dyn Write, _err: &mut dyn Write) -> Result<()> {
    let cfg = OracleConfig::with_tolerance(a.oracle_tol);
    cfg.validate()?;
    let mut manifest = RunManifest::start(
        "repro",
        json!({ "table": a.table, "out": a.out, "oracle_tol": a.oracle_tol }),
        None,
    );
    let dir: &Path = &a.out;
    let (name, table_csv, refs) = if a.table == 1 {
        let t = table1(&TABLE1_DEGREES, &cfg)?;
        ("table1", table1_csv(&t), t.references)
    } else {
        let t = table2(&cfg)?;
        ("table2", table2_csv(&t), t.references)
    };
    let table_path = dir.join(format!("{name}.csv"));
    let refs_path = dir.join(format!("{name}_reference.csv"));
    write_text(&table_path, &table_csv)?;
    write_text(&refs_path, &references_csv(&refs)?)?;
    manifest.finish(vec![table_path.clone(), refs_path.clone()]);
    write_text(&dir.join(format!("{name}_manifest.json")), &to_json(&manifest))?;

    out.write_all(table_csv.as_bytes()).map_err(io_err)?;
    for r in refs.iter().filter(|r| !r.converged) {
        writeln!(
            out,
            "note: oracle for {} stopped at its budget (error estimate {:.3e})",
            r.function, r.error_estimate
        )
        .map_err(io_err)?;
    }
    debug_assert_eq!(TABLE_FUNCTIONS.len(), refs.len());
    Ok(())
}
