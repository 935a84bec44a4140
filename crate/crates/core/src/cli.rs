//! Command-line interface.
//!
//! Exit codes: 0 on success, 1 on usage errors (including traces that hit a
//! vertex), 2 when `verify` finds a counterexample or `search` comes back
//! empty.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::developing::{trace, GeodesicEnd, StartFlag, SurfaceGeodesic};
use crate::enumeration::{
    enumerate_geodesics, search_escalating, search_unfolding_tree, EnumerationError,
    EscalatedSearch, GeodesicRecord, LatticeEndpoint, LatticeKind,
};
use crate::point::PlanarPoint;
use crate::report::{ReportDocument, TraceDocument, SCHEMA_VERSION, TOOL_VERSION};
use crate::scalar::{format_rational, parse_rational, Cyclo5};
use crate::surface::{build_solid, validate_solid, SolidKind, SolidSpec, ValidationReport};
use crate::svg::SvgScene;
use crate::symmetry::verify_theorem;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FINDING: i32 = 2;

/// Starting bound of `search` when none is given.
pub const DEFAULT_SEARCH_BOUND: i64 = 16;
/// Largest bound `search --escalate` tries by default.
pub const DEFAULT_MAX_SEARCH_BOUND: i64 = 4096;

#[derive(Debug, Parser)]
#[command(
    name = "platonic-geodesics",
    version,
    about = "Exact vertex-to-vertex geodesics on the platonic solids"
)]
struct Cli {
    /// Worker threads (0 picks one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect the built-in solids.
    Solids {
        #[command(subcommand)]
        action: SolidsAction,
    },
    /// Trace one straight segment from a corner.
    Trace(TraceArgs),
    /// List geodesics through primitive lattice endpoints.
    Enumerate(BoundArgs),
    /// Search the tree of developed faces for vertex-to-vertex geodesics.
    Search(SearchArgs),
    /// Check that no geodesic returns to its start vertex, with symmetry witnesses.
    Verify(BoundArgs),
    /// Draw the developed unfolding of one traced segment as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Subcommand)]
enum SolidsAction {
    /// Print the face, gluing and vertex tables with their validation checks.
    Show {
        /// Only this solid; all five otherwise.
        #[arg(long)]
        solid: Option<SolidKind>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StartArgs {
    #[arg(long)]
    solid: SolidKind,
    #[arg(long, default_value_t = 0)]
    start_face: usize,
    #[arg(long, default_value_t = 0)]
    corner: usize,
}

#[derive(Debug, Args)]
struct TraceArgs {
    #[command(flatten)]
    start: StartArgs,
    /// `p,q` in lattice coordinates (integers or fractions), four
    /// cyclotomic coefficients for the dodecahedron, or a JSON point.
    #[arg(long, allow_hyphen_values = true)]
    displacement: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[command(flatten)]
    start: StartArgs,
    /// As for `trace`; without it only the axes are drawn.
    #[arg(long, allow_hyphen_values = true)]
    displacement: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[command(flatten)]
    start: StartArgs,
    /// Bound on the squared developed length, in edge units.
    #[arg(long)]
    bound_sq: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[command(flatten)]
    start: StartArgs,
    #[arg(long)]
    bound_sq: Option<String>,
    /// Double the bound until a geodesic returns to its start vertex.
    #[arg(long)]
    escalate: bool,
    /// Largest bound tried by --escalate.
    #[arg(long)]
    max_bound_sq: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

/// A failure reported to the user, with its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the CLI with the given arguments (program name first).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = if cli.jobs > 0 {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build()
        {
            Ok(pool) => {
                let (outcome, buf) = pool.install(|| {
                    let mut buf = Vec::new();
                    (dispatch(cli.command, &mut buf), buf)
                });
                let _ = stdout.write_all(&buf);
                outcome
            }
            Err(e) => Err(usage(format!(
                "cannot start {} worker threads: {e}",
                cli.jobs
            ))),
        }
    } else {
        dispatch(cli.command, stdout)
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Outcome {
    match command {
        Command::Solids {
            action: SolidsAction::Show { solid, output },
        } => show(solid, &output, stdout),
        Command::Trace(a) => run_trace(&a, stdout),
        Command::Enumerate(a) => run_enumerate(&a, stdout),
        Command::Search(a) => run_search(&a, stdout),
        Command::Verify(a) => run_verify(&a, stdout),
        Command::Render(a) => run_render(&a, stdout),
    }
}

fn emit(out: Option<&Path>, content: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(content.as_bytes())
            .map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

fn parse_bound(s: &str, flag: &str) -> Result<BigRational, Failure> {
    match parse_rational(s) {
        Some(b) if b > BigRational::zero() => Ok(b),
        _ => Err(usage(format!(
            "{flag} must be a positive integer or fraction, got {s:?}"
        ))),
    }
}

fn setup(start: &StartArgs) -> Result<(SolidSpec, StartFlag), Failure> {
    let spec = build_solid(start.solid);
    let flag = StartFlag::new(&spec, start.start_face, start.corner).map_err(|e| {
        usage(format!(
            "bad start corner: {e} (the {} has faces 0..{} with corners 0..{})",
            spec.kind,
            spec.face_count() - 1,
            spec.arity() - 1
        ))
    })?;
    Ok((spec, flag))
}

/// Reads a displacement given in lattice coordinates, as cyclotomic
/// coefficients, or as a JSON point.
pub fn parse_displacement(spec: &SolidSpec, s: &str) -> Result<PlanarPoint, String> {
    let s = s.trim();
    if s.starts_with('{') {
        let p: PlanarPoint = serde_json::from_str(s).map_err(|e| format!("bad JSON point: {e}"))?;
        if p.field() != spec.field() {
            return Err(format!(
                "the {} needs {:?} coordinates, got {:?}",
                spec.kind,
                spec.field(),
                p.field()
            ));
        }
        return Ok(p);
    }
    let parts: Vec<BigRational> = s
        .split(',')
        .map(|t| parse_rational(t).ok_or_else(|| format!("{t:?} is not an integer or fraction")))
        .collect::<Result<_, _>>()?;
    match (LatticeKind::of_solid(spec.kind), parts.as_slice()) {
        (Some(LatticeKind::Square), [p, q]) => Ok(PlanarPoint::rational(p.clone(), q.clone())),
        (Some(LatticeKind::Triangular), [p, q]) => {
            let v1 = LatticeEndpoint::new(1, 0).displacement(LatticeKind::Triangular);
            let v2 = LatticeEndpoint::new(0, 1).displacement(LatticeKind::Triangular);
            Ok(&v1.scale_rational(p) + &v2.scale_rational(q))
        }
        (None, [a, b, c, d]) => Ok(PlanarPoint::Cyclo5(Cyclo5::new([
            a.clone(),
            b.clone(),
            c.clone(),
            d.clone(),
        ]))),
        (Some(_), _) => Err(format!("expected p,q for the {}", spec.kind)),
        (None, _) => Err(
            "expected four coefficients c0,c1,c2,c3 of 1, ζ, ζ², ζ³ for the dodecahedron".into(),
        ),
    }
}

fn trace_text(spec: &SolidSpec, g: &SurfaceGeodesic) -> String {
    let mut s = format!(
        "{} from vertex {} (face {} corner {}) along {}\nsquared length {}{}\n",
        spec.kind,
        g.start.vertex,
        g.start.face,
        g.start.corner,
        g.developed_endpoint,
        g.squared_length,
        if g.edge_running {
            ", along an edge"
        } else {
            ""
        }
    );
    for (i, leg) in g.legs.iter().enumerate() {
        s += &format!(
            "leg {i}: face {} from {} to {}\n",
            leg.face, leg.entry, leg.exit
        );
    }
    s += &match &g.end {
        GeodesicEnd::Vertex {
            vertex,
            face,
            corner,
        } => format!("ends at vertex {vertex} (face {face} corner {corner})\n"),
        GeodesicEnd::Open {
            point,
            edge: Some(e),
        } => format!(
            "ends on edge {e} of face {} at {}\n",
            point.face, point.point
        ),
        GeodesicEnd::Open { point, edge: None } => {
            format!("ends inside face {} at {}\n", point.face, point.point)
        }
    };
    s
}

fn run_trace(a: &TraceArgs, stdout: &mut dyn Write) -> Outcome {
    let (spec, start) = setup(&a.start)?;
    let d = parse_displacement(&spec, &a.displacement).map_err(usage)?;
    let g = trace(&spec, &start, &d).map_err(|e| usage(format!("trace failed: {e}")))?;
    let content = match a.output.format {
        Format::Json => TraceDocument::new(spec.kind, &g).to_json(),
        Format::Text => trace_text(&spec, &g),
    };
    emit(a.output.out.as_deref(), &content, stdout)?;
    Ok(EXIT_OK)
}

fn record_line(r: &GeodesicRecord) -> String {
    let at = match r.endpoint {
        Some(e) => e.to_string(),
        None => r.developed_endpoint().to_string(),
    };
    let faces: Vec<String> = r
        .geodesic
        .face_sequence()
        .iter()
        .map(|f| f.to_string())
        .collect();
    let class = r
        .midpoint_class
        .map(|c| format!(" midpoint {c}"))
        .unwrap_or_default();
    let approx = match r.squared_length.as_rational() {
        Some(_) => String::new(),
        None => format!(" (about {:.6})", r.squared_length.to_f64()),
    };
    format!(
        "{at} squared length {}{approx} ends at vertex {}{}{class} faces {}\n",
        r.squared_length,
        r.end_vertex,
        if r.is_self_geodesic() {
            " (start vertex)"
        } else {
            ""
        },
        faces.join(",")
    )
}

fn header(spec: &SolidSpec, start: &StartFlag, bound: &BigRational) -> String {
    format!(
        "{} from vertex {} (face {} corner {}), squared length at most {}\n",
        spec.kind,
        start.vertex,
        start.face,
        start.corner,
        format_rational(bound)
    )
}

fn run_enumerate(a: &BoundArgs, stdout: &mut dyn Write) -> Outcome {
    let (spec, start) = setup(&a.start)?;
    let bound = parse_bound(&a.bound_sq, "--bound-sq")?;
    let records = enumerate_geodesics(&spec, &start, &bound).map_err(|e| match e {
        EnumerationError::UnsupportedSolid(k) => usage(format!(
            "the {k} has no lattice unfolding; use `search` instead"
        )),
        other => usage(other.to_string()),
    })?;
    let content = match a.output.format {
        Format::Json => ReportDocument::enumeration(spec.kind, start, &bound, &records).to_json(),
        Format::Text => {
            let mut s = header(&spec, &start, &bound);
            s += &format!("{} geodesics\n", records.len());
            records.iter().for_each(|r| s += &record_line(r));
            s
        }
    };
    emit(a.output.out.as_deref(), &content, stdout)?;
    Ok(EXIT_OK)
}

fn run_search(a: &SearchArgs, stdout: &mut dyn Write) -> Outcome {
    let (spec, start) = setup(&a.start)?;
    let initial = match &a.bound_sq {
        Some(s) => parse_bound(s, "--bound-sq")?,
        None => BigRational::from_integer(DEFAULT_SEARCH_BOUND.into()),
    };
    let result = if a.escalate {
        let cap = match &a.max_bound_sq {
            Some(s) => parse_bound(s, "--max-bound-sq")?,
            None => BigRational::from_integer(DEFAULT_MAX_SEARCH_BOUND.into()),
        };
        search_escalating(&spec, &start, &initial, &cap).map_err(|e| usage(e.to_string()))?
    } else {
        if a.max_bound_sq.is_some() {
            return Err(usage("--max-bound-sq only applies with --escalate"));
        }
        let records = match search_unfolding_tree(&spec, &start, &initial) {
            Ok(r) => r,
            Err(EnumerationError::BoundTooSmall(_)) => Vec::new(),
            Err(e) => return Err(usage(e.to_string())),
        };
        let found = records.iter().any(GeodesicRecord::is_self_geodesic);
        EscalatedSearch {
            records,
            bound_reached: initial,
            found_self_geodesic: found,
        }
    };
    let content = match a.output.format {
        Format::Json => ReportDocument::search(spec.kind, start, &result, a.escalate).to_json(),
        Format::Text => {
            let mut s = header(&spec, &start, &result.bound_reached);
            let selfs = result
                .records
                .iter()
                .filter(|r| r.is_self_geodesic())
                .count();
            s += &format!(
                "{} geodesics, {selfs} back to the start vertex\n",
                result.records.len()
            );
            result.records.iter().for_each(|r| s += &record_line(r));
            s
        }
    };
    emit(a.output.out.as_deref(), &content, stdout)?;
    let empty = if a.escalate {
        !result.found_self_geodesic
    } else {
        result.records.is_empty()
    };
    if empty {
        let what = if a.escalate {
            "no geodesic back to the start vertex"
        } else {
            "no geodesics"
        };
        return Err(Failure {
            code: EXIT_FINDING,
            message: format!(
                "{what} within squared length {}",
                format_rational(&result.bound_reached)
            ),
        });
    }
    Ok(EXIT_OK)
}

fn run_verify(a: &BoundArgs, stdout: &mut dyn Write) -> Outcome {
    let (spec, start) = setup(&a.start)?;
    let bound = parse_bound(&a.bound_sq, "--bound-sq")?;
    let report = verify_theorem(&spec, &start, &bound).map_err(|e| usage(e.to_string()))?;
    let doc = ReportDocument::theorem(&report);
    let verdict = doc.verdict.clone().expect("verify sets a verdict");
    let content = match a.output.format {
        Format::Json => doc.to_json(),
        Format::Text => {
            let mut s = header(&spec, &start, &bound);
            s += &format!(
                "{} geodesics; {} back to the start vertex; {} without a valid symmetry witness; {} midpoint mismatches\nverdict: {}\n",
                verdict.record_count, verdict.self_geodesics, verdict.witness_failures, verdict.midpoint_mismatches, verdict.summary
            );
            for c in report.checks.iter().filter(|c| !c.passed()) {
                s += &format!("counterexample: {}", record_line(&c.record));
            }
            s
        }
    };
    emit(a.output.out.as_deref(), &content, stdout)?;
    Ok(if verdict.holds { EXIT_OK } else { EXIT_FINDING })
}

fn run_render(a: &RenderArgs, stdout: &mut dyn Write) -> Outcome {
    let (spec, start) = setup(&a.start)?;
    let scene = match &a.displacement {
        None => SvgScene::default(),
        Some(s) => {
            let d = parse_displacement(&spec, s).map_err(usage)?;
            let g = trace(&spec, &start, &d).map_err(|e| usage(format!("trace failed: {e}")))?;
            SvgScene::from_geodesic(&spec, &g)
        }
    };
    emit(a.out.as_deref(), &scene.render(), stdout)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SolidEntry {
    solid: SolidKind,
    vertices: usize,
    edges: usize,
    faces: usize,
    validation: ValidationReport,
}

#[derive(Serialize)]
struct SolidsDocument {
    schema: u32,
    tool_version: &'static str,
    command: &'static str,
    solids: Vec<SolidEntry>,
}

fn show(solid: Option<SolidKind>, output: &OutputArgs, stdout: &mut dyn Write) -> Outcome {
    let kinds: Vec<SolidKind> = solid
        .map(|k| vec![k])
        .unwrap_or_else(|| SolidKind::ALL.to_vec());
    let specs: Vec<SolidSpec> = kinds.into_iter().map(build_solid).collect();
    let reports: Vec<ValidationReport> = specs.iter().map(validate_solid).collect();
    let content = match output.format {
        Format::Json => {
            let doc = SolidsDocument {
                schema: SCHEMA_VERSION,
                tool_version: TOOL_VERSION,
                command: "solids show",
                solids: specs
                    .iter()
                    .zip(&reports)
                    .map(|(s, r)| SolidEntry {
                        solid: s.kind,
                        vertices: s.vertex_count,
                        edges: s.edge_count,
                        faces: s.face_count(),
                        validation: r.clone(),
                    })
                    .collect(),
            };
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Text => specs
            .iter()
            .zip(&reports)
            .map(|(s, r)| format!("{}{r}", s.dump()))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(output.out.as_deref(), &content, stdout)?;
    Ok(if reports.iter().all(ValidationReport::all_passed) {
        EXIT_OK
    } else {
        EXIT_FINDING
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("platonic-geodesics").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn vertex_hit_is_a_usage_error() {
        let (code, _, err) = cli(&["trace", "--solid", "cube", "--displacement", "2,2"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("passes through vertex"), "{err}");
    }

    #[test]
    fn bad_flags() {
        assert_eq!(
            cli(&["trace", "--solid", "prism", "--displacement", "1,1"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            cli(&["verify", "--solid", "cube", "--bound-sq", "-3"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            cli(&[
                "verify",
                "--solid",
                "cube",
                "--bound-sq",
                "9",
                "--start-face",
                "6"
            ])
            .0,
            EXIT_USAGE
        );
        assert_eq!(
            cli(&["enumerate", "--solid", "dodecahedron", "--bound-sq", "9"]).0,
            EXIT_USAGE
        );
        assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(cli(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn displacements() {
        let tetra = build_solid(SolidKind::Tetrahedron);
        assert_eq!(
            parse_displacement(&tetra, "1,1"),
            Ok(LatticeEndpoint::new(1, 1).displacement(LatticeKind::Triangular))
        );
        let cube = build_solid(SolidKind::Cube);
        let json = r#"{"x": "1/2", "y": "1/3"}"#;
        assert_eq!(
            parse_displacement(&cube, json),
            Ok(PlanarPoint::rational(
                BigRational::new(1.into(), 2.into()),
                BigRational::new(1.into(), 3.into())
            ))
        );
        assert!(parse_displacement(&cube, "1,2,3").is_err());
        let dodeca = build_solid(SolidKind::Dodecahedron);
        assert!(parse_displacement(&dodeca, "1,1").is_err());
        assert!(parse_displacement(&dodeca, "0,1,0,0").is_ok());
    }

    #[test]
    fn verify_text_and_json() {
        let (code, out, _) = cli(&[
            "verify",
            "--solid",
            "cube",
            "--bound-sq",
            "25",
            "--format",
            "json",
        ]);
        assert_eq!(code, EXIT_OK);
        let doc = ReportDocument::from_json(&out).unwrap();
        assert_eq!(doc.verdict.unwrap().summary, "no self-geodesics");
        let (code, out, _) = cli(&["verify", "--solid", "octa", "--bound-sq", "25"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verdict: no self-geodesics"));
    }

    #[test]
    fn search_without_results_exits_two() {
        let (code, _, err) = cli(&["search", "--solid", "cube", "--bound-sq", "1/2"]);
        assert_eq!(code, EXIT_FINDING);
        assert!(err.contains("no geodesics"));
        assert_eq!(
            cli(&["search", "--solid", "cube", "--bound-sq", "4"]).0,
            EXIT_OK
        );
    }

    #[test]
    fn show_solids() {
        let (code, out, _) = cli(&["solids", "show"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.matches("PASS cone angle").count(), 5);
    }
}
