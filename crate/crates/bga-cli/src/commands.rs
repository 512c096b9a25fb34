//! The `bga` command line: argument grammar, dispatch and exit codes.
//!
//! Machine output goes to stdout and diagnostics to stderr. Exit status is 0
//! on success, 1 on a domain error, 2 on a usage error and 3 when an oracle
//! check fails.

use crate::render::{render, Format, RenderSpec, RenderWindow};
use bga_core::ar_model::{canonical_set, Params, Part, Vertex, Window};
use bga_core::brauer_graph::{build_quiver, classify, emit_quiver_dot, parse_graph};
use bga_core::extension_engine::{certify_sms, trace_json_lines, window_with_margin};
use bga_core::hom_calculus::{biperp, lsupp, rsupp, SupportReport};
use bga_core::ortho::{maximal_systems_containing, PoolFilter};
use bga_oracle::{formula_scenario, reproduce_paper_counts, ScenarioReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bga", version, about = "Stable AR-quiver combinatorics of 2-domestic Brauer graph algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgebraEmit {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RenderEmit {
    Dot,
    Svg,
    Tikz,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleScope {
    Formulas,
    Counts,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a Brauer graph document.
    Classify { file: PathBuf },
    /// Print the quiver with relations of a Brauer graph algebra.
    Algebra {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        emit: AlgebraEmit,
    },
    /// Right and left supports of one vertex.
    Supports {
        #[command(flatten)]
        params: ParamArgs,
        /// A vertex such as `E(0,1,0)` or `TU(1,0,2)`.
        #[arg(long)]
        vertex: String,
        /// Number of periods in the listing window.
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    /// Bi-perpendicular region of a set of vertices.
    Biperp {
        #[command(flatten)]
        params: ParamArgs,
        /// Inline vertices separated by `;`, a JSON array, or a JSON file.
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    /// Every maximal orthogonal system containing a set.
    EnumerateMax {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        set: String,
        /// Extend only by Euclidean vertices.
        #[arg(long)]
        euclidean_only: bool,
    },
    /// Certify a simple-minded system through the extension closure.
    CertifySms {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        set: String,
        /// Margin of the closure window around the system.
        #[arg(long)]
        window: Option<i64>,
        /// Write the full derivation trace here as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Compare the closed forms and published counts against brute force.
    OracleCheck {
        #[arg(long, requires = "q")]
        p: Option<i64>,
        #[arg(long, requires = "p")]
        q: Option<i64>,
        #[arg(long, value_enum, default_value = "all")]
        scope: OracleScope,
    },
    /// Draw one part of the quiver over a window.
    Render {
        #[command(flatten)]
        params: ParamArgs,
        /// One of e0, e1, u0, u1, p0, p1.
        #[arg(long)]
        part: String,
        #[arg(long, default_value_t = 4)]
        window: i64,
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        y0: Option<i64>,
        /// Highlight these vertices under the label `set`.
        #[arg(long)]
        set: Option<String>,
        /// Highlight the part of this set's bi-perpendicular region in view.
        #[arg(long)]
        biperp_of: Option<String>,
        #[arg(long, value_enum, default_value = "svg")]
        emit: RenderEmit,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
    Oracle { report: String, summary: String },
}

type Outcome = Result<String, Failure>;

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn params(a: &ParamArgs) -> Result<Params, Failure> {
    Params::new(a.p, a.q).map_err(usage)
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))
}

/// Parses a vertex set given inline (`;`-separated), as a JSON array of
/// vertex strings, or as the path of a file holding such an array.
pub fn parse_set(arg: &str) -> Result<Vec<Vertex>, String> {
    let trimmed = arg.trim();
    let text = if trimmed.starts_with('[') || trimmed.contains('(') {
        trimmed.to_string()
    } else {
        std::fs::read_to_string(trimmed).map_err(|e| format!("cannot read set file {trimmed}: {e}"))?
    };
    let text = text.trim();
    if text.starts_with('[') {
        let names: Vec<String> = serde_json::from_str(text).map_err(|e| format!("set is not a JSON array of strings: {e}"))?;
        names.iter().map(|n| n.parse::<Vertex>().map_err(|e| e.to_string())).collect()
    } else {
        text.split(';')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.parse::<Vertex>().map_err(|e| e.to_string()))
            .collect()
    }
}

fn set_arg(arg: &str) -> Result<Vec<Vertex>, Failure> {
    parse_set(arg).map_err(Failure::Usage)
}

fn report_json(report: &SupportReport, w: &Window) -> Value {
    let mut members = report.materialize(w);
    let lists: BTreeMap<&str, Value> = Part::ALL
        .into_iter()
        .map(|part| {
            let key = match part {
                Part::E0 => "eucl0",
                Part::E1 => "eucl1",
                Part::U0 => "tubeU0",
                Part::U1 => "tubeU1",
                Part::P0 => "tubeP0",
                Part::P1 => "tubeP1",
            };
            (key, json!(members.remove(part.name()).unwrap_or_default()))
        })
        .collect();
    json!({ "regions": report, "lists": lists })
}

fn run_supports(pa: &ParamArgs, vertex: &str, periods: i64) -> Outcome {
    let pr = params(pa)?;
    let v: Vertex = vertex.parse().map_err(usage)?;
    let w = Window::periods_around(pr, 0, 0, periods.max(1));
    Ok(pretty(&json!({
        "vertex": v.canonical(pr),
        "rsupp": report_json(&rsupp(v, pr), &w),
        "lsupp": report_json(&lsupp(v, pr), &w),
    })))
}

fn run_biperp(pa: &ParamArgs, set: &str, periods: i64) -> Outcome {
    let pr = params(pa)?;
    let s = canonical_set(set_arg(set)?, pr);
    let w = Window::periods_around(pr, 0, 0, periods.max(1));
    let mut out = report_json(&biperp(&s, pr), &w);
    out["set"] = json!(s);
    Ok(pretty(&out))
}

fn run_enumerate(pa: &ParamArgs, set: &str, euclidean_only: bool) -> Outcome {
    let pr = params(pa)?;
    let s = set_arg(set)?;
    let filter = if euclidean_only { PoolFilter::EuclideanOnly } else { PoolFilter::All };
    let systems = maximal_systems_containing(&s, pr, filter).map_err(domain)?;
    let mut by_cardinality: BTreeMap<usize, usize> = BTreeMap::new();
    for sys in &systems {
        *by_cardinality.entry(sys.len()).or_insert(0) += 1;
    }
    Ok(pretty(&json!({ "count": systems.len(), "byCardinality": by_cardinality, "systems": systems })))
}

fn run_certify(pa: &ParamArgs, set: &str, margin: Option<i64>, trace: Option<&PathBuf>) -> Outcome {
    let pr = params(pa)?;
    let s = set_arg(set)?;
    let w = margin.map(|m| window_with_margin(&s, pr, m));
    let cert = certify_sms(&s, pr, w).map_err(domain)?;
    if let Some(path) = trace {
        std::fs::write(path, trace_json_lines(&cert.trace))
            .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(pretty(&cert))
}

fn run_oracle(p: Option<i64>, q: Option<i64>, scope: OracleScope) -> Outcome {
    let pairs: Vec<(i64, i64)> = match (p, q) {
        (Some(p), Some(q)) => vec![(p, q)],
        _ => vec![(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)],
    };
    let mut reports: Vec<ScenarioReport> = Vec::new();
    if matches!(scope, OracleScope::Formulas | OracleScope::All) {
        for (p, q) in pairs {
            reports.push(formula_scenario(Params::new(p, q).map_err(usage)?));
        }
    }
    if matches!(scope, OracleScope::Counts | OracleScope::All) {
        reports.extend(reproduce_paper_counts().map_err(domain)?);
    }
    let text = pretty(&reports);
    let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.scenario.as_str()).collect();
    if failed.is_empty() {
        Ok(text)
    } else {
        Err(Failure::Oracle { report: text, summary: format!("{} scenario(s) failed: {}", failed.len(), failed.join("; ")) })
    }
}

#[allow(clippy::too_many_arguments)]
fn run_render(
    pa: &ParamArgs,
    part: &str,
    size: i64,
    x0: Option<i64>,
    y0: Option<i64>,
    set: Option<&str>,
    biperp_of: Option<&str>,
    emit: RenderEmit,
) -> Outcome {
    let pr = params(pa)?;
    let mut window = RenderWindow::centred(size);
    window.x0 = x0.unwrap_or(window.x0);
    window.y0 = y0.unwrap_or(window.y0);
    let format = match emit {
        RenderEmit::Dot => Format::Dot,
        RenderEmit::Svg => Format::Svg,
        RenderEmit::Tikz => Format::Tikz,
        RenderEmit::Json => Format::Json,
    };
    let mut highlights = BTreeMap::new();
    if let Some(set) = set {
        highlights.insert("set".to_string(), canonical_set(set_arg(set)?, pr));
    }
    let plain = RenderSpec::new(pr, part, window, BTreeMap::new(), format).map_err(usage)?;
    if let Some(src) = biperp_of {
        let region = biperp(&set_arg(src)?, pr);
        let drawn: Vec<Vertex> = plain
            .layout()
            .nodes
            .into_iter()
            .map(|n| n.vertex)
            .filter(|v| v.part() == plain.part && v.is_brick_candidate(pr) && region.contains(*v, pr))
            .collect();
        highlights.insert("biperp".to_string(), canonical_set(drawn, pr));
    }
    let spec = RenderSpec::new(pr, part, window, highlights, format).map_err(domain)?;
    Ok(render(&spec))
}

fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Classify { file } => {
            let g = parse_graph(&read_file(file)?).map_err(domain)?;
            Ok(pretty(&classify(&g)))
        }
        Command::Algebra { file, emit } => {
            let g = parse_graph(&read_file(file)?).map_err(domain)?;
            let qp = build_quiver(&g).map_err(domain)?;
            Ok(match emit {
                AlgebraEmit::Json => pretty(&qp),
                AlgebraEmit::Dot => emit_quiver_dot(&qp),
            })
        }
        Command::Supports { params, vertex, window } => run_supports(params, vertex, *window),
        Command::Biperp { params, set, window } => run_biperp(params, set, *window),
        Command::EnumerateMax { params, set, euclidean_only } => run_enumerate(params, set, *euclidean_only),
        Command::CertifySms { params, set, window, trace } => run_certify(params, set, *window, trace.as_ref()),
        Command::OracleCheck { p, q, scope } => run_oracle(*p, *q, *scope),
        Command::Render { params, part, window, x0, y0, set, biperp_of, emit } => {
            run_render(params, part, *window, *x0, *y0, set.as_deref(), biperp_of.as_deref(), *emit)
        }
    }
}

/// Runs one invocation and returns its exit status.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Oracle { report, summary }) => {
            let _ = out.write_all(report.as_bytes());
            let _ = writeln!(err, "oracle check failed: {summary}");
            EXIT_ORACLE
        }
    }
}
