//! The `minkowski` command line.
//!
//! Exit codes: 0 success (or `holds_numerically`), 1 runtime/I/O failure or
//! golden mismatch, 2 invalid input, 3 refuted conjecture or failed convexity.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::closed_form;
use crate::conjecture::{sweep_family, test_conjecture, ConjectureReport, Verdict};
use crate::energy::{
    angle_distance, energy_profile, find_critical_points, format_f64, multiples_of, CriticalKind, CriticalPoint,
    DEFAULT_ANGLES,
};
use crate::error::Error;
use crate::norms::{MetricDefinition, MinkowskiNorm};
use crate::tensor::check_strong_convexity;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_REFUTED: i32 = 3;

/// Default relative tolerance for golden-value comparisons.
pub const GOLDEN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "minkowski", version, about = "Minkowski norm analysis and Matsumoto's conjecture")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Number of angles on the indicatrix grid.
    #[arg(long = "n", global = true, default_value_t = DEFAULT_ANGLES)]
    pub n_angles: usize,

    /// Relative tolerance for golden-value comparisons.
    #[arg(long, global = true, default_value_t = GOLDEN_TOLERANCE)]
    pub tol: f64,

    /// Output file (or directory for reproduce-paper).
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recompute both worked examples of the quartic counterexample and check them.
    ReproducePaper,
    /// Write the relative-energy profile E_X(θ) along the indicatrix.
    Profile(VectorArgs),
    /// Decide whether E_X attains its minimum at X / F(X).
    Conjecture(VectorArgs),
    /// Refutation statistics across the quartic family.
    Sweep(SweepArgs),
    /// Check strong convexity of the fundamental tensor.
    Convexity(MetricArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("metric_source").required(true).multiple(false)))]
pub struct MetricArgs {
    /// Use (y1^4 + 3 y1^2 y2^2 + y2^4)^(1/4).
    #[arg(long, group = "metric_source")]
    pub paper_metric: bool,
    /// Use (y1^4 + c y1^2 y2^2 + y2^4)^(1/4).
    #[arg(long, group = "metric_source", allow_hyphen_values = true)]
    pub family_c: Option<f64>,
    /// Read an m-th-root metric from a JSON file.
    #[arg(long, group = "metric_source")]
    pub metric: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VectorArgs {
    #[command(flatten)]
    pub metric: MetricArgs,
    /// Components of X, comma separated (use --x=-1,0 for a leading minus).
    #[arg(long = "x", value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub x: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated values of c.
    #[arg(long, value_parser = parse_c_list, required = true)]
    pub c_list: CList,
    /// Number of unit directions X per value of c.
    #[arg(long, default_value_t = 8)]
    pub dirs: usize,
}

#[derive(Debug, Clone)]
pub struct CList(pub Vec<f64>);

fn parse_c_list(s: &str) -> Result<CList, String> {
    let values = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err("at least one value of c is required".into());
    }
    Ok(CList(values))
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Json(_) | Error::NoCriticalPoints(_) => EXIT_FAILURE,
            _ => EXIT_INVALID,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_FAILURE, message: e.to_string() }
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ =
                if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::ReproducePaper => reproduce_paper(cli, out),
        Command::Profile(args) => profile(cli, args, out),
        Command::Conjecture(args) => conjecture(cli, args, out),
        Command::Sweep(args) => sweep(cli, args, out),
        Command::Convexity(args) => convexity(cli, args, out),
    }
}

fn load_metric(args: &MetricArgs) -> Result<MinkowskiNorm, Failure> {
    if args.paper_metric {
        Ok(MinkowskiNorm::paper_metric())
    } else if let Some(c) = args.family_c {
        if !c.is_finite() {
            return Err(Failure { code: EXIT_INVALID, message: format!("c = {c} is not finite") });
        }
        Ok(MinkowskiNorm::quartic_family(c))
    } else if let Some(path) = &args.metric {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure { code: EXIT_INVALID, message: format!("{}: {e}", path.display()) })?;
        Ok(MetricDefinition::from_json(&text)?.to_norm()?)
    } else {
        Err(Failure { code: EXIT_INVALID, message: "no metric source given".into() })
    }
}

fn write_output(path: Option<&Path>, contents: &str, out: &mut dyn Write) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, contents),
        None => out.write_all(contents.as_bytes()),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

/// Formats with 6 significant digits, dropping trailing zeros (like C's `%g`).
pub fn format_short(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    let trim = |s: String| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_owned()
        } else {
            s
        }
    };
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim(format!("{v:.decimals$}"))
    } else {
        let s = format!("{v:.5e}");
        let (mantissa, exponent) = s.split_once('e').unwrap_or((&s, "0"));
        format!("{}e{exponent}", trim(mantissa.to_owned()))
    }
}

fn profile(cli: &Cli, args: &VectorArgs, out: &mut dyn Write) -> CmdResult {
    let norm = load_metric(&args.metric)?;
    let profile = energy_profile(&norm, &args.x, cli.n_angles)?;
    let body = match cli.format {
        Format::Csv => profile.to_csv(),
        Format::Json => to_json(&profile)?,
    };
    write_output(cli.output.as_deref(), &body, out)?;
    if let Some(path) = &cli.output {
        let markers = ProfileMarkers {
            metric_id: norm.description().to_owned(),
            x: args.x.clone(),
            multiples_of_x: multiples_of([args.x[0], args.x[1]]).to_vec(),
        };
        fs::write(path.with_extension("markers.json"), to_json(&markers)?)?;
    }
    Ok(EXIT_OK)
}

/// Angles of the scalar multiples of `X`, written next to a profile file.
#[derive(Debug, Serialize)]
struct ProfileMarkers {
    metric_id: String,
    x: Vec<f64>,
    multiples_of_x: Vec<f64>,
}

fn print_report(report: &ConjectureReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "metric:          {}", report.metric_id)?;
    writeln!(out, "X:               ({})", report.x.iter().map(|v| format_short(*v)).collect::<Vec<_>>().join(", "))?;
    writeln!(out, "convexity:       {}", if report.convexity_pass { "pass" } else { "FAIL" })?;
    writeln!(out, "self energy:     {}", format_short(report.self_energy))?;
    writeln!(
        out,
        "global min:      {} at theta = {}",
        format_short(report.global_min),
        format_short(report.global_min_location.theta)
    )?;
    writeln!(out, "margin:          {}", format_short(report.margin))?;
    let verdict = match report.verdict {
        Verdict::Refuted => "refuted",
        Verdict::HoldsNumerically => "holds_numerically",
    };
    writeln!(out, "verdict:         {verdict}")?;
    for p in &report.critical_points {
        writeln!(
            out,
            "  critical theta = {:<10} E = {:<10} {}",
            format_short(p.theta),
            format_short(p.energy),
            kind_name(p.kind)
        )?;
    }
    Ok(())
}

fn kind_name(kind: CriticalKind) -> &'static str {
    match kind {
        CriticalKind::LocalMin => "local_min",
        CriticalKind::LocalMax => "local_max",
        CriticalKind::Inflection => "inflection",
    }
}

fn conjecture(cli: &Cli, args: &VectorArgs, out: &mut dyn Write) -> CmdResult {
    let norm = load_metric(&args.metric)?;
    let report = test_conjecture(&norm, &args.x, cli.n_angles)?;
    match cli.format {
        Format::Json => out.write_all(to_json(&report)?.as_bytes())?,
        Format::Csv => print_report(&report, out)?,
    }
    if !report.is_refuted() {
        return Ok(EXIT_OK);
    }
    if let Some(cert) = &report.certificate {
        let path = cli.output.clone().unwrap_or_else(|| PathBuf::from("certificate.json"));
        fs::write(&path, to_json(cert)?)?;
        writeln!(out, "certificate:     {}", path.display())?;
    }
    Ok(EXIT_REFUTED)
}

fn sweep(cli: &Cli, args: &SweepArgs, out: &mut dyn Write) -> CmdResult {
    let summary = sweep_family(&args.c_list.0, args.dirs, cli.n_angles)?;
    let json = to_json(&summary)?;
    match &cli.output {
        Some(path) => {
            fs::write(path, &json)?;
            writeln!(out, "{:>10}  {:>9}  {:>8}  note", "c", "convexity", "refuted")?;
            for e in &summary.entries {
                writeln!(
                    out,
                    "{:>10}  {:>9}  {:>8}  {}",
                    format_short(e.c),
                    if e.convexity_pass { "pass" } else { "fail" },
                    format!("{}/{}", e.refuted, e.evaluated),
                    e.error.as_deref().unwrap_or("")
                )?;
            }
        }
        None => out.write_all(json.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn convexity(cli: &Cli, args: &MetricArgs, out: &mut dyn Write) -> CmdResult {
    let norm = load_metric(args)?;
    let report = check_strong_convexity(&norm, cli.n_angles)?;
    write_output(cli.output.as_deref(), &to_json(&report)?, out)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_REFUTED })
}

/// One checked value in the reproduction table.
struct Row {
    label: &'static str,
    computed: Option<f64>,
    expected: f64,
}

fn locus_energy(points: &[CriticalPoint], direction: [f64; 2]) -> Option<f64> {
    let t = direction[1].atan2(direction[0]);
    points
        .iter()
        .filter(|p| angle_distance(p.theta, t) <= 1e-6 || angle_distance(p.theta, t + std::f64::consts::PI) <= 1e-6)
        .map(|p| p.energy)
        .next()
}

struct Example {
    name: &'static str,
    file: &'static str,
    x: [f64; 2],
    golden: [f64; 5],
    min_margin: f64,
}

fn examples() -> [Example; 2] {
    let r5 = 5f64.sqrt();
    [
        Example {
            name: "Example 1",
            file: "example1.csv",
            x: [1.0, 0.0],
            golden: [0.5, 0.5, 0.75, 1.0 / r5, 1.0 / r5],
            min_margin: 0.05,
        },
        Example {
            name: "Example 2",
            file: "example2.csv",
            x: [1.0, 3.0],
            golden: [109f64.sqrt() / 2.0, 29.0 / 4.0, 21.0 / 4.0, 23.0 / (2.0 * r5), 17.0 / (2.0 * r5)],
            min_margin: 1.4,
        },
    ]
}

fn reproduce_paper(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let dir = cli.output.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    let norm = MinkowskiNorm::paper_metric();
    let tol = cli.tol;
    let mut mismatches: Vec<String> = Vec::new();
    let close = |a: f64, b: f64| (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE);

    writeln!(out, "metric: F(y) = (y1^4 + 3 y1^2 y2^2 + y2^4)^(1/4)")?;
    let conv = check_strong_convexity(&norm, cli.n_angles.max(64))?;
    writeln!(out, "\nconvexity over {} angles: {}", conv.n_angles, if conv.pass { "pass" } else { "FAIL" })?;
    writeln!(
        out,
        "  min eigenvalue of g = {} at theta = {}",
        format_short(conv.min_eigenvalue),
        format_short(conv.argmin_angle)
    )?;
    if !conv.pass {
        mismatches.push("fundamental tensor is not positive definite".into());
    }
    if let Some(cf) = &conv.closed_form {
        writeln!(out, "  trace(g) at (1,0) = {} (expected 2.5)", format_short(cf.trace_on_axis))?;
        writeln!(out, "  det(g) at (1,0) = {} (expected 1.5)", format_short(cf.det_on_axis))?;
        writeln!(
            out,
            "  max relative error vs closed forms: trace {:.1e}, det {:.1e}",
            cf.max_trace_rel_error, cf.max_det_rel_error
        )?;
        for (what, got, want) in [("trace(g)", cf.trace_on_axis, 2.5), ("det(g)", cf.det_on_axis, 1.5)] {
            if !close(got, want) {
                mismatches.push(format!("{what} at (1,0): got {got}, expected {want}"));
            }
        }
    }

    for ex in examples() {
        let points = find_critical_points(&norm, &ex.x, cli.n_angles)?;
        let labels = ["E_X(X)", "E_X(ȳ₁,0)", "E_X(0,ȳ₂)", "E_X(ȳ₁,ȳ₁)", "E_X(ȳ₁,−ȳ₁)"];
        let dirs = [ex.x, [1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, -1.0]];
        let rows: Vec<Row> = labels
            .iter()
            .zip(dirs)
            .zip(ex.golden)
            .map(|((&label, d), expected)| Row { label, computed: locus_energy(&points, d), expected })
            .collect();

        writeln!(out, "\n{}: X = ({}, {})", ex.name, format_short(ex.x[0]), format_short(ex.x[1]))?;
        for row in &rows {
            match row.computed {
                Some(v) => {
                    let ok = close(v, row.expected);
                    writeln!(
                        out,
                        "  {} = {}    expected {}    {}",
                        row.label,
                        format_short(v),
                        format_short(row.expected),
                        if ok { "ok" } else { "MISMATCH" }
                    )?;
                    if !ok {
                        mismatches.push(format!(
                            "{} {}: got {}, expected {}",
                            ex.name,
                            row.label,
                            format_f64(v),
                            format_f64(row.expected)
                        ));
                    }
                }
                None => {
                    writeln!(
                        out,
                        "  {} = (not found)    expected {}    MISMATCH",
                        row.label,
                        format_short(row.expected)
                    )?;
                    mismatches.push(format!("{} {}: no critical point found on this locus", ex.name, row.label));
                }
            }
        }
        // kinds of the critical points at the multiples of X
        for t in multiples_of(ex.x) {
            if let Some(p) = points.iter().find(|p| angle_distance(p.theta, t) <= 1e-6) {
                writeln!(out, "  critical point at theta = {}: {}", format_short(t), kind_name(p.kind))?;
            }
        }

        let report = test_conjecture(&norm, &ex.x, cli.n_angles)?;
        let verdict = if report.is_refuted() { "refuted" } else { "holds_numerically" };
        writeln!(
            out,
            "  conjecture: {verdict} (self energy {}, global min {} at theta = {}, margin {})",
            format_short(report.self_energy),
            format_short(report.global_min),
            format_short(report.global_min_location.theta),
            format_short(report.margin)
        )?;
        if !report.is_refuted() {
            mismatches.push(format!("{}: expected the conjecture to be refuted", ex.name));
        } else if report.margin < ex.min_margin {
            mismatches.push(format!("{}: margin {} below {}", ex.name, report.margin, ex.min_margin));
        }
        match report.certificate.as_ref().map(|c| c.verify()) {
            Some(Ok(check)) if check.is_valid() => writeln!(out, "  certificate: verified independently")?,
            Some(Ok(check)) => mismatches.push(format!("{}: certificate failed recomputation: {check:?}", ex.name)),
            Some(Err(e)) => mismatches.push(format!("{}: certificate check error: {e}", ex.name)),
            None if report.is_refuted() => mismatches.push(format!("{}: no certificate produced", ex.name)),
            None => {}
        }

        let profile = energy_profile(&norm, &ex.x, cli.n_angles.max(256))?;
        let path = dir.join(ex.file);
        fs::write(&path, profile.to_csv())?;
        writeln!(out, "  profile: {} ({} rows)", path.display(), profile.len())?;
    }

    // direct cross-check of the critical values against the hand-derived energy
    for ex in examples() {
        let cv = closed_form::critical_values(ex.x);
        let direct = [cv.at_x, cv.axis_1, cv.axis_2, cv.diagonal, cv.anti_diagonal];
        for (d, g) in direct.iter().zip(ex.golden) {
            if !close(*d, g) {
                mismatches.push(format!("{}: closed-form value {d} differs from golden {g}", ex.name));
            }
        }
    }

    if mismatches.is_empty() {
        writeln!(out, "\nall golden values match")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "\n{} mismatch(es):", mismatches.len())?;
        for m in &mismatches {
            writeln!(out, "  - {m}")?;
        }
        Ok(EXIT_FAILURE)
    }
}
