// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

//! `arcopt`: optimal polynomial approximants of circular arcs.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod angle;
mod svg;

use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use arcopt::optimizer::SolveOptions;
use arcopt::positivity::{certify_nonneg, format_rational, h2_instance, Certificate, PolyDocument};
use arcopt::radial::radial_error;
use arcopt::report::solve_report;
use arcopt::{optimal_with, ArcSpec, ControlPolygon, ErrorFunction, Scheme, TableRow, Tolerances};

use crate::angle::parse_angle;
use crate::svg::{Curve, Plot, MAX_CURVES};

const PLOT_SAMPLES: usize = 1024;
const DEFAULT_ANGLES: [&str; 6] = ["pi/2", "pi/3", "pi/4", "pi/6", "pi/8", "pi/12"];

#[derive(Parser)]
#[command(name = "arcopt", version, about = "Curvature-optimal Bézier approximants of circular arcs")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Outer solver tolerance in d.
    #[arg(long, global = true, env = "ARC_OPT_TOL", value_name = "X")]
    tol: Option<f64>,
    /// Suppress informational messages.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal parameter for one arc (JSON by default).
    Solve(SolveArgs),
    /// Table of curvature- and radial-optimal parameters as CSV.
    Table(TableArgs),
    /// SVG plot of the error function.
    Plot(PlotArgs),
    /// Curvature-optimal versus radial-optimal approximant.
    Compare(CompareArgs),
    /// Nonnegativity certificate for a polynomial on the unit box.
    Certify(CertifyArgs),
}

#[derive(Args)]
struct ArcArgs {
    /// Half angle φ: radians, `<x>deg`, or `pi/<k>`.
    #[arg(long, allow_hyphen_values = true)]
    angle: String,
    /// g0 (quadratic), g1 (cubic) or g2 (quartic).
    #[arg(long)]
    scheme: Scheme,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    arc: ArcArgs,
    /// Human-readable output instead of JSON.
    #[arg(long)]
    text: bool,
    /// Include the radial-optimal parameter.
    #[arg(long)]
    radial: bool,
    /// Replace the bracketing interval for d.
    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    bracket: Option<String>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    scheme: Scheme,
    /// Comma-separated half angles.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    angles: Vec<String>,
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKind {
    Curvature,
    Radial,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    arc: ArcArgs,
    /// Parameter values to overlay; defaults to d*.
    #[arg(long = "d", value_name = "D")]
    d: Vec<f64>,
    #[arg(long, value_enum, default_value = "curvature")]
    kind: PlotKind,
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    arc: ArcArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    /// The cubic boundary-slope numerator on the bracketing interval.
    H2,
}

#[derive(Args)]
struct CertifyArgs {
    /// Polynomial document `{"degrees", "basis", "coeffs"}`.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    input: Option<PathBuf>,
    /// Use a built-in instance instead of a file.
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
    /// Work in double precision instead of exact rationals.
    #[arg(long)]
    float: bool,
    /// Print the polynomial document instead of certifying it.
    #[arg(long)]
    dump: bool,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Solver(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Solver(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Solver(m) => f.write_str(m),
        }
    }
}

impl From<arcopt::Error> for CliError {
    fn from(e: arcopt::Error) -> Self {
        match e {
            arcopt::Error::Input(_) => CliError::Input(e.to_string()),
            _ => CliError::Solver(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

struct Ctx {
    json: bool,
    quiet: bool,
    opts: SolveOptions,
}

impl Ctx {
    fn info(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

fn arc_from(s: &str) -> CliResult<ArcSpec> {
    let phi = parse_angle(s).map_err(CliError::Input)?;
    Ok(ArcSpec::from_phi(phi)?)
}

fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    let res = match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to standard output: {e}")),
    };
    res.map_err(CliError::Input)
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Solver(e.to_string()))?;
    emit(None, &(text + "\n"))
}

fn parse_bracket(s: &str) -> CliResult<(f64, f64)> {
    let bad = || CliError::Input(format!("bracket must be LO,HI, got {s:?}"));
    let (lo, hi) = s.split_once(',').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn cmd_solve(ctx: &Ctx, args: &SolveArgs) -> CliResult<()> {
    let arc = arc_from(&args.arc.angle)?;
    let mut opts = ctx.opts;
    if let Some(b) = &args.bracket {
        opts.bracket = Some(parse_bracket(b)?);
    }
    let report = solve_report(&arc, args.arc.scheme, &opts, args.radial)?;
    if !args.text {
        return emit(None, &(report.to_json() + "\n"));
    }
    let mut s = String::new();
    let mut line = |k: &str, v: String| s.push_str(&format!("{k:<12}{v}\n"));
    line("scheme", report.scheme.to_string());
    line("phi", format!("{}", report.phi));
    line("c", format!("{}", report.c));
    line("d*", format!("{:.9}", report.d_star));
    line("branch", report.branch.clone());
    line("max error", format!("{:.6e}", report.max_error));
    line("d_e", format!("{:.9}", report.d_e));
    line("bounds", format!("[{:.9}, {:.9}]", report.bounds[0], report.bounds[1]));
    if let Some(r) = &report.radial {
        line("d_r", format!("{:.9}", r.d_r));
        line("radial err", format!("{:.6e}", r.radial_error));
    }
    s.push_str("extrema (t >= 0)\n");
    for e in &report.extrema {
        s.push_str(&format!("  t = {:<10.7} e = {:<14.6e} {}\n", e.t, e.value, e.kind.as_str()));
    }
    emit(None, &s)
}

fn table_rows(ctx: &Ctx, scheme: Scheme, angles: &[String]) -> CliResult<Vec<TableRow>> {
    let arcs = angles.iter().map(|a| arc_from(a)).collect::<CliResult<Vec<_>>>()?;
    let opts = ctx.opts;
    std::thread::scope(|s| {
        let handles: Vec<_> = arcs
            .iter()
            .map(|arc| s.spawn(move || TableRow::compute(arc, scheme, &opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .map_err(|_| CliError::Solver("table worker panicked".into()))?
                    .map_err(CliError::from)
            })
            .collect()
    })
}

fn cmd_table(ctx: &Ctx, args: &TableArgs) -> CliResult<()> {
    let angles: Vec<String> = if args.angles.is_empty() {
        DEFAULT_ANGLES.iter().map(|s| s.to_string()).collect()
    } else {
        args.angles.clone()
    };
    let rows = table_rows(ctx, args.scheme, &angles)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Solver(e.to_string());
    w.write_record(TableRow::HEADER).map_err(fail)?;
    for row in &rows {
        w.write_record(row.cells()).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Solver(e.to_string()))?;
    let text = String::from_utf8(bytes).map_err(|e| CliError::Solver(e.to_string()))?;
    emit(args.output.as_deref(), &text)?;
    if let Some(p) = &args.output {
        ctx.info(&format!("wrote {} rows to {}", rows.len(), p.display()));
    }
    Ok(())
}

fn sample_curve(arc: &ArcSpec, scheme: Scheme, d: f64, kind: PlotKind) -> CliResult<Vec<(f64, f64)>> {
    let ts = (0..PLOT_SAMPLES).map(|i| -1.0 + 2.0 * i as f64 / (PLOT_SAMPLES - 1) as f64);
    Ok(match kind {
        PlotKind::Curvature => {
            let e = ErrorFunction::new(scheme, arc.c(), d)?;
            ts.map(|t| (t, e.eval(t).unwrap_or(f64::NAN))).collect()
        }
        PlotKind::Radial => {
            let p = ControlPolygon::build(arc, scheme, d)?;
            ts.map(|t| (t, p.eval(t, 0).map(|q| q.hypot() - 1.0).unwrap_or(f64::NAN)))
                .collect()
        }
    })
}

fn cmd_plot(ctx: &Ctx, args: &PlotArgs) -> CliResult<()> {
    if args.d.len() > MAX_CURVES {
        return Err(CliError::Input(format!("at most {MAX_CURVES} values of d can be overlaid")));
    }
    let arc = arc_from(&args.arc.angle)?;
    let scheme = args.arc.scheme;
    let opt = optimal_with(scheme, arc.c(), &ctx.opts)?;
    let ds = if args.d.is_empty() { vec![opt.d_star] } else { args.d.clone() };
    let mut curves = Vec::new();
    for &d in &ds {
        let mut label = format!("d = {d:.6}");
        if (d - opt.d_star).abs() <= 1e-9 {
            label.push_str(&format!(" (d*, {})", opt.branch.as_str()));
        }
        curves.push(Curve {
            label,
            points: sample_curve(&arc, scheme, d, args.kind)?,
        });
    }
    let (what, y_label) = match args.kind {
        PlotKind::Curvature => ("curvature error", "1 − κ(t)"),
        PlotKind::Radial => ("radial error", "‖p(t)‖ − 1"),
    };
    let plot = Plot {
        title: format!("{what}, {scheme}, φ = {:.6} (c = {:.6})", arc.phi(), arc.c()),
        x_label: "t".into(),
        y_label: y_label.into(),
        curves,
    };
    emit(args.output.as_deref(), &plot.render())?;
    if let Some(p) = &args.output {
        ctx.info(&format!("wrote {}", p.display()));
    }
    Ok(())
}

#[derive(Serialize)]
struct Comparison {
    scheme: Scheme,
    #[serde(flatten)]
    row: TableRow,
    radial_extrema: usize,
}

fn cmd_compare(ctx: &Ctx, args: &CompareArgs) -> CliResult<()> {
    let arc = arc_from(&args.arc.angle)?;
    let scheme = args.arc.scheme;
    let row = TableRow::compute(&arc, scheme, &ctx.opts)?;
    let at_dr = radial_error(&ControlPolygon::build(&arc, scheme, row.d_r)?);
    let radial_extrema = at_dr.samples.len().saturating_sub(2);
    if ctx.json {
        return print_json(&Comparison {
            scheme,
            row,
            radial_extrema,
        });
    }
    let s = format!(
        "{scheme}, phi = {}, c = {}\n\
         {:<10}{:>12}{:>18}{:>16}\n\
         {:<10}{:>12.6}{:>18.4e}{:>16.4e}\n\
         {:<10}{:>12.6}{:>18.4e}{:>16.4e}\n",
        row.phi,
        row.c,
        "optimum",
        "d",
        "curvature error",
        "radial error",
        "curvature",
        row.d_star,
        row.curvature_error,
        row.radial_error,
        "radial",
        row.d_r,
        row.curvature_error_at_dr,
        row.radial_error_at_dr,
    );
    emit(None, &s)
}

#[derive(Serialize)]
struct CertifyOutput {
    result: &'static str,
    degrees: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_coeff: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<Vec<usize>>,
}

fn cmd_certify(ctx: &Ctx, args: &CertifyArgs) -> CliResult<()> {
    let doc = match (&args.builtin, &args.input) {
        (Some(Builtin::H2), _) => PolyDocument::exact(&h2_instance()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            PolyDocument::from_json(&text)?
        }
        (None, None) => return Err(CliError::Input("no polynomial given".into())),
    };
    if args.dump {
        return emit(None, &(doc.to_json() + "\n"));
    }
    let (degrees, outcome) = if args.float {
        let b = doc.bform_f64()?;
        let out = match certify_nonneg(&b) {
            Certificate::Certified => None,
            Certificate::Inconclusive { min_coeff, index } => Some((format!("{min_coeff:e}"), index)),
        };
        (b.degrees, out)
    } else {
        let b = doc.bform_exact()?;
        let out = match certify_nonneg(&b) {
            Certificate::Certified => None,
            Certificate::Inconclusive { min_coeff, index } => Some((format_rational(&min_coeff), index)),
        };
        (b.degrees, out)
    };
    let out = CertifyOutput {
        result: if outcome.is_some() { "inconclusive" } else { "certified" },
        degrees,
        min_coeff: outcome.as_ref().map(|o| o.0.clone()),
        index: outcome.map(|o| o.1),
    };
    if ctx.json {
        return print_json(&out);
    }
    match (&out.min_coeff, &out.index) {
        (Some(m), Some(i)) => emit(
            None,
            &format!("inconclusive: coefficient {m} at index {i:?} is negative\n"),
        ),
        _ => emit(None, &format!("certified: nonnegative on [0,1]^{}\n", out.degrees.len())),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let tol = match cli.tol {
        Some(x) => Tolerances::with_outer(x)?,
        None => Tolerances::default(),
    };
    let ctx = Ctx {
        json: cli.json,
        quiet: cli.quiet,
        opts: SolveOptions { tol, bracket: None },
    };
    match &cli.command {
        Command::Solve(a) => cmd_solve(&ctx, a),
        Command::Table(a) => cmd_table(&ctx, a),
        Command::Plot(a) => cmd_plot(&ctx, a),
        Command::Compare(a) => cmd_compare(&ctx, a),
        Command::Certify(a) => cmd_certify(&ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
