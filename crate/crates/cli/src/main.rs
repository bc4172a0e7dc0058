//! `coljones`: compute and cross-check the colored Jones weight system on
//! chord diagrams from the command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coljones::chord::enumerate_diagrams;
use coljones::permanent::{build_imj, render_block_layout};
use coljones::recursion::trace;
use coljones::statesum::{build_lid, census};
use coljones::verify::{
    evaluate, verify_diagram, verify_exhaustive_reports, verify_relations, HarnessConfig, Method,
};
use coljones::{ChordDiagram, IntPoly, Variable, VerificationReport};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "coljones",
    version,
    about = "Colored Jones weight system on chord diagrams"
)]
struct Cli {
    #[command(flatten)]
    caps: Caps,

    /// Print `lambda` instead of `λ` in text output.
    #[arg(long, global = true)]
    ascii: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Caps {
    /// Largest chord count for the permanent method.
    #[arg(long, global = true, value_name = "N")]
    max_permanent_chords: Option<usize>,
    /// Largest chord count for the state-sum method.
    #[arg(long, global = true, value_name = "N")]
    max_statesum_chords: Option<usize>,
    /// Largest chord count for the coloring recursion.
    #[arg(long, global = true, value_name = "N")]
    max_recursion_chords: Option<usize>,
}

#[derive(Args, Debug)]
struct DiagramInput {
    /// Chord diagram as `CDP[a1,...,a2n]` or a bare involution list.
    #[arg(
        long,
        short = 'd',
        conflicts_with = "diagram_file",
        required_unless_present = "diagram_file"
    )]
    diagram: Option<String>,
    /// File holding the diagram in the same notation.
    #[arg(long, value_name = "PATH")]
    diagram_file: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate W_J with one or all methods and cross-check them.
    Compute {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, short = 'm', value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        #[arg(long, short = 'f', value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include per-method wall-clock times (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Print the intersection matrix or its blown-up variant.
    Matrix {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, value_enum, default_value_t = Which::Imj)]
        which: Which,
        /// Show block labels instead of entries (blown-up matrix only).
        #[arg(long)]
        blocks: bool,
        #[arg(long, short = 'f', value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the coefficients of W_J in powers of λ or of d = λ + 2.
    Coeffs {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, value_enum, default_value_t = Basis::Lambda)]
        basis: Basis,
        #[arg(long, short = 'm', value_enum, default_value_t = SingleMethod::Permanent)]
        method: SingleMethod,
        #[arg(long, short = 'f', value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List every diagram with N chords, optionally verifying each one.
    Enumerate {
        #[arg(long, short = 'n')]
        chords: usize,
        /// Run the selected methods on every diagram.
        #[arg(long)]
        verify: bool,
        #[arg(long, short = 'm', value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        /// With --verify, print only the summary line.
        #[arg(long)]
        summary_only: bool,
        #[arg(long, short = 'f', value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the one-term and four-term relations on all diagrams with N chords.
    Relations {
        #[arg(long, short = 'n')]
        chords: usize,
        #[arg(long, short = 'm', value_enum, default_value_t = SingleMethod::Permanent)]
        method: SingleMethod,
        #[arg(long, short = 'f', value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export every acceptable object of the state sum, one JSON record per line.
    Census {
        #[command(flatten)]
        input: DiagramInput,
    },
    /// Export every coloring of the recursion, one JSON record per line.
    Trace {
        #[command(flatten)]
        input: DiagramInput,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MethodArg {
    Permanent,
    Statesum,
    Recursion,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Permanent => vec![Method::Permanent],
            MethodArg::Statesum => vec![Method::StateSum],
            MethodArg::Recursion => vec![Method::Recursion],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SingleMethod {
    Permanent,
    Statesum,
    Recursion,
}

impl From<SingleMethod> for Method {
    fn from(m: SingleMethod) -> Method {
        match m {
            SingleMethod::Permanent => Method::Permanent,
            SingleMethod::Statesum => Method::StateSum,
            SingleMethod::Recursion => Method::Recursion,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    /// Mathematica-style polynomials in `x`.
    Compat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Which {
    Im,
    Imj,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Basis {
    Lambda,
    D,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<coljones::ChordError> for Failure {
    fn from(e: coljones::ChordError) -> Self {
        Failure::Input(format!("invalid diagram: {e}"))
    }
}

struct Ctx {
    config: HarnessConfig,
    ascii: bool,
}

impl Ctx {
    fn var(&self, format: Format) -> Variable {
        match format {
            Format::Compat => Variable::X,
            _ if self.ascii => Variable::LambdaAscii,
            _ => Variable::Lambda,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        config: harness_config(&cli.caps),
        ascii: cli.ascii,
    };
    let mut out = String::new();
    let result = run(&cli.command, &ctx, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn harness_config(caps: &Caps) -> HarnessConfig {
    let defaults = HarnessConfig::default();
    let mut config = defaults;
    let overrides = [
        (
            Method::Permanent,
            caps.max_permanent_chords,
            &mut config.permanent_max_chords,
        ),
        (
            Method::StateSum,
            caps.max_statesum_chords,
            &mut config.statesum_max_chords,
        ),
        (
            Method::Recursion,
            caps.max_recursion_chords,
            &mut config.recursion_max_chords,
        ),
    ];
    for (method, value, slot) in overrides {
        if let Some(v) = value {
            if v != *slot {
                eprintln!(
                    "warning: {method} cap set to {v} chords (default {})",
                    defaults.cap(method)
                );
            }
            *slot = v;
        }
    }
    config
}

fn read_diagram(input: &DiagramInput) -> Result<ChordDiagram, Failure> {
    let text = match (&input.diagram, &input.diagram_file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?,
        (None, None) => return Err(Failure::Input("no diagram given".into())),
    };
    Ok(ChordDiagram::parse_cdp(&text)?)
}

fn check_cap(ctx: &Ctx, method: Method, n: usize) -> Result<(), Failure> {
    let cap = ctx.config.cap(method);
    if n > cap {
        return Err(Failure::Input(format!(
            "{n} chords exceeds the {method} cap of {cap}; raise it with --max-{method}-chords"
        )));
    }
    Ok(())
}

fn run(command: &Command, ctx: &Ctx, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Compute {
            input,
            method,
            format,
            timings,
        } => compute(
            &read_diagram(input)?,
            &method.methods(),
            *format,
            *timings,
            ctx,
            out,
        ),
        Command::Matrix {
            input,
            which,
            blocks,
            format,
        } => matrix(&read_diagram(input)?, *which, *blocks, *format, ctx, out),
        Command::Coeffs {
            input,
            basis,
            method,
            format,
        } => coeffs(
            &read_diagram(input)?,
            *basis,
            (*method).into(),
            *format,
            ctx,
            out,
        ),
        Command::Enumerate {
            chords,
            verify,
            method,
            summary_only,
            format,
        } => enumerate(
            *chords,
            *verify,
            &method.methods(),
            *summary_only,
            *format,
            ctx,
            out,
        ),
        Command::Relations {
            chords,
            method,
            format,
        } => relations(*chords, (*method).into(), *format, ctx, out),
        Command::Census { input } => {
            let d = read_diagram(input)?;
            check_cap(ctx, Method::StateSum, d.n())?;
            for rec in census(&build_lid(&d), ctx.var(Format::Text)) {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&rec).expect("serializable")
                )
                .unwrap();
            }
            Ok(())
        }
        Command::Trace { input } => {
            let d = read_diagram(input)?;
            check_cap(ctx, Method::Recursion, d.n())?;
            for rec in trace(&d, ctx.var(Format::Text)) {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&rec).expect("serializable")
                )
                .unwrap();
            }
            Ok(())
        }
    }
}

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "not checked",
    }
}

fn compute(
    d: &ChordDiagram,
    methods: &[Method],
    format: Format,
    timings: bool,
    ctx: &Ctx,
    out: &mut String,
) -> Result<(), Failure> {
    let report = verify_diagram(d, methods, &ctx.config);
    let var = ctx.var(format);
    match format {
        Format::Json => {
            let v = report.to_json(var, timings);
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).unwrap();
        }
        Format::Compat if report.passed() => {
            writeln!(out, "{}", report.value().expect("agreed value").render(var)).unwrap();
        }
        _ => write_report_text(&report, var, timings, out),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(describe_failure(&report)))
    }
}

fn write_report_text(report: &VerificationReport, var: Variable, timings: bool, out: &mut String) {
    writeln!(out, "diagram: {}", report.diagram).unwrap();
    for o in &report.outcomes {
        let value = match &o.result {
            Ok(p) => p.render(var),
            Err(e) => format!("error: {e}"),
        };
        if timings {
            writeln!(
                out,
                "{}: {} ({:.3} ms)",
                o.method,
                value,
                o.elapsed.as_secs_f64() * 1e3
            )
            .unwrap();
        } else {
            writeln!(out, "{}: {}", o.method, value).unwrap();
        }
    }
    writeln!(out, "agreement: {}", flag(Some(report.agreement))).unwrap();
    writeln!(
        out,
        "top coefficient equals Per(IM): {}",
        flag(report.top_coefficient)
    )
    .unwrap();
    writeln!(
        out,
        "d-basis coefficients match state-sum counts: {}",
        flag(report.d_basis_counts)
    )
    .unwrap();
}

fn describe_failure(report: &VerificationReport) -> String {
    if let Some(e) = report.outcomes.iter().find_map(|o| o.result.as_ref().err()) {
        return format!("{}: {e}", report.diagram);
    }
    if !report.agreement {
        return format!("{}: methods disagree", report.diagram);
    }
    format!("{}: coefficient identity violated", report.diagram)
}

fn matrix(
    d: &ChordDiagram,
    which: Which,
    blocks: bool,
    format: Format,
    ctx: &Ctx,
    out: &mut String,
) -> Result<(), Failure> {
    let var = ctx.var(format);
    match (which, format) {
        (Which::Im, Format::Json) => {
            writeln!(out, "{}", json!(d.intersection_matrix())).unwrap();
        }
        (Which::Im, _) => {
            for row in d.intersection_matrix() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                writeln!(out, "[{}]", cells.join(", ")).unwrap();
            }
        }
        (Which::Imj, _) if blocks => out.push_str(&render_block_layout(d)),
        (Which::Imj, Format::Json) => {
            let m = build_imj(d);
            let rows: Vec<Vec<String>> = (0..m.size())
                .map(|i| m.row(i).iter().map(|p| p.render(var)).collect())
                .collect();
            writeln!(out, "{}", json!(rows)).unwrap();
        }
        (Which::Imj, _) => out.push_str(&build_imj(d).render(var)),
    }
    Ok(())
}

fn single_value(d: &ChordDiagram, method: Method, ctx: &Ctx) -> Result<IntPoly, Failure> {
    check_cap(ctx, method, d.n())?;
    evaluate(d, method, &ctx.config).map_err(|e| Failure::Input(e.to_string()))
}

fn coeffs(
    d: &ChordDiagram,
    basis: Basis,
    method: Method,
    format: Format,
    ctx: &Ctx,
    out: &mut String,
) -> Result<(), Failure> {
    let value = single_value(d, method, ctx)?;
    let (poly, symbol, name) = match basis {
        Basis::Lambda => (value, ctx.var(format).symbol(), "lambda"),
        Basis::D => (value.to_d_basis(), "d", "d"),
    };
    // Powers run from the chord count down, even where coefficients vanish.
    let top = poly.degree().unwrap_or(0).max(d.n());
    if format == Format::Json {
        let coeffs: Vec<String> = (0..=top).map(|k| poly.coefficient(k).to_string()).collect();
        let v = json!({ "diagram": d.to_cdp(), "basis": name, "coefficients": coeffs });
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).unwrap();
        return Ok(());
    }
    for k in (0..=top).rev() {
        writeln!(out, "{symbol}^{k}\t{}", poly.coefficient(k)).unwrap();
    }
    Ok(())
}

fn enumerate(
    n: usize,
    verify: bool,
    methods: &[Method],
    summary_only: bool,
    format: Format,
    ctx: &Ctx,
    out: &mut String,
) -> Result<(), Failure> {
    if !verify {
        for d in enumerate_diagrams(n) {
            writeln!(out, "{d}").unwrap();
        }
        return Ok(());
    }
    for &m in methods {
        check_cap(ctx, m, n)?;
    }
    let (summary, reports) = verify_exhaustive_reports(n, methods, &ctx.config);
    let var = ctx.var(format);
    if format == Format::Json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&summary).expect("json")
        )
        .unwrap();
    } else {
        if !summary_only {
            for r in &reports {
                let value = r.value().map_or_else(|| "-".to_string(), |v| v.render(var));
                let status = if r.passed() { "ok" } else { "FAIL" };
                writeln!(out, "{}\t{}\t{}", r.diagram, value, status).unwrap();
            }
        }
        writeln!(out, "{summary}").unwrap();
    }
    if summary.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{} of {} diagrams failed",
            summary.failures.len(),
            summary.diagrams
        )))
    }
}

fn relations(
    n: usize,
    method: Method,
    format: Format,
    ctx: &Ctx,
    out: &mut String,
) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Input("relations need at least one chord".into()));
    }
    check_cap(ctx, method, n)?;
    let summary = verify_relations(n, method, &ctx.config);
    if format == Format::Json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&summary).expect("json")
        )
        .unwrap();
    } else {
        writeln!(
            out,
            "1T: checked={} violations={}",
            summary.one_term_checked,
            summary.one_term_violations.len()
        )
        .unwrap();
        for v in &summary.one_term_violations {
            writeln!(out, "  1T violation: {v}").unwrap();
        }
        writeln!(
            out,
            "4T: checked={} violations={}",
            summary.four_term_checked,
            summary.four_term_violations.len()
        )
        .unwrap();
        for v in &summary.four_term_violations {
            writeln!(out, "  4T violation: {v}").unwrap();
        }
        for e in &summary.errors {
            writeln!(out, "  error: {e}").unwrap();
        }
    }
    if summary.holds() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("relations fail at n={n}")))
    }
}
