//! Command-line front end: CSV ingestion, command dispatch and rendering.
//!
//! [`run`] never prints or exits; it returns the exit code together with the
//! bytes destined for stdout and stderr so the binary stays a thin shell.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::convergence::{self, Study};
use crate::differentiation::{derivative_with_policy, OrderPolicy};
use crate::divided_difference::{render_new_dd_table, NewDdTable, DEFAULT_TABLE_R};
use crate::error::Error as NumError;
use crate::interpolation::{interpolate, InterpolationRequest, DEFAULT_R};
use crate::oracle;
use crate::quadrature::integrate_composite;
use crate::samples::{SampleSet, Scheme};

/// Largest accepted stencil degree `n`.
pub const MAX_DEGREE: usize = 50;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Significant digits for human-facing and machine output.
pub const TEXT_DIGITS: usize = 12;
pub const JSON_DIGITS: usize = 17;

const SCHEME_TOLERANCE: f64 = 1e-9;
const ORACLE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("line {line}: {source}")]
    Data { line: usize, source: NumError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(#[from] NumError),
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numeric(e) if e.is_numeric() => EXIT_NUMERIC,
            CliError::Check(_) => EXIT_NUMERIC,
            _ => EXIT_INPUT,
        }
    }
}

// ---------------------------------------------------------------------------
// CSV

/// Parses `x,f` rows. Blank lines and lines starting with `#` are skipped;
/// a leading `x,f` header is optional.
pub fn parse_csv_str(text: &str) -> Result<SampleSet, CliError> {
    let mut xs = Vec::new();
    let mut fs = Vec::new();
    let mut lines = Vec::new();
    let mut seen_row = false;

    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw).trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if !seen_row && fields.len() == 2 && fields[0].eq_ignore_ascii_case("x") && fields[1].eq_ignore_ascii_case("f") {
            seen_row = true;
            continue;
        }
        seen_row = true;
        if fields.len() != 2 {
            return Err(CliError::Parse {
                line: line_no,
                column: fields.len().min(2) + 1,
                message: format!("expected 2 fields, found {}", fields.len()),
            });
        }
        let mut parsed = [0.0; 2];
        for (col, field) in fields.iter().enumerate() {
            parsed[col] = parse_decimal(field).ok_or_else(|| CliError::Parse {
                line: line_no,
                column: col + 1,
                message: format!("'{field}' is not a decimal number"),
            })?;
        }
        xs.push(parsed[0]);
        fs.push(parsed[1]);
        lines.push(line_no);
    }

    SampleSet::new(xs, fs).map_err(|e| attach_line(e, &lines))
}

fn parse_decimal(field: &str) -> Option<f64> {
    let ok = !field.is_empty()
        && field
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'));
    if ok {
        field.parse().ok()
    } else {
        None
    }
}

fn attach_line(e: NumError, lines: &[usize]) -> CliError {
    let line = match e {
        NumError::DuplicateNode { second, .. } => lines[second],
        NumError::NonFinite { index } => lines[index],
        NumError::Empty => 0,
        _ => lines.first().copied().unwrap_or(0),
    };
    if line == 0 {
        CliError::Usage("input holds no samples".into())
    } else {
        CliError::Data { line, source: e }
    }
}

pub fn parse_csv(path: &Path) -> Result<SampleSet, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_csv_str(&text)
}

// ---------------------------------------------------------------------------
// Arguments

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum SchemeArg {
    #[default]
    Neville,
    Aitken,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Neville => Scheme::Neville,
            SchemeArg::Aitken => Scheme::Aitken,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum StudyKind {
    #[default]
    Derivative,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Interp,
    Diff,
    Integrate,
    Table,
    Convergence,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Interp => "interp",
            CommandKind::Diff => "diff",
            CommandKind::Integrate => "integrate",
            CommandKind::Table => "table",
            CommandKind::Convergence => "convergence",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "iterkit", version, about = "Iterated divided-difference interpolation, differentiation and integration")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Numerical scheme for the iterated tableaux.
    #[arg(long, value_enum, default_value_t)]
    pub scheme: SchemeArg,
    /// Output format.
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Cross-check against the other scheme and the exact rational path.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Interpolate at a point.
    Interp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        /// Newton prefix length.
        #[arg(long, default_value_t = DEFAULT_R)]
        r: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Estimate the t-th derivative at an off-node point.
    Diff {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long)]
        t: usize,
        /// Permit t > n.
        #[arg(long)]
        allow_high_order: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Integrate over [x, x + h].
    Integrate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        #[arg(long, default_value_t = 1)]
        panels: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Render the two-part divided-difference table at x.
    Table {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = DEFAULT_TABLE_R)]
        r: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Error-versus-step study on f = exp.
    Convergence {
        #[arg(long, value_enum, default_value_t)]
        study: StudyKind,
        /// Derivative order for the derivative study.
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, allow_negative_numbers = true, default_value_t = convergence::DEFAULT_POINT)]
        x: f64,
        #[command(flatten)]
        common: Common,
    },
}

/// Fully resolved run request.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: Option<PathBuf>,
    pub x: Option<f64>,
    pub t: Option<usize>,
    pub h: Option<f64>,
    pub panels: usize,
    pub r: Option<usize>,
    pub scheme: Scheme,
    pub format: Format,
    pub check: bool,
    pub allow_high_order: bool,
    pub study: StudyKind,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        RunConfig {
            command,
            input: None,
            x: None,
            t: None,
            h: None,
            panels: 1,
            r: None,
            scheme: Scheme::Neville,
            format: Format::Text,
            check: false,
            allow_high_order: false,
            study: StudyKind::Derivative,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let need = |ok: bool, flag: &str| {
            if ok {
                Ok(())
            } else {
                Err(CliError::Usage(format!("{} requires --{flag}", self.command.name())))
            }
        };
        match self.command {
            CommandKind::Interp | CommandKind::Table => {
                need(self.input.is_some(), "in")?;
                need(self.x.is_some(), "x")?;
            }
            CommandKind::Diff => {
                need(self.input.is_some(), "in")?;
                need(self.x.is_some(), "x")?;
                need(self.t.is_some(), "t")?;
            }
            CommandKind::Integrate => {
                need(self.input.is_some(), "in")?;
                need(self.x.is_some(), "x")?;
                need(self.h.is_some(), "h")?;
                if self.panels == 0 {
                    return Err(CliError::Usage("--panels must be at least 1".into()));
                }
                if self.h == Some(0.0) {
                    return Err(CliError::Usage("--h must be nonzero".into()));
                }
            }
            CommandKind::Convergence => {
                if self.study == StudyKind::Derivative && self.t.is_some_and(|t| t > 4) {
                    return Err(CliError::Usage("derivative study uses 5 nodes; --t must be <= 4".into()));
                }
            }
        }
        for (name, v) in [("x", self.x), ("h", self.h)] {
            if v.is_some_and(|v| !v.is_finite()) {
                return Err(CliError::Usage(format!("--{name} must be finite")));
            }
        }
        Ok(())
    }
}

impl From<Command> for RunConfig {
    fn from(cmd: Command) -> Self {
        let apply = |mut cfg: RunConfig, common: Common| {
            cfg.scheme = common.scheme.into();
            cfg.format = common.format;
            cfg.check = common.check;
            cfg
        };
        match cmd {
            Command::Interp { input, x, r, common } => {
                let mut cfg = RunConfig::new(CommandKind::Interp);
                cfg.input = Some(input);
                cfg.x = Some(x);
                cfg.r = Some(r);
                apply(cfg, common)
            }
            Command::Diff { input, x, t, allow_high_order, common } => {
                let mut cfg = RunConfig::new(CommandKind::Diff);
                cfg.input = Some(input);
                cfg.x = Some(x);
                cfg.t = Some(t);
                cfg.allow_high_order = allow_high_order;
                apply(cfg, common)
            }
            Command::Integrate { input, x, h, panels, common } => {
                let mut cfg = RunConfig::new(CommandKind::Integrate);
                cfg.input = Some(input);
                cfg.x = Some(x);
                cfg.h = Some(h);
                cfg.panels = panels;
                apply(cfg, common)
            }
            Command::Table { input, x, r, common } => {
                let mut cfg = RunConfig::new(CommandKind::Table);
                cfg.input = Some(input);
                cfg.x = Some(x);
                cfg.r = Some(r);
                apply(cfg, common)
            }
            Command::Convergence { study, t, x, common } => {
                let mut cfg = RunConfig::new(CommandKind::Convergence);
                cfg.study = study;
                cfg.t = Some(t);
                cfg.x = Some(x);
                apply(cfg, common)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Number rendering

/// `%.{digits}g`-style rendering with trailing zeros removed.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Compact single-line JSON with numbers at [`JSON_DIGITS`] significant digits.
/// Object keys keep insertion order.
pub fn render_json(v: &Value) -> String {
    let mut out = String::new();
    write_json(v, &mut out);
    out
}

fn write_json(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else {
                out.push_str(&format_sig(n.as_f64().unwrap_or(f64::NAN), JSON_DIGITS));
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string serializes")),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_json(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(k).expect("string serializes"));
                out.push(':');
                write_json(item, out);
            }
            out.push('}');
        }
    }
}

fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

// ---------------------------------------------------------------------------
// Execution

/// Exit code plus rendered streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(config: &RunConfig) -> Outcome {
    let mut diagnostics = String::new();
    match execute(config, &mut diagnostics) {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: diagnostics,
        },
        Err(e) => {
            let _ = writeln!(diagnostics, "iterkit {}: error: {e}", config.command.name());
            Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr: diagnostics,
            }
        }
    }
}

fn load(config: &RunConfig) -> Result<SampleSet, CliError> {
    let path = config.input.as_deref().expect("validated");
    let set = parse_csv(path)?;
    if set.degree() > MAX_DEGREE {
        return Err(CliError::Usage(format!(
            "{} samples exceed the limit of {}; high-degree stencils are badly conditioned",
            set.len(),
            MAX_DEGREE + 1
        )));
    }
    Ok(set)
}

fn other(scheme: Scheme) -> Scheme {
    match scheme {
        Scheme::Neville => Scheme::Aitken,
        Scheme::Aitken => Scheme::Neville,
    }
}

/// Records one cross-check line; fails when `value` strays from `reference`.
fn check_line(diag: &mut String, label: &str, value: f64, reference: f64, tol: f64) -> Result<(), CliError> {
    let rel = (value - reference).abs() / (1.0 + reference.abs());
    let ok = rel <= tol;
    let _ = writeln!(
        diag,
        "check: {label} = {}, relative difference {} ({})",
        format_sig(reference, JSON_DIGITS),
        format_sig(rel, 3),
        if ok { "ok" } else { "FAILED" }
    );
    if ok {
        Ok(())
    } else {
        Err(CliError::Check(format!("{label} disagrees by {}", format_sig(rel, 3))))
    }
}

fn execute(config: &RunConfig, diag: &mut String) -> Result<String, CliError> {
    config.validate()?;
    let scheme = config.scheme;
    match config.command {
        CommandKind::Interp => {
            let set = load(config)?;
            let x = config.x.expect("validated");
            let r = config.r.unwrap_or(DEFAULT_R);
            let value = interpolate(&InterpolationRequest::new(&set, x, r, scheme)?)?;
            if config.check {
                let alt = interpolate(&InterpolationRequest::new(&set, x, r, other(scheme))?)?;
                check_line(diag, other(scheme).name(), value, alt, SCHEME_TOLERANCE)?;
                let exact = oracle::fit_sample_set(&set).value(&oracle::rational(x));
                check_line(diag, "exact rational", value, oracle::to_f64(&exact), ORACLE_TOLERANCE)?;
            }
            let inputs = json!({"input": path_str(config), "x": num(x), "r": r});
            Ok(render_scalar(config, &set, inputs, value, &[("x", x)]))
        }
        CommandKind::Diff => {
            let set = load(config)?;
            let x = config.x.expect("validated");
            let t = config.t.expect("validated");
            let policy = if config.allow_high_order {
                OrderPolicy::AllowBeyondStencil
            } else {
                OrderPolicy::WithinStencil
            };
            let value = derivative_with_policy(&set, x, t, scheme, policy)?;
            if config.check {
                let alt = derivative_with_policy(&set, x, t, other(scheme), policy)?;
                check_line(diag, other(scheme).name(), value, alt, SCHEME_TOLERANCE)?;
                let exact = oracle::fit_sample_set(&set).derivative(&oracle::rational(x), t);
                check_line(diag, "exact rational", value, oracle::to_f64(&exact), ORACLE_TOLERANCE)?;
            }
            let inputs = json!({"input": path_str(config), "x": num(x), "t": t});
            Ok(render_scalar(config, &set, inputs, value, &[("x", x)]))
        }
        CommandKind::Integrate => {
            let set = load(config)?;
            let x = config.x.expect("validated");
            let h = config.h.expect("validated");
            let value = integrate_composite(&set, x, x + h, config.panels, scheme)?;
            if config.check {
                let alt = integrate_composite(&set, x, x + h, config.panels, other(scheme))?;
                check_line(diag, other(scheme).name(), value, alt, SCHEME_TOLERANCE)?;
                let (lo, hi) = (x.min(x + h), x.max(x + h));
                let width = (hi - lo) / config.panels as f64;
                let dropped = (0..config.panels).any(|p| set.colliding_node(lo + p as f64 * width).is_some());
                if dropped {
                    let _ = writeln!(diag, "check: exact rational skipped (a panel dropped a colliding node)");
                } else {
                    let exact = oracle::fit_sample_set(&set)
                        .integral(&oracle::rational(x), &oracle::rational((x + h) - x));
                    check_line(diag, "exact rational", value, oracle::to_f64(&exact), ORACLE_TOLERANCE)?;
                }
            }
            let inputs = json!({"input": path_str(config), "x": num(x), "h": num(h), "panels": config.panels});
            Ok(render_scalar(config, &set, inputs, value, &[("x", x), ("h", h)]))
        }
        CommandKind::Table => {
            let set = load(config)?;
            let x = config.x.expect("validated");
            let r = config.r.unwrap_or(DEFAULT_TABLE_R);
            let table = render_new_dd_table(&set, r, x, scheme)?;
            if config.check {
                let alt = render_new_dd_table(&set, r, x, other(scheme))?;
                check_line(diag, other(scheme).name(), table.value(), alt.value(), SCHEME_TOLERANCE)?;
                check_table_oracle(diag, &set, &table)?;
            }
            Ok(render_table(config, &table))
        }
        CommandKind::Convergence => {
            let x = config.x.unwrap_or(convergence::DEFAULT_POINT);
            let (study, nodes) = match config.study {
                StudyKind::Derivative => (
                    convergence::derivative_study(x, config.t.unwrap_or(1), &convergence::DERIVATIVE_STEPS, scheme)?,
                    5,
                ),
                StudyKind::Quadrature => (
                    convergence::quadrature_study(x, &convergence::QUADRATURE_STEPS, scheme)?,
                    4,
                ),
            };
            if config.check {
                let alt = match config.study {
                    StudyKind::Derivative => convergence::derivative_study(
                        x,
                        config.t.unwrap_or(1),
                        &convergence::DERIVATIVE_STEPS,
                        other(scheme),
                    )?,
                    StudyKind::Quadrature => {
                        convergence::quadrature_study(x, &convergence::QUADRATURE_STEPS, other(scheme))?
                    }
                };
                let _ = writeln!(
                    diag,
                    "check: {} fitted order {} vs {}",
                    other(scheme).name(),
                    format_sig(alt.fitted_order, 6),
                    format_sig(study.fitted_order, 6)
                );
            }
            Ok(render_study(config, x, nodes, &study))
        }
    }
}

fn check_table_oracle(diag: &mut String, set: &SampleSet, table: &NewDdTable) -> Result<(), CliError> {
    let x = table.eval_point;
    if set.nodes()[..table.r].contains(&x) {
        let _ = writeln!(diag, "check: exact rational skipped (x repeats a prefix node)");
        return Ok(());
    }
    let p = oracle::fit_sample_set(set);
    let mut points = vec![(oracle::rational(x), p.value(&oracle::rational(x)))];
    for &xi in &set.nodes()[..table.r] {
        let q = oracle::rational(xi);
        let v = p.value(&q);
        points.push((q, v));
    }
    let exact = oracle::oracle_divided_difference(&points).expect("distinct points");
    check_line(diag, "exact rational", table.value(), oracle::to_f64(&exact), ORACLE_TOLERANCE)
}

fn path_str(config: &RunConfig) -> String {
    config
        .input
        .as_deref()
        .map(|p| p.display().to_string())
        .unwrap_or_default()
}

fn envelope(config: &RunConfig, inputs: Value, key: &str, values: Value, n: usize) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), Value::String(config.command.name().into()));
    map.insert("inputs".into(), inputs);
    map.insert(key.into(), values);
    map.insert("scheme".into(), Value::String(config.scheme.name().into()));
    map.insert("n".into(), Value::from(n));
    Value::Object(map)
}

fn render_scalar(config: &RunConfig, set: &SampleSet, inputs: Value, value: f64, keys: &[(&str, f64)]) -> String {
    match config.format {
        Format::Text => format!("{}\n", format_sig(value, TEXT_DIGITS)),
        Format::Json => {
            let obj = envelope(config, inputs, "value", num(value), set.degree());
            format!("{}\n", render_json(&obj))
        }
        Format::Csv => {
            let header: Vec<&str> = keys.iter().map(|k| k.0).chain(["value"]).collect();
            let row: Vec<String> = keys
                .iter()
                .map(|k| k.1)
                .chain([value])
                .map(|v| format_sig(v, JSON_DIGITS))
                .collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
    }
}

fn render_table(config: &RunConfig, table: &NewDdTable) -> String {
    let n = table.nodes.len() - 1;
    match config.format {
        Format::Text => {
            let fmt = |v: &f64| format_sig(*v, TEXT_DIGITS);
            let mut out = String::new();
            let _ = writeln!(
                out,
                "divided-difference table: scheme {}, r = {}, x = {}",
                table.scheme,
                table.r,
                fmt(&table.eval_point)
            );
            let _ = writeln!(out, "part 1: f[x_0..x_(s-1), x_j], j = s..{n}");
            for (s, col) in table.part1.iter().enumerate() {
                let cells: Vec<String> = col.iter().map(fmt).collect();
                let _ = writeln!(out, "  order {}: {}", s + 1, cells.join("  "));
            }
            let _ = writeln!(out, "part 2: iterated values over x_{}..x_{n}", table.r);
            for (s, level) in table.part2.levels.iter().enumerate() {
                let cells: Vec<String> = level.iter().map(fmt).collect();
                let _ = writeln!(out, "  level {s}: {}", cells.join("  "));
            }
            let _ = writeln!(out, "value: {}", fmt(&table.value()));
            out
        }
        Format::Json => {
            let cols = |rows: &[Vec<f64>]| {
                Value::Array(
                    rows.iter()
                        .map(|c| Value::Array(c.iter().map(|&v| num(v)).collect()))
                        .collect(),
                )
            };
            let inputs = json!({"input": path_str(config), "x": num(table.eval_point), "r": table.r});
            let values = json!({
                "part1": cols(&table.part1),
                "part2": cols(&table.part2.levels),
                "value": num(table.value()),
            });
            format!("{}\n", render_json(&envelope(config, inputs, "values", values, n)))
        }
        Format::Csv => {
            let mut out = String::from("part,column,index,value\n");
            for (s, col) in table.part1.iter().enumerate() {
                for (i, v) in col.iter().enumerate() {
                    let _ = writeln!(out, "1,{},{},{}", s + 1, i, format_sig(*v, JSON_DIGITS));
                }
            }
            for (s, level) in table.part2.levels.iter().enumerate() {
                for (i, v) in level.iter().enumerate() {
                    let _ = writeln!(out, "2,{s},{i},{}", format_sig(*v, JSON_DIGITS));
                }
            }
            out
        }
    }
}

fn render_study(config: &RunConfig, x: f64, nodes: usize, study: &Study) -> String {
    match config.format {
        Format::Text | Format::Csv => {
            let mut out = String::from("h,error,order\n");
            for row in &study.rows {
                let order = row.order.map(|o| format_sig(o, JSON_DIGITS)).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    format_sig(row.h, JSON_DIGITS),
                    format_sig(row.error, JSON_DIGITS),
                    order
                );
            }
            out
        }
        Format::Json => {
            let mut inputs = Map::new();
            let study_name = match config.study {
                StudyKind::Derivative => "derivative",
                StudyKind::Quadrature => "quadrature",
            };
            inputs.insert("study".into(), Value::String(study_name.into()));
            if config.study == StudyKind::Derivative {
                inputs.insert("t".into(), Value::from(config.t.unwrap_or(1)));
            }
            inputs.insert("x".into(), num(x));
            let rows: Vec<Value> = study
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "h": num(r.h),
                        "error": num(r.error),
                        "order": r.order.map_or(Value::Null, num),
                    })
                })
                .collect();
            let values = json!({"rows": rows, "fitted_order": num(study.fitted_order)});
            let obj = envelope(config, Value::Object(inputs), "values", values, nodes - 1);
            format!("{}\n", render_json(&obj))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_with_header_and_comments() {
        let set = parse_csv_str("x,f\n0,0\n1,1\n2,4\n").unwrap();
        assert_eq!(set.nodes(), &[0.0, 1.0, 2.0]);
        assert_eq!(set.values(), &[0.0, 1.0, 4.0]);
        let set = parse_csv_str("# squares\r\n\r\n0, 0\r\n# mid\r\n1.5,2.25\r\n").unwrap();
        assert_eq!(set.nodes(), &[0.0, 1.5]);
    }

    #[test]
    fn csv_duplicate_reports_line() {
        match parse_csv_str("0,0\n0,1\n").unwrap_err() {
            CliError::Data { line, source } => {
                assert_eq!(line, 2);
                assert_eq!(source, NumError::DuplicateNode { first: 0, second: 1 });
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn csv_parse_errors() {
        match parse_csv_str("0,abc\n").unwrap_err() {
            CliError::Parse { line, column, .. } => assert_eq!((line, column), (1, 2)),
            e => panic!("unexpected {e:?}"),
        }
        match parse_csv_str("x,f\n1,2\n3\n").unwrap_err() {
            CliError::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(parse_csv_str("1,nan\n"), Err(CliError::Parse { column: 2, .. })));
        assert!(matches!(parse_csv_str("# nothing\n"), Err(CliError::Usage(_))));
    }

    #[test]
    fn sig_formatting() {
        assert_eq!(format_sig(2.0000000000000004, 12), "2");
        assert_eq!(format_sig(0.5, 12), "0.5");
        assert_eq!(format_sig(-0.0, 12), "0");
        assert_eq!(format_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_sig(0.1, 17), "0.10000000000000001");
        assert_eq!(format_sig(1.5e-7, 12), "1.5e-07");
        assert_eq!(format_sig(-2.5e20, 17), "-2.5e+20");
        assert_eq!(format_sig(123456.0, 3), "1.23e+05");
        assert_eq!(format_sig(99999.5, 12), "99999.5");
    }

    #[test]
    fn json_rendering_is_compact_and_ordered() {
        let v = json!({"b": 1, "a": [0.5, -3, null], "s": "q\"x"});
        assert_eq!(render_json(&v), r#"{"b":1,"a":[0.5,-3,null],"s":"q\"x"}"#);
    }

    #[test]
    fn missing_flags_are_input_errors() {
        let cfg = RunConfig::new(CommandKind::Diff);
        let out = run(&cfg);
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.stderr.contains("--in"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Numeric(NumError::EvalPointCollision { node: 0 }).exit_code(), EXIT_NUMERIC);
        assert_eq!(CliError::Numeric(NumError::IndexOutOfRange { index: 4, n: 2 }).exit_code(), EXIT_INPUT);
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_INPUT);
    }
}
