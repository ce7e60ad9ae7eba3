//! Command-line front end. [`run`] does all the work and returns the text
//! for stdout, so commands can be exercised without spawning a process.
//!
//! Exit codes: 0 success, 2 input or usage error (including a failed
//! `check`), 3 mathematical impossibility (total conflict, conditioning on
//! an event of zero pignistic probability).

pub mod files;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::calculus::{self, ConditioningEvent, ConditioningMode};
use crate::capacity::{self, Strictness};
use crate::decision;
use crate::frame::{Frame, Subset};
use crate::pignistic::{self, Route};
use files::{FileKind, UncertaintyFile, UtilityFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Impossible(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Impossible(_) => 3,
            _ => 2,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        if e.is_impossibility() {
            CliError::Impossible(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tbm",
    version,
    about = "Credibility functions, pignistic probabilities and decisions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Input uncertainty file (`combine` takes it twice).
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,

    /// Write the resulting file here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Divide pignistic probabilities by the non-conflicting mass.
    #[arg(long, global = true)]
    pub normalize: bool,

    /// How the pignistic transformation is computed.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_route)]
    pub route: Route,

    /// Weight of the first input in `combine`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,

    /// Conditioning event: atom names joined by `|`, or `{}` for the empty set.
    #[arg(long, global = true)]
    pub event: Option<String>,

    /// Conditioning mode.
    #[arg(long, global = true, default_value = "open", value_parser = parse_mode)]
    pub mode: ConditioningMode,
}

fn parse_route(s: &str) -> Result<Route, String> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<ConditioningMode, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rewrite a file in another representation.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Print the pignistic probability of each atom.
    Pignistic,
    /// Convex combination of two credibility functions.
    Combine,
    /// Condition the basic belief masses on an event.
    Condition,
    /// Expected utilities under the pignistic probability.
    Decide {
        #[arg(long)]
        utilities: PathBuf,
    },
    /// Check the credibility function against its axioms.
    Check,
    /// Compare conditioning before and after the pignistic transformation.
    DemoTwoLevel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Mass,
    Bel,
    Pl,
    V,
    W,
    Capacity,
}

/// Result of a successful command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            exit_code: 0,
        }
    }
}

/// Formats with 12 significant digits, dropping trailing zeros; scientific
/// notation outside `[1e-5, 1e12)`.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Parses `a|b|c`; `{}` (or an empty string) is the empty set.
pub fn parse_event(frame: &Frame, expr: &str) -> Result<Subset, CliError> {
    let expr = expr.trim();
    if expr.is_empty() || expr == "{}" {
        return Ok(Subset::EMPTY);
    }
    frame
        .parse_subset(expr.split('|').map(str::trim))
        .map_err(|e| CliError::Usage(format!("--event: {e}")))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_uncertainty(path: &Path) -> Result<UncertaintyFile, CliError> {
    UncertaintyFile::parse(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn single_input(cli: &Cli) -> Result<&Path, CliError> {
    match cli.input.as_slice() {
        [one] => Ok(one),
        [] => Err(CliError::Usage("--input is required".into())),
        _ => Err(CliError::Usage("expected exactly one --input".into())),
    }
}

fn require_event(cli: &Cli, frame: &Frame) -> Result<ConditioningEvent, CliError> {
    let expr = cli
        .event
        .as_deref()
        .ok_or_else(|| CliError::Usage("--event is required".into()))?;
    let event = parse_event(frame, expr)?;
    ConditioningEvent::new(event, cli.mode).map_err(|e| CliError::Usage(e.to_string()))
}

/// Writes `file` to `--output`, or returns it as stdout.
fn emit(cli: &Cli, file: &UncertaintyFile) -> Result<String, CliError> {
    let text = file.to_text();
    match &cli.output {
        Some(path) => {
            fs::write(path, text).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Convert { to } => convert(cli, *to),
        Command::Pignistic => pignistic_cmd(cli),
        Command::Combine => combine(cli),
        Command::Condition => condition(cli),
        Command::Decide { utilities } => decide(cli, utilities),
        Command::Check => check(cli),
        Command::DemoTwoLevel => demo_two_level(cli),
    }
}

/// Converts a parsed file; shared by the `convert` command and tests.
pub fn convert_file(file: &UncertaintyFile, to: Target) -> Result<UncertaintyFile, CliError> {
    let model = files::load(file, true)?;
    let bba = || {
        let m = model.basic_masses();
        match m.first_negative() {
            Some((a, x)) => Err(CliError::Input(format!(
                "not a belief function: mass {} on {}; convert to v or w instead",
                fmt_num(x),
                m.frame().display(a)
            ))),
            None => Ok(m),
        }
    };
    let mut out = match to {
        Target::Mass => files::mass_file(&bba()?, FileKind::Mass),
        Target::V => files::signed_mass_file(&model.capacity, FileKind::V),
        Target::W => files::signed_mass_file(&model.capacity, FileKind::W),
        Target::Bel => files::capacity_file(&capacity::from_mass(&bba()?)?, FileKind::Bel),
        Target::Pl => {
            files::capacity_file(&capacity::plausibility_from_mass(&bba()?)?, FileKind::Pl)
        }
        Target::Capacity => files::capacity_file(&model.capacity, FileKind::Capacity),
    };
    for (k, v) in &file.metadata {
        out.metadata.entry(k.clone()).or_insert_with(|| v.clone());
    }
    Ok(out)
}

fn convert(cli: &Cli, to: Target) -> Result<Outcome, CliError> {
    let file = read_uncertainty(single_input(cli)?)?;
    let out = convert_file(&file, to)?;
    Ok(Outcome::ok(emit(cli, &out)?))
}

/// Pignistic probabilities of a parsed file.
pub fn pignistic_of(
    file: &UncertaintyFile,
    route: Route,
    normalize: bool,
) -> Result<pignistic::PignisticResult, CliError> {
    let model = files::load(file, true)?;
    let direct = matches!(file.kind, FileKind::Mass | FileKind::V);
    let result = match (&model.masses, route) {
        (Some(m), Route::Auto | Route::MassV) if direct => {
            pignistic::transform_from_masses(m, normalize)?
        }
        _ => pignistic::gamma(&model.capacity, route, normalize)?,
    };
    Ok(result)
}

fn pignistic_cmd(cli: &Cli) -> Result<Outcome, CliError> {
    let file = read_uncertainty(single_input(cli)?)?;
    let result = pignistic_of(&file, cli.route, cli.normalize)?;
    let frame = result.frame();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# pignistic route={} normalized={}",
        cli.route, cli.normalize
    );
    out.push_str("atom\tbetp\n");
    for (atom, p) in frame.atoms().iter().zip(result.probabilities()) {
        let _ = writeln!(out, "{atom}\t{}", fmt_num(*p));
    }
    let _ = writeln!(out, "total\t{}", fmt_num(result.total()));
    let _ = writeln!(out, "deficit\t{}", fmt_num(result.mass_deficit()));
    if let Some(path) = &cli.output {
        let mut file = files::probability_file(frame, result.probabilities());
        file.metadata
            .insert("normalized".into(), cli.normalize.to_string());
        fs::write(path, file.to_text()).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(Outcome::ok(out))
}

fn combine(cli: &Cli) -> Result<Outcome, CliError> {
    let [first, second] = cli.input.as_slice() else {
        return Err(CliError::Usage(
            "combine takes --input exactly twice".into(),
        ));
    };
    let alpha = cli
        .alpha
        .ok_or_else(|| CliError::Usage("--alpha is required".into()))?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(CliError::Usage(format!("--alpha {alpha} outside [0, 1]")));
    }
    let a = files::load(&read_uncertainty(first)?, true)?;
    let b = files::load(&read_uncertainty(second)?, true)?;
    let combined = calculus::alpha_combine(&a.capacity, &b.capacity, alpha)?;
    let mut out = files::capacity_file(&combined, FileKind::Capacity);
    out.metadata.insert("alpha".into(), fmt_num(alpha));
    Ok(Outcome::ok(emit(cli, &out)?))
}

fn condition(cli: &Cli) -> Result<Outcome, CliError> {
    let file = read_uncertainty(single_input(cli)?)?;
    let model = files::load(&file, true)?;
    let ev = require_event(cli, model.capacity.frame())?;
    let conditioned = calculus::condition(&model.basic_masses(), &ev)?;
    let kind = if conditioned.first_negative().is_some() {
        FileKind::V
    } else {
        FileKind::Mass
    };
    let mut out = files::mass_file(&conditioned, kind);
    out.metadata
        .insert("event".into(), conditioned.frame().display(ev.event()));
    out.metadata.insert("mode".into(), ev.mode().to_string());
    Ok(Outcome::ok(emit(cli, &out)?))
}

fn decide(cli: &Cli, utilities: &Path) -> Result<Outcome, CliError> {
    let file = read_uncertainty(single_input(cli)?)?;
    let problem = UtilityFile::parse(&read(utilities)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", utilities.display())))?
        .problem()?;
    let p = pignistic_of(&file, cli.route, cli.normalize)?;
    let result = decision::expected_utilities(&problem, &p)?;
    let mut out = String::from("act\texpected_utility\n");
    for (act, eu) in result.acts.iter().zip(&result.expected_utility) {
        let _ = writeln!(out, "{act}\t{}", fmt_num(*eu));
    }
    let _ = writeln!(out, "best\t{}", result.best_act());
    let _ = writeln!(out, "ties\t{}", result.tied_acts().join(","));
    if result.subprobability {
        let _ = writeln!(
            out,
            "warning\tsub-probability expectations (total {})",
            fmt_num(p.total())
        );
    }
    Ok(Outcome::ok(out))
}

fn check(cli: &Cli) -> Result<Outcome, CliError> {
    let file = read_uncertainty(single_input(cli)?)?;
    let model = files::load(&file, false)?;
    let cr = &model.capacity;
    let report = capacity::validate(cr, Strictness::Kind);
    let mut out = String::new();
    let _ = writeln!(out, "kind\t{}", cr.kind());
    let _ = writeln!(out, "closed_world\t{}", report.closed_world);
    let _ = writeln!(
        out,
        "violations\t{}",
        report.violations.len() + report.omitted
    );
    for line in report.render(cr.frame()) {
        let _ = writeln!(out, "{line}");
    }
    if report.omitted > 0 {
        let _ = writeln!(out, "... {} more not shown", report.omitted);
    }
    let null = capacity::null_atoms(cr);
    if report.is_valid() && !null.is_empty() {
        let _ = writeln!(out, "null_atoms\t{}", cr.frame().display(null));
    }
    Ok(Outcome {
        stdout: out,
        exit_code: if report.is_valid() { 0 } else { 2 },
    })
}

fn demo_two_level(cli: &Cli) -> Result<Outcome, CliError> {
    let file = read_uncertainty(single_input(cli)?)?;
    let model = files::load(&file, true)?;
    let frame = model.capacity.frame().clone();
    let ev = require_event(cli, &frame)?;
    let report = calculus::two_level_vs_one_level(&model.basic_masses(), &ev)?;
    let mut out = String::new();
    let _ = writeln!(out, "event\t{}", frame.display(ev.event()));
    let _ = writeln!(out, "mode\t{}", ev.mode());
    let _ = writeln!(out, "conflict\t{}", fmt_num(report.conflict));
    out.push_str("atom\tcredal\tbayesian\n");
    for (i, atom) in frame.atoms().iter().enumerate() {
        let _ = writeln!(
            out,
            "{atom}\t{}\t{}",
            fmt_num(report.credal.probability(i)),
            fmt_num(report.bayesian.probability(i))
        );
    }
    let _ = writeln!(out, "max_abs_diff\t{}", fmt_num(report.max_abs_diff));
    Ok(Outcome::ok(out))
}
