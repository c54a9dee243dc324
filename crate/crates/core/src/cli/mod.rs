//! Command-line front end.
//!
//! Each command is a pure function from a validated [`RunConfig`] to a
//! [`CommandOutput`]; the binary only prints, writes files and exits.

mod report;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::audit::{
    delta_concentration, delta_limit_claim, fourier_consistency, fourier_contrast_stc, node_count,
    orthonormality_momentum, orthonormality_position, stc_normalization, AuditError, AuditSettings,
    ClaimReport, NodeSpace, DEFAULT_DELTA_HALF_WIDTH, DEFAULT_P_GRID,
};
use crate::infotheory::{bbm_report_with, EntropyError, EntropyReport, MomentumSource};
use crate::quadrature::ToleranceSpec;
use crate::states::QuantumIndex;

pub use report::{format_csv_float, Report, REPORT_VERSION};

/// Environment variable overriding the quadrature evaluation cap.
pub const MAX_EVALS_ENV: &str = "Q1D_MAX_EVALS";

/// Contrast residuals at least this large count as a reproduced refutation.
pub const STC_CONTRAST_MIN: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    ClaimFailure = 1,
    Usage = 2,
    NonConvergence = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_status(&self) -> ExitStatus {
        match self {
            Self::Usage(_) | Self::Io { .. } => ExitStatus::Usage,
            Self::Numerical(_) => ExitStatus::NonConvergence,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Tabulate,
    Verify,
    Entropy,
    AuditStc,
    PlotData,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Position,
    #[default]
    Momentum,
}

/// Uniform grid `min..=max` with `points` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self, CliError> {
        let grid = Self { min, max, points };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(CliError::Usage(format!(
                "grid needs finite min < max, got {}:{}",
                self.min, self.max
            )));
        }
        if self.points < 2 {
            return Err(CliError::Usage(format!(
                "grid needs at least 2 points, got {}",
                self.points
            )));
        }
        Ok(())
    }

    /// `(min·(N-1-i) + max·i) / (N-1)`, with the endpoints kept exact: a
    /// grid symmetric about zero maps node `i` to the exact negative of
    /// node `N-1-i`.
    pub fn nodes(&self) -> Vec<f64> {
        let last = self.points - 1;
        let lastf = last as f64;
        (0..self.points)
            .map(|i| match i {
                0 => self.min,
                i if i == last => self.max,
                i => {
                    let i = i as f64;
                    (self.min * (lastf - i) + self.max * i) / lastf
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, points] = parts.as_slice() else {
            return Err(format!("expected min:max:points, got {s:?}"));
        };
        let min: f64 = min.trim().parse().map_err(|e| format!("bad grid min: {e}"))?;
        let max: f64 = max.trim().parse().map_err(|e| format!("bad grid max: {e}"))?;
        let points: usize = points.trim().parse().map_err(|e| format!("bad grid points: {e}"))?;
        Grid::new(min, max, points).map_err(|e| e.to_string())
    }
}

/// Parses `1,2,5-7` into quantum indices, keeping the given order.
pub fn parse_n_list(s: &str) -> Result<Vec<QuantumIndex>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (lo, hi) = match item.split_once('-') {
            Some((a, b)) => (parse_index(a)?, parse_index(b)?),
            None => {
                let v = parse_index(item)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {item:?}"));
        }
        for n in lo..=hi {
            out.push(QuantumIndex::new(n).map_err(|e| e.to_string())?);
        }
    }
    if out.is_empty() {
        return Err("n list must not be empty".into());
    }
    Ok(out)
}

fn parse_index(s: &str) -> Result<u32, String> {
    let n: u32 = s.trim().parse().map_err(|_| format!("bad quantum index {s:?}"))?;
    if n == 0 {
        return Err("quantum index must be >= 1".into());
    }
    Ok(n)
}

/// Parsed value of `--n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NList(pub Vec<QuantumIndex>);

impl FromStr for NList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_n_list(s).map(Self)
    }
}

#[derive(Debug, Parser)]
#[command(name = "q1d", version, about = "Quasi-one-dimensional hydrogen atom: wavefunctions, entropies and claim checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate wavefunctions, densities and energies on a grid
    Tabulate(CommonArgs),
    /// Run the claim suite (orthonormality, Fourier consistency, nodes, normalization, concentration)
    Verify(CommonArgs),
    /// Shannon entropies and the entropic uncertainty bound
    Entropy(CommonArgs),
    /// Checks showing the real rival waveform is not the Fourier transform
    AuditStc(CommonArgs),
    /// Momentum densities on a grid for plotting
    PlotData(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Quantum indices, e.g. `1,2,3` or `1-5`
    #[arg(long = "n")]
    pub n: Option<NList>,
    /// Grid as `min:max:points`
    #[arg(long)]
    pub grid: Option<Grid>,
    /// Output file; data commands write to stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Absolute quadrature tolerance
    #[arg(long)]
    pub tol_abs: Option<f64>,
    /// Relative quadrature tolerance
    #[arg(long)]
    pub tol_rel: Option<f64>,
    /// Append rows for the rival real waveform (entropy)
    #[arg(long)]
    pub stc: bool,
    /// Coordinate space for `tabulate`
    #[arg(long, value_enum)]
    pub space: Option<Space>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n_list: Vec<QuantumIndex>,
    pub grid: Grid,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub tolerance: ToleranceSpec,
    pub stc: bool,
    pub space: Space,
}

impl RunConfig {
    /// Defaults for `command`, before any flags are applied.
    pub fn defaults(command: CommandKind) -> Self {
        let n = |v: &[u32]| v.iter().map(|&n| QuantumIndex::new(n).expect("n >= 1")).collect();
        let (n_list, format) = match command {
            CommandKind::Tabulate => (n(&[1]), OutputFormat::Csv),
            CommandKind::Verify => (n(&[1, 2, 3, 4, 5]), OutputFormat::Json),
            CommandKind::Entropy => (n(&[1]), OutputFormat::Csv),
            CommandKind::AuditStc => (n(&[1]), OutputFormat::Json),
            CommandKind::PlotData => (n(&[1, 2, 3, 4, 10]), OutputFormat::Csv),
        };
        Self {
            command,
            n_list,
            grid: Grid {
                min: -3.0,
                max: 3.0,
                points: 601,
            },
            output_path: None,
            format,
            tolerance: ToleranceSpec::default(),
            stc: false,
            space: Space::Momentum,
        }
    }

    /// Builds the configuration from parsed flags and the value of
    /// [`MAX_EVALS_ENV`], if set.
    pub fn from_args(command: CommandKind, args: &CommonArgs, max_evals: Option<&str>) -> Result<Self, CliError> {
        let mut cfg = Self::defaults(command);
        if let Some(space) = args.space {
            cfg.space = space;
        }
        if command == CommandKind::Tabulate && cfg.space == Space::Position {
            cfg.grid = Grid {
                min: 0.0,
                max: 20.0,
                points: 201,
            };
        }
        if let Some(NList(n)) = &args.n {
            cfg.n_list = n.clone();
        }
        if let Some(grid) = args.grid {
            cfg.grid = grid;
        }
        cfg.output_path = args.out.clone();
        if let Some(format) = args.format {
            cfg.format = format;
        }
        if let Some(v) = args.tol_abs {
            cfg.tolerance.absolute = v;
        }
        if let Some(v) = args.tol_rel {
            cfg.tolerance.relative = v;
        }
        if let Some(raw) = max_evals {
            cfg.tolerance.max_evaluations = raw
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{MAX_EVALS_ENV} must be a positive integer, got {raw:?}")))?;
        }
        cfg.stc = args.stc;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_list.is_empty() {
            return Err(CliError::Usage("n list must not be empty".into()));
        }
        self.grid.validate()?;
        self.tolerance
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        if self.command == CommandKind::Tabulate && self.space == Space::Position && self.grid.min < 0.0 {
            return Err(CliError::Usage(
                "position grid must start at x >= 0 (hard wall at the origin)".into(),
            ));
        }
        Ok(())
    }

    fn settings(&self) -> AuditSettings {
        AuditSettings {
            quadrature: self.tolerance,
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    /// Text for standard output.
    pub stdout: String,
    /// Machine-readable payload for `output_path`, when one was given.
    pub file: Option<(PathBuf, String)>,
    pub status: ExitStatus,
}

impl CommandOutput {
    fn data(cfg: &RunConfig, payload: String, status: ExitStatus) -> Self {
        match &cfg.output_path {
            Some(path) => Self {
                stdout: String::new(),
                file: Some((path.clone(), payload)),
                status,
            },
            None => Self {
                stdout: payload,
                file: None,
                status,
            },
        }
    }

    fn summary(cfg: &RunConfig, summary: String, payload: String, status: ExitStatus) -> Self {
        Self {
            stdout: summary,
            file: cfg.output_path.clone().map(|p| (p, payload)),
            status,
        }
    }

    /// Writes the file payload, if any.
    pub fn write_file(&self) -> Result<(), CliError> {
        if let Some((path, payload)) = &self.file {
            std::fs::write(path, payload).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
        }
        Ok(())
    }
}

pub fn run(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    cfg.validate()?;
    match cfg.command {
        CommandKind::Tabulate => cmd_tabulate(cfg),
        CommandKind::Verify => cmd_verify(cfg),
        CommandKind::Entropy => cmd_entropy(cfg),
        CommandKind::AuditStc => cmd_audit_stc(cfg),
        CommandKind::PlotData => cmd_plot_data(cfg),
    }
}

pub fn cmd_tabulate(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let payload = report::tabulate(cfg);
    Ok(CommandOutput::data(cfg, payload, ExitStatus::Success))
}

pub fn cmd_plot_data(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let payload = report::plot_data(cfg);
    Ok(CommandOutput::data(cfg, payload, ExitStatus::Success))
}

/// A check that either produced a report or failed numerically.
enum Checked {
    Claim(ClaimReport),
    Failed(ClaimReport),
}

fn checked(
    claim_id: &str,
    n_values: Vec<QuantumIndex>,
    tolerance: f64,
    r: Result<ClaimReport, AuditError>,
) -> Checked {
    match r {
        Ok(c) => Checked::Claim(c),
        Err(e) => Checked::Failed(ClaimReport::new(
            claim_id,
            n_values,
            f64::INFINITY,
            tolerance,
            format!("error: {e}"),
        )),
    }
}

fn collect(checks: Vec<Checked>) -> (Vec<ClaimReport>, bool) {
    let mut numerical = false;
    let claims = checks
        .into_iter()
        .map(|c| match c {
            Checked::Claim(c) => c,
            Checked::Failed(c) => {
                numerical = true;
                c
            }
        })
        .collect();
    (claims, numerical)
}

fn entropy_rows(
    cfg: &RunConfig,
    source: MomentumSource,
) -> Vec<Result<EntropyReport, EntropyError>> {
    cfg.n_list
        .par_iter()
        .map(|&n| bbm_report_with(n, source, &cfg.tolerance))
        .collect()
}

fn status_of(all_passed: bool, numerical: bool) -> ExitStatus {
    if numerical {
        ExitStatus::NonConvergence
    } else if all_passed {
        ExitStatus::Success
    } else {
        ExitStatus::ClaimFailure
    }
}

/// Runs the claim suite for every `n` in the list.
pub fn cmd_verify(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let settings = cfg.settings();
    let n_max = *cfg.n_list.iter().max().expect("non-empty n list");

    let mut checks = vec![
        checked(
            "orthonormality_position",
            vec![n_max],
            crate::audit::GRAM_TOLERANCE,
            orthonormality_position(n_max, &settings),
        ),
        checked(
            "orthonormality_momentum",
            vec![n_max],
            crate::audit::GRAM_TOLERANCE,
            orthonormality_momentum(n_max, &settings),
        ),
    ];
    let per_n: Vec<Vec<Checked>> = cfg
        .n_list
        .par_iter()
        .map(|&n| {
            vec![
                checked(
                    "fourier_consistency",
                    vec![n],
                    crate::audit::FOURIER_TOLERANCE,
                    fourier_consistency(n, &DEFAULT_P_GRID, &settings),
                ),
                checked(
                    "node_count_position",
                    vec![n],
                    crate::audit::NODE_TOLERANCE,
                    node_count(n, NodeSpace::Position),
                ),
                checked(
                    "node_count_momentum_stc",
                    vec![n],
                    crate::audit::NODE_TOLERANCE,
                    node_count(n, NodeSpace::MomentumStc),
                ),
                checked(
                    "stc_normalization",
                    vec![n],
                    crate::audit::STC_NORMALIZATION_TOLERANCE,
                    stc_normalization(n, &settings),
                ),
                checked(
                    "delta_limit",
                    vec![n],
                    crate::audit::DELTA_TOLERANCE,
                    delta_limit_claim(n, DEFAULT_DELTA_HALF_WIDTH, &settings),
                ),
            ]
        })
        .collect();
    checks.extend(per_n.into_iter().flatten());
    checks.push(Checked::Claim(delta_concentration(&cfg.n_list, DEFAULT_DELTA_HALF_WIDTH)));
    let (mut claims, mut numerical) = collect(checks);

    let mut entropies = Vec::new();
    for (n, row) in cfg.n_list.iter().zip(entropy_rows(cfg, MomentumSource::Correct)) {
        match row {
            Ok(r) => entropies.push(r),
            Err(e) => {
                numerical = true;
                claims.push(ClaimReport::new(
                    "entropy_bound",
                    vec![*n],
                    f64::INFINITY,
                    crate::infotheory::BBM_TOLERANCE,
                    format!("error: {e}"),
                ));
            }
        }
    }

    let all_passed = claims.iter().all(|c| c.passed) && entropies.iter().all(|e| e.satisfied);
    let status = status_of(all_passed, numerical);
    let report = Report::new(cfg, claims, entropies);
    let summary = report::claims_summary(&report, status);
    let payload = report::render_report(&report, cfg.format);
    Ok(CommandOutput::summary(cfg, summary, payload, status))
}

/// One row per `n` for the correct density, plus rival rows with `--stc`.
pub fn cmd_entropy(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let mut rows = Vec::new();
    let mut sources = vec![MomentumSource::Correct];
    if cfg.stc {
        sources.push(MomentumSource::Stc);
    }
    for source in sources {
        for row in entropy_rows(cfg, source) {
            rows.push(row.map_err(|e| CliError::Numerical(e.to_string()))?);
        }
    }
    let all_correct_hold = rows
        .iter()
        .filter(|r| r.source == MomentumSource::Correct)
        .all(|r| r.satisfied);
    let status = status_of(all_correct_hold, false);
    let report = Report::new(cfg, Vec::new(), rows);
    let summary = report::entropy_summary(&report.entropies);
    let payload = report::render_entropy(&report, cfg.format);
    Ok(CommandOutput::summary(cfg, summary, payload, status))
}

/// Checks aimed at the rival waveform. Succeeds when the waveform is shown
/// not to be the transform (contrast residual at least
/// [`STC_CONTRAST_MIN`]) and the half-line normalization and node claims
/// hold.
pub fn cmd_audit_stc(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let settings = cfg.settings();
    let per_n: Vec<Vec<Checked>> = cfg
        .n_list
        .par_iter()
        .map(|&n| {
            vec![
                checked(
                    "fourier_contrast_stc",
                    vec![n],
                    crate::audit::FOURIER_TOLERANCE,
                    fourier_contrast_stc(n, &DEFAULT_P_GRID, &settings),
                ),
                checked(
                    "stc_normalization",
                    vec![n],
                    crate::audit::STC_NORMALIZATION_TOLERANCE,
                    stc_normalization(n, &settings),
                ),
                checked(
                    "node_count_momentum_stc",
                    vec![n],
                    crate::audit::NODE_TOLERANCE,
                    node_count(n, NodeSpace::MomentumStc),
                ),
            ]
        })
        .collect();
    let (claims, mut numerical) = collect(per_n.into_iter().flatten().collect());

    let mut entropies = Vec::new();
    for row in entropy_rows(cfg, MomentumSource::Stc) {
        match row {
            Ok(r) => entropies.push(r),
            Err(_) => numerical = true,
        }
    }

    let refuted = claims.iter().all(|c| {
        if c.claim_id == "fourier_contrast_stc" {
            c.residual.is_finite() && c.residual >= STC_CONTRAST_MIN
        } else {
            c.passed
        }
    });
    let status = status_of(refuted, numerical);
    let report = Report::new(cfg, claims, entropies);
    let mut summary = report::claims_summary(&report, status);
    summary.push_str(&report::entropy_summary(&report.entropies));
    let payload = report::render_report(&report, cfg.format);
    Ok(CommandOutput::summary(cfg, summary, payload, status))
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Tabulate => "tabulate",
            Self::Verify => "verify",
            Self::Entropy => "entropy",
            Self::AuditStc => "audit-stc",
            Self::PlotData => "plot-data",
        })
    }
}

impl Command {
    pub fn kind_and_args(&self) -> (CommandKind, &CommonArgs) {
        match self {
            Self::Tabulate(a) => (CommandKind::Tabulate, a),
            Self::Verify(a) => (CommandKind::Verify, a),
            Self::Entropy(a) => (CommandKind::Entropy, a),
            Self::AuditStc(a) => (CommandKind::AuditStc, a),
            Self::PlotData(a) => (CommandKind::PlotData, a),
        }
    }
}
