//! Command-line front end: `sweep`, `audit` and `channels`.

pub mod format;

use std::f64::consts::FRAC_PI_4;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::analytic::analytic_negativity;
use crate::audit::{audit_grid, RGrid};
use crate::channels::{
    joint_kraus, qubit_kraus, qutrit_kraus, ChannelKind, NoiseScenario, Topology,
};
use crate::claims::{esd_check, numeric_negativity, ordering_claims, CLAIM_LEVELS};
use crate::error::Error;
use format::{SweepLabel, SweepRow};

/// Exit status when every audited point matched, or a command succeeded.
pub const EXIT_OK: i32 = 0;
/// Bad flags or an operational failure.
pub const EXIT_ERROR: i32 = 1;
/// The audit found at least one non-matching point.
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qqlab",
    version,
    about = "Qubit-qutrit decoherence and negativity laboratory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Negativity as a function of r for one or more (channel, scenario) pairs.
    Sweep(SweepArgs),
    /// Compare the published eigenvalue sets with direct Kraus evolution.
    Audit(AuditArgs),
    /// Print a Kraus set and its completeness residual.
    Channels(ChannelsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RangeArgs {
    #[arg(long, default_value_t = 0.0)]
    pub r_min: f64,
    #[arg(long, default_value_t = FRAC_PI_4)]
    pub r_max: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// ad, dep or pd (comma separated for several).
    #[arg(long, value_delimiter = ',', required = true)]
    pub channel: Vec<ChannelKind>,
    /// qubit, qutrit, multilocal or global (comma separated for several).
    #[arg(long, value_delimiter = ',', required = true)]
    pub scenario: Vec<Topology>,
    #[arg(long)]
    pub p1: Option<f64>,
    #[arg(long)]
    pub p2: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[command(flatten)]
    pub range: RangeArgs,
    #[arg(long, default_value_t = 100)]
    pub r_steps: usize,
    /// CSV destination; stdout when omitted.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AuditArgs {
    /// Restrict to these channels.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<ChannelKind>,
    /// Restrict to these topologies.
    #[arg(long, value_delimiter = ',')]
    pub topology: Vec<Topology>,
    #[command(flatten)]
    pub range: RangeArgs,
    #[arg(long, default_value_t = 25)]
    pub r_steps: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.5")]
    pub p_levels: Vec<f64>,
    /// Per-point CSV destination.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    /// Also write the text summary here (it always goes to stdout).
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ChannelsArgs {
    #[arg(long)]
    pub kind: ChannelKind,
    /// 2 (qubit), 3 (qutrit) or 6 (joint qubit⊗qutrit set).
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub p: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

fn emit(output: Option<&PathBuf>, contents: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => write_file(path, contents),
        None => stdout
            .write_all(contents.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

/// Scenario for one requested topology. With a single topology the unused
/// flags must be absent or zero; with several, each topology takes the
/// flags it uses.
fn scenario_for(
    args: &SweepArgs,
    topology: Topology,
    strict: bool,
) -> Result<NoiseScenario, CliError> {
    let take = |v: Option<f64>, used: bool| {
        if used || strict {
            v.unwrap_or(0.0)
        } else {
            0.0
        }
    };
    Ok(NoiseScenario::new(
        topology,
        take(args.p1, topology.uses_p1()),
        take(args.p2, topology.uses_p2()),
        take(args.p, topology.uses_p()),
    )?)
}

pub fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let grid = RGrid::new(args.range.r_min, args.range.r_max, args.r_steps)?;
    let long = args.channel.len() * args.scenario.len() > 1;
    let mut rows = Vec::new();
    for &kind in &args.channel {
        for &topology in &args.scenario {
            let sc = scenario_for(args, topology, !long)?;
            let label = long.then(|| SweepLabel {
                channel: kind.code().into(),
                scenario: topology.code().into(),
                p1: sc.p1(),
                p2: sc.p2(),
                p: sc.p(),
            });
            for acc in grid.points() {
                rows.push(SweepRow {
                    label: label.clone(),
                    r: acc.r(),
                    numeric: numeric_negativity(kind, acc, &sc)?,
                    analytic: analytic_negativity(kind, acc, &sc).ok().map(|a| a.value),
                });
            }
        }
    }
    emit(
        args.output.as_ref(),
        &format::sweep_csv(&rows, long),
        stdout,
    )?;
    Ok(EXIT_OK)
}

fn or_all<T: Copy>(selected: &[T], all: &[T]) -> Vec<T> {
    if selected.is_empty() {
        all.to_vec()
    } else {
        selected.to_vec()
    }
}

pub fn cmd_audit(args: &AuditArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    if args.p_levels.is_empty() {
        return Err(CliError::Usage(
            "--p-levels needs at least one value".into(),
        ));
    }
    let kinds = or_all(&args.only, &ChannelKind::ALL);
    let topologies = or_all(&args.topology, &Topology::ALL);
    let grid = RGrid::new(args.range.r_min, args.range.r_max, args.r_steps)?;
    let report = audit_grid(&kinds, &topologies, grid, &args.p_levels)?;

    let esd = esd_check(&kinds, &topologies, &CLAIM_LEVELS, grid)?;
    let ordering = if kinds.len() == ChannelKind::ALL.len() {
        ordering_claims()?
    } else {
        Vec::new()
    };
    let summary = format::audit_summary(&report, &esd, &ordering);

    if let Some(path) = &args.output {
        write_file(path, &format::audit_csv(&report))?;
    }
    if let Some(path) = &args.summary {
        write_file(path, &summary)?;
    }
    emit(None, &summary, stdout)?;
    Ok(if report.all_match() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

pub fn cmd_channels(args: &ChannelsArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let ch = match args.dim {
        2 => qubit_kraus(args.kind, args.p)?,
        3 => qutrit_kraus(args.kind, args.p)?,
        6 => joint_kraus(
            &qubit_kraus(args.kind, args.p)?,
            &qutrit_kraus(args.kind, args.p)?,
        )?,
        d => return Err(CliError::Usage(format!("--dim must be 2, 3 or 6, got {d}"))),
    };
    emit(None, &format::channel_dump(&ch), stdout)?;
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit status; diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Sweep(a) => cmd_sweep(a, stdout),
        Command::Audit(a) => cmd_audit(a, stdout),
        Command::Channels(a) => cmd_channels(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}
