//! Command-line entry point shared by the binary and the tests.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use edlab_core::bounds::{bound_report, BoundReport};

use crate::config::{load_config, ConfigError, ScenarioConfig, ScenarioKind};
use crate::frontier::frontier;
use crate::sweep::{fraction_tighter, is_tighter, new_bound_quantity, sweep};
use crate::table::{emit_frontier_csv, emit_sweep_csv, format_number, CsvError};
use crate::verify::{verify, Fault};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATIONS: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "edlab",
    version,
    about = "Error-disturbance relation experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every relation on the configured model.
    Report {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the seed from the config file.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Sweep the state angle over [0, 2π) and write one CSV row per angle.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Defaults to `output_path` from the config file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the Ozawa, Branciard and new-bound boundary curves.
    Frontier {
        #[arg(long)]
        cab: f64,
        #[arg(long)]
        da: f64,
        #[arg(long)]
        db: f64,
        /// Right-hand side of `ε² + η² ≥ rhs` for the new-bound circle; the
        /// default is the closed-form envelope `1 + cos⁴2θ` at θ = 0.
        #[arg(long, default_value_t = 2.0)]
        new_rhs: f64,
        #[arg(long, default_value_t = 201)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check every relation on random qubit–qubit models.
    Verify {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Directory receiving one replayable config per violation.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long, value_enum, hide = true, default_value_t = FaultArg::None)]
        inject_fault: FaultArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    None,
    FlipWitnessSign,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Self {
        match f {
            FaultArg::None => Fault::None,
            FaultArg::FlipWitnessSign => Fault::FlipWitnessSign,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Csv(#[from] CsvError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(ConfigError::Io { .. }) | CliError::Csv(_) | CliError::Io { .. } => {
                EXIT_IO
            }
            CliError::Config(_) | CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Report { config, seed } => {
            let mut c = load_config(&config)?;
            if let Some(seed) = seed {
                c.seed = seed;
            }
            let model = c.model().map_err(usage)?;
            let report = bound_report(&model, &c.strategy()).map_err(usage)?;
            write_report(out, &c, &report);
            Ok(EXIT_OK)
        }
        Command::Sweep { config, out: path } => {
            let c = load_config(&config)?;
            let path = path
                .or_else(|| c.output_path.clone())
                .ok_or_else(|| usage("no output path: pass --out or set output_path"))?;
            let records = sweep(&c).map_err(usage)?;
            emit_sweep_csv(&records, &path)?;
            let failed = records.iter().filter(|r| r.error.is_some()).count();
            let _ = writeln!(out, "rows={}", records.len());
            let _ = writeln!(out, "failed_rows={failed}");
            if let Ok(frac) = fraction_tighter(&records) {
                let _ = writeln!(out, "fraction_tighter={}", format_number(frac));
            }
            let _ = writeln!(out, "csv={}", path.display());
            Ok(EXIT_OK)
        }
        Command::Frontier {
            cab,
            da,
            db,
            new_rhs,
            grid,
            out: path,
        } => {
            let curves = frontier(cab, da, db, new_rhs, grid).map_err(usage)?;
            emit_frontier_csv(&curves, &path)?;
            for c in &curves {
                let _ = writeln!(out, "{}: {} points", c.name, c.points.len());
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            trials,
            seed,
            dump,
            inject_fault,
        } => {
            let report = verify(seed, trials as usize, inject_fault.into()).map_err(usage)?;
            let _ = writeln!(out, "seed={} trials={}", report.seed, report.trials);
            for (p, n) in &report.evaluated {
                let _ = writeln!(
                    out,
                    "{:<26} checked={:<6} violations={}",
                    p.name(),
                    n,
                    report.violations_of(*p)
                );
            }
            let _ = writeln!(out, "skipped_degenerate={}", report.skipped);
            if let Some(dir) = &dump {
                write_replays(dir, &report)?;
            }
            if report.passed() {
                let _ = writeln!(out, "result=pass");
                return Ok(EXIT_OK);
            }
            for v in &report.violations {
                let _ = writeln!(
                    out,
                    "violation trial={} property={} slack={:e} {}",
                    v.trial, v.property, v.slack, v.detail
                );
            }
            let first = &report.violations[0];
            let _ = writeln!(
                out,
                "# replay for trial {} ({})",
                first.trial, first.property
            );
            let _ = write!(out, "{}", first.replay);
            let _ = writeln!(out, "result=fail");
            Ok(EXIT_VIOLATIONS)
        }
    }
}

fn write_replays(dir: &Path, report: &crate::verify::VerifyReport) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    };
    std::fs::create_dir_all(dir).map_err(io)?;
    for v in &report.violations {
        let path = dir.join(format!("trial{:05}_{}.cfg", v.trial, v.property));
        std::fs::write(&path, &v.replay).map_err(|source| CliError::Io { path, source })?;
    }
    Ok(())
}

fn write_report(out: &mut dyn Write, c: &ScenarioConfig, r: &BoundReport) {
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "{k}={v}");
    };
    let n = format_number;
    line("scenario", c.scenario.name());
    if let ScenarioKind::Named(_) = c.scenario {
        line("theta", n(c.theta));
        line("phi", n(c.phi));
        line("lambda", n(c.lambda));
    }
    line("epsilon_a", n(r.stats.epsilon_a));
    line("eta_b", n(r.stats.eta_b));
    line("delta_a", n(r.stats.delta_a));
    line("delta_b", n(r.stats.delta_b));
    line("c_ab", n(r.stats.c_ab));
    line("sign", format!("{:?}", r.sign).to_lowercase());
    line("robertson_rhs", n(r.robertson_rhs));
    line("ozawa_lhs", n(r.ozawa_lhs));
    line("branciard_lhs", n(r.branciard_lhs));
    line("branciard_tight_lhs", n(r.branciard_tight.value));
    line(
        "branciard_tight_clamped",
        r.branciard_tight.clamped.to_string(),
    );
    line("thm1_sum", n(r.thm1_sum));
    line("thm1_commutator_part", n(r.thm1.commutator_part));
    line("thm1_witness_term", n(r.thm1.witness_term));
    line("thm1_rhs", n(r.thm1_rhs()));
    line("l_new1", n(r.l_new1));
    line(
        "l_new2",
        r.l_new2_value().map(n).unwrap_or_else(|| "absent".into()),
    );
    line("eq21_rhs", n(r.eq21_rhs));
    let designated = match c.scenario {
        ScenarioKind::Named(s) => new_bound_quantity(s, r),
        ScenarioKind::Custom(_) => Some(r.l_new1),
    };
    let tighter = is_tighter(designated, r.branciard_tight.value, r.stats.c_ab);
    line("new_beats_branciard", tighter.to_string());
    for check in &r.checks {
        let status = match check.satisfied {
            Some(true) => "ok".to_string(),
            Some(false) if check.universal => "VIOLATED".to_string(),
            Some(false) => "fails (not universal)".to_string(),
            None => format!("absent ({})", check.absent_reason.as_deref().unwrap_or("")),
        };
        let slack = check.slack.map(n).unwrap_or_default();
        line(
            &format!("check.{}", check.relation),
            format!("{status} slack={slack}"),
        );
    }
}
