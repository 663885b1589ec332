use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use super::{
    emit_report, run, AmplitudeSpec, AngleSpec, HarnessError, Mode, OutputFormat, RunConfig,
    RunReport,
};
use crate::statevector::Outcome;

/// Simulate the GHZ-based telerotation protocol and the two-EPR baseline.
#[derive(Debug, Parser)]
#[command(name = "telerotate", version)]
pub struct Args {
    /// Engine(s) to run.
    #[arg(long, value_enum, default_value_t = Mode::Proposed, conflicts_with = "config")]
    pub mode: Mode,
    /// Payload amplitude on |0>: a complex literal like 0.6, 0.8i, 0.6+0.8i, or `random`.
    #[arg(
        long,
        default_value = "random",
        allow_hyphen_values = true,
        conflicts_with = "config"
    )]
    pub alpha: AmplitudeSpec,
    /// Payload amplitude on |1>.
    #[arg(
        long,
        default_value = "random",
        allow_hyphen_values = true,
        conflicts_with = "config"
    )]
    pub beta: AmplitudeSpec,
    /// Rotation angle in radians, or `random`.
    #[arg(
        long,
        default_value = "random",
        allow_hyphen_values = true,
        conflicts_with = "config"
    )]
    pub theta: AngleSpec,
    #[arg(long, default_value_t = 1, conflicts_with = "config")]
    pub trials: u32,
    #[arg(long, default_value_t = 0, conflicts_with = "config")]
    pub seed: u64,
    /// Enumerate every measurement branch instead of sampling one.
    #[arg(long, conflicts_with = "config")]
    pub exhaustive: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table, conflicts_with = "config")]
    pub output: OutputFormat,
    /// Force Bob's Bell outcome: phi+, phi-, psi+ or psi-.
    #[arg(long, conflicts_with = "config")]
    pub force_mrb: Option<Outcome>,
    /// Force Alice's X outcome: + or -.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "config")]
    pub force_mra: Option<Outcome>,
    /// Read the whole run configuration from a JSON file instead of flags.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

impl Args {
    pub fn into_config(self) -> Result<RunConfig, HarnessError> {
        if let Some(path) = self.config {
            let text = std::fs::read_to_string(&path).map_err(|source| HarnessError::Io {
                path: path.display().to_string(),
                source,
            })?;
            return serde_json::from_str(&text)
                .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())));
        }
        Ok(RunConfig {
            mode: self.mode,
            alpha: self.alpha,
            beta: self.beta,
            theta: self.theta,
            trials: self.trials,
            seed: self.seed,
            exhaustive: self.exhaustive,
            output: self.output,
            force_mrb: self.force_mrb,
            force_mra: self.force_mra,
        })
    }
}

/// Runs the binary against already-parsed arguments, writing the report to
/// `out` and diagnostics to `err`.
pub fn main_with(args: Args, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode {
    let result = args.into_config().and_then(|cfg| {
        let report = run(&cfg)?;
        Ok((cfg.output, report))
    });
    match result {
        Ok((format, report)) => deliver(&report, format, out, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Writes the report and maps its verdict to the process status.
fn deliver(
    report: &RunReport,
    format: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> ExitCode {
    if let Err(e) = out.write_all(&emit_report(report, format)) {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    if report.aggregate.passed {
        ExitCode::SUCCESS
    } else {
        let _ = writeln!(err, "verification failed");
        ExitCode::from(1)
    }
}
