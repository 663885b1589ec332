//! Seeded trial runner and report emission behind the `telerotate` binary.
//!
//! A run is fully determined by its [`RunConfig`]: every trial draws from its
//! own ChaCha8 stream derived from the seed, so identical configs produce
//! byte-identical JSON.

pub mod cli;
mod config;
mod report;
mod run;

pub use config::{AmplitudeSpec, AngleSpec, Mode, OutputFormat, RunConfig};
pub use report::{emit_report, Aggregate, BranchResult, EngineLedger, RunReport, TrialInput};
pub use run::{haar_amplitudes, run};

use thiserror::Error;

use crate::protocol::ProtocolError;
use crate::statevector::StateError;

/// Pass threshold for reported fidelities.
pub const CLI_FIDELITY_THRESHOLD: f64 = 1.0 - 1e-9;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl From<StateError> for HarnessError {
    fn from(e: StateError) -> Self {
        HarnessError::Protocol(e.into())
    }
}

impl HarnessError {
    /// 2 for usage and configuration problems, 1 for failed runs.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Config(_) | HarnessError::Io { .. } => 2,
            HarnessError::Protocol(ProtocolError::State(StateError::NotNormalized { .. }))
            | HarnessError::Protocol(ProtocolError::InvalidAngle(_)) => 2,
            HarnessError::Protocol(_) => 1,
        }
    }
}
