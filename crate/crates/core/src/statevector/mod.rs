//! Dense complex state-vector simulation over a handful of labelled qubits.
//!
//! Labels are ordered left to right as they appear in a ket, and the leftmost
//! label is the most significant bit of the amplitude index. So for labels
//! `(b, q1)` the amplitude of `|01⟩` lives at index 1.
//!
//! Every operation returns a new [`StateVector`]; measured qubits are removed
//! from the register and the residual state is renormalized.

mod basis;
mod gate;
mod measure;
mod state;

pub use basis::ParseOutcomeError;
pub use basis::{BasisKind, MeasurementBasis, Outcome};
pub use gate::{Gate, GateKind};
pub use measure::{MeasurementRecord, OutcomeSource};
pub use state::{fidelity_up_to_global_phase, QubitId, StateVector};

use num_complex::Complex64;
use thiserror::Error;

/// Complex probability amplitude.
pub type Amplitude = Complex64;

/// Tolerance for algebraic identities (norms, unitarity, projector algebra).
pub const EXACT_TOL: f64 = 1e-12;

/// Tolerance for normalization of user-supplied amplitudes.
pub const INPUT_TOL: f64 = 1e-9;

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("zero vector cannot be normalized into a state")]
    ZeroVector,
    #[error("amplitudes are not normalized: squared norm is {norm_sqr} (expected 1 within {tol})")]
    NotNormalized { norm_sqr: f64, tol: f64 },
    #[error("non-finite amplitude {0}")]
    NonFinite(Amplitude),
    #[error("expected {expected} amplitudes for {qubits} qubits, got {found}")]
    LengthMismatch {
        qubits: usize,
        expected: usize,
        found: usize,
    },
    #[error("qubit label {0} appears more than once")]
    DuplicateLabel(QubitId),
    #[error("qubit {0} is not part of the state")]
    UnknownLabel(QubitId),
    #[error("{name} acts on {arity} qubit(s) but {targets} target(s) were given")]
    ArityMismatch {
        name: String,
        arity: usize,
        targets: usize,
    },
    #[error("register of {0} qubits exceeds the supported maximum of {MAX_QUBITS}")]
    TooManyQubits(usize),
    #[error("outcome {outcome} is not part of the {basis} basis")]
    OutcomeNotInBasis { outcome: Outcome, basis: BasisKind },
    #[error("forced outcome {outcome} has probability {probability:e}; branch is impossible")]
    ImpossibleOutcome { outcome: Outcome, probability: f64 },
    #[error("states are over different registers: {left:?} vs {right:?}")]
    RegisterMismatch {
        left: Vec<QubitId>,
        right: Vec<QubitId>,
    },
}
