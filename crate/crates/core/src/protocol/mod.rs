//! LOCC protocol engines and the transcript they produce.
//!
//! Both engines run on the same vocabulary: parties hold labelled qubits,
//! perform local gates and measurements, and exchange classical messages in
//! numbered rounds. Everything that happens is appended to an ordered
//! [`Event`] log, from which resource counts are derived.

pub mod baseline;
pub mod telerotate;

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::Range;

use num_complex::Complex64;
use rand::RngCore;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::resources::{ledger_of, ResourceLedger};
use crate::statevector::{
    Amplitude, GateKind, MeasurementRecord, Outcome, OutcomeSource, QubitId, StateError,
    StateVector,
};

pub use baseline::{
    enumerate_intuitive_branches, remote_correction, run_intuitive, run_remote_control,
    run_teleport, teleport_correction, IntuitiveBranch,
};
pub use telerotate::{
    alice_rotation_sign, correction_for, enumerate_branches, run_proposed, BranchOutcome,
    ProposedBranch, RotationSign,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProtocolError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error("rotation angle must be finite, got {0}")]
    InvalidAngle(f64),
    #[error("outcome {outcome} is not valid for {step}")]
    UnexpectedOutcome { step: Step, outcome: Outcome },
    #[error("no outcome forced for {0} and no sampler available")]
    MissingOutcome(Step),
    #[error(
        "expected Charlie to hold a single qubit labelled {expected}, found register {found:?}"
    )]
    UnexpectedRegister {
        expected: QubitId,
        found: Vec<QubitId>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Party {
    Alice,
    Bob,
    Charlie,
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Party::Alice => "Alice",
            Party::Bob => "Bob",
            Party::Charlie => "Charlie",
        })
    }
}

/// Measurement steps that can be forced or sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    /// Bob's Bell measurement (MR_B, or the teleport measurement).
    BobBell,
    /// Charlie's Z measurement of `b` in the remote-control phase.
    CharlieZ,
    /// Alice's X measurement (MR_A).
    AliceX,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::BobBell => "Bob's Bell measurement",
            Step::CharlieZ => "Charlie's Z measurement",
            Step::AliceX => "Alice's X measurement",
        })
    }
}

/// Outcome choices for a protocol run: forced per step, sampled otherwise.
#[derive(Default)]
pub struct OutcomePlan<'a> {
    forced: BTreeMap<Step, Outcome>,
    rng: Option<&'a mut dyn RngCore>,
}

impl<'a> OutcomePlan<'a> {
    pub fn sampled(rng: &'a mut dyn RngCore) -> Self {
        OutcomePlan {
            forced: BTreeMap::new(),
            rng: Some(rng),
        }
    }

    pub fn forced(pairs: impl IntoIterator<Item = (Step, Outcome)>) -> Self {
        OutcomePlan {
            forced: pairs.into_iter().collect(),
            rng: None,
        }
    }

    pub fn force(mut self, step: Step, outcome: Outcome) -> Self {
        self.forced.insert(step, outcome);
        self
    }

    pub(crate) fn source(&mut self, step: Step) -> Result<OutcomeSource<'_>, ProtocolError> {
        if let Some(o) = self.forced.get(&step) {
            return Ok(OutcomeSource::Forced(*o));
        }
        match self.rng.as_mut() {
            Some(rng) => Ok(OutcomeSource::Sample(&mut **rng)),
            None => Err(ProtocolError::MissingOutcome(step)),
        }
    }
}

/// Teleported amplitudes and Alice's rotation angle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProtocolInput {
    alpha: Amplitude,
    beta: Amplitude,
    theta: f64,
}

impl ProtocolInput {
    /// Validates normalization (within 1e-9, then renormalized) and reduces
    /// `theta` into `[0, 2π]`.
    pub fn new(alpha: Amplitude, beta: Amplitude, theta: f64) -> Result<Self, ProtocolError> {
        if !theta.is_finite() {
            return Err(ProtocolError::InvalidAngle(theta));
        }
        let psi = StateVector::single(alpha, beta, QubitId::B)?;
        let theta = if (0.0..=TAU).contains(&theta) {
            theta
        } else {
            let reduced = theta.rem_euclid(TAU);
            log::warn!("theta {theta} outside [0, 2pi]; reduced to {reduced}");
            reduced
        };
        Ok(ProtocolInput {
            alpha: psi.amplitudes()[0],
            beta: psi.amplitudes()[1],
            theta,
        })
    }

    pub fn alpha(&self) -> Amplitude {
        self.alpha
    }

    pub fn beta(&self) -> Amplitude {
        self.beta
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `α|0⟩ + β|1⟩` on `label`.
    pub fn payload(&self, label: QubitId) -> StateVector {
        StateVector::single(self.alpha, self.beta, label).expect("validated on construction")
    }

    /// `α e^{-iθ/2}|0⟩ + β e^{iθ/2}|1⟩` on `label`: the state Charlie must end
    /// up with.
    pub fn target_state(&self, label: QubitId) -> StateVector {
        let lo = Complex64::from_polar(1.0, -self.theta / 2.0);
        let hi = Complex64::from_polar(1.0, self.theta / 2.0);
        StateVector::single(self.alpha * lo, self.beta * hi, label).expect("unit norm")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntanglementKind {
    Epr,
    Ghz,
}

impl EntanglementKind {
    pub fn qubits(self) -> u32 {
        match self {
            EntanglementKind::Epr => 2,
            EntanglementKind::Ghz => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalMessage {
    pub id: usize,
    pub round: u32,
    pub sender: Party,
    pub recipients: Vec<Party>,
    pub payload: Outcome,
    /// Encoded payload, most significant bit first.
    pub bits: String,
    pub bit_width: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    Distribute {
        kind: EntanglementKind,
        holders: Vec<(Party, QubitId)>,
    },
    Apply {
        party: Party,
        gate: GateKind,
        targets: Vec<QubitId>,
        /// Ids of the messages this operation depends on.
        conditioned_on: Vec<usize>,
    },
    Measure {
        party: Party,
        record: MeasurementRecord,
    },
    Send {
        message: ClassicalMessage,
    },
}

/// Named intermediate states kept for verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Checkpoint {
    /// Payload tensored with the shared entanglement, before anything acts.
    InitialJoint,
    /// Residual after Bob's Bell measurement.
    AfterBellMeasurement,
    /// Charlie's qubit just before his correction.
    PreCorrection,
    /// Remote control: joint state after Charlie's CNOT.
    AfterCnot,
    /// Remote control: shared pair after the conditional σx flips.
    AfterFlips,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Snapshot {
    pub checkpoint: Checkpoint,
    pub state: StateVector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// GHZ-based teleportation with remote rotation.
    Proposed,
    /// Bennett teleportation fragment of the baseline.
    Teleport,
    /// Remote-rotation fragment of the baseline.
    RemoteControl,
    /// Teleport followed by remote control.
    Intuitive,
}

impl Engine {
    /// Published unitary count for the engine (identity corrections included).
    pub fn nominal_unitary_count(self) -> u32 {
        match self {
            Engine::Proposed => 2,
            Engine::Teleport => 1,
            Engine::RemoteControl => 4,
            Engine::Intuitive => 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselinePhase {
    Teleport,
    RemoteControl,
}

/// Event index range covered by one baseline phase.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseSpan {
    pub phase: BaselinePhase,
    pub events: Range<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProtocolTranscript {
    pub engine: Engine,
    pub events: Vec<Event>,
    pub phases: Vec<PhaseSpan>,
    #[serde(skip)]
    pub snapshots: Vec<Snapshot>,
    pub final_state: StateVector,
    pub ledger: ResourceLedger,
}

impl ProtocolTranscript {
    pub fn messages(&self) -> impl Iterator<Item = &ClassicalMessage> {
        self.events.iter().filter_map(|e| match e {
            Event::Send { message } => Some(message),
            _ => None,
        })
    }

    pub fn measurements(&self) -> impl Iterator<Item = (Party, &MeasurementRecord)> {
        self.events.iter().filter_map(|e| match e {
            Event::Measure { party, record } => Some((*party, record)),
            _ => None,
        })
    }

    pub fn operations(&self) -> impl Iterator<Item = (Party, GateKind, &[QubitId])> {
        self.events.iter().filter_map(|e| match e {
            Event::Apply {
                party,
                gate,
                targets,
                ..
            } => Some((*party, *gate, targets.as_slice())),
            _ => None,
        })
    }

    /// Measured outcomes in the order they happened.
    pub fn outcomes(&self) -> Vec<Outcome> {
        self.measurements().map(|(_, r)| r.outcome).collect()
    }

    /// Product of the Born probabilities of every realized outcome.
    pub fn branch_probability(&self) -> f64 {
        self.measurements().map(|(_, r)| r.probability).product()
    }

    pub fn snapshot(&self, checkpoint: Checkpoint) -> Option<&StateVector> {
        self.snapshots
            .iter()
            .find(|s| s.checkpoint == checkpoint)
            .map(|s| &s.state)
    }

    /// Fidelity of the final state against the expected rotated payload.
    pub fn fidelity_against(&self, input: &ProtocolInput) -> Result<f64, ProtocolError> {
        let label = self.final_state.labels()[0];
        Ok(self.final_state.fidelity(&input.target_state(label))?)
    }

    /// Operations that depend on a message not yet delivered to the acting
    /// party. Empty for a causally consistent transcript.
    pub fn causality_violations(&self) -> Vec<String> {
        let mut delivered: Vec<&ClassicalMessage> = Vec::new();
        let mut problems = Vec::new();
        for (idx, event) in self.events.iter().enumerate() {
            match event {
                Event::Send { message } => delivered.push(message),
                Event::Apply {
                    party,
                    gate,
                    conditioned_on,
                    ..
                } => {
                    for id in conditioned_on {
                        match delivered.iter().find(|m| m.id == *id) {
                            Some(m) if m.recipients.contains(party) => {}
                            Some(_) => problems.push(format!(
                                "event {idx}: {party} applies {gate} using message {id} addressed elsewhere"
                            )),
                            None => problems.push(format!(
                                "event {idx}: {party} applies {gate} before message {id} arrives"
                            )),
                        }
                    }
                }
                _ => {}
            }
        }
        problems
    }
}

/// Accumulates events while an engine runs.
pub(crate) struct TranscriptBuilder {
    engine: Engine,
    events: Vec<Event>,
    phases: Vec<PhaseSpan>,
    snapshots: Vec<Snapshot>,
    next_message: usize,
    round: u32,
}

impl TranscriptBuilder {
    pub(crate) fn new(engine: Engine) -> Self {
        TranscriptBuilder {
            engine,
            events: Vec::new(),
            phases: Vec::new(),
            snapshots: Vec::new(),
            next_message: 0,
            round: 0,
        }
    }

    pub(crate) fn distribute(&mut self, kind: EntanglementKind, holders: &[(Party, QubitId)]) {
        self.events.push(Event::Distribute {
            kind,
            holders: holders.to_vec(),
        });
    }

    pub(crate) fn apply(
        &mut self,
        party: Party,
        gate: GateKind,
        targets: &[QubitId],
        conditioned_on: &[usize],
    ) {
        self.events.push(Event::Apply {
            party,
            gate,
            targets: targets.to_vec(),
            conditioned_on: conditioned_on.to_vec(),
        });
    }

    pub(crate) fn measure(&mut self, party: Party, record: MeasurementRecord) {
        self.events.push(Event::Measure { party, record });
    }

    /// Sends `payload` in a fresh round and returns the message id.
    pub(crate) fn send(&mut self, sender: Party, recipients: &[Party], payload: Outcome) -> usize {
        let (value, width) = payload.encode();
        self.round += 1;
        let id = self.next_message;
        self.next_message += 1;
        self.events.push(Event::Send {
            message: ClassicalMessage {
                id,
                round: self.round,
                sender,
                recipients: recipients.to_vec(),
                payload,
                bits: format!("{value:0w$b}", w = width as usize),
                bit_width: width,
            },
        });
        id
    }

    pub(crate) fn snapshot(&mut self, checkpoint: Checkpoint, state: &StateVector) {
        self.snapshots.push(Snapshot {
            checkpoint,
            state: state.clone(),
        });
    }

    /// Appends another transcript as a phase, shifting its message ids and
    /// rounds past everything already recorded.
    pub(crate) fn append_phase(&mut self, phase: BaselinePhase, fragment: ProtocolTranscript) {
        let id_offset = self.next_message;
        let round_offset = self.round;
        let start = self.events.len();
        for mut event in fragment.events {
            match &mut event {
                Event::Send { message } => {
                    message.id += id_offset;
                    message.round += round_offset;
                    self.next_message = self.next_message.max(message.id + 1);
                    self.round = self.round.max(message.round);
                }
                Event::Apply { conditioned_on, .. } => {
                    conditioned_on.iter_mut().for_each(|id| *id += id_offset);
                }
                _ => {}
            }
            self.events.push(event);
        }
        self.phases.push(PhaseSpan {
            phase,
            events: start..self.events.len(),
        });
        self.snapshots.extend(fragment.snapshots);
    }

    pub(crate) fn finish(self, final_state: StateVector) -> ProtocolTranscript {
        let mut transcript = ProtocolTranscript {
            engine: self.engine,
            events: self.events,
            phases: self.phases,
            snapshots: self.snapshots,
            final_state,
            ledger: ResourceLedger::default(),
        };
        transcript.ledger = ledger_of(&transcript);
        transcript
    }
}
