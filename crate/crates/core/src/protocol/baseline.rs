//! Two-protocol baseline: Bennett teleportation from Bob to Charlie over one
//! EPR pair, then remote Z rotation from Alice onto Charlie's qubit over a
//! second EPR pair `(q1', q2')`.

use serde::Serialize;

use super::{
    BaselinePhase, BranchOutcome, Checkpoint, Engine, EntanglementKind, OutcomePlan, Party,
    ProtocolError, ProtocolInput, ProtocolTranscript, Step, TranscriptBuilder,
};
use crate::statevector::{Gate, GateKind, MeasurementBasis, Outcome, QubitId, StateVector};

/// Charlie's correction for each teleport Bell outcome.
pub fn teleport_correction(mr: Outcome) -> Result<GateKind, ProtocolError> {
    match mr {
        Outcome::PhiPlus => Ok(GateKind::I),
        Outcome::PhiMinus => Ok(GateKind::Z),
        Outcome::PsiPlus => Ok(GateKind::X),
        Outcome::PsiMinus => Ok(GateKind::IY),
        other => Err(ProtocolError::UnexpectedOutcome {
            step: Step::BobBell,
            outcome: other,
        }),
    }
}

/// Charlie's last fix-up in the remote rotation: `I` for `+`, `σz` for `−`.
pub fn remote_correction(mr_a: Outcome) -> Result<GateKind, ProtocolError> {
    match mr_a {
        Outcome::Plus => Ok(GateKind::I),
        Outcome::Minus => Ok(GateKind::Z),
        other => Err(ProtocolError::UnexpectedOutcome {
            step: Step::AliceX,
            outcome: other,
        }),
    }
}

/// Teleports the payload from Bob to Charlie through EPR `(q2, q3)`.
///
/// Charlie's qubit is handed back relabelled as `b`, the name the remote
/// rotation phase uses for it.
pub fn run_teleport(
    input: &ProtocolInput,
    outcomes: &mut OutcomePlan<'_>,
) -> Result<(StateVector, ProtocolTranscript), ProtocolError> {
    let mut log = TranscriptBuilder::new(Engine::Teleport);

    let epr = StateVector::epr([QubitId::Q2, QubitId::Q3])?;
    log.distribute(
        EntanglementKind::Epr,
        &[(Party::Bob, QubitId::Q2), (Party::Charlie, QubitId::Q3)],
    );
    let joint = input.payload(QubitId::B).tensor(&epr)?;
    log.snapshot(Checkpoint::InitialJoint, &joint);

    let (record, state) = joint.measure(
        &MeasurementBasis::bell(),
        &[QubitId::B, QubitId::Q2],
        outcomes.source(Step::BobBell)?,
    )?;
    let mr = record.outcome;
    log.measure(Party::Bob, record);
    let id = log.send(Party::Bob, &[Party::Charlie], mr);
    log.snapshot(Checkpoint::PreCorrection, &state);

    let correction = Gate::new(teleport_correction(mr)?);
    let state = state.apply(&correction, &[QubitId::Q3])?;
    log.apply(Party::Charlie, correction.kind(), &[QubitId::Q3], &[id]);

    let held = state.relabel(QubitId::Q3, QubitId::B)?;
    let transcript = log.finish(held.clone());
    Ok((held, transcript))
}

/// Alice applies `Rz(theta)` to Charlie's single qubit `b` through EPR
/// `(q1', q2')`. Charlie ends up holding the rotated state on `q2'`.
pub fn run_remote_control(
    theta: f64,
    charlie_state: &StateVector,
    outcomes: &mut OutcomePlan<'_>,
) -> Result<(StateVector, ProtocolTranscript), ProtocolError> {
    if charlie_state.labels() != [QubitId::B] {
        return Err(ProtocolError::UnexpectedRegister {
            expected: QubitId::B,
            found: charlie_state.labels().to_vec(),
        });
    }
    if !theta.is_finite() {
        return Err(ProtocolError::InvalidAngle(theta));
    }
    let mut log = TranscriptBuilder::new(Engine::RemoteControl);

    let epr = StateVector::epr([QubitId::Q1Prime, QubitId::Q2Prime])?;
    log.distribute(
        EntanglementKind::Epr,
        &[
            (Party::Alice, QubitId::Q1Prime),
            (Party::Charlie, QubitId::Q2Prime),
        ],
    );
    let joint = epr.tensor(charlie_state)?;
    log.snapshot(Checkpoint::InitialJoint, &joint);

    let cnot = Gate::cnot();
    let state = joint.apply(&cnot, &[QubitId::Q2Prime, QubitId::B])?;
    log.apply(
        Party::Charlie,
        cnot.kind(),
        &[QubitId::Q2Prime, QubitId::B],
        &[],
    );
    log.snapshot(Checkpoint::AfterCnot, &state);

    let (record, mut state) = state.measure(
        &MeasurementBasis::computational(),
        &[QubitId::B],
        outcomes.source(Step::CharlieZ)?,
    )?;
    let z = record.outcome;
    log.measure(Party::Charlie, record);
    let z_id = log.send(Party::Charlie, &[Party::Alice], z);

    if z == Outcome::One {
        let x = Gate::x();
        state = state.apply(&x, &[QubitId::Q1Prime])?;
        log.apply(Party::Alice, x.kind(), &[QubitId::Q1Prime], &[z_id]);
        state = state.apply(&x, &[QubitId::Q2Prime])?;
        log.apply(Party::Charlie, x.kind(), &[QubitId::Q2Prime], &[]);
    }
    log.snapshot(Checkpoint::AfterFlips, &state);

    let rotation = Gate::rz(theta);
    let state = state.apply(&rotation, &[QubitId::Q1Prime])?;
    log.apply(Party::Alice, rotation.kind(), &[QubitId::Q1Prime], &[]);

    let source = outcomes.source(Step::AliceX)?;
    let (record, state) = state.measure(&MeasurementBasis::x(), &[QubitId::Q1Prime], source)?;
    let mr_a = record.outcome;
    log.measure(Party::Alice, record);
    let a_id = log.send(Party::Alice, &[Party::Charlie], mr_a);
    log.snapshot(Checkpoint::PreCorrection, &state);

    let correction = Gate::new(remote_correction(mr_a)?);
    let state = state.apply(&correction, &[QubitId::Q2Prime])?;
    log.apply(
        Party::Charlie,
        correction.kind(),
        &[QubitId::Q2Prime],
        &[a_id],
    );

    let transcript = log.finish(state.clone());
    Ok((state, transcript))
}

/// Teleport, then remote rotation on the teleported qubit.
pub fn run_intuitive(
    input: &ProtocolInput,
    outcomes: &mut OutcomePlan<'_>,
) -> Result<ProtocolTranscript, ProtocolError> {
    let (held, teleport) = run_teleport(input, outcomes)?;
    let (rotated, remote) = run_remote_control(input.theta(), &held, outcomes)?;
    let mut log = TranscriptBuilder::new(Engine::Intuitive);
    log.append_phase(BaselinePhase::Teleport, teleport);
    log.append_phase(BaselinePhase::RemoteControl, remote);
    Ok(log.finish(rotated))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntuitiveBranch {
    pub teleport: Outcome,
    pub charlie_z: Outcome,
    pub alice_x: Outcome,
}

impl IntuitiveBranch {
    /// All 16 combinations: 4 teleport outcomes × 4 remote-control outcomes.
    pub fn all() -> Vec<IntuitiveBranch> {
        let mut out = Vec::with_capacity(16);
        for &teleport in &Outcome::BELL {
            for &charlie_z in &Outcome::Z {
                for &alice_x in &Outcome::X {
                    out.push(IntuitiveBranch {
                        teleport,
                        charlie_z,
                        alice_x,
                    });
                }
            }
        }
        out
    }

    pub fn plan(self) -> OutcomePlan<'static> {
        OutcomePlan::forced([
            (Step::BobBell, self.teleport),
            (Step::CharlieZ, self.charlie_z),
            (Step::AliceX, self.alice_x),
        ])
    }
}

pub fn enumerate_intuitive_branches(
    input: &ProtocolInput,
) -> Result<Vec<BranchOutcome<IntuitiveBranch>>, ProtocolError> {
    IntuitiveBranch::all()
        .into_iter()
        .map(|branch| {
            let transcript = run_intuitive(input, &mut branch.plan())?;
            Ok(BranchOutcome {
                branch,
                probability: transcript.branch_probability(),
                transcript,
            })
        })
        .collect()
}
