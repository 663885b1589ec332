//! Teleportation with a remote Z rotation over one shared GHZ state.
//!
//! Alice holds `q1`, Bob holds the payload `b` and `q2`, Charlie holds `q3`.
//! Bob measures `(b, q2)` in the Bell basis and broadcasts MR_B; Alice rotates
//! `q1` by `±θ` depending on MR_B, measures it in the X basis and sends MR_A
//! to Charlie; Charlie fixes up `q3` with a Pauli chosen from both results.

use serde::Serialize;

use super::{
    Checkpoint, Engine, EntanglementKind, OutcomePlan, Party, ProtocolError, ProtocolInput,
    ProtocolTranscript, Step, TranscriptBuilder,
};
use crate::statevector::{
    BasisKind, Gate, GateKind, MeasurementBasis, Outcome, QubitId, StateVector,
};

/// Charlie's correction for `(MR_A, MR_B)`.
pub fn correction_for(mr_a: Outcome, mr_b: Outcome) -> Result<GateKind, ProtocolError> {
    use Outcome::*;
    let gate = match (mr_a, mr_b) {
        (Plus, PhiPlus) => GateKind::I,
        (Minus, PhiPlus) => GateKind::Z,
        (Plus, PhiMinus) => GateKind::Z,
        (Minus, PhiMinus) => GateKind::I,
        (Plus, PsiPlus) => GateKind::X,
        (Minus, PsiPlus) => GateKind::IY,
        (Plus, PsiMinus) => GateKind::IY,
        (Minus, PsiMinus) => GateKind::X,
        (a, b) => {
            return Err(if a.basis() != BasisKind::X {
                ProtocolError::UnexpectedOutcome {
                    step: Step::AliceX,
                    outcome: a,
                }
            } else {
                ProtocolError::UnexpectedOutcome {
                    step: Step::BobBell,
                    outcome: b,
                }
            })
        }
    };
    Ok(gate)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RotationSign {
    Positive,
    Negative,
}

impl RotationSign {
    pub fn angle(self, theta: f64) -> f64 {
        match self {
            RotationSign::Positive => theta,
            RotationSign::Negative => -theta,
        }
    }
}

/// `+θ` after Φ±, `−θ` after Ψ±.
pub fn alice_rotation_sign(mr_b: Outcome) -> Result<RotationSign, ProtocolError> {
    match mr_b {
        Outcome::PhiPlus | Outcome::PhiMinus => Ok(RotationSign::Positive),
        Outcome::PsiPlus | Outcome::PsiMinus => Ok(RotationSign::Negative),
        other => Err(ProtocolError::UnexpectedOutcome {
            step: Step::BobBell,
            outcome: other,
        }),
    }
}

/// One fully determined measurement branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProposedBranch {
    pub mr_b: Outcome,
    pub mr_a: Outcome,
}

impl ProposedBranch {
    /// All eight branches, grouped by MR_B.
    pub fn all() -> Vec<ProposedBranch> {
        Outcome::BELL
            .iter()
            .flat_map(|&mr_b| {
                Outcome::X
                    .iter()
                    .map(move |&mr_a| ProposedBranch { mr_b, mr_a })
            })
            .collect()
    }

    pub fn plan(self) -> OutcomePlan<'static> {
        OutcomePlan::forced([(Step::BobBell, self.mr_b), (Step::AliceX, self.mr_a)])
    }
}

pub fn run_proposed(
    input: &ProtocolInput,
    outcomes: &mut OutcomePlan<'_>,
) -> Result<ProtocolTranscript, ProtocolError> {
    let mut log = TranscriptBuilder::new(Engine::Proposed);

    let ghz = StateVector::ghz([QubitId::Q1, QubitId::Q2, QubitId::Q3])?;
    log.distribute(
        EntanglementKind::Ghz,
        &[
            (Party::Alice, QubitId::Q1),
            (Party::Bob, QubitId::Q2),
            (Party::Charlie, QubitId::Q3),
        ],
    );
    let joint = input.payload(QubitId::B).tensor(&ghz)?;
    log.snapshot(Checkpoint::InitialJoint, &joint);

    // Step 1: Bob's Bell measurement, broadcast to Alice and Charlie.
    let (record, state) = joint.measure(
        &MeasurementBasis::bell(),
        &[QubitId::B, QubitId::Q2],
        outcomes.source(Step::BobBell)?,
    )?;
    let mr_b = record.outcome;
    log.measure(Party::Bob, record);
    log.snapshot(Checkpoint::AfterBellMeasurement, &state);
    let mr_b_id = log.send(Party::Bob, &[Party::Alice, Party::Charlie], mr_b);

    // Step 2: Alice rotates q1 by ±θ, measures X, tells Charlie.
    let angle = alice_rotation_sign(mr_b)?.angle(input.theta());
    let rotation = Gate::rz(angle);
    let state = state.apply(&rotation, &[QubitId::Q1])?;
    log.apply(Party::Alice, rotation.kind(), &[QubitId::Q1], &[mr_b_id]);

    let source = outcomes.source(Step::AliceX)?;
    let (record, state) = state.measure(&MeasurementBasis::x(), &[QubitId::Q1], source)?;
    let mr_a = record.outcome;
    log.measure(Party::Alice, record);
    let mr_a_id = log.send(Party::Alice, &[Party::Charlie], mr_a);
    log.snapshot(Checkpoint::PreCorrection, &state);

    // Step 3: Charlie's correction.
    let correction = Gate::new(correction_for(mr_a, mr_b)?);
    let state = state.apply(&correction, &[QubitId::Q3])?;
    log.apply(
        Party::Charlie,
        correction.kind(),
        &[QubitId::Q3],
        &[mr_b_id, mr_a_id],
    );

    Ok(log.finish(state))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchOutcome<B> {
    pub branch: B,
    pub probability: f64,
    pub transcript: ProtocolTranscript,
}

/// Runs all eight forced branches of the proposed protocol.
pub fn enumerate_branches(
    input: &ProtocolInput,
) -> Result<Vec<BranchOutcome<ProposedBranch>>, ProtocolError> {
    ProposedBranch::all()
        .into_iter()
        .map(|branch| {
            let transcript = run_proposed(input, &mut branch.plan())?;
            Ok(BranchOutcome {
                branch,
                probability: transcript.branch_probability(),
                transcript,
            })
        })
        .collect()
}
