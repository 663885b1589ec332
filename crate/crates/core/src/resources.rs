//! Resource accounting shared by both engines.
//!
//! Counts come from the event log alone, except the published unitary count
//! which is a per-engine constant. The conditional σx pair in the remote
//! rotation makes the measured count branch dependent (4 or 6 for the whole
//! baseline), so both numbers are kept side by side.

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::protocol::{Engine, EntanglementKind, Event, ProtocolTranscript};
use crate::statevector::BasisKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntangledCount {
    pub kind: EntanglementKind,
    pub count: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceLedger {
    /// Non-zero counts only, EPR before GHZ.
    pub entangled_states: Vec<EntangledCount>,
    pub unitary_ops_measured: u32,
    pub unitary_ops_nominal: u32,
    pub classical_bits: u32,
    pub rounds: u32,
    pub messages: u32,
    pub bell_measurements: u32,
    pub single_photon_measurements: u32,
}

impl ResourceLedger {
    /// Counts everything in `events`; `engine` contributes the published
    /// unitary count (zero when there is none).
    pub fn from_events(engine: Option<Engine>, events: &[Event]) -> Self {
        let mut epr = 0;
        let mut ghz = 0;
        let mut ledger = ResourceLedger {
            unitary_ops_nominal: engine.map_or(0, Engine::nominal_unitary_count),
            ..Default::default()
        };
        let mut rounds = Vec::new();
        for event in events {
            match event {
                Event::Distribute { kind, .. } => match kind {
                    EntanglementKind::Epr => epr += 1,
                    EntanglementKind::Ghz => ghz += 1,
                },
                Event::Apply { .. } => ledger.unitary_ops_measured += 1,
                Event::Measure { record, .. } => match record.basis {
                    BasisKind::Bell => ledger.bell_measurements += 1,
                    BasisKind::Computational | BasisKind::X => {
                        ledger.single_photon_measurements += 1
                    }
                },
                Event::Send { message } => {
                    ledger.messages += 1;
                    ledger.classical_bits += message.bit_width;
                    if !rounds.contains(&message.round) {
                        rounds.push(message.round);
                    }
                }
            }
        }
        ledger.rounds = rounds.len() as u32;
        for (kind, count) in [(EntanglementKind::Epr, epr), (EntanglementKind::Ghz, ghz)] {
            if count > 0 {
                ledger.entangled_states.push(EntangledCount { kind, count });
            }
        }
        ledger
    }

    pub fn count_of(&self, kind: EntanglementKind) -> u32 {
        self.entangled_states
            .iter()
            .filter(|e| e.kind == kind)
            .map(|e| e.count)
            .sum()
    }

    pub fn entangled_qubits(&self) -> u32 {
        self.entangled_states
            .iter()
            .map(|e| e.count * e.kind.qubits())
            .sum()
    }

    pub fn total_measurements(&self) -> u32 {
        self.bell_measurements + self.single_photon_measurements
    }

    /// The figures that appear in the published comparison table.
    pub fn resource_column(&self) -> ResourceColumn {
        ResourceColumn {
            entangled_states: self.entangled_states.clone(),
            unitary_ops: self.unitary_ops_nominal,
            rounds: self.rounds,
            classical_bits: self.classical_bits,
            bell_measurements: self.bell_measurements,
            single_photon_measurements: self.single_photon_measurements,
        }
    }
}

pub fn ledger_of(transcript: &ProtocolTranscript) -> ResourceLedger {
    ResourceLedger::from_events(Some(transcript.engine), &transcript.events)
}

/// One column of the protocol comparison table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceColumn {
    pub entangled_states: Vec<EntangledCount>,
    pub unitary_ops: u32,
    pub rounds: u32,
    pub classical_bits: u32,
    pub bell_measurements: u32,
    pub single_photon_measurements: u32,
}

impl ResourceColumn {
    /// 2 EPR states, 5 unitaries, 3 rounds, 4 bits, 1 Bell + 2 single-photon.
    pub fn intuitive() -> Self {
        ResourceColumn {
            entangled_states: vec![EntangledCount {
                kind: EntanglementKind::Epr,
                count: 2,
            }],
            unitary_ops: 5,
            rounds: 3,
            classical_bits: 4,
            bell_measurements: 1,
            single_photon_measurements: 2,
        }
    }

    /// 1 GHZ state, 2 unitaries, 2 rounds, 3 bits, 1 Bell + 1 single-photon.
    pub fn proposed() -> Self {
        ResourceColumn {
            entangled_states: vec![EntangledCount {
                kind: EntanglementKind::Ghz,
                count: 1,
            }],
            unitary_ops: 2,
            rounds: 2,
            classical_bits: 3,
            bell_measurements: 1,
            single_photon_measurements: 1,
        }
    }

    pub fn entanglement_label(&self) -> String {
        if self.entangled_states.is_empty() {
            return "none".to_string();
        }
        self.entangled_states
            .iter()
            .map(|e| {
                let kind = match e.kind {
                    EntanglementKind::Epr => "EPR",
                    EntanglementKind::Ghz => "GHZ",
                };
                let plural = if e.count == 1 { "state" } else { "states" };
                format!("{} {kind} {plural}", e.count)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `candidate − baseline` on every counted axis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerDelta {
    pub epr_states: i64,
    pub ghz_states: i64,
    pub entangled_qubits: i64,
    pub unitary_ops_nominal: i64,
    pub unitary_ops_measured: i64,
    pub classical_bits: i64,
    pub rounds: i64,
    pub bell_measurements: i64,
    pub single_photon_measurements: i64,
}

impl Neg for LedgerDelta {
    type Output = LedgerDelta;

    fn neg(self) -> LedgerDelta {
        LedgerDelta {
            epr_states: -self.epr_states,
            ghz_states: -self.ghz_states,
            entangled_qubits: -self.entangled_qubits,
            unitary_ops_nominal: -self.unitary_ops_nominal,
            unitary_ops_measured: -self.unitary_ops_measured,
            classical_bits: -self.classical_bits,
            rounds: -self.rounds,
            bell_measurements: -self.bell_measurements,
            single_photon_measurements: -self.single_photon_measurements,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Entanglement,
    UnitaryOperator,
    Rounds,
    ClassicalMessage,
    Measurement,
}

impl Axis {
    pub const ALL: [Axis; 5] = [
        Axis::Entanglement,
        Axis::UnitaryOperator,
        Axis::Rounds,
        Axis::ClassicalMessage,
        Axis::Measurement,
    ];

    pub fn title(self) -> &'static str {
        match self {
            Axis::Entanglement => "Entanglement state",
            Axis::UnitaryOperator => "Unitary operator",
            Axis::Rounds => "Number of rounds in classical transmission",
            Axis::ClassicalMessage => "Classical message",
            Axis::Measurement => "Measurement",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.title())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Better,
    Equal,
    Worse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisVerdict {
    pub axis: Axis,
    /// Scalar used for the verdict: entangled qubits, published unitary
    /// count, rounds, bits, total measurements.
    pub baseline: i64,
    pub candidate: i64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub baseline: ResourceColumn,
    pub candidate: ResourceColumn,
    pub deltas: LedgerDelta,
    pub axes: Vec<AxisVerdict>,
    pub candidate_strictly_better: bool,
}

fn axis_value(ledger: &ResourceLedger, axis: Axis) -> i64 {
    i64::from(match axis {
        Axis::Entanglement => ledger.entangled_qubits(),
        Axis::UnitaryOperator => ledger.unitary_ops_nominal,
        Axis::Rounds => ledger.rounds,
        Axis::ClassicalMessage => ledger.classical_bits,
        Axis::Measurement => ledger.total_measurements(),
    })
}

/// Compares `candidate` against `baseline`; deltas are `candidate − baseline`.
pub fn compare(baseline: &ResourceLedger, candidate: &ResourceLedger) -> ComparisonReport {
    let d = |a: u32, b: u32| i64::from(b) - i64::from(a);
    let deltas = LedgerDelta {
        epr_states: d(
            baseline.count_of(EntanglementKind::Epr),
            candidate.count_of(EntanglementKind::Epr),
        ),
        ghz_states: d(
            baseline.count_of(EntanglementKind::Ghz),
            candidate.count_of(EntanglementKind::Ghz),
        ),
        entangled_qubits: d(baseline.entangled_qubits(), candidate.entangled_qubits()),
        unitary_ops_nominal: d(baseline.unitary_ops_nominal, candidate.unitary_ops_nominal),
        unitary_ops_measured: d(
            baseline.unitary_ops_measured,
            candidate.unitary_ops_measured,
        ),
        classical_bits: d(baseline.classical_bits, candidate.classical_bits),
        rounds: d(baseline.rounds, candidate.rounds),
        bell_measurements: d(baseline.bell_measurements, candidate.bell_measurements),
        single_photon_measurements: d(
            baseline.single_photon_measurements,
            candidate.single_photon_measurements,
        ),
    };
    let axes: Vec<AxisVerdict> = Axis::ALL
        .iter()
        .map(|&axis| {
            let (b, c) = (axis_value(baseline, axis), axis_value(candidate, axis));
            AxisVerdict {
                axis,
                baseline: b,
                candidate: c,
                verdict: match c.cmp(&b) {
                    std::cmp::Ordering::Less => Verdict::Better,
                    std::cmp::Ordering::Equal => Verdict::Equal,
                    std::cmp::Ordering::Greater => Verdict::Worse,
                },
            }
        })
        .collect();
    ComparisonReport {
        baseline: baseline.resource_column(),
        candidate: candidate.resource_column(),
        deltas,
        candidate_strictly_better: axes.iter().all(|a| a.verdict == Verdict::Better),
        axes,
    }
}
