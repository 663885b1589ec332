//! Simulator properties shared by the proptest suite and the acceptance gate.

use num_complex::Complex64 as C;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use telerotate::statevector::{
    BasisKind, Gate, GateKind, MeasurementBasis, OutcomeSource, QubitId, StateVector,
};

use super::{bell_tagged_reconstruction, full_operator, matvec, max_diff, Mat};

pub const TOL: f64 = 1e-12;

pub fn state(max_qubits: usize) -> impl Strategy<Value = StateVector> {
    (1..=max_qubits)
        .prop_flat_map(|n| {
            prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1 << n)
                .prop_filter("non-zero", |v| {
                    v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-6
                })
                .prop_map(move |v| (n, v))
        })
        .prop_map(|(n, v)| {
            let labels = QubitId::ALL[..n].to_vec();
            let amps = v.into_iter().map(|(re, im)| C::new(re, im)).collect();
            StateVector::normalized(labels, amps).unwrap()
        })
}

pub fn gate_kind() -> impl Strategy<Value = GateKind> {
    prop_oneof![
        Just(GateKind::I),
        Just(GateKind::X),
        Just(GateKind::Y),
        Just(GateKind::IY),
        Just(GateKind::Z),
        Just(GateKind::H),
        Just(GateKind::Cnot),
        (-20.0..20.0f64).prop_map(GateKind::Rz),
    ]
}

/// A state with at least `arity` qubits and distinct targets drawn from it.
pub fn state_and_targets(arity: usize) -> impl Strategy<Value = (StateVector, Vec<QubitId>)> {
    state(5)
        .prop_filter("enough qubits", move |s| s.num_qubits() >= arity)
        .prop_flat_map(move |s| {
            let labels = s.labels().to_vec();
            (Just(s), Just(labels).prop_shuffle())
        })
        .prop_map(move |(s, mut labels)| {
            labels.truncate(arity);
            (s, labels)
        })
}

pub fn gate_case() -> impl Strategy<Value = (Gate, StateVector, Vec<QubitId>)> {
    gate_kind().prop_flat_map(|k| {
        let g = Gate::new(k);
        state_and_targets(g.arity()).prop_map(move |(s, t)| (g.clone(), s, t))
    })
}

pub fn basis_case() -> impl Strategy<Value = (MeasurementBasis, StateVector, Vec<QubitId>)> {
    prop_oneof![
        Just(BasisKind::Computational),
        Just(BasisKind::X),
        Just(BasisKind::Bell)
    ]
    .prop_flat_map(|k| {
        let b = MeasurementBasis::new(k);
        state_and_targets(b.arity()).prop_map(move |(s, t)| (b.clone(), s, t))
    })
}

pub fn amplitude_pair() -> impl Strategy<Value = (C, C)> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("non-zero", |(a, b, c, d)| {
            a * a + b * b + c * c + d * d > 1e-6
        })
        .prop_map(|(a, b, c, d)| {
            let n = (a * a + b * b + c * c + d * d).sqrt();
            (C::new(a / n, b / n), C::new(c / n, d / n))
        })
}

pub fn norm_preserved(
    gate: &Gate,
    s: &StateVector,
    targets: &[QubitId],
) -> Result<(), TestCaseError> {
    let out = s
        .apply(gate, targets)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(
        (out.norm_sqr() - 1.0).abs() < TOL,
        "norm² = {}",
        out.norm_sqr()
    );
    Ok(())
}

pub fn unitary(gate: &Gate) -> Result<(), TestCaseError> {
    prop_assert!(
        gate.unitarity_defect() < TOL,
        "{}: {}",
        gate.kind(),
        gate.unitarity_defect()
    );
    Ok(())
}

/// `apply` agrees with multiplying by the explicitly lifted operator.
pub fn apply_matches_full_operator(
    gate: &Gate,
    s: &StateVector,
    targets: &[QubitId],
) -> Result<(), TestCaseError> {
    let out = s
        .apply(gate, targets)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let d = gate.dim();
    let g: Mat = (0..d)
        .map(|r| (0..d).map(|k| gate.entry(r, k)).collect())
        .collect();
    let positions: Vec<usize> = targets.iter().map(|t| s.position(*t).unwrap()).collect();
    let want = matvec(
        &full_operator(&g, &positions, s.num_qubits()),
        s.amplitudes(),
    );
    prop_assert!(max_diff(out.amplitudes(), &want) < TOL);
    Ok(())
}

pub fn born_complete(
    basis: &MeasurementBasis,
    s: &StateVector,
    targets: &[QubitId],
) -> Result<(), TestCaseError> {
    let probs = s
        .outcome_probabilities(basis, targets)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let total: f64 = probs.iter().map(|(_, p)| p).sum();
    prop_assert!((total - 1.0).abs() < TOL, "Σp = {total}");
    for (o, p) in probs {
        prop_assert!((-TOL..=1.0 + TOL).contains(&p));
        if p > 1e-9 {
            let (rec, post) = s
                .measure(basis, targets, OutcomeSource::Forced(o))
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!((rec.probability - p).abs() < TOL);
            prop_assert!((post.norm_sqr() - 1.0).abs() < TOL);
            prop_assert_eq!(post.num_qubits(), s.num_qubits() - targets.len());
        }
    }
    Ok(())
}

pub fn rz_inverse(s: &StateVector, target: QubitId, theta: f64) -> Result<(), TestCaseError> {
    let back = s
        .apply(&Gate::rz(theta), &[target])
        .and_then(|t| t.apply(&Gate::rz(-theta), &[target]))
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(max_diff(back.amplitudes(), s.amplitudes()) < TOL);
    prop_assert!(back.fidelity(s).unwrap() > 1.0 - TOL);
    Ok(())
}

pub fn bell_tagged_identity(alpha: C, beta: C) -> Result<(), TestCaseError> {
    let joint = StateVector::single(alpha, beta, QubitId::B)
        .and_then(|p| p.tensor(&StateVector::ghz([QubitId::Q1, QubitId::Q2, QubitId::Q3])?))
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(
        joint.labels(),
        [QubitId::B, QubitId::Q1, QubitId::Q2, QubitId::Q3]
    );
    let diff = max_diff(joint.amplitudes(), &bell_tagged_reconstruction(alpha, beta));
    prop_assert!(diff < TOL, "max diff {diff}");
    Ok(())
}
