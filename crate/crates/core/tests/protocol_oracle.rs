//! Protocol engines checked against the hand-rolled reference in `common`.

mod common;

use std::f64::consts::FRAC_PI_3;

use common::*;
use num_complex::Complex64 as C;
use telerotate::protocol::{
    enumerate_branches, enumerate_intuitive_branches, run_proposed, run_remote_control, Checkpoint,
    Engine, OutcomePlan, Party, ProposedBranch, ProtocolInput, Step,
};
use telerotate::statevector::{MeasurementBasis, Outcome, QubitId, StateVector};

const TOL: f64 = 1e-12;

fn reference_input() -> ProtocolInput {
    ProtocolInput::new(c(0.6, 0.0), c(0.0, 0.8), FRAC_PI_3).unwrap()
}

// Charlie's q3 before correction for α = 0.6, β = 0.8i, θ = π/3, produced by
// `common::proposed_branch` and frozen here. With a = 0.6·e^{-iπ/6} and
// b = 0.8i·e^{iπ/6} every branch is (±a, ±b) or (±b, ±a).
const A: C = c(0.519_615_242_270_663_1, -0.3);
const B: C = c(-0.4, 0.692_820_323_027_550_9);

fn frozen_pre_correction(mr_b: Outcome, mr_a: Outcome) -> [C; 2] {
    use Outcome::*;
    match (mr_b, mr_a) {
        (PhiPlus, Plus) | (PhiMinus, Minus) => [A, B],
        (PhiPlus, Minus) | (PhiMinus, Plus) => [A, -B],
        (PsiPlus, Plus) => [B, A],
        (PsiPlus, Minus) => [B, -A],
        (PsiMinus, Plus) => [-B, A],
        (PsiMinus, Minus) => [-B, -A],
        _ => unreachable!(),
    }
}

#[test]
fn frozen_pre_correction_states() {
    let input = reference_input();
    for branch in ProposedBranch::all() {
        let t = run_proposed(&input, &mut branch.plan()).unwrap();
        let pre = t.snapshot(Checkpoint::PreCorrection).unwrap();
        assert_eq!(pre.labels(), [QubitId::Q3]);
        let want = frozen_pre_correction(branch.mr_b, branch.mr_a);
        assert!(max_diff(pre.amplitudes(), &want) < TOL, "{branch:?}");
    }
}

#[test]
fn engine_matches_reference_amplitude_for_amplitude() {
    let mut rng = rng(11);
    for _ in 0..50 {
        let (a, b, theta) = random_input(&mut rng);
        let input = ProtocolInput::new(a, b, theta).unwrap();
        for branch in enumerate_branches(&input).unwrap() {
            let (mr_b, mr_a) = (branch.branch.mr_b, branch.branch.mr_a);
            let oracle = proposed_branch(a, b, theta, mr_b, mr_a);
            let t = &branch.transcript;
            assert!((branch.probability - oracle.probability).abs() < TOL);
            let pre = t.snapshot(Checkpoint::PreCorrection).unwrap();
            assert!(max_diff(pre.amplitudes(), &oracle.pre_correction) < TOL);
            assert!(max_diff(t.final_state.amplitudes(), &oracle.corrected) < TOL);
            assert!(phase_fidelity(&oracle.corrected, &target(a, b, theta)) > 1.0 - TOL);
        }
    }
}

#[test]
fn bell_probabilities_match_full_operator_route() {
    let mut rng = rng(12);
    for _ in 0..50 {
        let (a, b, theta) = random_input(&mut rng);
        let input = ProtocolInput::new(a, b, theta).unwrap();
        let joint = input
            .payload(QubitId::B)
            .tensor(&StateVector::ghz([QubitId::Q1, QubitId::Q2, QubitId::Q3]).unwrap())
            .unwrap();
        let probs = joint
            .outcome_probabilities(&MeasurementBasis::bell(), &[QubitId::B, QubitId::Q2])
            .unwrap();
        for (o, p) in probs {
            assert!((p - bell_probability_full(a, b, o)).abs() < TOL);
            assert!((p - 0.25).abs() < TOL);
        }
    }
}

#[test]
fn exact_branches_need_no_phase_slack() {
    let input = reference_input();
    let want = target(input.alpha(), input.beta(), input.theta());
    for (mr_b, mr_a) in [
        (Outcome::PhiPlus, Outcome::Plus),
        (Outcome::PhiMinus, Outcome::Minus),
    ] {
        let plan = &mut OutcomePlan::forced([(Step::BobBell, mr_b), (Step::AliceX, mr_a)]);
        let t = run_proposed(&input, plan).unwrap();
        assert!(max_diff(t.final_state.amplitudes(), &want) < TOL);
    }
}

#[test]
fn proposed_transcript_shape_is_branch_invariant() {
    let mut rng = rng(13);
    let (a, b, theta) = random_input(&mut rng);
    let input = ProtocolInput::new(a, b, theta).unwrap();
    let branches = enumerate_branches(&input).unwrap();
    let first = &branches[0].transcript.ledger;
    for br in &branches {
        let t = &br.transcript;
        assert_eq!(&t.ledger, first);
        assert_eq!(t.ledger.rounds, 2);
        assert!(t.causality_violations().is_empty());

        let msgs: Vec<_> = t.messages().collect();
        assert_eq!(msgs.len(), 2);
        assert_eq!((msgs[0].sender, msgs[0].bit_width), (Party::Bob, 2));
        assert_eq!(msgs[0].recipients, [Party::Alice, Party::Charlie]);
        assert_eq!((msgs[1].sender, msgs[1].bit_width), (Party::Alice, 1));
        assert_eq!(msgs[1].recipients, [Party::Charlie]);

        let ops: Vec<_> = t.operations().collect();
        assert_eq!(ops.len(), 2);
        assert_eq!(ops[0].0, Party::Alice);
        assert_eq!(ops[0].2, [QubitId::Q1]);
        assert_eq!(ops[1].0, Party::Charlie);
        assert_eq!(ops[1].2, [QubitId::Q3]);
    }
}

/// `(I ⊗ CNOT)(Φ+_{q1'q2'} ⊗ ψ_b)` by explicit matrices.
fn after_cnot_full(a: C, b: C) -> Vec<C> {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let cnot: Mat = vec![
        vec![one, zero, zero, zero],
        vec![zero, one, zero, zero],
        vec![zero, zero, zero, one],
        vec![zero, zero, one, zero],
    ];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let epr = [c(h, 0.0), zero, zero, c(h, 0.0)];
    let joint: Vec<C> = epr.iter().flat_map(|e| [e * a, e * b]).collect();
    matvec(&kron(&identity(2), &cnot), &joint)
}

#[test]
fn remote_control_matches_full_operator_route() {
    let mut rng = rng(14);
    for _ in 0..20 {
        let (a, b, theta) = random_input(&mut rng);
        let charlie = StateVector::single(a, b, QubitId::B).unwrap();
        for z in Outcome::Z {
            for x in Outcome::X {
                let plan = &mut OutcomePlan::forced([(Step::CharlieZ, z), (Step::AliceX, x)]);
                let (out, t) = run_remote_control(theta, &charlie, plan).unwrap();
                let mid = t.snapshot(Checkpoint::AfterCnot).unwrap();
                assert_eq!(
                    mid.labels(),
                    [QubitId::Q1Prime, QubitId::Q2Prime, QubitId::B]
                );
                assert!(max_diff(mid.amplitudes(), &after_cnot_full(a, b)) < TOL);
                assert_eq!(out.labels(), [QubitId::Q2Prime]);
                assert!(phase_fidelity(out.amplitudes(), &target(a, b, theta)) > 1.0 - TOL);
                assert!((t.branch_probability() - 0.25).abs() < TOL);
            }
        }
    }
}

#[test]
fn intuitive_branches_cover_all_outcomes() {
    let mut rng = rng(15);
    let (a, b, theta) = random_input(&mut rng);
    let input = ProtocolInput::new(a, b, theta).unwrap();
    let branches = enumerate_intuitive_branches(&input).unwrap();
    assert_eq!(branches.len(), 16);
    let total: f64 = branches.iter().map(|b| b.probability).sum();
    assert!((total - 1.0).abs() < TOL);
    for br in &branches {
        let t = &br.transcript;
        assert_eq!(t.engine, Engine::Intuitive);
        assert!((br.probability - 1.0 / 16.0).abs() < TOL);
        assert!(t.causality_violations().is_empty());
        assert_eq!(t.ledger.rounds, 3);
        assert_eq!(t.ledger.classical_bits, 4);
        assert_eq!(t.ledger.unitary_ops_nominal, 5);
        let flips = br.branch.charlie_z == Outcome::One;
        assert_eq!(t.ledger.unitary_ops_measured, if flips { 6 } else { 4 });
        assert!(t.fidelity_against(&input).unwrap() > 1.0 - TOL);
    }
}
