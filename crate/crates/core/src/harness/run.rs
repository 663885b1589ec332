use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::report::{Aggregate, BranchResult, EngineLedger, RunReport, TrialInput};
use super::{AmplitudeSpec, AngleSpec, HarnessError, Mode, RunConfig, CLI_FIDELITY_THRESHOLD};
use crate::protocol::{
    enumerate_branches, enumerate_intuitive_branches, run_intuitive, run_proposed, Engine,
    OutcomePlan, ProtocolInput, ProtocolTranscript, Step,
};
use crate::resources::{compare, ResourceColumn};
use crate::statevector::QubitId;

/// Haar-random single-qubit amplitudes from two normalized complex Gaussians.
pub fn haar_amplitudes(rng: &mut dyn RngCore) -> (Complex64, Complex64) {
    loop {
        let mut g = || -> f64 { rng.sample(StandardNormal) };
        let a = Complex64::new(g(), g());
        let b = Complex64::new(g(), g());
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if n > 1e-6 {
            return (a / n, b / n);
        }
    }
}

/// Independent stream per trial so trial `k` does not depend on how many
/// draws earlier trials consumed.
fn trial_rng(seed: u64, trial: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(trial));
    rng
}

fn trial_input(config: &RunConfig, rng: &mut dyn RngCore) -> Result<ProtocolInput, HarnessError> {
    let (alpha, beta) = match (config.alpha, config.beta) {
        (AmplitudeSpec::Value(a), AmplitudeSpec::Value(b)) => (a, b),
        _ => haar_amplitudes(rng),
    };
    let theta = match config.theta {
        AngleSpec::Value(t) => t,
        AngleSpec::Random => rng.random::<f64>() * TAU,
    };
    Ok(ProtocolInput::new(alpha, beta, theta)?)
}

fn branch_result(
    trial: u32,
    input: &ProtocolInput,
    transcript: &ProtocolTranscript,
) -> Result<BranchResult, HarnessError> {
    Ok(BranchResult {
        trial,
        input: TrialInput::from(input),
        engine: transcript.engine,
        outcomes: transcript.outcomes(),
        probability: transcript.branch_probability(),
        fidelity: transcript.fidelity_against(input)?,
        final_amplitudes: transcript
            .final_state
            .amplitudes()
            .iter()
            .map(|a| [a.re, a.im])
            .collect(),
        unitary_ops_measured: transcript.ledger.unitary_ops_measured,
    })
}

fn run_engine(
    engine: Engine,
    config: &RunConfig,
    input: &ProtocolInput,
    rng: &mut dyn RngCore,
) -> Result<Vec<ProtocolTranscript>, HarnessError> {
    if config.exhaustive {
        let transcripts = match engine {
            Engine::Proposed => enumerate_branches(input)?
                .into_iter()
                .map(|b| b.transcript)
                .collect(),
            _ => enumerate_intuitive_branches(input)?
                .into_iter()
                .map(|b| b.transcript)
                .collect(),
        };
        return Ok(transcripts);
    }
    let mut plan = OutcomePlan::sampled(rng);
    if let Some(o) = config.force_mrb {
        plan = plan.force(Step::BobBell, o);
    }
    if let Some(o) = config.force_mra {
        plan = plan.force(Step::AliceX, o);
    }
    let t = match engine {
        Engine::Proposed => run_proposed(input, &mut plan)?,
        _ => run_intuitive(input, &mut plan)?,
    };
    Ok(vec![t])
}

/// Runs every trial of `config` and assembles the report.
pub fn run(config: &RunConfig) -> Result<RunReport, HarnessError> {
    config.validate()?;
    let engines: &[Engine] = match config.mode {
        Mode::Proposed => &[Engine::Proposed],
        Mode::Intuitive => &[Engine::Intuitive],
        Mode::Compare => &[Engine::Proposed, Engine::Intuitive],
    };

    let mut z_sum = 0.0;
    let mut branches = Vec::new();
    let mut ledgers: Vec<EngineLedger> = Vec::new();
    let mut min_cross: Option<f64> = None;
    let mut max_prob_err = 0.0f64;

    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, trial);
        let input = trial_input(config, &mut rng)?;
        z_sum += input.alpha().norm_sqr() - input.beta().norm_sqr();

        let mut finals = Vec::new();
        for &engine in engines {
            let transcripts = run_engine(engine, config, &input, &mut rng)?;
            if config.exhaustive {
                let total: f64 = transcripts.iter().map(|t| t.branch_probability()).sum();
                max_prob_err = max_prob_err.max((total - 1.0).abs());
            }
            for t in &transcripts {
                branches.push(branch_result(trial, &input, t)?);
                match ledgers.iter_mut().find(|l| l.engine == engine) {
                    Some(entry) => entry.absorb(&t.ledger),
                    None => ledgers.push(EngineLedger::new(engine, t.ledger.clone())),
                }
                let fin = &t.final_state;
                finals.push((engine, fin.relabel(fin.labels()[0], QubitId::B)?));
            }
        }

        if config.mode == Mode::Compare {
            for (ea, a) in &finals {
                for (eb, b) in &finals {
                    if ea == &Engine::Proposed && eb != &Engine::Proposed {
                        let f = a.fidelity(b)?;
                        min_cross = Some(min_cross.map_or(f, |m: f64| m.min(f)));
                    }
                }
            }
        }
    }

    let n = branches.len() as f64;
    let min_fidelity = branches
        .iter()
        .map(|b| b.fidelity)
        .fold(f64::INFINITY, f64::min);
    let mean_fidelity = branches.iter().map(|b| b.fidelity).sum::<f64>() / n;
    let mean_input_z = z_sum / f64::from(config.trials);

    let comparison = if config.mode == Mode::Compare {
        let find = |e: Engine| ledgers.iter().find(|l| l.engine == e);
        match (find(Engine::Intuitive), find(Engine::Proposed)) {
            (Some(i), Some(p)) => Some(compare(&i.ledger, &p.ledger)),
            _ => None,
        }
    } else {
        None
    };
    let table_reproduced = comparison.as_ref().map(|_| {
        ledgers.iter().all(|l| {
            let expected = match l.engine {
                Engine::Proposed => ResourceColumn::proposed(),
                _ => ResourceColumn::intuitive(),
            };
            l.branch_invariant && l.ledger.resource_column() == expected
        })
    });

    let passed = min_fidelity >= CLI_FIDELITY_THRESHOLD
        && min_cross.is_none_or(|f| f >= CLI_FIDELITY_THRESHOLD)
        && table_reproduced.unwrap_or(true);

    Ok(RunReport {
        config: config.clone(),
        branches,
        aggregate: Aggregate {
            trials: config.trials,
            branch_count: n as usize,
            min_fidelity,
            mean_fidelity,
            min_cross_engine_fidelity: min_cross,
            max_probability_sum_error: config.exhaustive.then_some(max_prob_err),
            mean_input_z,
            fidelity_threshold: CLI_FIDELITY_THRESHOLD,
            table_reproduced,
            passed,
        },
        ledgers,
        comparison,
    })
}
