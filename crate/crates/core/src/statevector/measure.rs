use num_complex::Complex64;
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use super::{BasisKind, MeasurementBasis, Outcome, QubitId, StateError, StateVector, EXACT_TOL};

/// How a measurement picks its outcome.
pub enum OutcomeSource<'a> {
    /// Post-select a specific outcome (used for exhaustive branch checks).
    Forced(Outcome),
    /// Draw from the Born distribution.
    Sample(&'a mut dyn RngCore),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub basis: BasisKind,
    pub targets: Vec<QubitId>,
    pub outcome: Outcome,
    pub probability: f64,
}

impl StateVector {
    /// Unnormalized residual `⟨v|_targets |self⟩` over the remaining qubits.
    fn project(
        &self,
        vector: &[Complex64],
        targets: &[QubitId],
    ) -> Result<Vec<Complex64>, StateError> {
        let shifts = targets
            .iter()
            .map(|&t| self.shift_of(t))
            .collect::<Result<Vec<_>, _>>()?;
        let k = targets.len();
        let mask: usize = shifts.iter().map(|s| 1usize << s).sum();
        let rest_shifts: Vec<usize> = (0..self.num_qubits())
            .rev()
            .filter(|s| mask & (1 << s) == 0)
            .collect();
        let offsets: Vec<usize> = (0..vector.len())
            .map(|j| {
                shifts
                    .iter()
                    .enumerate()
                    .filter(|(pos, _)| (j >> (k - 1 - pos)) & 1 == 1)
                    .map(|(_, s)| 1usize << s)
                    .sum()
            })
            .collect();
        let amps = self.amplitudes();
        let m = rest_shifts.len();
        Ok((0..1usize << m)
            .map(|r| {
                let base = rest_shifts
                    .iter()
                    .enumerate()
                    .filter(|(pos, _)| (r >> (m - 1 - pos)) & 1 == 1)
                    .map(|(_, s)| 1usize << s)
                    .sum::<usize>();
                vector
                    .iter()
                    .zip(&offsets)
                    .map(|(v, off)| v.conj() * amps[base | off])
                    .sum()
            })
            .collect())
    }

    fn check_targets(
        &self,
        basis: &MeasurementBasis,
        targets: &[QubitId],
    ) -> Result<(), StateError> {
        if targets.len() != basis.arity() {
            return Err(StateError::ArityMismatch {
                name: format!("{} measurement", basis.kind()),
                arity: basis.arity(),
                targets: targets.len(),
            });
        }
        for (i, t) in targets.iter().enumerate() {
            if targets[..i].contains(t) {
                return Err(StateError::DuplicateLabel(*t));
            }
            self.position(*t)?;
        }
        Ok(())
    }

    /// Born probabilities of every outcome, in basis order.
    pub fn outcome_probabilities(
        &self,
        basis: &MeasurementBasis,
        targets: &[QubitId],
    ) -> Result<Vec<(Outcome, f64)>, StateError> {
        self.check_targets(basis, targets)?;
        basis
            .outcomes()
            .map(|o| {
                let residual = self.project(basis.vector(o).expect("own outcome"), targets)?;
                Ok((o, residual.iter().map(|a| a.norm_sqr()).sum()))
            })
            .collect()
    }

    /// Projective measurement of `targets`. The measured qubits are removed
    /// and the residual state is renormalized.
    pub fn measure(
        &self,
        basis: &MeasurementBasis,
        targets: &[QubitId],
        source: OutcomeSource<'_>,
    ) -> Result<(MeasurementRecord, StateVector), StateError> {
        self.check_targets(basis, targets)?;
        let outcome = match source {
            OutcomeSource::Forced(o) => {
                if basis.vector(o).is_none() {
                    return Err(StateError::OutcomeNotInBasis {
                        outcome: o,
                        basis: basis.kind(),
                    });
                }
                o
            }
            OutcomeSource::Sample(rng) => {
                let probs = self.outcome_probabilities(basis, targets)?;
                let u: f64 = rng.random();
                let mut acc = 0.0;
                let mut picked = None;
                for (o, p) in &probs {
                    acc += p;
                    if u < acc {
                        picked = Some(*o);
                        break;
                    }
                }
                // u landed in the rounding gap above the cumulative sum
                picked.unwrap_or_else(|| {
                    probs
                        .iter()
                        .rev()
                        .find(|(_, p)| *p > EXACT_TOL)
                        .map(|(o, _)| *o)
                        .expect("state has unit norm")
                })
            }
        };

        let residual = self.project(basis.vector(outcome).expect("checked"), targets)?;
        let probability: f64 = residual.iter().map(|a| a.norm_sqr()).sum();
        if probability < EXACT_TOL {
            return Err(StateError::ImpossibleOutcome {
                outcome,
                probability,
            });
        }
        let scale = probability.sqrt().recip();
        let labels: Vec<QubitId> = self
            .labels()
            .iter()
            .copied()
            .filter(|l| !targets.contains(l))
            .collect();
        let post = StateVector::from_parts_unchecked(
            labels,
            residual.into_iter().map(|a| a * scale).collect(),
        );
        Ok((
            MeasurementRecord {
                basis: basis.kind(),
                targets: targets.to_vec(),
                outcome,
                probability,
            },
            post,
        ))
    }
}
