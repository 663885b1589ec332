use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Amplitude, StateError, EXACT_TOL, INPUT_TOL, MAX_QUBITS};

/// Symbolic particle label.
///
/// `b` is the payload qubit; `q1..q3` are the GHZ particles held by Alice, Bob
/// and Charlie; `q1'`/`q2'` are the remote-control EPR pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QubitId {
    #[serde(rename = "b")]
    B,
    #[serde(rename = "q1")]
    Q1,
    #[serde(rename = "q2")]
    Q2,
    #[serde(rename = "q3")]
    Q3,
    #[serde(rename = "q1'")]
    Q1Prime,
    #[serde(rename = "q2'")]
    Q2Prime,
}

impl QubitId {
    pub const ALL: [QubitId; 6] = [
        QubitId::B,
        QubitId::Q1,
        QubitId::Q2,
        QubitId::Q3,
        QubitId::Q1Prime,
        QubitId::Q2Prime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QubitId::B => "b",
            QubitId::Q1 => "q1",
            QubitId::Q2 => "q2",
            QubitId::Q3 => "q3",
            QubitId::Q1Prime => "q1'",
            QubitId::Q2Prime => "q2'",
        }
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Normalized pure state over an ordered set of labelled qubits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateVector {
    labels: Vec<QubitId>,
    amplitudes: Vec<Amplitude>,
}

fn norm_sqr(amps: &[Amplitude]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

fn check_labels(labels: &[QubitId]) -> Result<(), StateError> {
    if labels.len() > MAX_QUBITS {
        return Err(StateError::TooManyQubits(labels.len()));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(StateError::DuplicateLabel(*l));
        }
    }
    Ok(())
}

impl StateVector {
    /// Builds a state from raw amplitudes, requiring unit norm within
    /// [`INPUT_TOL`] and renormalizing the result.
    pub fn from_amplitudes(
        labels: Vec<QubitId>,
        amplitudes: Vec<Amplitude>,
    ) -> Result<Self, StateError> {
        check_labels(&labels)?;
        let expected = 1usize << labels.len();
        if amplitudes.len() != expected {
            return Err(StateError::LengthMismatch {
                qubits: labels.len(),
                expected,
                found: amplitudes.len(),
            });
        }
        if let Some(bad) = amplitudes.iter().find(|a| !a.is_finite()) {
            return Err(StateError::NonFinite(*bad));
        }
        let n2 = norm_sqr(&amplitudes);
        if n2 < EXACT_TOL * EXACT_TOL {
            return Err(StateError::ZeroVector);
        }
        if (n2 - 1.0).abs() > INPUT_TOL {
            return Err(StateError::NotNormalized {
                norm_sqr: n2,
                tol: INPUT_TOL,
            });
        }
        let scale = n2.sqrt().recip();
        Ok(StateVector {
            labels,
            amplitudes: amplitudes.into_iter().map(|a| a * scale).collect(),
        })
    }

    /// Like [`StateVector::from_amplitudes`] but rescales any non-zero vector.
    pub fn normalized(
        labels: Vec<QubitId>,
        amplitudes: Vec<Amplitude>,
    ) -> Result<Self, StateError> {
        let n = norm_sqr(&amplitudes).sqrt();
        if !n.is_finite() {
            return Err(StateError::NonFinite(
                amplitudes
                    .iter()
                    .copied()
                    .find(|a| !a.is_finite())
                    .unwrap_or(Complex64::new(f64::NAN, 0.0)),
            ));
        }
        if n < EXACT_TOL {
            return Err(StateError::ZeroVector);
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / n).collect();
        Self::from_amplitudes(labels, amplitudes)
    }

    /// `alpha|0⟩ + beta|1⟩` on a single qubit.
    pub fn single(alpha: Amplitude, beta: Amplitude, label: QubitId) -> Result<Self, StateError> {
        Self::from_amplitudes(vec![label], vec![alpha, beta])
    }

    /// Computational basis state; `bits` is read most-significant first.
    pub fn basis_state(labels: Vec<QubitId>, index: usize) -> Result<Self, StateError> {
        let dim = 1usize << labels.len();
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        if index >= dim {
            return Err(StateError::LengthMismatch {
                qubits: labels.len(),
                expected: dim,
                found: index + 1,
            });
        }
        amps[index] = Complex64::new(1.0, 0.0);
        Self::from_amplitudes(labels, amps)
    }

    /// `(|000⟩ + |111⟩)/√2` over the three labels in order.
    pub fn ghz(labels: [QubitId; 3]) -> Result<Self, StateError> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[0b000] = Complex64::new(h, 0.0);
        amps[0b111] = Complex64::new(h, 0.0);
        Self::from_amplitudes(labels.to_vec(), amps)
    }

    /// `(|00⟩ + |11⟩)/√2`.
    pub fn epr(labels: [QubitId; 2]) -> Result<Self, StateError> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![Complex64::new(0.0, 0.0); 4];
        amps[0b00] = Complex64::new(h, 0.0);
        amps[0b11] = Complex64::new(h, 0.0);
        Self::from_amplitudes(labels.to_vec(), amps)
    }

    pub fn labels(&self) -> &[QubitId] {
        &self.labels
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// Position of `label` counted from the left of the ket.
    pub fn position(&self, label: QubitId) -> Result<usize, StateError> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(StateError::UnknownLabel(label))
    }

    /// Bit shift of `label` inside an amplitude index.
    pub(crate) fn shift_of(&self, label: QubitId) -> Result<usize, StateError> {
        Ok(self.num_qubits() - 1 - self.position(label)?)
    }

    /// Probability of reading `1` on `label` in the computational basis.
    pub fn prob_one(&self, label: QubitId) -> Result<f64, StateError> {
        let shift = self.shift_of(label)?;
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| (i >> shift) & 1 == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Kronecker product; labels of `self` come first.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector, StateError> {
        if let Some(l) = other.labels.iter().find(|l| self.labels.contains(l)) {
            return Err(StateError::DuplicateLabel(*l));
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        check_labels(&labels)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector { labels, amplitudes })
    }

    /// Same state with qubits listed in `order` (a permutation of the labels).
    pub fn reorder(&self, order: &[QubitId]) -> Result<StateVector, StateError> {
        check_labels(order)?;
        if order.len() != self.labels.len() {
            return Err(StateError::RegisterMismatch {
                left: self.labels.clone(),
                right: order.to_vec(),
            });
        }
        let shifts = order
            .iter()
            .map(|&l| self.shift_of(l))
            .collect::<Result<Vec<_>, _>>()?;
        let n = order.len();
        let amplitudes = (0..self.amplitudes.len())
            .map(|new_idx| {
                let old_idx = shifts.iter().enumerate().fold(0usize, |acc, (pos, &s)| {
                    let bit = (new_idx >> (n - 1 - pos)) & 1;
                    acc | (bit << s)
                });
                self.amplitudes[old_idx]
            })
            .collect();
        Ok(StateVector {
            labels: order.to_vec(),
            amplitudes,
        })
    }

    /// Renames a qubit without touching amplitudes.
    pub fn relabel(&self, from: QubitId, to: QubitId) -> Result<StateVector, StateError> {
        let pos = self.position(from)?;
        if from != to && self.labels.contains(&to) {
            return Err(StateError::DuplicateLabel(to));
        }
        let mut out = self.clone();
        out.labels[pos] = to;
        Ok(out)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Amplitude, StateError> {
        if self.labels != other.labels {
            return Err(StateError::RegisterMismatch {
                left: self.labels.clone(),
                right: other.labels.clone(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`, insensitive to a global phase on either side.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64, StateError> {
        Ok(self.inner(other)?.norm_sqr().min(1.0))
    }

    /// Largest component-wise distance; zero only when the states agree
    /// including global phase.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64, StateError> {
        if self.labels != other.labels {
            return Err(StateError::RegisterMismatch {
                left: self.labels.clone(),
                right: other.labels.clone(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Multiplies every amplitude by `e^{i phase}`.
    pub fn with_global_phase(&self, phase: f64) -> StateVector {
        let f = Complex64::from_polar(1.0, phase);
        StateVector {
            labels: self.labels.clone(),
            amplitudes: self.amplitudes.iter().map(|a| a * f).collect(),
        }
    }

    pub(crate) fn from_parts_unchecked(labels: Vec<QubitId>, amplitudes: Vec<Amplitude>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << labels.len());
        StateVector { labels, amplitudes }
    }
}

/// Free-function form of [`StateVector::fidelity`].
pub fn fidelity_up_to_global_phase(a: &StateVector, b: &StateVector) -> Result<f64, StateError> {
    a.fidelity(b)
}
