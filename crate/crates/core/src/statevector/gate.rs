use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Amplitude, QubitId, StateError, StateVector};

/// Named gates known to the simulator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    I,
    X,
    Y,
    /// `iσy = [[0, 1], [-1, 0]]`, kept distinct from `Y` so phases are exact.
    IY,
    Z,
    H,
    /// Control is the first target, the flipped qubit the second.
    Cnot,
    /// `diag(e^{-iθ/2}, e^{iθ/2})`
    Rz(f64),
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::I => f.write_str("I"),
            GateKind::X => f.write_str("X"),
            GateKind::Y => f.write_str("Y"),
            GateKind::IY => f.write_str("iY"),
            GateKind::Z => f.write_str("Z"),
            GateKind::H => f.write_str("H"),
            GateKind::Cnot => f.write_str("CNOT"),
            GateKind::Rz(theta) => write!(f, "Rz({theta})"),
        }
    }
}

/// A unitary with its symbolic name. The matrix is row-major, `2^arity` square.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    kind: GateKind,
    matrix: Vec<Amplitude>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Gate {
    pub fn new(kind: GateKind) -> Self {
        let o = c(0.0, 0.0);
        let l = c(1.0, 0.0);
        let matrix = match kind {
            GateKind::I => vec![l, o, o, l],
            GateKind::X => vec![o, l, l, o],
            GateKind::Y => vec![o, c(0.0, -1.0), c(0.0, 1.0), o],
            GateKind::IY => vec![o, l, -l, o],
            GateKind::Z => vec![l, o, o, -l],
            GateKind::H => {
                let h = c(FRAC_1_SQRT_2, 0.0);
                vec![h, h, h, -h]
            }
            GateKind::Cnot => vec![
                l, o, o, o, //
                o, l, o, o, //
                o, o, o, l, //
                o, o, l, o,
            ],
            GateKind::Rz(theta) => vec![
                Complex64::from_polar(1.0, -theta / 2.0),
                o,
                o,
                Complex64::from_polar(1.0, theta / 2.0),
            ],
        };
        Gate { kind, matrix }
    }

    pub fn i() -> Self {
        Self::new(GateKind::I)
    }
    pub fn x() -> Self {
        Self::new(GateKind::X)
    }
    pub fn y() -> Self {
        Self::new(GateKind::Y)
    }
    pub fn iy() -> Self {
        Self::new(GateKind::IY)
    }
    pub fn z() -> Self {
        Self::new(GateKind::Z)
    }
    pub fn h() -> Self {
        Self::new(GateKind::H)
    }
    pub fn cnot() -> Self {
        Self::new(GateKind::Cnot)
    }
    pub fn rz(theta: f64) -> Self {
        Self::new(GateKind::Rz(theta))
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.kind.arity()
    }

    pub fn dim(&self) -> usize {
        1 << self.arity()
    }

    pub fn matrix(&self) -> &[Amplitude] {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> Amplitude {
        self.matrix[row * self.dim() + col]
    }

    /// `max |(U†U - I)_{ij}|`
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = c(0.0, 0.0);
                for k in 0..d {
                    acc += self.entry(k, i).conj() * self.entry(k, j);
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }
}

impl StateVector {
    /// Applies `gate` to `targets`, identity elsewhere. The first target is
    /// the most significant bit of the gate's local index.
    pub fn apply(&self, gate: &Gate, targets: &[QubitId]) -> Result<StateVector, StateError> {
        if targets.len() != gate.arity() {
            return Err(StateError::ArityMismatch {
                name: gate.kind().to_string(),
                arity: gate.arity(),
                targets: targets.len(),
            });
        }
        for (i, t) in targets.iter().enumerate() {
            if targets[..i].contains(t) {
                return Err(StateError::DuplicateLabel(*t));
            }
        }
        let shifts = targets
            .iter()
            .map(|&t| self.shift_of(t))
            .collect::<Result<Vec<_>, _>>()?;
        let k = shifts.len();
        let d = gate.dim();
        let mask: usize = shifts.iter().map(|s| 1usize << s).sum();
        // local index j -> offset inside the full index
        let offsets: Vec<usize> = (0..d)
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
        let mut out = amps.to_vec();
        let mut local = vec![c(0.0, 0.0); d];
        for base in (0..amps.len()).filter(|i| i & mask == 0) {
            for (j, off) in offsets.iter().enumerate() {
                local[j] = amps[base | off];
            }
            for (row, off) in offsets.iter().enumerate() {
                out[base | off] = (0..d).map(|col| gate.entry(row, col) * local[col]).sum();
            }
        }
        Ok(StateVector::from_parts_unchecked(
            self.labels().to_vec(),
            out,
        ))
    }
}
