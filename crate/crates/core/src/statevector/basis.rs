use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Amplitude;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    /// Z basis, `{|0⟩, |1⟩}`.
    Computational,
    X,
    Bell,
}

impl BasisKind {
    pub fn arity(self) -> usize {
        match self {
            BasisKind::Bell => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisKind::Computational => "Z",
            BasisKind::X => "X",
            BasisKind::Bell => "Bell",
        })
    }
}

/// Outcome label of a projective measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "phi+")]
    PhiPlus,
    #[serde(rename = "phi-")]
    PhiMinus,
    #[serde(rename = "psi+")]
    PsiPlus,
    #[serde(rename = "psi-")]
    PsiMinus,
}

impl Outcome {
    pub const BELL: [Outcome; 4] = [
        Outcome::PhiPlus,
        Outcome::PhiMinus,
        Outcome::PsiPlus,
        Outcome::PsiMinus,
    ];
    pub const X: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];
    pub const Z: [Outcome; 2] = [Outcome::Zero, Outcome::One];

    pub fn basis(self) -> BasisKind {
        match self {
            Outcome::Zero | Outcome::One => BasisKind::Computational,
            Outcome::Plus | Outcome::Minus => BasisKind::X,
            _ => BasisKind::Bell,
        }
    }

    /// Classical encoding `(value, width)`: Φ+ 00, Φ− 01, Ψ+ 10, Ψ− 11;
    /// `+`/`0` → 0 and `−`/`1` → 1.
    pub fn encode(self) -> (u8, u32) {
        match self {
            Outcome::Zero | Outcome::Plus => (0, 1),
            Outcome::One | Outcome::Minus => (1, 1),
            Outcome::PhiPlus => (0b00, 2),
            Outcome::PhiMinus => (0b01, 2),
            Outcome::PsiPlus => (0b10, 2),
            Outcome::PsiMinus => (0b11, 2),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Outcome::Zero => "0",
            Outcome::One => "1",
            Outcome::Plus => "+",
            Outcome::Minus => "-",
            Outcome::PhiPlus => "phi+",
            Outcome::PhiMinus => "phi-",
            Outcome::PsiPlus => "psi+",
            Outcome::PsiMinus => "psi-",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown outcome label {0:?}")]
pub struct ParseOutcomeError(pub String);

impl FromStr for Outcome {
    type Err = ParseOutcomeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_lowercase().replace('−', "-");
        Ok(match norm.as_str() {
            "0" => Outcome::Zero,
            "1" => Outcome::One,
            "+" | "plus" => Outcome::Plus,
            "-" | "minus" => Outcome::Minus,
            "phi+" | "φ+" => Outcome::PhiPlus,
            "phi-" | "φ-" => Outcome::PhiMinus,
            "psi+" | "ψ+" => Outcome::PsiPlus,
            "psi-" | "ψ-" => Outcome::PsiMinus,
            _ => return Err(ParseOutcomeError(s.to_string())),
        })
    }
}

/// Orthonormal measurement basis, one basis vector per outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementBasis {
    kind: BasisKind,
    vectors: Vec<(Outcome, Vec<Amplitude>)>,
}

impl MeasurementBasis {
    pub fn new(kind: BasisKind) -> Self {
        let h = FRAC_1_SQRT_2;
        let r = |x: f64| Complex64::new(x, 0.0);
        let vectors = match kind {
            BasisKind::Computational => vec![
                (Outcome::Zero, vec![r(1.0), r(0.0)]),
                (Outcome::One, vec![r(0.0), r(1.0)]),
            ],
            BasisKind::X => vec![
                (Outcome::Plus, vec![r(h), r(h)]),
                (Outcome::Minus, vec![r(h), r(-h)]),
            ],
            BasisKind::Bell => vec![
                (Outcome::PhiPlus, vec![r(h), r(0.0), r(0.0), r(h)]),
                (Outcome::PhiMinus, vec![r(h), r(0.0), r(0.0), r(-h)]),
                (Outcome::PsiPlus, vec![r(0.0), r(h), r(h), r(0.0)]),
                (Outcome::PsiMinus, vec![r(0.0), r(h), r(-h), r(0.0)]),
            ],
        };
        MeasurementBasis { kind, vectors }
    }

    pub fn computational() -> Self {
        Self::new(BasisKind::Computational)
    }

    pub fn x() -> Self {
        Self::new(BasisKind::X)
    }

    pub fn bell() -> Self {
        Self::new(BasisKind::Bell)
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.kind.arity()
    }

    pub fn outcomes(&self) -> impl Iterator<Item = Outcome> + '_ {
        self.vectors.iter().map(|(o, _)| *o)
    }

    pub fn vector(&self, outcome: Outcome) -> Option<&[Amplitude]> {
        self.vectors
            .iter()
            .find(|(o, _)| *o == outcome)
            .map(|(_, v)| v.as_slice())
    }

    /// `(outcome, |v⟩⟨v|)` pairs; matrices are row-major.
    pub fn projectors(&self) -> Vec<(Outcome, Vec<Amplitude>)> {
        self.vectors
            .iter()
            .map(|(o, v)| {
                let m = v
                    .iter()
                    .flat_map(|a| v.iter().map(move |b| a * b.conj()))
                    .collect();
                (*o, m)
            })
            .collect()
    }
}
