use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::HarnessError;
use crate::statevector::{BasisKind, Outcome, INPUT_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Proposed,
    Intuitive,
    Compare,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Proposed => "proposed",
            Mode::Intuitive => "intuitive",
            Mode::Compare => "compare",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

/// A fixed complex amplitude or `random` (Haar-distributed per trial).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AmplitudeSpec {
    Random,
    Value(Complex64),
}

impl FromStr for AmplitudeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("random") {
            return Ok(AmplitudeSpec::Random);
        }
        let v: Complex64 = s.replace(' ', "").parse().map_err(|_| {
            format!("cannot parse amplitude {s:?} (expected e.g. 0.6, 0.8i, 0.6+0.8i or random)")
        })?;
        if !v.is_finite() {
            return Err(format!("amplitude {s:?} is not finite"));
        }
        Ok(AmplitudeSpec::Value(v))
    }
}

impl fmt::Display for AmplitudeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmplitudeSpec::Random => f.write_str("random"),
            AmplitudeSpec::Value(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AmplitudeRepr {
    Pair([f64; 2]),
    Real(f64),
    Text(String),
}

impl Serialize for AmplitudeSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            AmplitudeSpec::Random => s.serialize_str("random"),
            AmplitudeSpec::Value(v) => [v.re, v.im].serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for AmplitudeSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match AmplitudeRepr::deserialize(d)? {
            AmplitudeRepr::Pair([re, im]) => Ok(AmplitudeSpec::Value(Complex64::new(re, im))),
            AmplitudeRepr::Real(re) => Ok(AmplitudeSpec::Value(Complex64::new(re, 0.0))),
            AmplitudeRepr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A fixed angle in radians or `random` (uniform on `[0, 2π)` per trial).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AngleSpec {
    Random,
    Value(f64),
}

impl FromStr for AngleSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("random") {
            return Ok(AngleSpec::Random);
        }
        let v: f64 = s
            .parse()
            .map_err(|_| format!("cannot parse angle {s:?} (radians or random)"))?;
        if !v.is_finite() {
            return Err(format!("angle {s:?} is not finite"));
        }
        Ok(AngleSpec::Value(v))
    }
}

impl fmt::Display for AngleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleSpec::Random => f.write_str("random"),
            AngleSpec::Value(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AngleRepr {
    Number(f64),
    Text(String),
}

impl Serialize for AngleSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            AngleSpec::Random => s.serialize_str("random"),
            AngleSpec::Value(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for AngleSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match AngleRepr::deserialize(d)? {
            AngleRepr::Number(v) => Ok(AngleSpec::Value(v)),
            AngleRepr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Everything a run depends on. Echoed verbatim into the report, and
/// accepted back as a config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    pub alpha: AmplitudeSpec,
    pub beta: AmplitudeSpec,
    pub theta: AngleSpec,
    pub trials: u32,
    pub seed: u64,
    #[serde(default)]
    pub exhaustive: bool,
    #[serde(default)]
    pub output: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub force_mrb: Option<Outcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub force_mra: Option<Outcome>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Proposed,
            alpha: AmplitudeSpec::Random,
            beta: AmplitudeSpec::Random,
            theta: AngleSpec::Random,
            trials: 1,
            seed: 0,
            exhaustive: false,
            output: OutputFormat::Table,
            force_mrb: None,
            force_mra: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be at least 1".into()));
        }
        match (self.alpha, self.beta) {
            (AmplitudeSpec::Random, AmplitudeSpec::Random) => {}
            (AmplitudeSpec::Value(a), AmplitudeSpec::Value(b)) => {
                let norm_sqr = a.norm_sqr() + b.norm_sqr();
                if (norm_sqr - 1.0).abs() > INPUT_TOL {
                    return Err(HarnessError::Config(format!(
                        "amplitudes alpha={a} beta={b} are not normalized: |alpha|^2+|beta|^2 = {norm_sqr}"
                    )));
                }
            }
            (a, b) => {
                return Err(HarnessError::Config(format!(
                    "alpha ({a}) and beta ({b}) must both be random or both be given"
                )))
            }
        }
        if let AngleSpec::Value(t) = self.theta {
            if !t.is_finite() {
                return Err(HarnessError::Config(format!("theta {t} is not finite")));
            }
        }
        if self.exhaustive && (self.force_mrb.is_some() || self.force_mra.is_some()) {
            return Err(HarnessError::Config(
                "--exhaustive already covers every branch; drop --force-mrb/--force-mra".into(),
            ));
        }
        if let Some(o) = self.force_mrb {
            if o.basis() != BasisKind::Bell {
                return Err(HarnessError::Config(format!(
                    "--force-mrb expects a Bell outcome (phi+, phi-, psi+, psi-), got {o}"
                )));
            }
        }
        if let Some(o) = self.force_mra {
            if o.basis() != BasisKind::X {
                return Err(HarnessError::Config(format!(
                    "--force-mra expects an X outcome (+ or -), got {o}"
                )));
            }
        }
        Ok(())
    }
}
