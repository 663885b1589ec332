use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{OutputFormat, RunConfig};
use crate::protocol::{Engine, ProtocolInput};
use crate::resources::{ComparisonReport, ResourceColumn, ResourceLedger, Verdict};
use crate::statevector::Outcome;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialInput {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    pub theta: f64,
}

impl From<&ProtocolInput> for TrialInput {
    fn from(input: &ProtocolInput) -> Self {
        TrialInput {
            alpha: [input.alpha().re, input.alpha().im],
            beta: [input.beta().re, input.beta().im],
            theta: input.theta(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchResult {
    pub trial: u32,
    pub engine: Engine,
    pub input: TrialInput,
    /// Measurement outcomes in protocol order.
    pub outcomes: Vec<Outcome>,
    pub probability: f64,
    pub fidelity: f64,
    /// Charlie's corrected qubit as `[re, im]` pairs.
    pub final_amplitudes: Vec<[f64; 2]>,
    pub unitary_ops_measured: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub trials: u32,
    pub branch_count: usize,
    pub min_fidelity: f64,
    pub mean_fidelity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_cross_engine_fidelity: Option<f64>,
    /// Worst `|Σ p − 1|` over trials; only for exhaustive runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_probability_sum_error: Option<f64>,
    /// Mean of `|α|² − |β|²` over trial inputs.
    pub mean_input_z: f64,
    pub fidelity_threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_reproduced: Option<bool>,
    pub passed: bool,
}

/// Ledger of the first transcript seen for an engine, plus how the measured
/// counts varied over every other transcript of that engine.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EngineLedger {
    pub engine: Engine,
    pub ledger: ResourceLedger,
    pub unitary_ops_measured_min: u32,
    pub unitary_ops_measured_max: u32,
    /// True when every transcript agreed on the comparison-table figures.
    pub branch_invariant: bool,
}

impl EngineLedger {
    pub(crate) fn new(engine: Engine, ledger: ResourceLedger) -> Self {
        EngineLedger {
            engine,
            unitary_ops_measured_min: ledger.unitary_ops_measured,
            unitary_ops_measured_max: ledger.unitary_ops_measured,
            ledger,
            branch_invariant: true,
        }
    }

    pub(crate) fn absorb(&mut self, other: &ResourceLedger) {
        self.unitary_ops_measured_min = self
            .unitary_ops_measured_min
            .min(other.unitary_ops_measured);
        self.unitary_ops_measured_max = self
            .unitary_ops_measured_max
            .max(other.unitary_ops_measured);
        self.branch_invariant &= self.ledger.resource_column() == other.resource_column();
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub branches: Vec<BranchResult>,
    pub aggregate: Aggregate,
    pub ledgers: Vec<EngineLedger>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonReport>,
}

pub fn emit_report(report: &RunReport, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report serializes");
            out.push(b'\n');
            out
        }
        OutputFormat::Table => render_table(report).into_bytes(),
    }
}

fn engine_title(engine: Engine) -> &'static str {
    match engine {
        Engine::Proposed => "GHZ protocol",
        Engine::Intuitive => "Intuitive solution",
        Engine::Teleport => "Teleport",
        Engine::RemoteControl => "Remote control",
    }
}

fn table_rows(col: &ResourceColumn) -> [String; 5] {
    [
        col.entanglement_label(),
        col.unitary_ops.to_string(),
        col.rounds.to_string(),
        format!("{} bits", col.classical_bits),
        format!(
            "{} Bell + {} single-photon",
            col.bell_measurements, col.single_photon_measurements
        ),
    ]
}

const ROW_TITLES: [&str; 5] = [
    "Entanglement state",
    "Unitary operator",
    "Number of rounds in classical transmission",
    "Classical message",
    "Measurement",
];

fn render_table(report: &RunReport) -> String {
    let cfg = &report.config;
    let agg = &report.aggregate;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "mode={} alpha={} beta={} theta={} trials={} seed={} exhaustive={}",
        cfg.mode, cfg.alpha, cfg.beta, cfg.theta, cfg.trials, cfg.seed, cfg.exhaustive
    );

    if report.branches.len() <= 64 {
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:>5}  {:<18}  {:<18}  {:>12}  {:>16}",
            "trial", "engine", "outcomes", "probability", "fidelity"
        );
        for b in &report.branches {
            let outcomes = b
                .outcomes
                .iter()
                .map(|o| o.symbol())
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(
                s,
                "{:>5}  {:<18}  {:<18}  {:>12.10}  {:>16.14}",
                b.trial,
                engine_title(b.engine),
                outcomes,
                b.probability,
                b.fidelity
            );
        }
    }

    let _ = writeln!(s);
    let _ = writeln!(s, "branches:            {}", agg.branch_count);
    let _ = writeln!(s, "min fidelity:        {:.15}", agg.min_fidelity);
    let _ = writeln!(s, "mean fidelity:       {:.15}", agg.mean_fidelity);
    if let Some(f) = agg.min_cross_engine_fidelity {
        let _ = writeln!(s, "min cross-engine:    {f:.15}");
    }
    if let Some(e) = agg.max_probability_sum_error {
        let _ = writeln!(s, "max |sum p - 1|:     {e:.3e}");
    }

    let columns: Vec<(&str, [String; 5])> = match &report.comparison {
        Some(cmp) => vec![
            (engine_title(Engine::Intuitive), table_rows(&cmp.baseline)),
            (engine_title(Engine::Proposed), table_rows(&cmp.candidate)),
        ],
        None => report
            .ledgers
            .iter()
            .map(|l| {
                (
                    engine_title(l.engine),
                    table_rows(&l.ledger.resource_column()),
                )
            })
            .collect(),
    };
    let title_w = ROW_TITLES.iter().map(|t| t.len()).max().unwrap_or(0);
    let col_w: Vec<usize> = columns
        .iter()
        .map(|(h, rows)| {
            rows.iter()
                .map(String::len)
                .chain([h.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let _ = writeln!(s);
    let _ = write!(s, "{:<title_w$}", "");
    for ((h, _), w) in columns.iter().zip(&col_w) {
        let _ = write!(s, "  {h:<w$}");
    }
    let _ = writeln!(s);
    for (r, title) in ROW_TITLES.iter().enumerate() {
        let _ = write!(s, "{title:<title_w$}");
        for ((_, rows), w) in columns.iter().zip(&col_w) {
            let _ = write!(s, "  {:<w$}", rows[r]);
        }
        let _ = writeln!(s);
    }
    for l in &report.ledgers {
        let _ = writeln!(
            s,
            "({} performed {}..={} unitaries per run)",
            engine_title(l.engine),
            l.unitary_ops_measured_min,
            l.unitary_ops_measured_max
        );
    }

    if let Some(cmp) = &report.comparison {
        let _ = writeln!(s);
        for a in &cmp.axes {
            let verdict = match a.verdict {
                Verdict::Better => "better",
                Verdict::Equal => "equal",
                Verdict::Worse => "worse",
            };
            let _ = writeln!(
                s,
                "{:<title_w$}  {} -> {} ({verdict})",
                a.axis.title(),
                a.baseline,
                a.candidate
            );
        }
        let _ = writeln!(
            s,
            "table reproduced: {}",
            if agg.table_reproduced == Some(true) {
                "yes"
            } else {
                "no"
            }
        );
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "status: {}", if agg.passed { "PASS" } else { "FAIL" });
    s
}
