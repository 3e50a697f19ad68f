//! The run report: JSON for machines, a few lines of text for people.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use super::parse::MatrixDocument;
use crate::chromatic::ChromaticResult;
use crate::oracle::{LowerWitness, QuotientSource, SandwichReport, SandwichStatus};

pub const SCHEMA_VERSION: u32 = 1;

/// The answer without its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultSummary {
    Uncolorable,
    Chi { k: u32 },
    BeyondRankTwo { rows: usize, rank: usize },
}

impl From<&ChromaticResult> for ResultSummary {
    fn from(r: &ChromaticResult) -> Self {
        match r {
            ChromaticResult::Uncolorable { .. } => ResultSummary::Uncolorable,
            ChromaticResult::Chi { k, .. } => ResultSummary::Chi { k: *k },
            ChromaticResult::BeyondRankTwo { rows, rank } => ResultSummary::BeyondRankTwo {
                rows: *rows,
                rank: *rank,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub input: MatrixDocument,
    pub result: ResultSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<SandwichReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl RunReport {
    pub fn new(
        input: MatrixDocument,
        result: &ChromaticResult,
        certify: bool,
        verification: Option<SandwichReport>,
        timing_ms: Option<f64>,
    ) -> serde_json::Result<Self> {
        let certificate = if certify {
            match result {
                ChromaticResult::Chi { certificate, .. } => {
                    Some(serde_json::to_value(certificate)?)
                }
                ChromaticResult::Uncolorable { witness } => {
                    Some(json!({ "type": "loop", "witness": witness }))
                }
                ChromaticResult::BeyondRankTwo { .. } => None,
            }
        } else {
            None
        };
        Ok(RunReport {
            schema: SCHEMA_VERSION,
            input,
            result: result.into(),
            certificate,
            verification,
            timing_ms,
        })
    }
}

/// `Confirmed(4)`, `Bounds(3, -)`, `LoopsConfirmed`, `BudgetExceeded(3)`.
pub fn status_label(status: &SandwichStatus) -> String {
    match status {
        SandwichStatus::Confirmed { k } => format!("Confirmed({k})"),
        SandwichStatus::Bounds {
            lower,
            upper: Some(u),
        } => format!("Bounds({lower}, {u})"),
        SandwichStatus::Bounds { lower, upper: None } => format!("Bounds({lower}, -)"),
        SandwichStatus::LoopsConfirmed { .. } => "LoopsConfirmed".to_string(),
        SandwichStatus::BudgetExceeded { lower } => format!("BudgetExceeded({lower})"),
    }
}

fn group_label(factors: &[u64]) -> String {
    let cyclic: Vec<String> = factors
        .iter()
        .filter(|&&f| f != 1)
        .map(|f| format!("Z_{f}"))
        .collect();
    if cyclic.is_empty() {
        return "trivial group".to_string();
    }
    cyclic.join(" x ")
}

fn lower_label(w: &LowerWitness) -> String {
    match w {
        LowerWitness::Trivial => "a vertex".to_string(),
        LowerWitness::Edge => "an edge".to_string(),
        LowerWitness::NonBipartite { column, sum } => {
            format!("odd sum {sum} of column {}", column + 1)
        }
        LowerWitness::Ball {
            radius,
            vertices,
            exact: true,
        } => format!("ball of radius {radius} ({vertices} vertices)"),
        LowerWitness::Ball {
            radius,
            vertices,
            exact: false,
        } => {
            format!("ball of radius {radius} ({vertices} vertices, search budget reached)")
        }
    }
}

fn write_sandwich(out: &mut String, s: &SandwichReport) {
    if let Some(l) = &s.lower {
        let u = s
            .upper
            .as_ref()
            .map_or("?".to_string(), |u| u.value.to_string());
        writeln!(out, "bounds: {} <= chi <= {u}", l.value).expect("write to string");
        writeln!(out, "  lower {}: {}", l.value, lower_label(&l.witness)).expect("write to string");
    }
    if let Some(u) = &s.upper {
        let source = match &u.source {
            QuotientSource::Full => "the whole graph".to_string(),
            QuotientSource::Modulus { modulus } => format!("quotient mod {modulus}"),
            QuotientSource::Cyclic { images, .. } => format!("cyclic image e_i -> {images:?}"),
        };
        writeln!(
            out,
            "  upper {}: {source}, {}",
            u.value,
            group_label(&u.factors)
        )
        .expect("write to string");
    }
    writeln!(out, "verified: {}", status_label(&s.status)).expect("write to string");
    if s.contradiction {
        writeln!(
            out,
            "contradiction: the answer disagrees with a proven bound"
        )
        .expect("write to string");
    }
}

pub fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    let line = match &r.result {
        ResultSummary::Chi { k } => format!("chi = {k}"),
        ResultSummary::Uncolorable => "uncolorable (loops)".to_string(),
        ResultSummary::BeyondRankTwo { rank, .. } => {
            format!("rank {rank}: no exact formula beyond rank two")
        }
    };
    writeln!(out, "{line}").expect("write to string");
    if let Some(c) = &r.certificate {
        writeln!(out, "certificate: {c}").expect("write to string");
    }
    if let Some(s) = &r.verification {
        write_sandwich(&mut out, s);
    }
    if let Some(ms) = r.timing_ms {
        writeln!(out, "time: {ms:.3} ms").expect("write to string");
    }
    out
}
