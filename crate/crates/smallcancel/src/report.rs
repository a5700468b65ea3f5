//! JSON report types emitted by the CLI. Every report carries a
//! `command` tag and maps to an exit code as a function of the verdict
//! alone: 0 = positive result, 1 = negative result, 2 = inconclusive,
//! 3 = usage or validation error (never produced here; the CLI exits
//! directly in that case).

use crate::conditions::{CheckOutcome, Verdict as CheckVerdict};
use crate::solvers::{SolveReport, Verdict as SolveVerdict};
use crate::words::Word;
use serde::Serialize;
use serde_json::json;

#[derive(Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Check {
        presentation: String,
        outcome: CheckOutcome,
        warnings: Vec<String>,
    },
    Stargraph {
        presentation: String,
        vertices: usize,
        vertex_names: Vec<String>,
        edges: Vec<serde_json::Value>,
    },
    Pieces {
        presentation: String,
        max_piece_length: usize,
        pieces: Vec<String>,
        min_decompositions: Vec<Option<usize>>,
    },
    Circuits {
        presentation: String,
        max_len: usize,
        counts: Vec<(usize, usize)>,
        circuits: Vec<serde_json::Value>,
    },
    SolveWord {
        presentation: String,
        word: String,
        report: SolveReport,
    },
    SolveConj {
        presentation: String,
        u: String,
        v: String,
        report: SolveReport,
    },
    DiagramVerify {
        presentation: String,
        valid: bool,
        error: Option<String>,
        tau: Option<usize>,
        chi: Option<i64>,
        relator_faces: Option<usize>,
        boundary_words: Option<Vec<String>>,
        reduced: Option<bool>,
        vertex_reduced: Option<bool>,
        curvature: Option<serde_json::Value>,
        weights: Option<serde_json::Value>,
    },
}

impl Report {
    /// Exit code: a function of the verdict only.
    pub fn exit_code(&self) -> i32 {
        match self {
            Report::Check { outcome, .. } => match outcome.verdict {
                CheckVerdict::Certified => 0,
                CheckVerdict::NotCertified => 1,
            },
            Report::Stargraph { .. } | Report::Pieces { .. } | Report::Circuits { .. } => 0,
            Report::SolveWord { report, .. } | Report::SolveConj { report, .. } => {
                match report.verdict {
                    SolveVerdict::Trivial { .. } | SolveVerdict::Conjugate { .. } => 0,
                    SolveVerdict::NonTrivial { .. } | SolveVerdict::NotConjugate { .. } => 1,
                    SolveVerdict::Inconclusive { .. } => 2,
                }
            }
            Report::DiagramVerify { valid, .. } => {
                if *valid {
                    0
                } else {
                    1
                }
            }
        }
    }

    /// One-line human-readable summary for stderr.
    pub fn summary(&self) -> String {
        match self {
            Report::Check { outcome, .. } => format!(
                "{:?}: {:?}",
                outcome.condition, outcome.verdict
            ),
            Report::Stargraph {
                vertices, edges, ..
            } => format!("star graph: {vertices} vertices, {} edges", edges.len()),
            Report::Pieces {
                pieces,
                max_piece_length,
                ..
            } => format!(
                "{} pieces, maximal length {max_piece_length}",
                pieces.len()
            ),
            Report::Circuits { counts, .. } => {
                let parts: Vec<String> = counts
                    .iter()
                    .map(|(l, c)| format!("{l}: {c}"))
                    .collect();
                format!("reduced circuits by length {{{}}}", parts.join(", "))
            }
            Report::SolveWord { report, .. } | Report::SolveConj { report, .. } => {
                format!("{:?}", report.verdict)
            }
            Report::DiagramVerify { valid, error, .. } => {
                if *valid {
                    "diagram valid".into()
                } else {
                    format!("diagram invalid: {}", error.as_deref().unwrap_or("?"))
                }
            }
        }
    }
}

/// Curvature section of a diagram-verify report.
pub fn curvature_json(lhs: &crate::Rational, rhs: &crate::Rational) -> serde_json::Value {
    json!({
        "lhs_units_of_pi": lhs.to_string(),
        "rhs_units_of_pi": rhs.to_string(),
        "equal": lhs == rhs,
    })
}

/// Word rendered with generator names.
pub fn display_word(w: &Word, names: &[String]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.display(names)
    }
}
