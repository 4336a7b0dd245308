//! JSON documents read and written by the command line tool.
//!
//! Numbers travel as strings. Exact runs print rationals as `p/q`; approximate
//! runs print the float's shortest decimal form.

use serde::{Deserialize, Serialize};

use fourps_core::algorithm::{AlgorithmConfig, Decision, DegenerateKind, Verdict};
use fourps_core::canonical::Normalization;
use fourps_core::oracle::CrossValidation;
use fourps_core::Scalar;

/// A number given either as a string (`"7/6"`, `"0.25"`, `"1e-3"`) or as a bare
/// JSON number, which is read through its decimal text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Text(String),
    Json(serde_json::Number),
}

impl Number {
    pub fn text(&self) -> String {
        match self {
            Number::Text(s) => s.trim().to_string(),
            Number::Json(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    #[default]
    Exact,
    Approx,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple: Option<[Number; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<[[Number; 4]; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iterations: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arithmetic: Option<Arithmetic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Number>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairingDoc {
    pub word: String,
    /// `[a, b, c, d]`.
    pub matrix: [String; 4],
    pub source: [String; 2],
    pub target: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionDoc {
    pub x: String,
    pub p: String,
    pub c_of_p: String,
    pub b_of_c_of_p: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub translation_word: String,
    pub translation: String,
    pub strip: [String; 2],
    pub generators: Vec<PairingDoc>,
    pub construction: ConstructionDoc,
    /// Map `z -> (az + b)/(cz + d)` from the normal form to the certificate's
    /// frame, as `[a, b, c, d]`.
    pub frame: [String; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegenerateDoc {
    pub kind: String,
    pub word: String,
    pub partner: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub epsilon: String,
    pub delta: String,
    pub max_iterations: u64,
    pub arithmetic: Arithmetic,
    pub tolerance: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub consistent: bool,
    pub failure: Option<String>,
    pub max_word_len: usize,
    pub words_searched: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub verdict: String,
    pub certificate: Option<CertificateDoc>,
    pub witness_word: Option<String>,
    pub witness_trace: Option<String>,
    /// The witness rewritten in the input matrices, when matrices were given.
    pub input_witness_word: Option<String>,
    pub degenerate: Option<DegenerateDoc>,
    pub undetermined_reason: Option<String>,
    pub normalized_triple: [String; 3],
    pub final_triple: [String; 3],
    pub iterations: u64,
    pub moves: Vec<String>,
    pub config_used: ConfigDoc,
    pub oracle: Option<OracleDoc>,
}

/// One entry of a batch run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BatchEntry {
    Decided(Box<OutputDocument>),
    Failed { error: String },
}

fn s<S: Scalar>(v: &S) -> String {
    v.to_string()
}

pub fn config_doc<S: Scalar>(cfg: &AlgorithmConfig<S>, arithmetic: Arithmetic, tolerance: Option<f64>) -> ConfigDoc {
    ConfigDoc {
        epsilon: s(&cfg.epsilon),
        delta: s(&cfg.delta),
        max_iterations: cfg.max_iterations,
        arithmetic,
        tolerance: tolerance.map(|t| format!("{t:e}")),
    }
}

pub fn output<S: Scalar>(
    norm: Option<&Normalization<S>>,
    start: &fourps_core::canonical::ParabolicTriple<S>,
    d: &Decision<S>,
    config_used: ConfigDoc,
    oracle: Option<(&CrossValidation, usize)>,
) -> OutputDocument {
    let mut doc = OutputDocument {
        verdict: d.verdict.tag().to_string(),
        certificate: None,
        witness_word: None,
        witness_trace: None,
        input_witness_word: None,
        degenerate: None,
        undetermined_reason: None,
        normalized_triple: [s(&start.x), s(&start.y), s(&start.z)],
        final_triple: [s(&d.final_triple.x), s(&d.final_triple.y), s(&d.final_triple.z)],
        iterations: d.iterations,
        moves: d.moves.iter().map(|m| m.to_string()).collect(),
        config_used,
        oracle: oracle.map(|(cv, len)| OracleDoc {
            consistent: cv.consistent,
            failure: cv.failure.clone(),
            max_word_len: len,
            words_searched: cv.search.as_ref().map(|r| r.total_words()),
        }),
    };
    match &d.verdict {
        Verdict::Discrete { certificate, construction, frame, .. } => {
            doc.certificate = Some(CertificateDoc {
                translation_word: certificate.translation_word.to_string(),
                translation: s(&certificate.translation),
                strip: [s(&certificate.strip_start), s(&certificate.strip_end())],
                generators: certificate
                    .generators
                    .iter()
                    .map(|g| PairingDoc {
                        word: g.word.to_string(),
                        matrix: g.matrix.entries().map(s),
                        source: [s(g.source.lo()), s(g.source.hi())],
                        target: [s(g.target.lo()), s(g.target.hi())],
                    })
                    .collect(),
                construction: ConstructionDoc {
                    x: s(&construction.x),
                    p: s(&construction.p),
                    c_of_p: s(&construction.c_of_p),
                    b_of_c_of_p: s(&construction.b_of_c_of_p),
                },
                frame: frame.entries().map(s),
            });
        }
        Verdict::EllipticWitness { word, trace } => {
            doc.witness_word = Some(word.to_string());
            doc.witness_trace = Some(s(trace));
            doc.input_witness_word = norm.map(|n| n.to_input_word(word).to_string());
        }
        Verdict::Degenerate { kind, word, partner, detail } => {
            doc.witness_word = Some(word.to_string());
            doc.input_witness_word = norm.map(|n| n.to_input_word(word).to_string());
            doc.degenerate = Some(DegenerateDoc {
                kind: match kind {
                    DegenerateKind::TwoGenerator => "two_generator",
                    DegenerateKind::Relation => "relation",
                }
                .into(),
                word: word.to_string(),
                partner: partner.as_ref().map(|p| p.to_string()),
                detail: detail.clone(),
            });
        }
        Verdict::Undetermined { reason } => doc.undetermined_reason = Some(format!("{reason:?}")),
    }
    doc
}
