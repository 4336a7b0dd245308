//! Brute-force checks that share no code path with the decision procedure
//! beyond matrix multiplication.
//!
//! * [`enumerate_words`] evaluates every freely reduced word up to a length and
//!   reports elliptic words and relations;
//! * [`jorgensen_scan`] tests Jørgensen's inequality on pairs of short words;
//! * [`cross_validate`] re-checks a decision against both.
//!
//! The searches refute; they never prove discreteness. A clean report at the cap
//! is inconclusive.

mod arith;
mod search;

use thiserror::Error;

use crate::algorithm::{Decision, DegenerateKind, Verdict};
use crate::canonical::ParabolicTriple;
use crate::ford::verify_pingpong;
use crate::moebius::{evaluate_word, nielsen_move, Gen, IsometryClass, Matrix, Word};
use crate::scalar::{Rational, Scalar};

pub use search::{ENUMERATION_CAP, JORGENSEN_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search length {requested} exceeds the cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("search length is too small")]
    ZeroLength,
    #[error("generators are not finite numbers")]
    NotFinite,
}

/// An elliptic word with its exact trace.
#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    pub word: Word,
    pub trace: Rational,
}

/// A pair of words with `|Tr(w1)^2 - 4| + |Tr[w1, w2] - 2| < 1` and
/// `Tr[w1, w2] != 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct JorgensenViolation {
    pub first: Word,
    pub second: Word,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub max_word_length: usize,
    /// Words examined, indexed by length minus one.
    pub words_by_length: Vec<u64>,
    /// At most `findings_limit` entries, shortest first; counts are exact.
    pub elliptic: Vec<Finding>,
    /// Words evaluating to plus or minus the identity.
    pub relations: Vec<Word>,
    pub jorgensen: Vec<JorgensenViolation>,
    pub elliptic_count: u64,
    pub relation_count: u64,
    pub jorgensen_count: u64,
    pub pairs_examined: u64,
    /// Pairs with `Tr[w1, w2] = 2`, which generate an elementary group or fail
    /// to be discrete for other reasons.
    pub pairs_skipped: u64,
    /// Words or pairs that needed exact arithmetic.
    pub exact_evaluations: u64,
    /// Some findings were counted but not stored.
    pub truncated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOutcome {
    /// An elliptic word, a relation or a Jørgensen violation was found.
    Refuted,
    /// Nothing found up to the searched length.
    Inconclusive,
}

impl SearchReport {
    pub fn is_clean(&self) -> bool {
        self.elliptic_count == 0 && self.relation_count == 0 && self.jorgensen_count == 0
    }

    pub fn outcome(&self) -> SearchOutcome {
        if self.is_clean() {
            SearchOutcome::Inconclusive
        } else {
            SearchOutcome::Refuted
        }
    }

    pub fn total_words(&self) -> u64 {
        self.words_by_length.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_length: usize,
    pub findings_limit: usize,
    pub parallel: bool,
}

impl SearchOptions {
    pub fn new(max_length: usize) -> Self {
        SearchOptions { max_length, findings_limit: 32, parallel: true }
    }
}

/// Every freely reduced word of length `1..=max_length` in the generators and
/// their inverses.
pub fn enumerate_words(generators: &[Matrix<Rational>; 3], max_length: usize) -> Result<SearchReport, OracleError> {
    enumerate_words_with(generators, &SearchOptions::new(max_length))
}

pub fn enumerate_words_with(
    generators: &[Matrix<Rational>; 3],
    opts: &SearchOptions,
) -> Result<SearchReport, OracleError> {
    search::enumerate(generators, opts)
}

/// Jørgensen's inequality over ordered pairs of distinct words with
/// `|w1| + |w2| <= max_length`.
pub fn jorgensen_scan(generators: &[Matrix<Rational>; 3], max_length: usize) -> Result<SearchReport, OracleError> {
    jorgensen_scan_with(generators, &SearchOptions::new(max_length))
}

pub fn jorgensen_scan_with(
    generators: &[Matrix<Rational>; 3],
    opts: &SearchOptions,
) -> Result<SearchReport, OracleError> {
    search::jorgensen(generators, opts)
}

/// Whether every target is a product of at most `max_len` of the given words
/// and their inverses, as elements of the free group.
pub fn expresses(generators: &[Word; 3], targets: &[Word; 3], max_len: usize) -> bool {
    let mut products = vec![Word::identity()];
    let mut frontier = vec![Word::identity()];
    let letters: Vec<Word> = generators.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                next.push(w.mul(l));
            }
        }
        products.extend(next.iter().cloned());
        frontier = next;
    }
    targets.iter().all(|t| products.contains(t))
}

/// Limits for [`cross_validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    /// Word length of the elliptic and relation search behind a Discrete verdict.
    pub max_word_len: usize,
    /// Total length for the Jørgensen scan; 0 skips it.
    pub jorgensen_len: usize,
    pub parallel: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_word_len: 10, jorgensen_len: 0, parallel: true }
    }
}

/// The outcome of [`cross_validate_report`].
#[derive(Debug, Clone, PartialEq)]
pub struct CrossValidation {
    pub consistent: bool,
    /// Why the check failed, if it did.
    pub failure: Option<String>,
    pub search: Option<SearchReport>,
    pub jorgensen: Option<SearchReport>,
}

/// Re-checks `d`, a decision for the triple `t`.
///
/// A Discrete verdict must have a valid certificate, the recorded moves must
/// replay to the certificate's words, the frame must carry those words onto the
/// certificate's matrices, and no elliptic word or relation may turn up. Other
/// verdicts have their evidence re-evaluated. Undetermined passes.
pub fn cross_validate<S: Scalar>(t: &ParabolicTriple<S>, d: &Decision<S>, cfg: &OracleConfig) -> bool {
    cross_validate_report(t, d, cfg).consistent
}

pub fn cross_validate_report<S: Scalar>(
    t: &ParabolicTriple<S>,
    d: &Decision<S>,
    cfg: &OracleConfig,
) -> CrossValidation {
    let mut out = CrossValidation { consistent: true, failure: None, search: None, jorgensen: None };
    if let Err(why) = check(t, d, cfg, &mut out) {
        out.consistent = false;
        out.failure = Some(why);
    }
    out
}

fn check<S: Scalar>(
    t: &ParabolicTriple<S>,
    d: &Decision<S>,
    cfg: &OracleConfig,
    out: &mut CrossValidation,
) -> Result<(), String> {
    let gens = t.matrices();
    let eval = |w: &Word| evaluate_word(w, &gens);
    let parabolic = |m: &Matrix<S>| matches!(m.classify(), Ok(IsometryClass::Parabolic));
    match &d.verdict {
        Verdict::Undetermined { .. } => Ok(()),
        Verdict::EllipticWitness { word, trace } => {
            let tr = eval(word).trace();
            if !matches!(tr.abs_value().less(&S::from_i64(2)), Ok(true)) {
                return Err(format!("{word} is not elliptic: trace {tr}"));
            }
            if !tr.abs_value().close(&trace.abs_value()) {
                return Err(format!("{word} has trace {tr}, reported {trace}"));
            }
            Ok(())
        }
        Verdict::Degenerate { kind: DegenerateKind::Relation, word, .. } => {
            if word.is_identity() || !matches!(eval(word).is_identity(), Ok(true)) {
                return Err(format!("{word} is not a relation"));
            }
            Ok(())
        }
        Verdict::Degenerate { kind: DegenerateKind::TwoGenerator, word, partner, .. } => {
            let partner = partner.as_ref().ok_or("two-generator verdict without a partner")?;
            let (g, h) = (eval(word), eval(partner));
            if !parabolic(&h) {
                return Err(format!("{partner} is not parabolic"));
            }
            let comm = g.commutator(&h).trace();
            if word.is_identity() || !comm.close(&S::from_i64(2)) {
                return Err(format!("{word} and {partner} do not share a fixed point"));
            }
            Ok(())
        }
        Verdict::Discrete { certificate, frame, .. } => {
            if !matches!(verify_pingpong(certificate), Ok(true)) {
                return Err("certificate fails the ping-pong check".into());
            }
            // Replay the moves as Nielsen moves on the letters.
            let mut words = Gen::ALL.map(Word::letter);
            for mv in &d.moves {
                for n in mv.nielsen_moves() {
                    words = nielsen_move(&words, n).map_err(|e| e.to_string())?;
                }
            }
            let claimed =
                std::iter::once(&certificate.translation_word).chain(certificate.generators.iter().map(|g| &g.word));
            if !claimed.eq(words.iter()) {
                return Err("certificate words do not follow from the recorded moves".into());
            }
            let translation = Matrix::translation(certificate.translation.clone());
            let targets = std::iter::once(&translation).chain(certificate.generators.iter().map(|g| &g.matrix));
            for (w, m) in words.iter().zip(targets) {
                if !frame.conjugate(&eval(w)).psl_close(m) {
                    return Err(format!("frame does not carry {w} onto its certificate matrix"));
                }
            }
            let exact = exact_generators(t).ok_or("generators are not finite")?;
            let opts = SearchOptions { max_length: cfg.max_word_len, findings_limit: 8, parallel: cfg.parallel };
            let report = enumerate_words_with(&exact, &opts).map_err(|e| e.to_string())?;
            let clean = report.is_clean();
            out.search = Some(report);
            if !clean {
                return Err("word search found an elliptic word or a relation".into());
            }
            if cfg.jorgensen_len > 0 {
                let opts = SearchOptions { max_length: cfg.jorgensen_len, ..opts };
                let report = jorgensen_scan_with(&exact, &opts).map_err(|e| e.to_string())?;
                let clean = report.is_clean();
                out.jorgensen = Some(report);
                if !clean {
                    return Err("Jørgensen scan found a violation".into());
                }
            }
            Ok(())
        }
    }
}

fn exact_generators<S: Scalar>(t: &ParabolicTriple<S>) -> Option<[Matrix<Rational>; 3]> {
    let q = ParabolicTriple { x: t.x.to_rational()?, y: t.y.to_rational()?, z: t.z.to_rational()? };
    Some(q.matrices())
}
