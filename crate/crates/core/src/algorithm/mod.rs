//! The decision procedure: a loop over the phases S, A, D and E.
//!
//! * S moves the fixed point of `C` next to `B` with powers of `A` and `B`;
//! * A forms the products `AB`, `AC`, `BC` and `ABC`;
//! * D stops on an elliptic element, a relation, a two-generator collapse or a
//!   fundamental domain;
//! * E repositions the triple and loops.
//!
//! Every verdict carries evidence that [`decide`] re-checks before returning.

mod construction;
mod state;
mod steps;

use thiserror::Error;

use crate::canonical::{normalize, CanonicalError, Normalization, ParabolicTriple};
use crate::ford::{verify_pingpong, Geodesic, PingPongCertificate};
use crate::moebius::{evaluate_word, IsometryClass, Matrix, ProjectiveMap, Word};
use crate::scalar::{Indeterminate, Rational, Scalar};

pub use construction::{
    build_ford_certificate, construction_inequality, outer_gap, step_d3_inequality, ConstructionError, FordCertificate,
    FordConstruction,
};
pub use state::{AlgorithmState, Move, Phase};
pub use steps::{step_a, step_d, step_e, step_s, EOutcome, Products};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("epsilon must be positive")]
    Epsilon,
    #[error("delta must be positive")]
    Delta,
    #[error("max_iterations must be at least 1")]
    Iterations,
    #[error(transparent)]
    Indeterminate(#[from] Indeterminate),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmConfig<S> {
    /// Slack allowed above 1 for the fixed point of `C`.
    pub epsilon: S,
    /// Slack allowed below `y` for the fixed point of `C`.
    pub delta: S,
    pub max_iterations: u64,
    /// Words longer than this (in syllables, summed over generators) end the run.
    pub max_word_syllables: usize,
}

impl<S: Scalar> AlgorithmConfig<S> {
    pub fn new(epsilon: S, delta: S, max_iterations: u64) -> Result<Self, ConfigError> {
        if !epsilon.greater(&S::zero())? {
            return Err(ConfigError::Epsilon);
        }
        if !delta.greater(&S::zero())? {
            return Err(ConfigError::Delta);
        }
        if max_iterations == 0 {
            return Err(ConfigError::Iterations);
        }
        Ok(AlgorithmConfig { epsilon, delta, max_iterations, max_word_syllables: 1 << 20 })
    }
}

impl<S: Scalar> Default for AlgorithmConfig<S> {
    fn default() -> Self {
        AlgorithmConfig {
            epsilon: S::from_ratio(1, 10),
            delta: S::from_ratio(1, 100),
            max_iterations: 10_000,
            max_word_syllables: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegenerateKind {
    /// Two generators share the fixed point infinity, so the group is generated
    /// by two elements or is not discrete.
    TwoGenerator,
    /// A nontrivial word is the identity, so the group is not free on the generators.
    Relation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UndeterminedReason {
    BudgetExhausted,
    ToleranceBand,
    NoApplicableMove,
    ProgressStalled,
    VerificationFailed,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<S> {
    /// Free and discrete. The certificate lives in the final frame of the run;
    /// its words are in the starting generators.
    Discrete {
        certificate: PingPongCertificate<S>,
        domain: Vec<Geodesic<S>>,
        construction: FordConstruction<S>,
        /// Map from the starting configuration to the certificate's frame.
        frame: ProjectiveMap<S>,
    },
    /// `word` is elliptic, with the given trace.
    EllipticWitness {
        word: Word,
        trace: S,
    },
    /// For a relation `word` is the identity. For a two-generator collapse
    /// `word` shares a fixed point with the parabolic `partner`: the two commute
    /// when `word` is parabolic too, and the group is not discrete otherwise.
    Degenerate {
        kind: DegenerateKind,
        word: Word,
        partner: Option<Word>,
        detail: String,
    },
    Undetermined {
        reason: UndeterminedReason,
    },
}

impl<S> Verdict<S> {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Discrete { .. } => "discrete",
            Verdict::EllipticWitness { .. } => "elliptic_witness",
            Verdict::Degenerate { kind: DegenerateKind::TwoGenerator, .. } => "degenerate_two_generator",
            Verdict::Degenerate { kind: DegenerateKind::Relation, .. } => "degenerate_relation",
            Verdict::Undetermined { .. } => "undetermined",
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, Verdict::Discrete { .. })
    }
}

/// A verdict with the trail that led to it.
#[derive(Debug, Clone, PartialEq)]
pub struct Decision<S> {
    pub verdict: Verdict<S>,
    /// Passes through step S.
    pub iterations: u64,
    /// Coordinates at the end of the run.
    pub final_triple: ParabolicTriple<S>,
    /// Final generators as words in the starting ones.
    pub words: [Word; 3],
    /// Map from the starting configuration to the final one.
    pub frame: ProjectiveMap<S>,
    pub moves: Vec<Move>,
}

/// Runs the procedure on the normal-form triple `t`. Deterministic.
pub fn decide<S: Scalar>(t: &ParabolicTriple<S>, cfg: &AlgorithmConfig<S>) -> Decision<S> {
    let originals = t.matrices();
    let mut st = AlgorithmState::new(t);
    let verdict = match run(&mut st, cfg) {
        Ok(v) => match verify_verdict(&v, &originals) {
            Ok(true) => v,
            Ok(false) => Verdict::Undetermined { reason: UndeterminedReason::VerificationFailed },
            Err(Indeterminate) => Verdict::Undetermined { reason: UndeterminedReason::ToleranceBand },
        },
        Err(Indeterminate) => Verdict::Undetermined { reason: UndeterminedReason::ToleranceBand },
    };
    Decision {
        verdict,
        iterations: st.iteration,
        final_triple: st.triple(),
        words: st.words.clone(),
        frame: st.frame.clone(),
        moves: st.moves.clone(),
    }
}

/// Normalizes raw parabolic matrices and decides the resulting triple. Words in
/// the decision refer to the normal-form generators; use
/// [`Normalization::to_input_word`] to rewrite them in the inputs.
pub fn decide_matrices<S: Scalar>(
    raw: &[Matrix<S>; 3],
    cfg: &AlgorithmConfig<S>,
) -> Result<(Normalization<S>, Decision<S>), CanonicalError> {
    let n = normalize(raw)?;
    let d = decide(&n.triple, cfg);
    Ok((n, d))
}

fn run<S: Scalar>(st: &mut AlgorithmState<S>, cfg: &AlgorithmConfig<S>) -> Result<Verdict<S>, Indeterminate> {
    loop {
        st.iteration += 1;
        if let Some(v) = step_s(st, cfg)? {
            return Ok(v);
        }
        let before = st.progress.last().cloned();
        let mut first_d = true;
        loop {
            let products = step_a(st)?;
            if first_d {
                if let Some(prev) = &before {
                    if !products.progress().less(prev)? {
                        return Ok(Verdict::Undetermined { reason: UndeterminedReason::ProgressStalled });
                    }
                }
                first_d = false;
            }
            if let Some(v) = step_d(st, &products)? {
                return Ok(v);
            }
            match step_e(st, cfg)? {
                EOutcome::Done(v) => return Ok(v),
                EOutcome::RerunD => continue,
                EOutcome::LoopBack => break,
            }
        }
    }
}

/// Re-checks the evidence of `v` against the starting generators.
pub(crate) fn verify_verdict<S: Scalar>(v: &Verdict<S>, originals: &[Matrix<S>; 3]) -> Result<bool, Indeterminate> {
    let eval = |w: &Word| evaluate_word(w, originals);
    match v {
        Verdict::EllipticWitness { word, trace } => {
            let t = eval(word).trace();
            Ok(t.abs_value().less(&S::from_i64(2))? && t.abs_value().close(&trace.abs_value()))
        }
        Verdict::Degenerate { kind: DegenerateKind::Relation, word, .. } => {
            Ok(!word.is_identity() && eval(word).is_identity()?)
        }
        Verdict::Degenerate { kind: DegenerateKind::TwoGenerator, word, partner, .. } => {
            let Some(partner) = partner else { return Ok(false) };
            let (g, h) = (eval(word), eval(partner));
            Ok(h.classify()? == IsometryClass::Parabolic && shares_fixed_point(&g, &h)?)
        }
        Verdict::Discrete { certificate, frame, .. } => {
            if !matches!(verify_pingpong(certificate), Ok(true)) {
                return Ok(false);
            }
            let translation = Matrix::translation(certificate.translation.clone());
            if !frame.conjugate(&eval(&certificate.translation_word)).psl_close(&translation) {
                return Ok(false);
            }
            for g in &certificate.generators {
                if !frame.conjugate(&eval(&g.word)).psl_close(&g.matrix) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Verdict::Undetermined { .. } => Ok(true),
    }
}

/// Two non-identity elements share a fixed point exactly when their commutator
/// has trace 2.
pub(crate) fn shares_fixed_point<S: Scalar>(g: &Matrix<S>, h: &Matrix<S>) -> Result<bool, Indeterminate> {
    if g.is_identity()? || h.is_identity()? {
        return Ok(false);
    }
    g.commutator(h).trace().equals(&S::from_i64(2))
}

/// Exact decision with the default configuration.
pub fn decide_exact(t: &ParabolicTriple<Rational>) -> Decision<Rational> {
    decide(t, &AlgorithmConfig::default())
}
