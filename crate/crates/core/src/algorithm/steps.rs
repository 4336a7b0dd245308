//! The four phases. Each step reads and updates an [`AlgorithmState`]; a
//! returned [`Verdict`] ends the run. Words inside verdicts are already written
//! in the generators the run started from.

use std::cmp::Ordering;

use crate::ford::elliptic_power_exists;
use crate::moebius::{Gen, IsometryClass, Matrix, Word};
use crate::scalar::{Indeterminate, Scalar};

use super::construction::{build_ford_certificate, outer_gap, step_d3_inequality};
use super::state::{AlgorithmState, Move, Phase};
use super::{AlgorithmConfig, DegenerateKind, UndeterminedReason, Verdict};

/// Products computed in step A.
#[derive(Debug, Clone, PartialEq)]
pub struct Products<S> {
    pub ab: Matrix<S>,
    pub ac: Matrix<S>,
    pub bc: Matrix<S>,
    pub abc: Matrix<S>,
    /// `x^2 > yz`, equivalently `|Tr BC| > 2`.
    pub bc_hyperbolic: bool,
}

impl<S: Scalar> Products<S> {
    /// `|Tr AB| + |Tr AC|`, which every loop strictly lowers.
    pub fn progress(&self) -> S {
        self.ab.trace().abs_value() + self.ac.trace().abs_value()
    }
}

/// What step E asks for next.
#[derive(Debug, Clone, PartialEq)]
pub enum EOutcome<S> {
    Done(Verdict<S>),
    /// The coordinates changed without a new loop; run step D again.
    RerunD,
    /// Loop back to step S.
    LoopBack,
}

fn two_generator<S: Scalar>(st: &AlgorithmState<S>, fixes_infinity: Word, detail: &str) -> Verdict<S> {
    Verdict::Degenerate {
        kind: DegenerateKind::TwoGenerator,
        word: st.original_word(&fixes_infinity),
        partner: Some(st.original_word(&Word::letter(Gen::A))),
        detail: detail.to_string(),
    }
}

/// Brings `x` into `(0, 1]` with a power of `A` and possibly a reflection.
fn renormalize<S: Scalar>(st: &mut AlgorithmState<S>) -> Result<Option<Verdict<S>>, Indeterminate> {
    // r = x - 2n lies in (-1, 1].
    let n = -((S::one() - st.x.clone()) / S::from_i64(2)).floor_int().ok_or(Indeterminate)?;
    if n != 0 {
        st.apply(Move::TranslateC(-n));
    }
    match st.x.sign()? {
        Ordering::Less => st.apply(Move::Reflect),
        Ordering::Equal => {
            // B and C share the fixed point 0, so they commute.
            let w: Word = "BCB^-1C^-1".parse().expect("static word");
            return Ok(Some(Verdict::Degenerate {
                kind: DegenerateKind::Relation,
                word: st.original_word(&w),
                partner: None,
                detail: "B and C share a fixed point and commute".into(),
            }));
        }
        Ordering::Greater => {}
    }
    Ok(None)
}

/// Conjugates `C` by the power of `B` that brings its fixed point closest to 0.
fn push<S: Scalar>(st: &mut AlgorithmState<S>) -> Result<Option<Verdict<S>>, Indeterminate> {
    let m = (st.y.clone() / (S::from_i64(2) * st.x.clone())).round_int().ok_or(Indeterminate)?;
    let d = st.y.clone() - S::from_i64(2 * m) * st.x.clone();
    if d.is_zero_checked()? {
        let w = Word::letter(Gen::C).conjugated_by(&Word::power(Gen::B, m));
        return Ok(Some(two_generator(st, w, "a conjugate of C by a power of B fixes infinity")));
    }
    st.apply(Move::PushC(m));
    if st.x.sign()? == Ordering::Less {
        st.apply(Move::Reflect);
    }
    Ok(None)
}

/// Step S: position the fixed point of `C` next to that of `B`.
pub fn step_s<S: Scalar>(
    st: &mut AlgorithmState<S>,
    cfg: &AlgorithmConfig<S>,
) -> Result<Option<Verdict<S>>, Indeterminate> {
    st.phase = Phase::S;
    if st.y.equals(&(S::from_i64(2) * st.x.clone()))? {
        let w = Word::letter(Gen::C).conjugated_by(&Word::letter(Gen::B));
        return Ok(Some(two_generator(st, w, "y = 2x, so C conjugated by B fixes infinity")));
    }
    let far = S::one() + cfg.epsilon.clone();
    if st.x.greater(&far)? {
        if let Some(v) = renormalize(st)? {
            return Ok(Some(v));
        }
    }
    if st.x.less(&(st.y.clone() - cfg.delta.clone()))? {
        if let Some(v) = push(st)? {
            return Ok(Some(v));
        }
        if st.x.greater(&far)? {
            if let Some(v) = renormalize(st)? {
                return Ok(Some(v));
            }
        }
    }
    st.phase = Phase::A;
    Ok(None)
}

/// Step A: the pairwise products, by multiplication.
pub fn step_a<S: Scalar>(st: &mut AlgorithmState<S>) -> Result<Products<S>, Indeterminate> {
    st.phase = Phase::A;
    let [a, b, c] = st.matrices();
    let bc = b.mul(&c);
    let products = Products {
        ab: a.mul(&b),
        ac: a.mul(&c),
        abc: a.mul(&bc),
        bc_hyperbolic: bc.trace().abs_value().greater(&S::from_i64(2))?,
        bc,
    };
    st.phase = Phase::D;
    Ok(products)
}

/// Step D: look for an elliptic element, a relation, or a fundamental domain.
pub fn step_d<S: Scalar>(st: &mut AlgorithmState<S>, pr: &Products<S>) -> Result<Option<Verdict<S>>, Indeterminate> {
    st.phase = Phase::D;
    st.progress.push(pr.progress());
    let word = |s: &str| -> Word { s.parse().expect("static word") };
    let witness = |w: Word, m: &Matrix<S>| Verdict::EllipticWitness { word: st.original_word(&w), trace: m.trace() };

    if pr.abc.is_identity()? {
        return Ok(Some(Verdict::Degenerate {
            kind: DegenerateKind::Relation,
            word: st.original_word(&word("ABC")),
            partner: None,
            detail: "ABC is the identity".into(),
        }));
    }
    for (name, m) in [("BC", &pr.bc), ("AB", &pr.ab), ("AC", &pr.ac)] {
        if m.classify()? == IsometryClass::Elliptic {
            return Ok(Some(witness(word(name), m)));
        }
    }
    // A parabolic product sharing its fixed point with the remaining generator
    // commutes with it; for instance AB fixes 1 when y = 1.
    let [_, b, c] = st.matrices();
    for (name, p, g, h) in [("AB", &pr.ab, &c, "C"), ("AC", &pr.ac, &b, "B")] {
        if p.classify()? == IsometryClass::Parabolic && p.commutator(g).is_identity()? {
            let w = word(name);
            let g = word(h);
            return Ok(Some(Verdict::Degenerate {
                kind: DegenerateKind::Relation,
                word: st.original_word(&w.mul(&g).mul(&w.inverse()).mul(&g.inverse())),
                partner: None,
                detail: format!("{name} is parabolic and shares its fixed point with {h}"),
            }));
        }
    }
    if pr.bc.c().is_zero_checked()? {
        return Ok(Some(two_generator(st, word("BC"), "2x = y + z, so BC fixes infinity")));
    }
    let t = st.triple();
    if outer_gap(&t).abs_value().less(&(t.y.clone() * t.z.clone()))? {
        // Ford strength of BC exceeds 1, so some A^n BC is elliptic.
        if let Some(n) = elliptic_power_exists(&pr.bc).map_err(|_| Indeterminate)? {
            let a_n = Matrix::translation(S::from_i64(2 * n));
            return Ok(Some(witness(Word::power(Gen::A, n).mul(&word("BC")), &a_n.mul(&pr.bc))));
        }
    }
    if pr.abc.classify()? == IsometryClass::Elliptic {
        return Ok(Some(witness(word("ABC"), &pr.abc)));
    }
    if outer_gap(&t).sign()? == Ordering::Greater && step_d3_inequality(&t)? {
        // ABC is not elliptic, so Tr(ABC) >= 2 and the construction applies.
        if let Ok(fc) = build_ford_certificate(&t) {
            let mut certificate = fc.certificate;
            certificate.translation_word = st.original_word(&certificate.translation_word);
            for g in &mut certificate.generators {
                g.word = st.original_word(&g.word);
            }
            return Ok(Some(Verdict::Discrete {
                certificate,
                domain: fc.domain,
                construction: fc.construction,
                frame: st.frame.clone(),
            }));
        }
    }
    Ok(None)
}

/// Step E: move to a configuration closer to the stopping one.
pub fn step_e<S: Scalar>(st: &mut AlgorithmState<S>, cfg: &AlgorithmConfig<S>) -> Result<EOutcome<S>, Indeterminate> {
    st.phase = Phase::E;
    if st.z.greater(&st.y)? {
        // Step D is not symmetric in B and C, so look again after the swap.
        st.apply(Move::SwapBC);
        return Ok(EOutcome::RerunD);
    }
    if st.x.greater(&S::one())? {
        // x in (1, 1 + eps]: use 2 - x instead.
        st.apply(Move::TranslateC(-1));
        st.apply(Move::Reflect);
        return Ok(EOutcome::RerunD);
    }
    if st.x.less(&st.y)? {
        if st.iteration >= cfg.max_iterations || st.word_size() > cfg.max_word_syllables {
            return Ok(EOutcome::Done(Verdict::Undetermined { reason: UndeterminedReason::BudgetExhausted }));
        }
        if let Some(v) = push(st)? {
            return Ok(EOutcome::Done(v));
        }
        return Ok(EOutcome::LoopBack);
    }
    Ok(EOutcome::Done(Verdict::Undetermined { reason: UndeterminedReason::NoApplicableMove }))
}
