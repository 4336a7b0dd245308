use std::fmt;

use crate::canonical::{standard_generators, ParabolicTriple};
use crate::moebius::{evaluate_word, Gen, Matrix, NielsenMove, ProjectiveMap, Word};
use crate::scalar::{Indeterminate, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    S,
    A,
    D,
    E,
}

/// A change of generating set, always followed by re-reading the coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// `C <- A^n C A^-n`: the fixed point of `C` moves by `2n`, its strength is kept.
    TranslateC(i64),
    /// `C <- B^m C B^-m`: `x <- xy/(y - 2mx)` and `z <- z y^2/(y - 2mx)^2`.
    PushC(i64),
    /// Conjugate by `z -> -z`. Every generator is replaced by its inverse.
    Reflect,
    /// Conjugate by `z -> x - z`, so that `(A, B, C) <- (A^-1, C^-1, B^-1)` and
    /// `y` and `z` trade places.
    SwapBC,
}

impl Move {
    /// The move as switches, inversions and twists.
    pub fn nielsen_moves(&self) -> Vec<NielsenMove> {
        use NielsenMove::*;
        match *self {
            Move::TranslateC(n) => conjugation(Gen::A, Gen::C, n),
            Move::PushC(m) => conjugation(Gen::B, Gen::C, m),
            Move::Reflect => vec![Invert(Gen::A), Invert(Gen::B), Invert(Gen::C)],
            Move::SwapBC => vec![Invert(Gen::A), Invert(Gen::B), Invert(Gen::C), Switch(Gen::B, Gen::C)],
        }
    }

    /// The effect on words for the current generators.
    pub fn apply_to_words(&self, w: &[Word; 3]) -> [Word; 3] {
        let [a, b, c] = w.clone();
        match *self {
            Move::TranslateC(n) => [a.clone(), b, c.conjugated_by(&a.pow(n))],
            Move::PushC(m) => [a, b.clone(), c.conjugated_by(&b.pow(m))],
            Move::Reflect => [a.inverse(), b.inverse(), c.inverse()],
            Move::SwapBC => [a.inverse(), c.inverse(), b.inverse()],
        }
    }
}

/// `target <- by^n target by^-n` as twists and inversions.
fn conjugation(by: Gen, target: Gen, n: i64) -> Vec<NielsenMove> {
    use NielsenMove::*;
    let once = [Twist(by, target), Invert(target), Twist(by, target), Invert(target)];
    let mut out = Vec::new();
    if n < 0 {
        out.push(Invert(by));
    }
    for _ in 0..n.unsigned_abs() {
        out.extend_from_slice(&once);
    }
    if n < 0 {
        out.push(Invert(by));
    }
    out
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::TranslateC(n) => write!(f, "C <- A^{n} C A^{}", -n),
            Move::PushC(m) => write!(f, "C <- B^{m} C B^{}", -m),
            Move::Reflect => f.write_str("reflect"),
            Move::SwapBC => f.write_str("swap B and C"),
        }
    }
}

/// The working configuration of one decision run.
///
/// `words[i]` expresses the current generator `i` in the generators the run
/// started from, and `frame` is the map taking the starting configuration to the
/// current one: `frame * evaluate(words[i]) * frame^-1 = current[i]` in PSL(2,R).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmState<S> {
    pub x: S,
    pub y: S,
    pub z: S,
    pub words: [Word; 3],
    pub frame: ProjectiveMap<S>,
    pub iteration: u64,
    pub phase: Phase,
    pub moves: Vec<Move>,
    /// `|Tr AB| + |Tr AC|` each time step D ran.
    pub progress: Vec<S>,
}

impl<S: Scalar> AlgorithmState<S> {
    pub fn new(t: &ParabolicTriple<S>) -> Self {
        AlgorithmState {
            x: t.x.clone(),
            y: t.y.clone(),
            z: t.z.clone(),
            words: Gen::ALL.map(Word::letter),
            frame: ProjectiveMap::identity(),
            iteration: 0,
            phase: Phase::S,
            moves: Vec::new(),
            progress: Vec::new(),
        }
    }

    pub fn triple(&self) -> ParabolicTriple<S> {
        ParabolicTriple { x: self.x.clone(), y: self.y.clone(), z: self.z.clone() }
    }

    pub fn matrices(&self) -> [Matrix<S>; 3] {
        standard_generators(&self.x, &self.y, &self.z)
    }

    /// Rewrites a word in the current generators in terms of the starting ones.
    pub fn original_word(&self, w: &Word) -> Word {
        w.substitute(&self.words)
    }

    pub fn word_size(&self) -> usize {
        self.words.iter().map(|w| w.syllables().len()).sum()
    }

    pub fn apply(&mut self, mv: Move) {
        let two = S::from_i64(2);
        match mv {
            Move::TranslateC(n) => {
                self.x = self.x.clone() + two * S::from_i64(n);
            }
            Move::PushC(m) => {
                let d = self.y.clone() - two * S::from_i64(m) * self.x.clone();
                self.x = self.x.clone() * self.y.clone() / d.clone();
                self.z = self.z.clone() * self.y.clone() * self.y.clone() / (d.clone() * d);
            }
            Move::Reflect => {
                self.x = -self.x.clone();
                self.frame = ProjectiveMap::reflection().compose(&self.frame);
            }
            Move::SwapBC => {
                std::mem::swap(&mut self.y, &mut self.z);
                self.frame = ProjectiveMap::affine(-S::one(), self.x.clone()).compose(&self.frame);
            }
        }
        self.words = mv.apply_to_words(&self.words);
        self.moves.push(mv);
    }

    /// Whether the recorded words and frame reproduce the current matrices.
    pub fn audit(&self, originals: &[Matrix<S>; 3]) -> Result<bool, Indeterminate> {
        let current = self.matrices();
        for g in Gen::ALL {
            let m = self.frame.conjugate(&evaluate_word(&self.words[g.index()], originals));
            if !m.psl_eq(&current[g.index()])? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::nielsen_move;
    use crate::scalar::Rational;

    #[test]
    fn moves_keep_the_audit_trail() {
        let t = ParabolicTriple::from_ratios((7, 3), (1, 2), (2, 5)).unwrap();
        let originals = t.matrices();
        let mut st = AlgorithmState::new(&t);
        for mv in
            [Move::TranslateC(-1), Move::PushC(1), Move::Reflect, Move::SwapBC, Move::PushC(-2), Move::TranslateC(3)]
        {
            st.apply(mv);
            assert!(st.audit(&originals).unwrap(), "after {mv}");
        }
    }

    #[test]
    fn nielsen_decomposition_matches_word_update() {
        let start: [Word; 3] = ["AB".parse().unwrap(), "C^2".parse().unwrap(), "BA^-1".parse().unwrap()];
        for mv in
            [Move::TranslateC(2), Move::TranslateC(-3), Move::PushC(1), Move::PushC(-1), Move::Reflect, Move::SwapBC]
        {
            let mut w = start.clone();
            for n in mv.nielsen_moves() {
                w = nielsen_move(&w, n).unwrap();
            }
            assert_eq!(w, mv.apply_to_words(&start), "{mv}");
        }
    }

    #[test]
    fn push_matches_conjugation() {
        let t = ParabolicTriple::from_ratios((1, 1), (4, 1), (1, 1)).unwrap();
        let mut st = AlgorithmState::new(&t);
        st.apply(Move::PushC(1));
        assert_eq!(st.x, Rational::from_i64(2));
        assert_eq!(st.z, Rational::from_i64(4));
    }
}
