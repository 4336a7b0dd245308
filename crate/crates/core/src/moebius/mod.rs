//! 2x2 matrix algebra for PSL(2,R): classification, fixed points, conjugation,
//! words in three generators and Nielsen moves.

mod matrix;
mod word;

use thiserror::Error;

use crate::scalar::{Indeterminate, Scalar};

pub use matrix::{BoundaryPoint, FixedPoints, InteriorPoint, IsometryClass, Matrix, ProjectiveMap, Surd};
pub use word::{Gen, ParseWordError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoebiusError {
    #[error("determinant is {0}, expected 1")]
    NotUnimodular(String),
    #[error("the identity fixes every point")]
    IdentityFixesEverything,
    #[error("element is not parabolic")]
    NotParabolic,
    #[error("projective map is singular")]
    Singular,
    #[error("Nielsen move needs two distinct positions")]
    SamePosition,
    #[error(transparent)]
    Indeterminate(#[from] Indeterminate),
}

/// Signed trace `a + d`.
pub fn trace<S: Scalar>(m: &Matrix<S>) -> S {
    m.trace()
}

pub fn classify<S: Scalar>(m: &Matrix<S>) -> Result<IsometryClass, Indeterminate> {
    m.classify()
}

pub fn fixed_points<S: Scalar>(m: &Matrix<S>) -> Result<FixedPoints<S>, MoebiusError> {
    m.fixed_points()
}

/// `x * m * x^-1`.
pub fn conjugate<S: Scalar>(m: &Matrix<S>, x: &Matrix<S>) -> Matrix<S> {
    m.conjugate(x)
}

/// The translation `z -> z + 2`.
pub fn standard_translation<S: Scalar>() -> Matrix<S> {
    Matrix::translation(S::from_i64(2))
}

/// Something generators can be: a matrix or a formal word.
pub trait GroupElement: Clone {
    fn identity() -> Self;
    fn op(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl<S: Scalar> GroupElement for Matrix<S> {
    fn identity() -> Self {
        Matrix::identity()
    }
    fn op(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
}

impl GroupElement for Word {
    fn identity() -> Self {
        Word::identity()
    }
    fn op(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
}

/// Generating-set replacements that keep the generated group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NielsenMove {
    /// Exchange two positions.
    Switch(Gen, Gen),
    /// Replace a generator by its inverse.
    Invert(Gen),
    /// `Twist(i, j)` replaces `g_j` by `g_i * g_j`.
    Twist(Gen, Gen),
}

pub fn nielsen_move<T: GroupElement>(gens: &[T; 3], mv: NielsenMove) -> Result<[T; 3], MoebiusError> {
    let mut out = gens.clone();
    match mv {
        NielsenMove::Switch(i, j) => {
            if i == j {
                return Err(MoebiusError::SamePosition);
            }
            out.swap(i.index(), j.index());
        }
        NielsenMove::Invert(i) => out[i.index()] = gens[i.index()].inv(),
        NielsenMove::Twist(i, j) => {
            if i == j {
                return Err(MoebiusError::SamePosition);
            }
            out[j.index()] = gens[i.index()].op(&gens[j.index()]);
        }
    }
    Ok(out)
}

/// Product of the generator powers of `w`, left to right.
pub fn evaluate_word<T: GroupElement>(w: &Word, gens: &[T; 3]) -> T {
    let mut acc = T::identity();
    for &(g, n) in w.syllables() {
        let base = if n < 0 { gens[g.index()].inv() } else { gens[g.index()].clone() };
        for _ in 0..n.unsigned_abs() {
            acc = acc.op(&base);
        }
    }
    acc
}

/// Whether `|Tr(m1 m2)| < |Tr(m1^-1 m2)|`.
pub fn coherently_oriented<S: Scalar>(m1: &Matrix<S>, m2: &Matrix<S>) -> Result<bool, Indeterminate> {
    let forward = m1.mul(m2).trace().abs_value();
    let backward = m1.inverse().mul(m2).trace().abs_value();
    forward.less(&backward)
}
