//! Coordinates `(x, y, z)` of a triple of parabolics and the normal form
//!
//! ```text
//! A = [[1, 2], [0, 1]]   B = [[1, 0], [-2/y, 1]]   C = [[1 - 2x/z, 2x^2/z], [-2/z, 1 + 2x/z]]
//! ```
//!
//! `A` fixes infinity, `B` fixes 0 with Ford strength `y`, and `C` fixes `x > 0`
//! with Ford strength `z`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::moebius::{BoundaryPoint, Gen, IsometryClass, Matrix, MoebiusError, ProjectiveMap, Word};
use crate::scalar::{format_rational, Indeterminate, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("coordinate {0} must be positive, got {1}")]
    NonPositive(&'static str, String),
    #[error("generator {0} is not parabolic")]
    NotParabolic(Gen),
    #[error("generators {0} and {1} share a fixed point")]
    ElementaryConfiguration(Gen, Gen),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
    #[error(transparent)]
    Indeterminate(#[from] Indeterminate),
}

/// Normal-form coordinates of a parabolic triple.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicTriple<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> ParabolicTriple<S> {
    pub fn new(x: S, y: S, z: S) -> Result<Self, CanonicalError> {
        for (name, v) in [("x", &x), ("y", &y), ("z", &z)] {
            if !v.greater(&S::zero())? {
                return Err(CanonicalError::NonPositive(name, v.to_string()));
            }
        }
        Ok(ParabolicTriple { x, y, z })
    }

    pub fn matrices(&self) -> [Matrix<S>; 3] {
        standard_generators(&self.x, &self.y, &self.z)
    }
}

impl ParabolicTriple<Rational> {
    pub fn from_ratios(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> Result<Self, CanonicalError> {
        ParabolicTriple::new(
            Rational::from_ratio(x.0, x.1),
            Rational::from_ratio(y.0, y.1),
            Rational::from_ratio(z.0, z.1),
        )
    }
}

impl fmt::Display for ParabolicTriple<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", format_rational(&self.x), format_rational(&self.y), format_rational(&self.z))
    }
}

/// The normal-form matrices for any coordinates, positive or not.
pub fn standard_generators<S: Scalar>(x: &S, y: &S, z: &S) -> [Matrix<S>; 3] {
    [Matrix::translation(S::from_i64(2)), Matrix::parabolic_at(&S::zero(), y), Matrix::parabolic_at(x, z)]
}

/// The normal-form matrices of `t`; fails on a nonpositive coordinate.
pub fn matrices_from_triple<S: Scalar>(t: &ParabolicTriple<S>) -> Result<[Matrix<S>; 3], CanonicalError> {
    let t = ParabolicTriple::new(t.x.clone(), t.y.clone(), t.z.clone())?;
    Ok(t.matrices())
}

/// Result of [`normalize`].
#[derive(Debug, Clone, PartialEq)]
pub struct Normalization<S> {
    pub triple: ParabolicTriple<S>,
    /// The map `X` with `X raw[i] X^-1 = normal[i]^(+-1)`.
    pub conjugator: ProjectiveMap<S>,
    /// `inverted[i]` records that the normal generator `i` is `X raw[i]^-1 X^-1`.
    pub inverted: [bool; 3],
}

impl<S: Scalar> Normalization<S> {
    /// The normal-form generators as words in the raw inputs.
    pub fn generator_words(&self) -> [Word; 3] {
        Gen::ALL.map(|g| Word::power(g, if self.inverted[g.index()] { -1 } else { 1 }))
    }

    /// Rewrites a word in the normal-form generators as a word in the raw inputs.
    pub fn to_input_word(&self, w: &Word) -> Word {
        w.substitute(&self.generator_words())
    }
}

/// Conjugates a triple of parabolics into normal form, keeping the input order:
/// the first input becomes `A`, the second `B`, the third `C`.
pub fn normalize<S: Scalar>(raw: &[Matrix<S>; 3]) -> Result<Normalization<S>, CanonicalError> {
    let mut fixed = Vec::with_capacity(3);
    for g in Gen::ALL {
        let m = &raw[g.index()];
        if m.classify()? != IsometryClass::Parabolic {
            return Err(CanonicalError::NotParabolic(g));
        }
        fixed.push(m.parabolic_fixed_point()?);
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if same_point(&fixed[i], &fixed[j])? {
            return Err(CanonicalError::ElementaryConfiguration(Gen::ALL[i], Gen::ALL[j]));
        }
    }

    // Send A's fixed point to infinity.
    let mut x = match &fixed[0] {
        BoundaryPoint::Infinity => ProjectiveMap::identity(),
        BoundaryPoint::Finite(f) => ProjectiveMap::new(S::zero(), S::one(), -S::one(), f.clone())?,
    };
    // Scale so A translates by 2 in absolute value.
    let a1 = x.conjugate(&raw[0]);
    let shift = a1.b().clone() / a1.a().clone();
    let scale = S::from_i64(2) / shift.abs_value();
    x = ProjectiveMap::affine(scale, S::zero()).compose(&x);
    // Move B's fixed point to 0.
    let fb = finite(x.apply(&fixed[1])?)?;
    x = ProjectiveMap::affine(S::one(), -fb).compose(&x);
    // Reflect if C's fixed point is negative.
    if finite(x.apply(&fixed[2])?)?.sign()? == Ordering::Less {
        x = ProjectiveMap::reflection().compose(&x);
    }
    let x_coord = finite(x.apply(&fixed[2])?)?;

    let mut inverted = [false; 3];
    let mut normal: Vec<Matrix<S>> = Vec::with_capacity(3);
    for g in Gen::ALL {
        let mut m = x.conjugate(&raw[g.index()]);
        if m.trace().sign()? == Ordering::Less {
            m = m.negate();
        }
        // Normal form has b > 0 for A and c < 0 for B and C.
        let wrong_way = match g {
            Gen::A => m.b().sign()? == Ordering::Less,
            _ => m.c().sign()? == Ordering::Greater,
        };
        if wrong_way {
            m = m.inverse();
            inverted[g.index()] = true;
        }
        normal.push(m);
    }
    let two = S::from_i64(2);
    let y = -(two.clone() / normal[1].c().clone());
    let z = -(two / normal[2].c().clone());
    let triple = ParabolicTriple::new(x_coord, y, z)?;
    Ok(Normalization { triple, conjugator: x, inverted })
}

fn finite<S: Scalar>(p: BoundaryPoint<S>) -> Result<S, CanonicalError> {
    match p {
        BoundaryPoint::Finite(v) => Ok(v),
        // Unreachable once the fixed points are known to be distinct.
        BoundaryPoint::Infinity => Err(CanonicalError::ElementaryConfiguration(Gen::A, Gen::B)),
    }
}

fn same_point<S: Scalar>(p: &BoundaryPoint<S>, q: &BoundaryPoint<S>) -> Result<bool, Indeterminate> {
    match (p, q) {
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => Ok(true),
        (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => a.equals(b),
        _ => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn m(a: i64, b: i64, c: i64, d: i64) -> Matrix<Rational> {
        Matrix::from_i64(a, b, c, d).unwrap()
    }

    #[test]
    fn matrices_at_sample_points() {
        let t = ParabolicTriple::from_ratios((1, 1), (1, 1), (1, 1)).unwrap();
        let [a, b, c] = matrices_from_triple(&t).unwrap();
        assert_eq!(a, m(1, 2, 0, 1));
        assert_eq!(b, m(1, 0, -2, 1));
        assert_eq!(c, m(-1, 2, -2, 3));
        let t = ParabolicTriple::from_ratios((3, 2), (1, 2), (1, 2)).unwrap();
        let [_, _, c] = matrices_from_triple(&t).unwrap();
        assert_eq!(c, m(-5, 9, -4, 7));
        for g in t.matrices() {
            assert_eq!(g.trace(), q(2, 1));
            assert_eq!(g.det(), q(1, 1));
        }
    }

    #[test]
    fn nonpositive_coordinates_are_rejected() {
        assert!(matches!(
            ParabolicTriple::from_ratios((0, 1), (1, 1), (1, 1)),
            Err(CanonicalError::NonPositive("x", _))
        ));
        let bad = ParabolicTriple { x: q(1, 1), y: q(-1, 2), z: q(1, 1) };
        assert!(matrices_from_triple(&bad).is_err());
    }

    #[test]
    fn already_normal_triple_is_fixed() {
        let t = ParabolicTriple::from_ratios((5, 7), (2, 3), (1, 9)).unwrap();
        let n = normalize(&t.matrices()).unwrap();
        assert_eq!(n.triple, t);
        assert_eq!(n.conjugator, ProjectiveMap::identity());
        assert_eq!(n.inverted, [false; 3]);
    }

    #[test]
    fn conjugated_triple_is_recovered() {
        let t = ParabolicTriple::from_ratios((9, 10), (1, 2), (1, 3)).unwrap();
        let gens = t.matrices();
        for x in [
            ProjectiveMap::new(q(2, 1), q(1, 1), q(1, 1), q(1, 1)).unwrap(),
            ProjectiveMap::new(q(0, 1), q(1, 1), q(1, 1), q(0, 1)).unwrap(),
            ProjectiveMap::new(q(3, 1), q(-1, 2), q(5, 1), q(7, 1)).unwrap(),
        ] {
            let raw = gens.clone().map(|g| x.conjugate(&g));
            let n = normalize(&raw).unwrap();
            assert_eq!(n.triple, t);
            for g in Gen::ALL {
                let mut back = n.conjugator.conjugate(&raw[g.index()]);
                if n.inverted[g.index()] {
                    back = back.inverse();
                }
                assert!(back.psl_eq(&gens[g.index()]).unwrap());
            }
        }
    }

    #[test]
    fn inverted_and_negated_inputs() {
        let t = ParabolicTriple::from_ratios((1, 1), (1, 4), (1, 4)).unwrap();
        let [a, b, c] = t.matrices();
        let raw = [a.inverse().negate(), b.clone(), c.inverse()];
        let n = normalize(&raw).unwrap();
        assert_eq!(n.triple, t);
        assert_eq!(n.inverted, [true, false, true]);
        assert_eq!(n.to_input_word(&"ABC".parse().unwrap()).to_string(), "A^-1BC^-1");
    }

    #[test]
    fn shared_fixed_point_is_elementary() {
        let t = ParabolicTriple::from_ratios((1, 1), (1, 4), (1, 4)).unwrap();
        let [a, b, _] = t.matrices();
        let raw = [a, b.clone(), b.pow(2)];
        assert_eq!(normalize(&raw), Err(CanonicalError::ElementaryConfiguration(Gen::B, Gen::C)));
        let raw = [m(1, 2, 0, 1), m(2, 1, 1, 1), m(1, 0, -2, 1)];
        assert_eq!(normalize(&raw), Err(CanonicalError::NotParabolic(Gen::B)));
    }
}
