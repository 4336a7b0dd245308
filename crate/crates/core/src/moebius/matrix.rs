use std::cmp::Ordering;
use std::fmt;

use crate::scalar::{Indeterminate, Scalar};

use super::MoebiusError;

/// Isometry type of a PSL(2,R) element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsometryClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// A point of the real projective line.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryPoint<T> {
    Finite(T),
    Infinity,
}

impl<T> BoundaryPoint<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            BoundaryPoint::Finite(t) => Some(t),
            BoundaryPoint::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }
}

impl<T: fmt::Display> fmt::Display for BoundaryPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Finite(t) => write!(f, "{t}"),
            BoundaryPoint::Infinity => f.write_str("inf"),
        }
    }
}

/// `rational + coefficient * sqrt(radicand)`, with `radicand` non-square when the
/// backend can tell.
#[derive(Debug, Clone, PartialEq)]
pub struct Surd<S> {
    pub rational: S,
    pub coefficient: S,
    pub radicand: S,
}

impl<S: Scalar> Surd<S> {
    pub fn from_scalar(s: S) -> Self {
        Surd { rational: s, coefficient: S::zero(), radicand: S::zero() }
    }

    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64() + self.coefficient.to_f64() * self.radicand.to_f64().sqrt()
    }

    /// The value itself when the square root is not needed.
    pub fn as_scalar(&self) -> Option<S> {
        if self.coefficient.is_zero_checked().ok()? {
            Some(self.rational.clone())
        } else {
            None
        }
    }
}

/// A point `real + i * imag_coefficient * sqrt(imag_radicand)` of the upper half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorPoint<S> {
    pub real: S,
    pub imag_coefficient: S,
    pub imag_radicand: S,
}

impl<S: Scalar> InteriorPoint<S> {
    pub fn to_f64(&self) -> (f64, f64) {
        (self.real.to_f64(), self.imag_coefficient.to_f64() * self.imag_radicand.to_f64().sqrt())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FixedPoints<S> {
    Parabolic(BoundaryPoint<S>),
    Hyperbolic(BoundaryPoint<Surd<S>>, BoundaryPoint<Surd<S>>),
    Elliptic(InteriorPoint<S>),
}

/// A determinant-one 2x2 matrix `[[a, b], [c, d]]` standing for an element of PSL(2,R).
///
/// `==` compares matrices entrywise; use [`Matrix::psl_eq`] for equality up to sign.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    a: S,
    b: S,
    c: S,
    d: S,
}

impl<S: Scalar> Matrix<S> {
    /// Builds a matrix, rejecting a determinant other than one.
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self, MoebiusError> {
        let m = Matrix { a, b, c, d };
        // A determinant inside the tolerance band counts as one.
        match m.det().equals(&S::one()) {
            Ok(true) | Err(Indeterminate) => Ok(m),
            Ok(false) => Err(MoebiusError::NotUnimodular(m.det().to_string())),
        }
    }

    /// Entries known to satisfy `ad - bc = 1`.
    pub(crate) fn new_unchecked(a: S, b: S, c: S, d: S) -> Self {
        Matrix { a, b, c, d }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self, MoebiusError> {
        Self::new(S::from_i64(a), S::from_i64(b), S::from_i64(c), S::from_i64(d))
    }

    pub fn identity() -> Self {
        Matrix::new_unchecked(S::one(), S::zero(), S::zero(), S::one())
    }

    /// `z -> z + t`.
    pub fn translation(t: S) -> Self {
        Matrix::new_unchecked(S::one(), t, S::zero(), S::one())
    }

    /// The parabolic fixing `f` whose isometric circles have diameter `strength`:
    /// `[[1 - 2f/s, 2f^2/s], [-2/s, 1 + 2f/s]]`.
    pub fn parabolic_at(f: &S, strength: &S) -> Self {
        let two = S::from_i64(2);
        let u = two.clone() * f.clone() / strength.clone();
        Matrix::new_unchecked(S::one() - u.clone(), u.clone() * f.clone(), -(two / strength.clone()), S::one() + u)
    }

    pub fn a(&self) -> &S {
        &self.a
    }

    pub fn b(&self) -> &S {
        &self.b
    }

    pub fn c(&self) -> &S {
        &self.c
    }

    pub fn d(&self) -> &S {
        &self.d
    }

    pub fn entries(&self) -> [&S; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> S {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> S {
        self.a.clone() + self.d.clone()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Matrix::new_unchecked(
            self.a.clone() * o.a.clone() + self.b.clone() * o.c.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.d.clone(),
            self.c.clone() * o.a.clone() + self.d.clone() * o.c.clone(),
            self.c.clone() * o.b.clone() + self.d.clone() * o.d.clone(),
        )
    }

    pub fn inverse(&self) -> Self {
        Matrix::new_unchecked(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    pub fn negate(&self) -> Self {
        Matrix::new_unchecked(-self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Matrix::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self * o * self^-1 * o^-1`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).mul(&self.inverse()).mul(&o.inverse())
    }

    /// `x * self * x^-1`.
    pub fn conjugate(&self, x: &Self) -> Self {
        x.mul(self).mul(&x.inverse())
    }

    /// Whether the matrix is `I` or `-I`.
    pub fn is_identity(&self) -> Result<bool, Indeterminate> {
        if !self.b.is_zero_checked()? || !self.c.is_zero_checked()? {
            return Ok(false);
        }
        Ok(self.a.equals(&self.d)? && self.a.abs_value().equals(&S::one())?)
    }

    /// Equality in PSL(2,R), that is up to a global sign.
    pub fn psl_eq(&self, o: &Self) -> Result<bool, Indeterminate> {
        let same = |m: &Self, n: &Self| -> Result<bool, Indeterminate> {
            Ok(m.a.equals(&n.a)? && m.b.equals(&n.b)? && m.c.equals(&n.c)? && m.d.equals(&n.d)?)
        };
        Ok(same(self, o)? || same(self, &o.negate())?)
    }

    /// [`Matrix::psl_eq`] up to the error band of the backend.
    pub fn psl_close(&self, o: &Self) -> bool {
        let same = |m: &Self, n: &Self| m.a.close(&n.a) && m.b.close(&n.b) && m.c.close(&n.c) && m.d.close(&n.d);
        same(self, o) || same(self, &o.negate())
    }

    /// The representative whose first nonzero entry in reading order is positive.
    pub fn normalized_sign(&self) -> Result<Self, Indeterminate> {
        for e in self.entries() {
            match e.sign()? {
                Ordering::Greater => return Ok(self.clone()),
                Ordering::Less => return Ok(self.negate()),
                Ordering::Equal => {}
            }
        }
        Ok(self.clone())
    }

    pub fn classify(&self) -> Result<IsometryClass, Indeterminate> {
        if self.is_identity()? {
            return Ok(IsometryClass::Identity);
        }
        Ok(match self.trace().abs_value().compare(&S::from_i64(2))? {
            Ordering::Less => IsometryClass::Elliptic,
            Ordering::Equal => IsometryClass::Parabolic,
            Ordering::Greater => IsometryClass::Hyperbolic,
        })
    }

    pub fn is_elliptic(&self) -> Result<bool, Indeterminate> {
        Ok(self.classify()? == IsometryClass::Elliptic)
    }

    /// Image of a boundary point under `z -> (az + b) / (cz + d)`.
    pub fn apply(&self, p: &BoundaryPoint<S>) -> Result<BoundaryPoint<S>, Indeterminate> {
        match p {
            BoundaryPoint::Infinity => {
                if self.c.is_zero_checked()? {
                    Ok(BoundaryPoint::Infinity)
                } else {
                    Ok(BoundaryPoint::Finite(self.a.clone() / self.c.clone()))
                }
            }
            BoundaryPoint::Finite(z) => self.apply_finite(z),
        }
    }

    pub fn apply_finite(&self, z: &S) -> Result<BoundaryPoint<S>, Indeterminate> {
        let den = self.c.clone() * z.clone() + self.d.clone();
        if den.is_zero_checked()? {
            Ok(BoundaryPoint::Infinity)
        } else {
            Ok(BoundaryPoint::Finite((self.a.clone() * z.clone() + self.b.clone()) / den))
        }
    }

    pub fn fixed_points(&self) -> Result<FixedPoints<S>, MoebiusError> {
        let class = self.classify()?;
        let two = S::from_i64(2);
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        match class {
            IsometryClass::Identity => Err(MoebiusError::IdentityFixesEverything),
            IsometryClass::Parabolic => {
                if c.is_zero_checked()? {
                    Ok(FixedPoints::Parabolic(BoundaryPoint::Infinity))
                } else {
                    let f = (a.clone() - d.clone()) / (two * c.clone());
                    Ok(FixedPoints::Parabolic(BoundaryPoint::Finite(f)))
                }
            }
            IsometryClass::Hyperbolic => {
                if c.is_zero_checked()? {
                    let f = b.clone() / (d.clone() - a.clone());
                    return Ok(FixedPoints::Hyperbolic(
                        BoundaryPoint::Infinity,
                        BoundaryPoint::Finite(Surd::from_scalar(f)),
                    ));
                }
                let t = self.trace();
                let disc = t.clone() * t - S::from_i64(4);
                let two_c = two * c.clone();
                let base = (a.clone() - d.clone()) / two_c.clone();
                let surd = |sign: i64| match disc.exact_sqrt() {
                    Some(r) if S::EXACT => Surd::from_scalar(base.clone() + S::from_i64(sign) * r / two_c.clone()),
                    _ => Surd {
                        rational: base.clone(),
                        coefficient: S::from_i64(sign) / two_c.clone(),
                        radicand: disc.clone(),
                    },
                };
                Ok(FixedPoints::Hyperbolic(BoundaryPoint::Finite(surd(-1)), BoundaryPoint::Finite(surd(1))))
            }
            IsometryClass::Elliptic => {
                let t = self.trace();
                let disc = S::from_i64(4) - t.clone() * t;
                Ok(FixedPoints::Elliptic(InteriorPoint {
                    real: (a.clone() - d.clone()) / (two.clone() * c.clone()),
                    imag_coefficient: S::one() / (two * c.abs_value()),
                    imag_radicand: disc,
                }))
            }
        }
    }

    /// The boundary fixed point of a parabolic element.
    pub fn parabolic_fixed_point(&self) -> Result<BoundaryPoint<S>, MoebiusError> {
        match self.fixed_points()? {
            FixedPoints::Parabolic(p) => Ok(p),
            _ => Err(MoebiusError::NotParabolic),
        }
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// An invertible 2x2 matrix acting projectively, so that determinant `-1`
/// (orientation reversing) maps are allowed as conjugators.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMap<S> {
    a: S,
    b: S,
    c: S,
    d: S,
}

impl<S: Scalar> ProjectiveMap<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self, MoebiusError> {
        let m = ProjectiveMap { a, b, c, d };
        if m.det().is_zero_checked()? {
            return Err(MoebiusError::Singular);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        ProjectiveMap { a: S::one(), b: S::zero(), c: S::zero(), d: S::one() }
    }

    /// `z -> -z`.
    pub fn reflection() -> Self {
        ProjectiveMap { a: -S::one(), b: S::zero(), c: S::zero(), d: S::one() }
    }

    /// `z -> s * z + t`, `s != 0`.
    pub fn affine(s: S, t: S) -> Self {
        ProjectiveMap { a: s, b: t, c: S::zero(), d: S::one() }
    }

    pub fn from_matrix(m: &Matrix<S>) -> Self {
        ProjectiveMap { a: m.a.clone(), b: m.b.clone(), c: m.c.clone(), d: m.d.clone() }
    }

    pub fn entries(&self) -> [&S; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> S {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn orientation_reversing(&self) -> Result<bool, Indeterminate> {
        Ok(self.det().sign()? == Ordering::Less)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Self) -> Self {
        ProjectiveMap {
            a: self.a.clone() * first.a.clone() + self.b.clone() * first.c.clone(),
            b: self.a.clone() * first.b.clone() + self.b.clone() * first.d.clone(),
            c: self.c.clone() * first.a.clone() + self.d.clone() * first.c.clone(),
            d: self.c.clone() * first.b.clone() + self.d.clone() * first.d.clone(),
        }
    }

    /// The adjugate, which represents the inverse map.
    pub fn inverse(&self) -> Self {
        ProjectiveMap { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    /// `X M X^-1`, rescaled so the result has determinant one.
    pub fn conjugate(&self, m: &Matrix<S>) -> Matrix<S> {
        let x = Matrix::new_unchecked(self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone());
        let adj = x.inverse();
        let p = x.mul(m).mul(&adj);
        let det = self.det();
        Matrix::new_unchecked(p.a / det.clone(), p.b / det.clone(), p.c / det.clone(), p.d / det)
    }

    pub fn apply(&self, p: &BoundaryPoint<S>) -> Result<BoundaryPoint<S>, Indeterminate> {
        let m = Matrix::new_unchecked(self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone());
        m.apply(p)
    }
}

impl<S: Scalar> fmt::Display for ProjectiveMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
