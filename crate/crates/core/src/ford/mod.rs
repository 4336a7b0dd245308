//! Ford-domain geometry: isometric circles, Ford strength, the inner and outer
//! Ford distances, the two-generator tests against the translation `z -> z + 2`,
//! and Jørgensen's inequality.

mod pingpong;

use std::cmp::Ordering;

use thiserror::Error;

use crate::moebius::{BoundaryPoint, IsometryClass, Matrix};
use crate::scalar::{Indeterminate, Scalar};

pub use pingpong::{isometric_certificate, verify_pingpong, CertificateError, PairedInterval, PingPongCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FordError {
    #[error("element fixes infinity and has no isometric circle")]
    FixesInfinity,
    #[error("element is elliptic")]
    Elliptic,
    #[error("interval endpoints are reversed or equal")]
    Malformed,
    #[error("geodesic endpoints coincide")]
    DegenerateGeodesic,
    #[error(transparent)]
    Indeterminate(#[from] Indeterminate),
}

/// A closed boundary interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval<S> {
    lo: S,
    hi: S,
}

impl<S: Scalar> Interval<S> {
    pub fn new(lo: S, hi: S) -> Result<Self, FordError> {
        if lo.less(&hi)? {
            Ok(Interval { lo, hi })
        } else {
            Err(FordError::Malformed)
        }
    }

    /// Builds the interval without checking the endpoint order, so that
    /// malformed certificates can be represented and rejected by the verifier.
    pub fn raw(lo: S, hi: S) -> Self {
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &S {
        &self.lo
    }

    pub fn hi(&self) -> &S {
        &self.hi
    }

    pub fn centered(center: S, radius: S) -> Result<Self, FordError> {
        Interval::new(center.clone() - radius.clone(), center + radius)
    }

    pub fn width(&self) -> S {
        self.hi.clone() - self.lo.clone()
    }
}

/// A hyperbolic geodesic, given by its two ideal endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Geodesic<S> {
    ends: (BoundaryPoint<S>, BoundaryPoint<S>),
}

impl<S: Scalar> Geodesic<S> {
    pub fn new(p: BoundaryPoint<S>, q: BoundaryPoint<S>) -> Result<Self, FordError> {
        let same = match (&p, &q) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => a.equals(b)?,
            _ => false,
        };
        if same {
            return Err(FordError::DegenerateGeodesic);
        }
        Ok(Geodesic { ends: (p, q) })
    }

    pub fn vertical(at: S) -> Self {
        Geodesic { ends: (BoundaryPoint::Finite(at), BoundaryPoint::Infinity) }
    }

    pub fn over(interval: &Interval<S>) -> Self {
        Geodesic { ends: (BoundaryPoint::Finite(interval.lo.clone()), BoundaryPoint::Finite(interval.hi.clone())) }
    }

    pub fn ends(&self) -> (&BoundaryPoint<S>, &BoundaryPoint<S>) {
        (&self.ends.0, &self.ends.1)
    }

    pub fn is_vertical(&self) -> bool {
        self.ends.0.is_infinity() || self.ends.1.is_infinity()
    }
}

/// Isometric-circle data of an element not fixing infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct FordData<S> {
    /// Diameter `2/|c|` of each isometric circle.
    pub strength: S,
    /// Gap `(|Tr| - 2)/|c|` between the two circles.
    pub inner_distance: S,
    /// Span `(|Tr| + 2)/|c|` across both circles.
    pub outer_distance: S,
    /// Midpoint `(a - d)/(2c)` of the two centers.
    pub symmetry_center: S,
    /// Footprint of `|cz + d| = 1`, centered at `-d/c`.
    pub isometric_circle: Interval<S>,
    /// Footprint of the inverse's circle, centered at `a/c`.
    pub image_circle: Interval<S>,
}

pub fn ford_data<S: Scalar>(g: &Matrix<S>) -> Result<FordData<S>, FordError> {
    let c = g.c();
    if c.is_zero_checked()? {
        return Err(FordError::FixesInfinity);
    }
    let abs_c = c.abs_value();
    let abs_t = g.trace().abs_value();
    let two = S::from_i64(2);
    let radius = S::one() / abs_c.clone();
    Ok(FordData {
        strength: two.clone() / abs_c.clone(),
        inner_distance: (abs_t.clone() - two.clone()) / abs_c.clone(),
        outer_distance: (abs_t + two.clone()) / abs_c,
        symmetry_center: (g.a().clone() - g.d().clone()) / (two * c.clone()),
        isometric_circle: Interval::centered(-g.d().clone() / c.clone(), radius.clone())?,
        image_circle: Interval::centered(g.a().clone() / c.clone(), radius)?,
    })
}

/// Jørgensen's inequality `|Tr(M1)^2 - 4| + |Tr[M1, M2] - 2| >= 1`.
pub fn jorgensen_holds<S: Scalar>(m1: &Matrix<S>, m2: &Matrix<S>) -> Result<bool, Indeterminate> {
    jorgensen_sum(m1, m2).greater_eq(&S::one())
}

pub fn jorgensen_sum<S: Scalar>(m1: &Matrix<S>, m2: &Matrix<S>) -> S {
    let t = m1.trace();
    let k = m1.commutator(m2).trace();
    (t.clone() * t - S::from_i64(4)).abs_value() + (k - S::from_i64(2)).abs_value()
}

fn nonelliptic_off_infinity<S: Scalar>(g: &Matrix<S>) -> Result<(), FordError> {
    if g.classify()? == IsometryClass::Elliptic {
        return Err(FordError::Elliptic);
    }
    if g.c().is_zero_checked()? {
        return Err(FordError::FixesInfinity);
    }
    Ok(())
}

/// Whether the outer Ford distance of `g` is below 2, in which case `g` and the
/// translation by 2 generate a free discrete group without elliptics.
pub fn free_discrete_by_ford<S: Scalar>(g: &Matrix<S>) -> Result<bool, FordError> {
    nonelliptic_off_infinity(g)?;
    Ok(ford_data(g)?.outer_distance.less(&S::from_i64(2))?)
}

/// Whether `AG`, `A^-1 G`, `G^-1 A` and `G^-1 A^-1` are all non-elliptic, decided
/// by `|Tr G - |2c|| >= 2` with the sign of `G` chosen so that `Tr G >= 2`.
pub fn products_nonelliptic<S: Scalar>(g: &Matrix<S>) -> Result<bool, FordError> {
    nonelliptic_off_infinity(g)?;
    let g = if g.trace().sign()? == Ordering::Less { g.negate() } else { g.clone() };
    let two_c = (S::from_i64(2) * g.c().clone()).abs_value();
    Ok((g.trace() - two_c).abs_value().greater_eq(&S::from_i64(2))?)
}

/// When `2/|c| > 1`, the `n` of least absolute value (ties to the positive side)
/// with `|Tr G + 2cn| < 2`, so that `A^n G` is elliptic. `n = 0` only when `G`
/// itself is elliptic.
pub fn elliptic_power_exists<S: Scalar>(g: &Matrix<S>) -> Result<Option<i64>, FordError> {
    let c = g.c().clone();
    if c.is_zero_checked()? {
        return Err(FordError::FixesInfinity);
    }
    let two = S::from_i64(2);
    if !(two.clone() / c.abs_value()).greater(&S::one())? {
        return Ok(None);
    }
    let t = g.trace();
    let two_c = two.clone() * c;
    // |t + 2cn| < 2 on the open interval between the two roots below.
    let r1 = (-two.clone() - t.clone()) / two_c.clone();
    let r2 = (two.clone() - t.clone()) / two_c.clone();
    let (lo, hi) = if r1.less(&r2)? { (r1, r2) } else { (r2, r1) };
    let first = lo.floor_int().ok_or(Indeterminate)?;
    let last = hi.floor_int().ok_or(Indeterminate)? + 1;
    let mut best: Option<i64> = None;
    for n in first..=last {
        let value = t.clone() + two_c.clone() * S::from_i64(n);
        if value.abs_value().less(&two)? {
            let better = match best {
                None => true,
                Some(b) => n.abs() < b.abs() || (n.abs() == b.abs() && n > b),
            };
            if better {
                best = Some(n);
            }
        }
    }
    Ok(best)
}
