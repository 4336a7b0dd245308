//! The fundamental domain built when `2x > y + z` and `ABC` is not elliptic.
//!
//! With `S = y + z` and `D = 2x - y - z > 0` put
//!
//! ```text
//! C(p) = xy/S,   B(C(p)) = -xy/D,   p = x(2x - y)/D.
//! ```
//!
//! `B` pairs `[0, C(p)]` with `[B(C(p)), 0]` and `C` pairs `[x, p]` with
//! `[C(p), x]`. The four intervals tile `[B(C(p)), p]`, whose length is `2x^2/D`,
//! so the configuration fits in a strip of the translation by 2 exactly when
//! `x^2 <= D`, which is `Tr(ABC) >= 2`. Equality leaves `ABC` parabolic with the
//! strip's two ends tangent to the circles: the cusped boundary case.

use std::cmp::Ordering;

use thiserror::Error;

use crate::canonical::ParabolicTriple;
use crate::ford::{Geodesic, Interval, PairedInterval, PingPongCertificate};
use crate::moebius::{BoundaryPoint, Gen, Word};
use crate::scalar::{Indeterminate, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("construction needs 2x > y + z and x^2 <= 2x - y - z")]
    HypothesesFail,
    #[error(transparent)]
    Indeterminate(#[from] Indeterminate),
}

/// The named points of the construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FordConstruction<S> {
    pub x: S,
    pub p: S,
    pub c_of_p: S,
    pub b_of_c_of_p: S,
}

/// Certificate, bounding geodesics and construction points.
#[derive(Debug, Clone, PartialEq)]
pub struct FordCertificate<S> {
    pub certificate: PingPongCertificate<S>,
    pub domain: Vec<Geodesic<S>>,
    pub construction: FordConstruction<S>,
}

/// `x^2 / |2x - y - z| < 1`.
pub fn construction_inequality<S: Scalar>(t: &ParabolicTriple<S>) -> Result<bool, Indeterminate> {
    let d = outer_gap(t).abs_value();
    if d.is_zero_checked()? {
        return Ok(false);
    }
    (t.x.clone() * t.x.clone() / d).less(&S::one())
}

/// `(x^2 - yz) / |2x - y - z| < 1`. When `2x > y + z` this says `Tr(ABC) > -2`.
pub fn step_d3_inequality<S: Scalar>(t: &ParabolicTriple<S>) -> Result<bool, Indeterminate> {
    let d = outer_gap(t).abs_value();
    if d.is_zero_checked()? {
        return Ok(false);
    }
    ((t.x.clone() * t.x.clone() - t.y.clone() * t.z.clone()) / d).less(&S::one())
}

/// `2x - y - z`.
pub fn outer_gap<S: Scalar>(t: &ParabolicTriple<S>) -> S {
    S::from_i64(2) * t.x.clone() - t.y.clone() - t.z.clone()
}

pub fn build_ford_certificate<S: Scalar>(t: &ParabolicTriple<S>) -> Result<FordCertificate<S>, ConstructionError> {
    let (x, y, z) = (t.x.clone(), t.y.clone(), t.z.clone());
    let d = outer_gap(t);
    if d.sign()? != Ordering::Greater || (x.clone() * x.clone()).greater(&d)? {
        return Err(ConstructionError::HypothesesFail);
    }
    let [_, b, c] = t.matrices();
    let c_of_p = x.clone() * y.clone() / (y.clone() + z);
    let b_of_c_of_p = -(x.clone() * y.clone()) / d.clone();
    let p = x.clone() * (S::from_i64(2) * x.clone() - y) / d;

    // The closed forms must agree with the matrices.
    let images_agree = c.apply_finite(&p)? == BoundaryPoint::Finite(c_of_p.clone())
        && b.apply_finite(&c_of_p)? == BoundaryPoint::Finite(b_of_c_of_p.clone());
    if S::EXACT && !images_agree {
        return Err(ConstructionError::HypothesesFail);
    }
    if !p.greater(&x)? || !x.greater(&c_of_p)? {
        return Err(ConstructionError::HypothesesFail);
    }

    let zero = S::zero();
    let interval =
        |lo: &S, hi: &S| Interval::new(lo.clone(), hi.clone()).map_err(|_| ConstructionError::HypothesesFail);
    let b_source = interval(&zero, &c_of_p)?;
    let b_target = interval(&b_of_c_of_p, &zero)?;
    let c_source = interval(&x, &p)?;
    let c_target = interval(&c_of_p, &x)?;
    let strip_start = b_of_c_of_p.clone();
    let strip_end = strip_start.clone() + S::from_i64(2);
    let domain = vec![
        Geodesic::vertical(strip_start.clone()),
        Geodesic::vertical(strip_end),
        Geodesic::over(&b_target),
        Geodesic::over(&b_source),
        Geodesic::over(&c_target),
        Geodesic::over(&c_source),
    ];
    let certificate = PingPongCertificate {
        translation_word: Word::letter(Gen::A),
        translation: S::from_i64(2),
        strip_start,
        generators: vec![
            PairedInterval { word: Word::letter(Gen::B), matrix: b, source: b_source, target: b_target },
            PairedInterval { word: Word::letter(Gen::C), matrix: c, source: c_source, target: c_target },
        ],
    };
    Ok(FordCertificate { certificate, domain, construction: FordConstruction { x, p, c_of_p, b_of_c_of_p } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ford::verify_pingpong;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn sample_point_construction() {
        let t = ParabolicTriple::from_ratios((1, 1), (1, 4), (1, 4)).unwrap();
        assert!(construction_inequality(&t).unwrap());
        assert!(step_d3_inequality(&t).unwrap());
        let fc = build_ford_certificate(&t).unwrap();
        assert_eq!(fc.construction.p, q(7, 6));
        assert_eq!(fc.construction.c_of_p, q(1, 2));
        assert_eq!(fc.construction.b_of_c_of_p, q(-1, 6));
        assert!(verify_pingpong(&fc.certificate).unwrap());
        assert_eq!(fc.domain.len(), 6);
    }

    #[test]
    fn asymmetric_point_uses_the_right_strength() {
        // With y != z the point p is x(2x - y)/D; x(2x - z)/D would not map to C(p).
        let t = ParabolicTriple::from_ratios((1, 1), (1, 3), (1, 5)).unwrap();
        let fc = build_ford_certificate(&t).unwrap();
        let d = q(2, 1) - q(1, 3) - q(1, 5);
        assert_eq!(fc.construction.p, (q(2, 1) - q(1, 3)) / d.clone());
        assert_ne!(fc.construction.p, (q(2, 1) - q(1, 5)) / d);
        assert!(verify_pingpong(&fc.certificate).unwrap());
    }

    #[test]
    fn tangent_case_is_accepted() {
        let t = ParabolicTriple::from_ratios((1, 1), (1, 2), (1, 2)).unwrap();
        let [a, b, c] = t.matrices();
        assert_eq!(a.mul(&b).mul(&c).trace(), q(2, 1));
        let fc = build_ford_certificate(&t).unwrap();
        assert_eq!(fc.construction.p - fc.construction.b_of_c_of_p, q(2, 1));
        assert!(verify_pingpong(&fc.certificate).unwrap());
    }

    #[test]
    fn too_wide_configuration_is_refused() {
        let t = ParabolicTriple::from_ratios((9, 10), (1, 2), (1, 2)).unwrap();
        assert!(!construction_inequality(&t).unwrap());
        assert!(step_d3_inequality(&t).unwrap());
        assert_eq!(build_ford_certificate(&t), Err(ConstructionError::HypothesesFail));
        let balanced = ParabolicTriple::from_ratios((1, 2), (1, 2), (1, 2)).unwrap();
        assert!(!step_d3_inequality(&balanced).unwrap());
    }
}
