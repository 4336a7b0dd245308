use thiserror::Error;

use crate::moebius::{BoundaryPoint, Matrix, Word};
use crate::scalar::{Indeterminate, Scalar};

use super::{ford_data, FordError, Interval};

/// One generator with the footprints of its two half-disks: the generator maps
/// the outside of the half-disk over `source` onto the half-disk over `target`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedInterval<S> {
    pub word: Word,
    pub matrix: Matrix<S>,
    pub source: Interval<S>,
    pub target: Interval<S>,
}

/// Ping-pong data for a group containing the translation `z -> z + translation`.
///
/// The translation pairs the two vertical lines bounding the strip
/// `[strip_start, strip_start + translation]`; each listed generator pairs the
/// geodesics over its two intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct PingPongCertificate<S> {
    pub translation_word: Word,
    pub translation: S,
    pub strip_start: S,
    pub generators: Vec<PairedInterval<S>>,
}

impl<S: Scalar> PingPongCertificate<S> {
    pub fn strip_end(&self) -> S {
        self.strip_start.clone() + self.translation.clone()
    }

    pub fn intervals(&self) -> impl Iterator<Item = &Interval<S>> {
        self.generators.iter().flat_map(|g| [&g.source, &g.target])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("interval of {0} has reversed or equal endpoints")]
    Malformed(String),
    #[error("translation length must be positive")]
    NonPositiveTranslation,
    #[error(transparent)]
    Indeterminate(#[from] Indeterminate),
}

/// Checks that `cert` is a valid ping-pong configuration:
///
/// * every generator sends the right end of its source to the left end of its
///   target and the left end to the right end;
/// * after translating each interval into the strip, all intervals lie inside it
///   and their interiors are pairwise disjoint.
///
/// Tangency at endpoints is allowed: the closed half-disks then still meet only
/// at ideal points. A `true` result certifies that the translation and the listed
/// generators freely generate a discrete group. With an approximate backend,
/// endpoint matches and tangencies are accepted up to the error band.
pub fn verify_pingpong<S: Scalar>(cert: &PingPongCertificate<S>) -> Result<bool, CertificateError> {
    if !cert.translation.greater(&S::zero())? {
        return Err(CertificateError::NonPositiveTranslation);
    }
    for g in &cert.generators {
        for iv in [&g.source, &g.target] {
            if !iv.lo().less(iv.hi())? {
                return Err(CertificateError::Malformed(g.word.to_string()));
            }
        }
    }
    for g in &cert.generators {
        if !maps_to(&g.matrix, g.source.hi(), g.target.lo())? || !maps_to(&g.matrix, g.source.lo(), g.target.hi())? {
            return Ok(false);
        }
    }
    let mut reduced = Vec::new();
    for iv in cert.intervals() {
        match reduce_into_strip(iv, &cert.strip_start, &cert.translation)? {
            Some(r) => reduced.push(r),
            None => return Ok(false),
        }
    }
    // Insertion sort keeps this generic over checked comparisons.
    let mut sorted: Vec<(S, S)> = Vec::with_capacity(reduced.len());
    for r in reduced {
        let mut at = sorted.len();
        for (i, s) in sorted.iter().enumerate() {
            if r.0.less(&s.0)? {
                at = i;
                break;
            }
        }
        sorted.insert(at, r);
    }
    for pair in sorted.windows(2) {
        if pair[0].1.clearly_greater(&pair[1].0) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn maps_to<S: Scalar>(m: &Matrix<S>, from: &S, to: &S) -> Result<bool, Indeterminate> {
    match m.apply_finite(from)? {
        BoundaryPoint::Finite(v) => Ok(v.close(to)),
        BoundaryPoint::Infinity => Ok(false),
    }
}

/// Translates `iv` by a multiple of `t` so that it starts in `[s0, s0 + t)`;
/// `None` if it then does not end by `s0 + t`.
fn reduce_into_strip<S: Scalar>(iv: &Interval<S>, s0: &S, t: &S) -> Result<Option<(S, S)>, Indeterminate> {
    let k = ((iv.lo().clone() - s0.clone()) / t.clone()).floor_int().ok_or(Indeterminate)?;
    let shift = t.clone() * S::from_i64(k);
    let lo = iv.lo().clone() - shift.clone();
    let hi = iv.hi().clone() - shift;
    if hi.clearly_greater(&(s0.clone() + t.clone())) {
        return Ok(None);
    }
    Ok(Some((lo, hi)))
}

/// The classical Ford certificate: each generator pairs its isometric circle with
/// that of its inverse.
pub fn isometric_certificate<S: Scalar>(
    translation_word: Word,
    translation: S,
    strip_start: S,
    generators: &[(Word, Matrix<S>)],
) -> Result<PingPongCertificate<S>, FordError> {
    let mut out = Vec::with_capacity(generators.len());
    for (word, m) in generators {
        let fd = ford_data(m)?;
        out.push(PairedInterval {
            word: word.clone(),
            matrix: m.clone(),
            source: fd.isometric_circle,
            target: fd.image_circle,
        });
    }
    Ok(PingPongCertificate { translation_word, translation, strip_start, generators: out })
}
