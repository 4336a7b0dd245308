//! Two evaluators for words: floats carrying a rigorous error bound, and exact
//! integer matrices over a common denominator. The search runs on floats and
//! falls back to the exact side only when the bound cannot settle a question.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::moebius::Matrix;
use crate::scalar::Rational;

const U: f64 = f64::EPSILON / 2.0;
const GAMMA2: f64 = 2.0 * U / (1.0 - 2.0 * U);
/// Slack for the rounding committed while computing a bound.
const INFLATE: f64 = 1.0 + 16.0 * U;

/// Float entries `[a, b, c, d]` and a bound on the error of every entry.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Bounded {
    pub m: [f64; 4],
    pub err: f64,
}

impl Bounded {
    pub fn from_exact(g: &Matrix<Rational>) -> Bounded {
        let entries = g.entries();
        let mut m = [0.0; 4];
        let mut err: f64 = 0.0;
        for (slot, q) in m.iter_mut().zip(entries.iter()) {
            let v = to_f64(q);
            *slot = v;
            let off = (Rational::from_float(v).expect("finite") - *q).abs();
            err = err.max(to_f64(&off) * 2.0 + f64::MIN_POSITIVE);
        }
        Bounded { m, err }
    }

    fn norm(&self) -> f64 {
        self.m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    pub fn mul(&self, g: &Bounded) -> Bounded {
        let [p0, p1, p2, p3] = self.m;
        let [g0, g1, g2, g3] = g.m;
        let m = [p0 * g0 + p1 * g2, p0 * g1 + p1 * g3, p2 * g0 + p3 * g2, p2 * g1 + p3 * g3];
        let (np, ng) = (self.norm(), g.norm());
        let carried = 2.0 * (self.err * ng + np * g.err + self.err * g.err);
        let rounding = GAMMA2 * 2.0 * np * ng;
        Bounded { m, err: (carried + rounding) * INFLATE + f64::MIN_POSITIVE }
    }

    /// The trace as a ball.
    pub fn trace(&self) -> Ball {
        let t = self.m[0] + self.m[3];
        Ball { mid: t, rad: (2.0 * self.err + U * t.abs()) * INFLATE }
    }
}

/// A real number known to lie in `[mid - rad, mid + rad]`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Ball {
    pub mid: f64,
    pub rad: f64,
}

impl Ball {
    pub fn exact(v: f64) -> Ball {
        Ball { mid: v, rad: 0.0 }
    }

    pub fn add(self, o: Ball) -> Ball {
        let mid = self.mid + o.mid;
        Ball { mid, rad: (self.rad + o.rad + U * mid.abs()) * INFLATE }
    }

    pub fn sub(self, o: Ball) -> Ball {
        self.add(Ball { mid: -o.mid, rad: o.rad })
    }

    pub fn mul(self, o: Ball) -> Ball {
        let mid = self.mid * o.mid;
        let rad = self.mid.abs() * o.rad + o.mid.abs() * self.rad + self.rad * o.rad + U * mid.abs();
        Ball { mid, rad: rad * INFLATE }
    }

    pub fn abs(self) -> Ball {
        Ball { mid: self.mid.abs(), rad: self.rad }
    }

    /// Orders the ball against `v`, or `None` if `v` lies inside it.
    pub fn cmp_f64(&self, v: f64) -> Option<Ordering> {
        if self.mid - self.rad > v {
            Some(Ordering::Greater)
        } else if self.mid + self.rad < v {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

fn to_f64(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

/// `m / k` with integer entries and `k > 0`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct IntMatrix {
    m: [BigInt; 4],
    k: BigInt,
}

impl IntMatrix {
    pub fn from_exact(g: &Matrix<Rational>) -> IntMatrix {
        let entries = g.entries();
        let k = entries.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
        let m = entries.map(|q| q.numer() * (&k / q.denom()));
        IntMatrix { m, k }
    }

    pub fn mul(&self, g: &IntMatrix) -> IntMatrix {
        let [p0, p1, p2, p3] = &self.m;
        let [g0, g1, g2, g3] = &g.m;
        IntMatrix { m: [p0 * g0 + p1 * g2, p0 * g1 + p1 * g3, p2 * g0 + p3 * g2, p2 * g1 + p3 * g3], k: &self.k * &g.k }
    }

    pub fn trace(&self) -> Rational {
        Rational::new(&self.m[0] + &self.m[3], self.k.clone())
    }

    /// `|trace|` against 2.
    pub fn cmp_abs_trace_two(&self) -> Ordering {
        let t = (&self.m[0] + &self.m[3]).abs();
        t.cmp(&(&self.k * 2))
    }

    /// Plus or minus the identity; relies on the determinant being 1.
    pub fn is_pm_identity(&self) -> bool {
        self.m[1].is_zero() && self.m[2].is_zero() && self.m[0] == self.m[3]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn float_bound_covers_exact_product() {
        let g = Matrix::new(q(1, 3), q(7, 5), q(-5, 21), q(2, 1)).unwrap();
        let h = Matrix::new(q(1, 1), q(2, 1), q(0, 1), q(1, 1)).unwrap();
        let (bg, bh) = (Bounded::from_exact(&g), Bounded::from_exact(&h));
        let mut exact = g.clone();
        let mut float = bg;
        for i in 0..30 {
            let (m, b) = if i % 3 == 0 { (&h, &bh) } else { (&g, &bg) };
            exact = exact.mul(m);
            float = float.mul(b);
            for (e, f) in exact.entries().iter().zip(float.m) {
                assert!((to_f64(e) - f).abs() <= float.err);
            }
        }
    }

    #[test]
    fn integer_matrices_agree_with_rationals() {
        let g = Matrix::new(q(1, 3), q(7, 5), q(-5, 21), q(2, 1)).unwrap();
        let h = Matrix::new(q(1, 1), q(0, 1), q(-8, 1), q(1, 1)).unwrap();
        let p = IntMatrix::from_exact(&g).mul(&IntMatrix::from_exact(&h));
        assert_eq!(p.trace(), g.mul(&h).trace());
        let i = IntMatrix::from_exact(&g).mul(&IntMatrix::from_exact(&g.inverse()));
        assert!(i.is_pm_identity());
        assert_eq!(IntMatrix::from_exact(&h).cmp_abs_trace_two(), Ordering::Equal);
    }

    #[test]
    fn ball_arithmetic_contains_the_value() {
        let a = Ball { mid: 1.0 / 3.0, rad: 1e-12 };
        let b = a.mul(a).sub(Ball::exact(1.0 / 9.0));
        assert_eq!(b.abs().cmp_f64(1e-10), Some(Ordering::Less));
        assert_eq!(b.cmp_f64(0.0), None);
    }
}
