//! Decide whether three parabolic elements of PSL(2,R) generate a free discrete
//! group, that is a complete hyperbolic four-punctured sphere group, and return
//! evidence that can be checked independently of the search that found it.
//!
//! The crate is layered bottom up:
//!
//! * [`scalar`]: exact rationals and tolerance-tagged floats;
//! * [`moebius`]: matrices, words, classification and Nielsen moves;
//! * [`ford`]: isometric circles, Ford distances and ping-pong certificates;
//! * [`canonical`]: the normal form `(x, y, z)` of a parabolic triple;
//! * [`algorithm`]: the decision procedure;
//! * [`oracle`]: brute-force word searches used to cross-check verdicts.

pub mod algorithm;
pub mod canonical;
pub mod ford;
pub mod moebius;
pub mod oracle;
pub mod scalar;

pub use scalar::{Approx, Rational, Scalar};
