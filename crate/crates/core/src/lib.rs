//! Exact construction and verification of integer polynomial pairs `x, y`
//! with unusually small `deg(x^3 - y^2)`, together with integer near-miss
//! witnesses for Hall's conjecture.
//!
//! Module map:
//!
//! * [`zpoly`]: dense univariate polynomials over arbitrary-precision
//!   integers and a rational-scaled wrapper.
//! * [`uvring`]: arithmetic in `Z[t][u, v]` modulo
//!   `v^2 - 2tuv - u^2 = -(t^2 + 1)^2`.
//! * [`sequences`]: the binary recurrence `a_m`, polynomial Pell solutions
//!   for `t^2 + 1` and `t^2 + 2`, and the integer Pell stream for `5`.
//! * [`families`]: the cubic family for odd `k`, its reduced form, the
//!   Davenport bound check, and the embedded example corpus.
//! * [`numeric`]: integer specialization, exact Hall comparisons, the
//!   Danilov witness generator and the counting demonstration.
//! * [`cli`]: the `hall` command-line front end.

pub mod cli;
mod error;
pub mod families;
pub mod numeric;
pub mod sequences;
pub mod uvring;
pub mod zpoly;

pub use error::{Error, Result};
pub use families::{build_cubic, build_cubic_via_pell, HallFamilyInstance};
pub use numeric::{EpsRational, HallWitness};
pub use uvring::UVElem;
pub use zpoly::{Degree, IntPoly, RatPoly};
