//! Exact computation of Stirling numbers of both kinds and mechanical
//! verification of identities and inequalities built on them.
//!
//! Every value is an arbitrary-precision integer or a reduced rational; no
//! floating point is used anywhere in the computation or in the checks.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] – big integers, rationals, conventional binomials, exact determinants.
//! * [`engines`] – independent algorithms for `S(n,k)` and `s(n,k)` plus the memoized table.
//! * [`bell`] – partial Bell polynomials, formal power series and the Faà di Bruno limit check.
//! * [`inequality`] – Hankel determinants, q-majorization products, log-convexity, Sibuya's bound.
//! * [`conjecture`] – nested log-concavity defects and the six-claim sweep.
//! * [`report`] / [`cli`] – structured reports and the command-line driver.

pub mod arith;
pub mod bell;
pub mod cli;
pub mod conjecture;
pub mod engines;
pub mod inequality;
pub mod report;
pub mod series;

mod error;

pub use arith::{Integer, Rational, RationalMatrix};
pub use engines::{Kind, StirlingTable};
pub use error::{Error, Result};
pub use report::VerificationReport;
