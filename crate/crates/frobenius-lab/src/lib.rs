//! Statistics of Frobenius traces, splitting fields and angles for elliptic
//! curves `Y^2 = X^3 + f(t)X + g(t)` as the parameter `t` runs over Farey
//! fractions, integer intervals or sum sets, and the prime `p` runs up to a
//! bound `x`.
//!
//! The building blocks are deliberately elementary: quadratic-residue tables
//! for traces, dense residue histograms for parameter sets, direct complex
//! summation for exponential sums. Everything is exact integer arithmetic
//! except where a quantity is genuinely real (angles, densities, exponential
//! sums), and every nontrivial computation has an independent brute-force
//! oracle in the test suite.
//!
//! Entry points:
//! * [`curves`]: curves mod p, traces, Frobenius angles and fields.
//! * [`family`]: integer polynomial families and their specializations.
//! * [`params`]: Farey / interval / sum-set parameter sets, residue
//!   histograms, coincidence and additive-energy counts, exponential sums.
//! * [`stats`]: prime-indexed counting statistics for a single curve or
//!   averaged over a family, and fiber censuses.
//! * [`harmonic`]: Chebyshev polynomials, semicircle law, discrepancy
//!   bounds, complete exponential sums over fibers, angle counters.
//! * [`runner`]: experiment configs, presets, CSV/JSON emission and the
//!   acceptance suites behind the `frobenius-lab` binary.

// Divisibility tests, Newton halving and n-indexed recurrences stay in
// their textbook notation.
#![allow(clippy::manual_is_multiple_of)]
#![allow(clippy::manual_range_contains)]
#![allow(clippy::manual_div_ceil)]
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod curves;
pub mod error;
pub mod family;
pub mod harmonic;
pub mod params;
pub mod runner;
pub mod stats;

pub use error::{Error, Result};
