//! Truncated Puiseux/Laurent series.
//!
//! A [`PuiseuxSeries`] is a finite sum of terms `c * t^(k/d)` with exact
//! field coefficients, a ramification index `d`, and an explicit truncation
//! order: terms at or above the truncation are unknown. A series with
//! *infinite* truncation is exact (a Laurent polynomial in `t^(1/d)`).
//!
//! Truncation is propagated pessimistically through every operation: an
//! output term is stored only when it is provably correct. Deciding a
//! leading term of a series that is empty within its known window raises
//! [`Error::InsufficientPrecision`] instead of guessing; an exact zero
//! (empty, infinite truncation) is recognized as zero.

mod puiseux;
mod twovar;

pub use puiseux::{Exp, PuiseuxSeries, Trunc};
pub use twovar::TwoVarSeries;

/// Default working width (in integral orders of the variable) used when a
/// division or inversion of exact inputs needs a finite window.
pub const DEFAULT_PRECISION: i64 = 24;
