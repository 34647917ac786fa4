//! Exact-arithmetic kernels for formal meromorphic connections in one and
//! two variables: truncated Puiseux series, Newton polygons and
//! Newton-Puiseux roots, Hensel lifting over power series, the
//! Levelt-Turrittin reduction, Deligne-Malgrange residue adjustment,
//! p-curvature spectra over finite fields with Frobenius descent, good
//! formal structure checks and turning-point detection, and a plane-curve
//! blow-up engine with genus accounting.
//!
//! Everything is exact: rationals, number-field towers, or `F_{p^k}`
//! coefficients; truncation order is the only approximation and it is
//! tracked explicitly on every value.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `meroconn` binary for the JSON-driven command-line interface.

pub mod error;
pub mod scalars;
pub mod series;
pub mod matrix;
pub mod polysolve;

pub use error::{Error, Result};
