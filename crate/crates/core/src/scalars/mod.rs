//! Exact coefficient arithmetic.
//!
//! Three families of fields are supported, all with decidable equality and
//! exact operations:
//!
//! - the rationals `Q`,
//! - towers of simple extensions `Q(g1)(g2)...` presented by monic minimal
//!   polynomials, each irreducible over the level below (checked on
//!   construction),
//! - prime fields `F_p` and their towers `F_{p^k}`, including the Frobenius
//!   and its inverse.
//!
//! Elements are immutable and cheap to clone; the descriptor is shared
//! behind an `Arc`.

mod descriptor;
mod element;
pub mod factor;
pub mod poly;
mod zfactor;

pub use descriptor::FieldDescriptor;
pub use element::FieldElement;
pub use poly::FPoly;


