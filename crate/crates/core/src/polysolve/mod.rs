//! Polynomials over series: Newton polygons, Hensel lifting, Puiseux
//! roots in one and two variables, discriminants.

mod hensel;
mod newton;
mod nested;
mod poly;
mod puiseux_roots;

pub use hensel::hensel_split;
pub use nested::{nested_roots, NestedRoot, SeriesPoly2};
pub use newton::{newton_nu, NewtonData};
pub use poly::SeriesPolynomial;
pub use puiseux_roots::{puiseux_roots, PuiseuxRoot};
