//! Field descriptors: characteristic plus a tower of minimal polynomials.

use std::fmt;
use std::sync::Arc;

use once_cell::sync::OnceCell;

use crate::error::{Error, Result};

use super::element::{FieldElement, Repr};
use super::factor;
use super::poly::FPoly;

/// One level of a tower: a monic minimal polynomial over the sub-tower.
///
/// `minpoly_low` holds the coefficients `c_0 .. c_{d-1}` (the leading 1 is
/// implicit); each coefficient is an element of the tower *below* this level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct TowerLevel {
    pub minpoly_low: Vec<Repr>,
    pub degree: usize,
}

/// Cached primitive-element presentation of a characteristic-zero tower,
/// used by the factorization routines (Trager's method).
#[derive(Debug, Clone)]
pub(crate) struct PrimitiveData {
    /// Minimal polynomial of the primitive element over `Q` (monic).
    pub minpoly: Vec<num_rational::BigRational>,
    /// Each tower generator expressed as a `Q`-polynomial in the primitive
    /// element (coefficient lists, degree < deg(minpoly)).
    pub generators: Vec<Vec<num_rational::BigRational>>,
    /// The primitive element expressed in the tower itself.
    pub gamma: Repr,
}

#[derive(Debug)]
pub(crate) struct DescriptorInner {
    pub characteristic: u64,
    pub tower: Vec<TowerLevel>,
    pub primitive: OnceCell<PrimitiveData>,
}

impl PartialEq for DescriptorInner {
    fn eq(&self, other: &Self) -> bool {
        self.characteristic == other.characteristic && self.tower == other.tower
    }
}
impl Eq for DescriptorInner {}

/// An exact field: `Q`, `F_p`, or a tower of simple extensions over either.
///
/// Cloning is cheap (shared `Arc`). Two descriptors are equal when they have
/// the same characteristic and structurally equal towers.
#[derive(Clone)]
pub struct FieldDescriptor(pub(crate) Arc<DescriptorInner>);

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for FieldDescriptor {}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldDescriptor {
    /// The rational numbers.
    pub fn rationals() -> Self {
        FieldDescriptor(Arc::new(DescriptorInner {
            characteristic: 0,
            tower: Vec::new(),
            primitive: OnceCell::new(),
        }))
    }

    /// The prime field `F_p`. Fails if `p` is not prime or too large for
    /// the internal word arithmetic.
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidInput(format!("prime {p} too large")));
        }
        Ok(FieldDescriptor(Arc::new(DescriptorInner {
            characteristic: p,
            tower: Vec::new(),
            primitive: OnceCell::new(),
        })))
    }

    /// Characteristic: 0 or a prime.
    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    /// Number of tower levels above the base field.
    pub fn tower_height(&self) -> usize {
        self.0.tower.len()
    }

    /// Degree of level `i` (0-based).
    pub fn level_degree(&self, i: usize) -> usize {
        self.0.tower[i].degree
    }

    /// Total degree of the tower over the base field.
    pub fn total_degree(&self) -> usize {
        self.0.tower.iter().map(|l| l.degree).product()
    }

    /// The descriptor with the top tower level removed.
    pub fn parent(&self) -> Option<FieldDescriptor> {
        if self.0.tower.is_empty() {
            return None;
        }
        let mut tower = self.0.tower.clone();
        tower.pop();
        Some(FieldDescriptor(Arc::new(DescriptorInner {
            characteristic: self.0.characteristic,
            tower,
            primitive: OnceCell::new(),
        })))
    }

    /// True when `sub`'s tower is a prefix of ours (same characteristic).
    pub fn extends(&self, sub: &FieldDescriptor) -> bool {
        self.0.characteristic == sub.0.characteristic
            && self.0.tower.len() >= sub.0.tower.len()
            && self.0.tower[..sub.0.tower.len()] == sub.0.tower[..]
    }

    /// Adjoin a root of `minpoly` (monic, degree >= 2, coefficients in
    /// `self`). Rejects reducible inputs.
    ///
    /// The minimal polynomial is given by its full coefficient list
    /// `c_0, ..., c_{d-1}, 1`.
    pub fn extend(&self, minpoly: &FPoly) -> Result<FieldDescriptor> {
        if minpoly.descriptor() != self {
            return Err(Error::WrongField(
                "minimal polynomial coefficients live in a different field".into(),
            ));
        }
        let d = minpoly.degree().ok_or_else(|| {
            Error::InvalidInput("zero polynomial cannot be a minimal polynomial".into())
        })?;
        if d < 2 {
            return Err(Error::InvalidInput(
                "minimal polynomial must have degree >= 2".into(),
            ));
        }
        if !minpoly.is_monic() {
            return Err(Error::InvalidInput("minimal polynomial must be monic".into()));
        }
        if !factor::is_irreducible(minpoly)? {
            return Err(Error::ReducibleMinimalPolynomial(format!(
                "degree-{d} polynomial factors over {}",
                self.describe()
            )));
        }
        let mut tower = self.0.tower.clone();
        tower.push(TowerLevel {
            minpoly_low: (0..d).map(|i| minpoly.coeff(i).repr().clone()).collect(),
            degree: d,
        });
        Ok(FieldDescriptor(Arc::new(DescriptorInner {
            characteristic: self.0.characteristic,
            tower,
            primitive: OnceCell::new(),
        })))
    }

    /// Adjoin a root without re-checking irreducibility. For internal use
    /// where irreducibility is already certified by construction.
    pub(crate) fn extend_unchecked(&self, minpoly: &FPoly) -> FieldDescriptor {
        let d = minpoly.degree().expect("nonzero");
        let mut tower = self.0.tower.clone();
        tower.push(TowerLevel {
            minpoly_low: (0..d).map(|i| minpoly.coeff(i).repr().clone()).collect(),
            degree: d,
        });
        FieldDescriptor(Arc::new(DescriptorInner {
            characteristic: self.0.characteristic,
            tower,
            primitive: OnceCell::new(),
        }))
    }

    /// The minimal polynomial of level `i`, as a monic polynomial with
    /// coefficients embedded into `self`.
    pub fn level_minpoly(&self, i: usize) -> FPoly {
        let lvl = &self.0.tower[i];
        let mut coeffs: Vec<FieldElement> = lvl
            .minpoly_low
            .iter()
            .map(|r| FieldElement::from_repr(self.clone(), r.clone()))
            .collect();
        coeffs.push(FieldElement::one(self));
        FPoly::from_coeffs(self.clone(), coeffs)
    }

    /// Human-readable description, e.g. `Q(g1)(g2)` or `F_25`.
    pub fn describe(&self) -> String {
        let base = if self.0.characteristic == 0 {
            "Q".to_string()
        } else if self.0.tower.is_empty() {
            format!("F_{}", self.0.characteristic)
        } else {
            let total: u32 = self.0.tower.iter().map(|l| l.degree as u32).product();
            return format!("F_{}^{}", self.0.characteristic, total);
        };
        let mut s = base;
        for (i, _) in self.0.tower.iter().enumerate() {
            s.push_str(&format!("(g{})", i + 1));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(FieldDescriptor::prime_field(6).is_err());
        assert!(FieldDescriptor::prime_field(1).is_err());
        assert!(FieldDescriptor::prime_field(5).is_ok());
    }

    #[test]
    fn descriptor_equality_is_structural() {
        let q1 = FieldDescriptor::rationals();
        let q2 = FieldDescriptor::rationals();
        assert_eq!(q1, q2);
        assert_ne!(q1, FieldDescriptor::prime_field(5).unwrap());
    }
}
