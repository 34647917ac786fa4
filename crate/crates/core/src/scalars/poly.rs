//! Dense univariate polynomials over a [`FieldDescriptor`].
//!
//! These are the workhorse for minimal polynomials, residue polynomials of
//! Newton polygons, characteristic polynomials of residues, and the
//! factorization routines.

use std::fmt;

use crate::error::{Error, Result};

use super::{FieldDescriptor, FieldElement};

/// A dense univariate polynomial with exact field coefficients.
///
/// Coefficients are stored low-to-high with no trailing zeros; the zero
/// polynomial has an empty list.
#[derive(Clone, PartialEq, Eq)]
pub struct FPoly {
    desc: FieldDescriptor,
    coeffs: Vec<FieldElement>,
}

impl fmt::Display for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "T^{}", i)?;
            } else {
                write!(f, "({})*T^{}", c, i)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FPoly {
    /// Build from a coefficient list (low-to-high); trailing zeros trimmed.
    pub fn from_coeffs(desc: FieldDescriptor, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().map(FieldElement::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        FPoly { desc, coeffs }
    }

    pub fn zero(desc: &FieldDescriptor) -> Self {
        FPoly { desc: desc.clone(), coeffs: Vec::new() }
    }

    pub fn one(desc: &FieldDescriptor) -> Self {
        FPoly { desc: desc.clone(), coeffs: vec![FieldElement::one(desc)] }
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let desc = c.descriptor().clone();
        if c.is_zero() {
            return FPoly::zero(&desc);
        }
        let mut coeffs = vec![FieldElement::zero(&desc); k + 1];
        coeffs[k] = c;
        FPoly { desc, coeffs }
    }

    /// `x - c`.
    pub fn linear_root(c: &FieldElement) -> Self {
        let desc = c.descriptor().clone();
        FPoly::from_coeffs(desc.clone(), vec![c.neg(), FieldElement::one(&desc)])
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.desc))
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(FieldElement::is_one).unwrap_or(false)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i))?);
        }
        Ok(FPoly::from_coeffs(self.desc.clone(), out))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&other.coeff(i))?);
        }
        Ok(FPoly::from_coeffs(self.desc.clone(), out))
    }

    pub fn neg(&self) -> Self {
        FPoly {
            desc: self.desc.clone(),
            coeffs: self.coeffs.iter().map(FieldElement::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(FPoly::zero(&self.desc));
        }
        let mut out =
            vec![FieldElement::zero(&self.desc); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(FPoly::from_coeffs(self.desc.clone(), out))
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(c)?);
        }
        Ok(FPoly::from_coeffs(self.desc.clone(), out))
    }

    /// Division with remainder; the divisor's leading coefficient must be a
    /// unit (always true over a field for nonzero divisors).
    pub fn divrem(&self, other: &Self) -> Result<(Self, Self)> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = other.degree().unwrap();
        let lc_inv = other.leading().unwrap().invert()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((FPoly::zero(&self.desc), self.clone()));
        }
        let mut quo = vec![FieldElement::zero(&self.desc); rem.len() - db];
        while rem.len() > db {
            let da = rem.len() - 1;
            if rem[da].is_zero() {
                rem.pop();
                continue;
            }
            let q = rem[da].mul(&lc_inv)?;
            let shift = da - db;
            for (i, b) in other.coeffs.iter().enumerate() {
                rem[shift + i] = rem[shift + i].sub(&q.mul(b)?)?;
            }
            quo[shift] = q;
            rem.pop();
        }
        Ok((
            FPoly::from_coeffs(self.desc.clone(), quo),
            FPoly::from_coeffs(self.desc.clone(), rem),
        ))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = std::mem::replace(&mut b, r);
        }
        a.make_monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = FPoly::one(&self.desc);
        let mut s1 = FPoly::zero(&self.desc);
        let mut t0 = FPoly::zero(&self.desc);
        let mut t1 = FPoly::one(&self.desc);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let ns = s0.sub(&q.mul(&s1)?)?;
            let nt = t0.sub(&q.mul(&t1)?)?;
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, ns);
            t0 = std::mem::replace(&mut t1, nt);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let lc_inv = r0.leading().unwrap().invert()?;
        Ok((r0.scale(&lc_inv)?, s0.scale(&lc_inv)?, t0.scale(&lc_inv)?))
    }

    pub fn make_monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let lc_inv = self.leading().unwrap().invert()?;
        self.scale(&lc_inv)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return FPoly::zero(&self.desc);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.scale_int(i as i64));
        }
        FPoly::from_coeffs(self.desc.clone(), out)
    }

    /// Evaluate at a point.
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        let mut acc = FieldElement::zero(&self.desc);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    /// Substitute `x -> x + c`.
    pub fn shift(&self, c: &FieldElement) -> Result<Self> {
        // Horner: p(x + c) built from the top down.
        let linear = FPoly::from_coeffs(
            self.desc.clone(),
            vec![c.clone(), FieldElement::one(&self.desc)],
        );
        let mut acc = FPoly::zero(&self.desc);
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&linear)?;
            acc = acc.add(&FPoly::from_coeffs(self.desc.clone(), vec![coeff.clone()]))?;
        }
        Ok(acc)
    }

    /// Resultant of `self` and `other` via the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Self) -> Result<FieldElement> {
        let mut a = self.clone();
        let mut b = other.clone();
        let mut res = FieldElement::one(&self.desc);
        loop {
            if b.is_zero() {
                return Ok(if a.degree() == Some(0) {
                    res
                } else {
                    FieldElement::zero(&self.desc)
                });
            }
            let da = match a.degree() {
                Some(d) => d,
                None => return Ok(FieldElement::zero(&self.desc)),
            };
            let db = b.degree().unwrap();
            if db == 0 {
                // res *= lc(b)^da
                let lb = b.leading().unwrap().pow(da as i64)?;
                return res.mul(&lb);
            }
            let (_, r) = a.divrem(&b)?;
            // res(a,b) = (-1)^{da*db} lc(b)^{da - dr} res(b, r)
            let dr = r.degree().map(|d| d as i64).unwrap_or(-1);
            let sign = if (da * db) % 2 == 1 { -1 } else { 1 };
            let mut factor = b.leading().unwrap().pow(da as i64 - dr.max(0))?;
            if dr < 0 {
                factor = b.leading().unwrap().pow(da as i64)?;
            }
            res = res.mul(&factor)?.scale_int(sign);
            a = std::mem::replace(&mut b, r);
        }
    }

    /// `(-1)^{n(n-1)/2} * resultant(P, P') / lc(P)` — the discriminant with
    /// the fixed sign convention.
    pub fn discriminant(&self) -> Result<FieldElement> {
        let n = self.degree().ok_or(Error::DivisionByZero)?;
        let res = self.resultant(&self.derivative())?;
        let res = res.div(self.leading().unwrap())?;
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
        Ok(res.scale_int(sign))
    }

    /// Square-free part `f / gcd(f, f')`. In characteristic `p`, descends
    /// through `f(x) = g(x^p)` when the derivative vanishes.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let deriv = self.derivative();
        if deriv.is_zero() {
            let p = self.desc.characteristic();
            if p == 0 {
                // constant
                return Ok(FPoly::one(&self.desc));
            }
            // f = g(x^p): extract p-th roots of coefficients.
            let mut g = Vec::new();
            let mut i = 0;
            while i < self.coeffs.len() {
                g.push(self.coeffs[i].is_pth_power()?);
                i += p as usize;
            }
            return FPoly::from_coeffs(self.desc.clone(), g).squarefree_part();
        }
        let g = self.gcd(&deriv)?;
        let (q, _) = self.divrem(&g)?;
        q.make_monic()
    }

    /// Embed all coefficients into a larger tower.
    pub fn embed(&self, target: &FieldDescriptor) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.embed(target)?);
        }
        Ok(FPoly { desc: target.clone(), coeffs: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn poly(coeffs: &[i64]) -> FPoly {
        let d = q();
        FPoly::from_coeffs(
            d.clone(),
            coeffs.iter().map(|&n| FieldElement::from_integer(&d, n)).collect(),
        )
    }

    #[test]
    fn divrem_roundtrip() {
        let a = poly(&[2, 0, -3, 1, 4]);
        let b = poly(&[1, 2, 1]);
        let (qq, r) = a.divrem(&b).unwrap();
        let back = qq.mul(&b).unwrap().add(&r).unwrap();
        assert_eq!(back, a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn gcd_of_products() {
        let f = poly(&[-1, 1]); // x-1
        let g = poly(&[-2, 1]); // x-2
        let h = poly(&[3, 1]); // x+3
        let a = f.mul(&g).unwrap();
        let b = f.mul(&h).unwrap();
        assert_eq!(a.gcd(&b).unwrap(), f);
    }

    #[test]
    fn quadratic_discriminant() {
        // T^2 + bT + c -> b^2 - 4c
        let p = poly(&[5, 3, 1]);
        let d = p.discriminant().unwrap();
        assert_eq!(d, FieldElement::from_integer(&q(), 9 - 20));
    }

    #[test]
    fn resultant_of_linears() {
        // res(x-a, x-b) = a-b up to sign convention: (b-a)
        let a = poly(&[-3, 1]);
        let b = poly(&[-7, 1]);
        let r = a.resultant(&b).unwrap();
        // res(f,g) = prod over roots x of f of g(x) = g(3) = 3-7 = -4
        assert_eq!(r, FieldElement::from_integer(&q(), -4));
    }

    #[test]
    fn squarefree_part_strips_powers() {
        let f = poly(&[-1, 1]); // x-1
        let sq = f.mul(&f).unwrap().mul(&poly(&[1, 1])).unwrap();
        let sf = sq.squarefree_part().unwrap();
        assert_eq!(sf, poly(&[-1, 0, 1])); // (x-1)(x+1)
    }
}
