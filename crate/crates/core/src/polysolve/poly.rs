//! Dense polynomials with series coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::{FieldDescriptor, FieldElement, FPoly};
use crate::series::{Exp, PuiseuxSeries, Trunc, TwoVarSeries};

/// A polynomial in one indeterminate with [`PuiseuxSeries`] coefficients.
///
/// Doubles as a polynomial over `k((t))` (the usual case) and as a
/// residue polynomial over a Puiseux-series "scalar" field `k((s_d))`
/// inside the nested two-variable solver.
#[derive(Clone, PartialEq)]
pub struct SeriesPolynomial {
    field: FieldDescriptor,
    coeffs: Vec<PuiseuxSeries>,
}

impl SeriesPolynomial {
    pub fn from_coeffs(field: FieldDescriptor, mut coeffs: Vec<PuiseuxSeries>) -> Self {
        while coeffs.last().map(PuiseuxSeries::is_provably_zero).unwrap_or(false) {
            coeffs.pop();
        }
        SeriesPolynomial { field, coeffs }
    }

    pub fn zero(field: &FieldDescriptor) -> Self {
        SeriesPolynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldDescriptor) -> Self {
        SeriesPolynomial {
            field: field.clone(),
            coeffs: vec![PuiseuxSeries::one(field)],
        }
    }

    /// `T - root`.
    pub fn linear_root(root: &PuiseuxSeries) -> Self {
        SeriesPolynomial {
            field: root.field().clone(),
            coeffs: vec![root.neg(), PuiseuxSeries::one(root.field())],
        }
    }

    /// Lift a scalar polynomial to constant series coefficients.
    pub fn from_scalar_poly(p: &FPoly) -> Self {
        SeriesPolynomial {
            field: p.descriptor().clone(),
            coeffs: p.coeffs().iter().map(|c| PuiseuxSeries::constant(c.clone())).collect(),
        }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> PuiseuxSeries {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| PuiseuxSeries::zero(&self.field))
    }

    pub fn coeffs(&self) -> &[PuiseuxSeries] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&PuiseuxSeries> {
        self.coeffs.last()
    }

    /// Exactly monic: leading coefficient is the constant 1.
    pub fn is_monic(&self) -> bool {
        match self.coeffs.last() {
            Some(c) => *c == PuiseuxSeries::one(&self.field),
            None => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i))?);
        }
        Ok(SeriesPolynomial::from_coeffs_keep_window(self.field.clone(), out))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SeriesPolynomial {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(PuiseuxSeries::neg).collect(),
        }
    }

    /// Like `from_coeffs` but keeps trailing zero-to-precision series
    /// (they carry window information).
    fn from_coeffs_keep_window(field: FieldDescriptor, mut coeffs: Vec<PuiseuxSeries>) -> Self {
        while coeffs.last().map(PuiseuxSeries::is_provably_zero).unwrap_or(false) {
            coeffs.pop();
        }
        SeriesPolynomial { field, coeffs }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(SeriesPolynomial::zero(&self.field));
        }
        let mut out = vec![PuiseuxSeries::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_provably_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let p = a.mul(b)?;
                out[i + j] = out[i + j].add(&p)?;
            }
        }
        Ok(SeriesPolynomial::from_coeffs_keep_window(self.field.clone(), out))
    }

    pub fn scale(&self, c: &PuiseuxSeries) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(c)?);
        }
        Ok(SeriesPolynomial::from_coeffs_keep_window(self.field.clone(), out))
    }

    /// Division with remainder by a divisor whose leading coefficient is a
    /// decidable unit.
    pub fn divrem(&self, other: &Self) -> Result<(Self, Self)> {
        if other.is_zero() {
            return Err(Error::DivisionByZeroSeries);
        }
        let db = other.degree().unwrap();
        let lc_inv = other.leading().unwrap().invert(None)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((SeriesPolynomial::zero(&self.field), self.clone()));
        }
        let mut quo = vec![PuiseuxSeries::zero(&self.field); rem.len() - db];
        while rem.len() > db {
            let da = rem.len() - 1;
            if rem[da].is_provably_zero() {
                rem.pop();
                continue;
            }
            let q = rem[da].mul(&lc_inv)?;
            let shift = da - db;
            for (i, b) in other.coeffs.iter().enumerate() {
                let t = q.mul(b)?;
                rem[shift + i] = rem[shift + i].sub(&t)?;
            }
            quo[shift] = q;
            rem.pop();
        }
        Ok((
            SeriesPolynomial::from_coeffs_keep_window(self.field.clone(), quo),
            SeriesPolynomial::from_coeffs_keep_window(self.field.clone(), rem),
        ))
    }

    /// Substitute `T -> T + a`.
    pub fn shift_var(&self, a: &PuiseuxSeries) -> Result<Self> {
        let linear = SeriesPolynomial {
            field: self.field.clone(),
            coeffs: vec![a.clone(), PuiseuxSeries::one(&self.field)],
        };
        let mut acc = SeriesPolynomial::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&linear)?;
            acc = acc.add(&SeriesPolynomial {
                field: self.field.clone(),
                coeffs: vec![c.clone()],
            })?;
        }
        Ok(acc)
    }

    /// Substitute `T -> m * T` for a series `m`.
    pub fn scale_var(&self, m: &PuiseuxSeries) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut pw = PuiseuxSeries::one(&self.field);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c.mul(&pw)?);
            if i + 1 < self.coeffs.len() {
                pw = pw.mul(m)?;
            }
        }
        Ok(SeriesPolynomial::from_coeffs_keep_window(self.field.clone(), out))
    }

    pub fn eval(&self, x: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        let mut acc = PuiseuxSeries::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return SeriesPolynomial::zero(&self.field);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let k = FieldElement::from_integer(&self.field, i as i64);
            out.push(c.scale(&k).expect("same field"));
        }
        SeriesPolynomial::from_coeffs_keep_window(self.field.clone(), out)
    }

    /// Embed coefficients into a larger tower.
    pub fn embed(&self, target: &FieldDescriptor) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.embed(target)?);
        }
        Ok(SeriesPolynomial { field: target.clone(), coeffs: out })
    }

    /// Truncate every coefficient.
    pub fn truncate_to(&self, trunc: Trunc) -> Self {
        SeriesPolynomial {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.truncate_to(trunc)).collect(),
        }
    }

    /// Reduce coefficients mod p.
    pub fn reduce_mod_p(&self, target: &FieldDescriptor) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.reduce_mod_p(target)?);
        }
        Ok(SeriesPolynomial { field: target.clone(), coeffs: out })
    }

    /// Specialize every coefficient at `t = 0` into a scalar polynomial.
    /// Requires every coefficient order to be `>= 0` and decidable.
    pub fn specialize_at_zero(&self) -> Result<FPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.eval_at_zero()?);
        }
        Ok(FPoly::from_coeffs(self.field.clone(), out))
    }

    /// Characteristic polynomial `det(T - M)` of a series matrix, by
    /// cofactor expansion over polynomial entries.
    pub fn charpoly(m: &Matrix<PuiseuxSeries>) -> Result<Self> {
        let n = m.rows();
        assert_eq!(n, m.cols());
        let field = m[(0, 0)].field().clone();
        // entries of T*I - M as degree <= 1 polynomials
        let one = SeriesPolynomial {
            field: field.clone(),
            coeffs: vec![PuiseuxSeries::zero(&field), PuiseuxSeries::one(&field)],
        };
        let entries: Vec<Vec<SeriesPolynomial>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mij = SeriesPolynomial {
                            field: field.clone(),
                            coeffs: vec![m[(i, j)].clone()],
                        };
                        if i == j {
                            one.sub(&mij).expect("same field")
                        } else {
                            mij.neg()
                        }
                    })
                    .collect()
            })
            .collect();
        det_poly(&entries, &field)
    }

    /// The discriminant, with the fixed sign convention
    /// `disc(P) = (-1)^{n(n-1)/2} * resultant(P, P')` for monic `P`.
    pub fn discriminant(&self) -> Result<PuiseuxSeries> {
        let n = self
            .degree()
            .ok_or_else(|| Error::InvalidInput("discriminant of the zero polynomial".into()))?;
        if n == 0 {
            return Ok(PuiseuxSeries::one(&self.field));
        }
        let res = self.resultant(&self.derivative())?;
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
        res.scale(&FieldElement::from_integer(&self.field, sign))
    }

    /// Resultant via the Sylvester determinant (exact; no divisions).
    pub fn resultant(&self, other: &Self) -> Result<PuiseuxSeries> {
        let n = match self.degree() {
            None => return Ok(PuiseuxSeries::zero(&self.field)),
            Some(d) => d,
        };
        let m = match other.degree() {
            None => return Ok(PuiseuxSeries::zero(&self.field)),
            Some(d) => d,
        };
        if n == 0 {
            return self.coeff(0).pow(m as i64, None);
        }
        if m == 0 {
            return other.coeff(0).pow(n as i64, None);
        }
        let size = n + m;
        let zero = PuiseuxSeries::zero(&self.field);
        let mut rows: Vec<Vec<PuiseuxSeries>> = Vec::with_capacity(size);
        for i in 0..m {
            let mut row = vec![zero.clone(); size];
            for (k, c) in self.coeffs.iter().enumerate() {
                row[i + (n - k)] = c.clone();
            }
            rows.push(row);
        }
        for i in 0..n {
            let mut row = vec![zero.clone(); size];
            for (k, c) in other.coeffs.iter().enumerate() {
                row[i + (m - k)] = c.clone();
            }
            rows.push(row);
        }
        Matrix::from_rows(rows).det()
    }
}

/// Cofactor determinant of a matrix of polynomials.
fn det_poly(m: &[Vec<SeriesPolynomial>], field: &FieldDescriptor) -> Result<SeriesPolynomial> {
    let n = m.len();
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = SeriesPolynomial::zero(field);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<SeriesPolynomial>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[i][c].clone())
                    .collect()
            })
            .collect();
        let sub = det_poly(&minor, field)?;
        let term = m[0][j].mul(&sub)?;
        acc = if j % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(acc)
}

impl fmt::Display for SeriesPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero_to_precision() && !c.trunc().is_infinite() {
                // still show windowed zeros? keep terse: skip
            }
            if c.is_provably_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "({})", c)?;
            } else if i == 1 {
                write!(f, "({})*T", c)?;
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

impl fmt::Debug for SeriesPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_integer(&q(), n)
    }

    #[test]
    fn discriminant_of_quadratics() {
        // T^2 + bT + c with b = 3, c = 2: disc = 1
        let p = SeriesPolynomial::from_coeffs(
            q(),
            vec![
                PuiseuxSeries::constant(fe(2)),
                PuiseuxSeries::constant(fe(3)),
                PuiseuxSeries::one(&q()),
            ],
        );
        assert_eq!(p.discriminant().unwrap(), PuiseuxSeries::constant(fe(1)));
        // T^2 - t: disc = 4t with the sign convention (-1)^1 * res = ...
        let t = PuiseuxSeries::variable(&q());
        let p2 = SeriesPolynomial::from_coeffs(
            q(),
            vec![t.neg(), PuiseuxSeries::zero(&q()), PuiseuxSeries::one(&q())],
        );
        let d = p2.discriminant().unwrap();
        assert_eq!(d, t.scale(&fe(4)).unwrap());
        // (T-a)(T-b) has disc (a-b)^2: take a=t, b=2t: (t-2t)^2 = t^2
        let a = t.clone();
        let b = t.scale(&fe(2)).unwrap();
        let p3 = SeriesPolynomial::linear_root(&a)
            .mul(&SeriesPolynomial::linear_root(&b))
            .unwrap();
        assert_eq!(p3.discriminant().unwrap(), t.mul(&t).unwrap());
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of T^2 - t^{-1}: [[0, t^{-1}], [1, 0]]
        let tinv = PuiseuxSeries::monomial(fe(1), Exp::new(-1, 1));
        let m = Matrix::from_rows(vec![
            vec![PuiseuxSeries::zero(&q()), tinv.clone()],
            vec![PuiseuxSeries::one(&q()), PuiseuxSeries::zero(&q())],
        ]);
        let cp = SeriesPolynomial::charpoly(&m).unwrap();
        assert_eq!(cp.degree(), Some(2));
        assert_eq!(cp.coeff(0), tinv.neg());
        assert!(cp.coeff(1).is_provably_zero());
        assert!(cp.is_monic());
    }

    #[test]
    fn divrem_exact() {
        // (T - t)(T + t) / (T - t)
        let t = PuiseuxSeries::variable(&q());
        let p = SeriesPolynomial::linear_root(&t)
            .mul(&SeriesPolynomial::linear_root(&t.neg()))
            .unwrap();
        let (quo, rem) = p.divrem(&SeriesPolynomial::linear_root(&t)).unwrap();
        assert!(rem.is_zero() || rem.coeffs().iter().all(|c| c.is_zero_to_precision()));
        assert_eq!(quo.coeff(0), t);
    }
}
