//! Dense matrices over the crate's exact coefficient types.
//!
//! One generic implementation serves field elements, one-variable series,
//! and two-variable series. Pivoting in the elimination routines prefers
//! the decidably-nonzero entry of smallest order, which minimizes
//! precision loss over series fields.

use crate::error::{Error, Result};
use crate::scalars::FieldElement;
use crate::series::{Exp, PuiseuxSeries, TwoVarSeries};

/// Coefficient operations needed by the matrix routines.
pub trait Scalar: Clone + PartialEq {
    fn zero_of(&self) -> Self;
    fn one_of(&self) -> Self;
    fn add(&self, other: &Self) -> Result<Self>;
    fn sub(&self, other: &Self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    /// Inverse of a (decidable) unit.
    fn invert_unit(&self) -> Result<Self>;
    /// `Ok(true)` provably zero, `Ok(false)` provably nonzero,
    /// `Err(InsufficientPrecision)` undecidable.
    fn decide_zero(&self) -> Result<bool>;
    /// Order used to rank pivot candidates (smaller is better); `None`
    /// when not comparable.
    fn pivot_order(&self) -> Option<Exp>;
}

impl Scalar for FieldElement {
    fn zero_of(&self) -> Self {
        FieldElement::zero(self.descriptor())
    }
    fn one_of(&self) -> Self {
        FieldElement::one(self.descriptor())
    }
    fn add(&self, other: &Self) -> Result<Self> {
        FieldElement::add(self, other)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        FieldElement::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        FieldElement::mul(self, other)
    }
    fn neg(&self) -> Self {
        FieldElement::neg(self)
    }
    fn invert_unit(&self) -> Result<Self> {
        self.invert()
    }
    fn decide_zero(&self) -> Result<bool> {
        Ok(self.is_zero())
    }
    fn pivot_order(&self) -> Option<Exp> {
        if self.is_zero() {
            None
        } else {
            Some(Exp::from_integer(0))
        }
    }
}

impl Scalar for PuiseuxSeries {
    fn zero_of(&self) -> Self {
        PuiseuxSeries::zero(self.field())
    }
    fn one_of(&self) -> Self {
        PuiseuxSeries::one(self.field())
    }
    fn add(&self, other: &Self) -> Result<Self> {
        PuiseuxSeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        PuiseuxSeries::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        PuiseuxSeries::mul(self, other)
    }
    fn neg(&self) -> Self {
        PuiseuxSeries::neg(self)
    }
    fn invert_unit(&self) -> Result<Self> {
        self.invert(None)
    }
    fn decide_zero(&self) -> Result<bool> {
        if self.is_provably_zero() {
            Ok(true)
        } else if !self.is_zero_to_precision() {
            Ok(false)
        } else {
            Err(Error::InsufficientPrecision(
                "zero test undecidable at this truncation".into(),
            ))
        }
    }
    fn pivot_order(&self) -> Option<Exp> {
        self.ord().ok().flatten()
    }
}

impl Scalar for TwoVarSeries {
    fn zero_of(&self) -> Self {
        TwoVarSeries::zero(self.field())
    }
    fn one_of(&self) -> Self {
        TwoVarSeries::one(self.field())
    }
    fn add(&self, other: &Self) -> Result<Self> {
        TwoVarSeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        TwoVarSeries::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        TwoVarSeries::mul(self, other)
    }
    fn neg(&self) -> Self {
        TwoVarSeries::neg(self)
    }
    fn invert_unit(&self) -> Result<Self> {
        self.invert(None)
    }
    fn decide_zero(&self) -> Result<bool> {
        if self.is_provably_zero() {
            Ok(true)
        } else if !self.is_zero_to_precision() {
            Ok(false)
        } else {
            Err(Error::InsufficientPrecision(
                "zero test undecidable at this truncation".into(),
            ))
        }
    }
    fn pivot_order(&self) -> Option<Exp> {
        self.ord_t().ok().flatten()
    }
}

/// A dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn zero(rows: usize, cols: usize, proto: &T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![proto.zero_of(); rows * cols],
        }
    }

    pub fn identity(n: usize, proto: &T) -> Self {
        let mut m = Matrix::zero(n, n, proto);
        for i in 0..n {
            m[(i, i)] = proto.one_of();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Scalar>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Matrix<U>> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            data.push(f(x)?);
        }
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut data = Vec::with_capacity(self.data.len());
        for (a, b) in self.data.iter().zip(&other.data) {
            data.push(a.add(b)?);
        }
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut data = Vec::with_capacity(self.data.len());
        for (a, b) in self.data.iter().zip(&other.data) {
            data.push(a.sub(b)?);
        }
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.cols, other.rows);
        let proto = &self.data[0];
        let mut out = Matrix::zero(self.rows, other.cols, proto);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.decide_zero().unwrap_or(false) {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a.mul(&other[(k, j)])?;
                    out[(i, j)] = out[(i, j)].add(&p)?;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Result<Self> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            data.push(x.mul(c)?);
        }
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Determinant by cofactor expansion (intended for small ranks).
    pub fn det(&self) -> Result<T> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let proto = &self.data[0];
        if n == 0 {
            return Ok(proto.one_of());
        }
        if n == 1 {
            return Ok(self[(0, 0)].clone());
        }
        let mut acc = proto.zero_of();
        for j in 0..n {
            let c = &self[(0, j)];
            if c.decide_zero().unwrap_or(false) {
                continue;
            }
            let minor = self.minor(0, j);
            let sub = minor.det()?;
            let term = c.mul(&sub)?;
            acc = if j % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        Ok(acc)
    }

    fn minor(&self, r: usize, c: usize) -> Matrix<T> {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            for j in 0..self.cols {
                if j == c {
                    continue;
                }
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// Gauss-Jordan inverse; errors with the supplied message when no
    /// decidably-nonzero pivot can be found for some column.
    pub fn inverse(&self) -> Result<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let proto = &self.data[0];
        let mut a = self.clone();
        let mut inv = Matrix::identity(n, proto);
        for col in 0..n {
            // choose the pivot with the smallest order
            let mut best: Option<(usize, Exp)> = None;
            let mut undecided = false;
            for r in col..n {
                match a[(r, col)].decide_zero() {
                    Ok(true) => {}
                    Ok(false) => {
                        let o = a[(r, col)].pivot_order().unwrap_or(Exp::from_integer(0));
                        if best.as_ref().map(|(_, b)| o < *b).unwrap_or(true) {
                            best = Some((r, o));
                        }
                    }
                    Err(_) => undecided = true,
                }
            }
            let (pr, _) = match best {
                Some(x) => x,
                None => {
                    return Err(if undecided {
                        Error::InsufficientPrecision(format!(
                            "pivot in column {col} undecidable at this truncation"
                        ))
                    } else {
                        Error::SingularGauge(format!("no pivot in column {col}"))
                    });
                }
            };
            a.swap_rows(col, pr);
            inv.swap_rows(col, pr);
            let pinv = a[(col, col)].invert_unit()?;
            for j in 0..n {
                a[(col, j)] = a[(col, j)].mul(&pinv)?;
                inv[(col, j)] = inv[(col, j)].mul(&pinv)?;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)].clone();
                if f.decide_zero().unwrap_or(false) {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(&a[(col, j)])?;
                    a[(r, j)] = a[(r, j)].sub(&t)?;
                    let t2 = f.mul(&inv[(col, j)])?;
                    inv[(r, j)] = inv[(r, j)].sub(&t2)?;
                }
            }
        }
        Ok(inv)
    }

    /// Solve `self * x = rhs` for a square invertible system.
    pub fn solve(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        self.inverse()?.mul(rhs)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: std::fmt::Display> std::fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldDescriptor;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_integer(&FieldDescriptor::rationals(), n)
    }

    #[test]
    fn inverse_of_integer_matrix() {
        let m = Matrix::from_rows(vec![vec![fe(2), fe(1)], vec![fe(1), fe(1)]]);
        let inv = m.inverse().unwrap();
        let id = m.mul(&inv).unwrap();
        assert_eq!(id, Matrix::identity(2, &fe(0)));
    }

    #[test]
    fn determinant() {
        let m = Matrix::from_rows(vec![
            vec![fe(1), fe(2), fe(3)],
            vec![fe(4), fe(5), fe(6)],
            vec![fe(7), fe(8), fe(10)],
        ]);
        assert_eq!(m.det().unwrap(), fe(-3));
    }

    #[test]
    fn series_matrix_inverse() {
        let q = FieldDescriptor::rationals();
        let t = PuiseuxSeries::variable(&q);
        let one = PuiseuxSeries::one(&q);
        // [[1, t], [0, 1]] inverse is [[1, -t], [0, 1]]
        let m = Matrix::from_rows(vec![
            vec![one.clone(), t.clone()],
            vec![PuiseuxSeries::zero(&q), one.clone()],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv[(0, 1)], t.neg());
        // singular matrix is reported
        let s = Matrix::from_rows(vec![
            vec![t.clone(), t.clone()],
            vec![t.clone(), t.clone()],
        ]);
        assert!(matches!(s.inverse(), Err(Error::SingularGauge(_))));
    }
}
