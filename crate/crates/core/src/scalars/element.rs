//! Field elements and their arithmetic.

use std::borrow::Cow;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::descriptor::{DescriptorInner, FieldDescriptor};

/// Internal representation: a base scalar, or a polynomial in the generator
/// of tower level `l` (1-based) with coefficients from strictly lower levels.
///
/// Canonical form: `Ext` vectors have no trailing zeros and length >= 2
/// (singletons unwrap to their coefficient); `Fp` residues lie in `[0, p)`;
/// rationals are reduced. Constants embed without wrapping, so the same
/// repr is valid in any tower extending the levels it mentions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Repr {
    Rat(BigRational),
    Fp(u64),
    Ext(usize, Vec<Repr>),
}

impl Repr {
    pub(crate) fn is_zero(&self) -> bool {
        match self {
            Repr::Rat(r) => r.is_zero(),
            Repr::Fp(x) => *x == 0,
            Repr::Ext(_, _) => false, // canonical Ext is nonzero
        }
    }

    /// Deepest tower level whose generator appears.
    pub(crate) fn gen_depth(&self) -> usize {
        match self {
            Repr::Ext(l, v) => (*l).max(v.iter().map(Repr::gen_depth).max().unwrap_or(0)),
            _ => 0,
        }
    }
}

/// Arithmetic context over a descriptor.
pub(crate) struct Ctx<'a> {
    pub inner: &'a DescriptorInner,
}

impl<'a> Ctx<'a> {
    fn p(&self) -> u64 {
        self.inner.characteristic
    }

    pub fn zero(&self) -> Repr {
        if self.p() == 0 {
            Repr::Rat(BigRational::zero())
        } else {
            Repr::Fp(0)
        }
    }

    pub fn one(&self) -> Repr {
        if self.p() == 0 {
            Repr::Rat(BigRational::one())
        } else {
            Repr::Fp(1)
        }
    }

    fn normalize(&self, level: usize, mut v: Vec<Repr>) -> Repr {
        while v.last().map(Repr::is_zero).unwrap_or(false) {
            v.pop();
        }
        match v.len() {
            0 => self.zero(),
            1 => v.into_iter().next().unwrap(),
            _ => Repr::Ext(level, v),
        }
    }

    /// Coefficient list of `x` viewed at tower level `level`.
    fn coeffs_at<'b>(&self, level: usize, x: &'b Repr) -> Cow<'b, [Repr]> {
        match x {
            Repr::Ext(l, v) if *l == level => Cow::Borrowed(v.as_slice()),
            other => Cow::Owned(vec![other.clone()]),
        }
    }

    fn is_const_at(&self, level: usize, x: &Repr) -> bool {
        !matches!(x, Repr::Ext(l, _) if *l == level)
    }

    pub fn add(&self, level: usize, a: &Repr, b: &Repr) -> Repr {
        if level == 0 {
            return match (a, b) {
                (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x + y),
                (Repr::Fp(x), Repr::Fp(y)) => Repr::Fp((x + y) % self.p()),
                _ => unreachable!("mixed base representations"),
            };
        }
        if self.is_const_at(level, a) && self.is_const_at(level, b) {
            return self.add(level - 1, a, b);
        }
        let av = self.coeffs_at(level, a);
        let bv = self.coeffs_at(level, b);
        let n = av.len().max(bv.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = av.get(i).cloned().unwrap_or_else(|| self.zero());
            let y = bv.get(i).cloned().unwrap_or_else(|| self.zero());
            out.push(self.add(level - 1, &x, &y));
        }
        self.normalize(level, out)
    }

    pub fn neg(&self, a: &Repr) -> Repr {
        match a {
            Repr::Rat(x) => Repr::Rat(-x),
            Repr::Fp(x) => {
                if *x == 0 {
                    Repr::Fp(0)
                } else {
                    Repr::Fp(self.p() - x)
                }
            }
            Repr::Ext(l, v) => Repr::Ext(*l, v.iter().map(|c| self.neg(c)).collect()),
        }
    }

    pub fn sub(&self, level: usize, a: &Repr, b: &Repr) -> Repr {
        self.add(level, a, &self.neg(b))
    }

    pub fn mul(&self, level: usize, a: &Repr, b: &Repr) -> Repr {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if level == 0 {
            return match (a, b) {
                (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x * y),
                (Repr::Fp(x), Repr::Fp(y)) => {
                    Repr::Fp(((*x as u128 * *y as u128) % self.p() as u128) as u64)
                }
                _ => unreachable!("mixed base representations"),
            };
        }
        let ca = self.is_const_at(level, a);
        let cb = self.is_const_at(level, b);
        if ca && cb {
            return self.mul(level - 1, a, b);
        }
        if ca || cb {
            // scalar times vector; no reduction needed
            let (s, v) = if ca { (a, b) } else { (b, a) };
            let vv = self.coeffs_at(level, v);
            let out: Vec<Repr> = vv.iter().map(|c| self.mul(level - 1, s, c)).collect();
            return self.normalize(level, out);
        }
        let av = self.coeffs_at(level, a);
        let bv = self.coeffs_at(level, b);
        let mut prod = vec![self.zero(); av.len() + bv.len() - 1];
        for (i, x) in av.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bv.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let t = self.mul(level - 1, x, y);
                prod[i + j] = self.add(level - 1, &prod[i + j], &t);
            }
        }
        self.reduce(level, prod)
    }

    /// Reduce a coefficient vector at `level` modulo that level's minimal
    /// polynomial.
    fn reduce(&self, level: usize, mut v: Vec<Repr>) -> Repr {
        let lvl = &self.inner.tower[level - 1];
        let d = lvl.degree;
        while v.len() > d {
            let lead = v.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let k = v.len() - d; // x^{d+k} = -minpoly_low * x^k
            for (i, m) in lvl.minpoly_low.iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                let t = self.mul(level - 1, &lead, m);
                v[k + i] = self.sub(level - 1, &v[k + i], &t);
            }
        }
        self.normalize(level, v)
    }

    pub fn invert(&self, level: usize, a: &Repr) -> Result<Repr> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match a {
            Repr::Rat(x) => Ok(Repr::Rat(x.recip())),
            Repr::Fp(x) => Ok(Repr::Fp(mod_inverse(*x, self.p())?)),
            Repr::Ext(l, _) if *l < level => self.invert(level - 1, a),
            Repr::Ext(_, _) => {
                let lvl = &self.inner.tower[level - 1];
                let lo = level - 1;
                let mut mp: Vec<Repr> = lvl.minpoly_low.clone();
                mp.push(self.one());
                let av = self.coeffs_at(level, a).into_owned();
                let (g, _, t) = self.vp_ext_gcd(lo, &mp, &av)?;
                debug_assert_eq!(g.len(), 1, "minimal polynomial must be irreducible");
                let ginv = self.invert(lo, &g[0])?;
                let scaled: Vec<Repr> = t.iter().map(|c| self.mul(lo, &ginv, c)).collect();
                Ok(self.reduce(level, scaled))
            }
        }
    }

    // --- dense polynomial helpers over level-`lo` elements ---

    fn vp_trim(&self, mut v: Vec<Repr>) -> Vec<Repr> {
        while v.last().map(Repr::is_zero).unwrap_or(false) {
            v.pop();
        }
        v
    }

    fn vp_mul(&self, lo: usize, a: &[Repr], b: &[Repr]) -> Vec<Repr> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.mul(lo, x, y);
                out[i + j] = self.add(lo, &out[i + j], &t);
            }
        }
        self.vp_trim(out)
    }

    fn vp_sub(&self, lo: usize, a: &[Repr], b: &[Repr]) -> Vec<Repr> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).cloned().unwrap_or_else(|| self.zero());
            let y = b.get(i).cloned().unwrap_or_else(|| self.zero());
            out.push(self.sub(lo, &x, &y));
        }
        self.vp_trim(out)
    }

    fn vp_divrem(&self, lo: usize, a: &[Repr], b: &[Repr]) -> Result<(Vec<Repr>, Vec<Repr>)> {
        let b = self.vp_trim(b.to_vec());
        if b.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let lc_inv = self.invert(lo, b.last().unwrap())?;
        let mut rem = self.vp_trim(a.to_vec());
        let db = b.len() - 1;
        if rem.len() <= db {
            return Ok((Vec::new(), rem));
        }
        let mut quo = vec![self.zero(); rem.len() - db];
        while rem.len() > db {
            let da = rem.len() - 1;
            let q = self.mul(lo, rem.last().unwrap(), &lc_inv);
            let shift = da - db;
            quo[shift] = q.clone();
            for (i, c) in b.iter().enumerate() {
                let t = self.mul(lo, &q, c);
                rem[shift + i] = self.sub(lo, &rem[shift + i], &t);
            }
            rem.truncate(da);
            rem = self.vp_trim(rem);
        }
        Ok((self.vp_trim(quo), rem))
    }

    /// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`.
    fn vp_ext_gcd(
        &self,
        lo: usize,
        a: &[Repr],
        b: &[Repr],
    ) -> Result<(Vec<Repr>, Vec<Repr>, Vec<Repr>)> {
        let mut r0 = self.vp_trim(a.to_vec());
        let mut r1 = self.vp_trim(b.to_vec());
        let mut s0 = vec![self.one()];
        let mut s1: Vec<Repr> = Vec::new();
        let mut t0: Vec<Repr> = Vec::new();
        let mut t1 = vec![self.one()];
        while !r1.is_empty() {
            let (q, r) = self.vp_divrem(lo, &r0, &r1)?;
            let ns = self.vp_sub(lo, &s0, &self.vp_mul(lo, &q, &s1));
            let nt = self.vp_sub(lo, &t0, &self.vp_mul(lo, &q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, ns);
            t0 = std::mem::replace(&mut t1, nt);
        }
        Ok((r0, s0, t0))
    }
}

fn mod_inverse(a: u64, p: u64) -> Result<u64> {
    if a == 0 {
        return Err(Error::DivisionByZero);
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    Ok(t.rem_euclid(p as i128) as u64)
}

/// An exact element of a [`FieldDescriptor`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    desc: FieldDescriptor,
    repr: Repr,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FieldElement {
    pub(crate) fn from_repr(desc: FieldDescriptor, repr: Repr) -> Self {
        FieldElement { desc, repr }
    }

    pub(crate) fn repr(&self) -> &Repr {
        &self.repr
    }

    fn ctx(&self) -> Ctx<'_> {
        Ctx { inner: &self.desc.0 }
    }

    fn level(&self) -> usize {
        self.desc.tower_height()
    }

    pub fn zero(desc: &FieldDescriptor) -> Self {
        let repr = Ctx { inner: &desc.0 }.zero();
        FieldElement { desc: desc.clone(), repr }
    }

    pub fn one(desc: &FieldDescriptor) -> Self {
        let repr = Ctx { inner: &desc.0 }.one();
        FieldElement { desc: desc.clone(), repr }
    }

    /// Embed an integer.
    pub fn from_integer(desc: &FieldDescriptor, n: i64) -> Self {
        let repr = if desc.characteristic() == 0 {
            Repr::Rat(BigRational::from(BigInt::from(n)))
        } else {
            let p = desc.characteristic() as i128;
            Repr::Fp((n as i128).rem_euclid(p) as u64)
        };
        FieldElement { desc: desc.clone(), repr }
    }

    /// Embed a rational `a/b` (requires characteristic 0, or `b` a unit
    /// mod p).
    pub fn from_rational(desc: &FieldDescriptor, r: BigRational) -> Result<Self> {
        if desc.characteristic() == 0 {
            return Ok(FieldElement { desc: desc.clone(), repr: Repr::Rat(r) });
        }
        let p = desc.characteristic();
        let pb = BigInt::from(p);
        let to_res = |n: &BigInt| -> u64 {
            let m = ((n % &pb) + &pb) % &pb;
            m.to_u64_digits().1.first().copied().unwrap_or(0)
        };
        let num = to_res(r.numer());
        let den = to_res(r.denom());
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let inv = mod_inverse(den, p)?;
        Ok(FieldElement {
            desc: desc.clone(),
            repr: Repr::Fp(((num as u128 * inv as u128) % p as u128) as u64),
        })
    }

    /// The generator of tower level `i` (0-based).
    pub fn generator(desc: &FieldDescriptor, i: usize) -> Self {
        assert!(i < desc.tower_height(), "generator index out of range");
        let ctx = Ctx { inner: &desc.0 };
        FieldElement {
            desc: desc.clone(),
            repr: Repr::Ext(i + 1, vec![ctx.zero(), ctx.one()]),
        }
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_one(),
            Repr::Fp(x) => *x == 1,
            Repr::Ext(_, _) => false,
        }
    }

    /// Re-interpret in a larger tower (`target` must extend our field).
    pub fn embed(&self, target: &FieldDescriptor) -> Result<Self> {
        if !target.extends(&self.desc) {
            return Err(Error::WrongField(format!(
                "cannot embed element of {} into {}",
                self.desc.describe(),
                target.describe()
            )));
        }
        Ok(FieldElement { desc: target.clone(), repr: self.repr.clone() })
    }

    /// If the element lies in the subfield `target` (a prefix of our
    /// tower), return it there.
    pub fn descend_to(&self, target: &FieldDescriptor) -> Option<Self> {
        if !self.desc.extends(target) {
            return None;
        }
        if self.repr.gen_depth() <= target.tower_height() {
            Some(FieldElement { desc: target.clone(), repr: self.repr.clone() })
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.desc != other.desc {
            return Err(Error::WrongField(format!(
                "{} vs {}",
                self.desc.describe(),
                other.desc.describe()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let repr = self.ctx().add(self.level(), &self.repr, &other.repr);
        Ok(FieldElement { desc: self.desc.clone(), repr })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let repr = self.ctx().sub(self.level(), &self.repr, &other.repr);
        Ok(FieldElement { desc: self.desc.clone(), repr })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let repr = self.ctx().mul(self.level(), &self.repr, &other.repr);
        Ok(FieldElement { desc: self.desc.clone(), repr })
    }

    pub fn neg(&self) -> Self {
        let repr = self.ctx().neg(&self.repr);
        FieldElement { desc: self.desc.clone(), repr }
    }

    pub fn invert(&self) -> Result<Self> {
        let repr = self.ctx().invert(self.level(), &self.repr)?;
        Ok(FieldElement { desc: self.desc.clone(), repr })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.invert()?)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let k = FieldElement::from_integer(&self.desc, n);
        self.mul(&k).expect("same field")
    }

    /// Integer power (negative exponents require a unit).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = FieldElement::one(&self.desc);
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// The absolute Frobenius `x -> x^p`. Errors in characteristic 0.
    pub fn frobenius(&self) -> Result<Self> {
        let p = self.desc.characteristic();
        if p == 0 {
            return Err(Error::CharZero);
        }
        let mut acc = FieldElement::one(&self.desc);
        let mut base = self.clone();
        let mut k = p;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            if k > 1 {
                base = base.mul(&base)?;
            }
            k >>= 1;
        }
        Ok(acc)
    }

    /// The unique `y` with `y^p = x` over a finite field: the Frobenius has
    /// order `[K : F_p]`, so its inverse is `Fr^(k-1)`.
    pub fn is_pth_power(&self) -> Result<Self> {
        let p = self.desc.characteristic();
        if p == 0 {
            return Err(Error::CharZero);
        }
        let k = self.desc.total_degree();
        let mut y = self.clone();
        for _ in 0..k.saturating_sub(1) {
            y = y.frobenius()?;
        }
        debug_assert!(y.frobenius().unwrap() == *self);
        Ok(y)
    }

    /// The rational value, when the element is a base rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// The residue in `[0, p)`, when the element is a base `F_p` scalar.
    pub fn as_fp(&self) -> Option<u64> {
        match &self.repr {
            Repr::Fp(x) => Some(*x),
            _ => None,
        }
    }

    /// Reduce a characteristic-zero element mod `p` into `target` (same
    /// tower shape assumed for nested values). Fails when a denominator is
    /// divisible by `p`.
    pub fn reduce_mod_p(&self, target: &FieldDescriptor) -> Result<FieldElement> {
        fn go(r: &Repr, target: &FieldDescriptor) -> Result<Repr> {
            match r {
                Repr::Rat(q) => Ok(FieldElement::from_rational(target, q.clone())?.repr),
                Repr::Fp(_) => Err(Error::WrongField("already characteristic p".into())),
                Repr::Ext(l, v) => {
                    let mut out = Vec::with_capacity(v.len());
                    for c in v {
                        out.push(go(c, target)?);
                    }
                    while out.last().map(Repr::is_zero).unwrap_or(false) {
                        out.pop();
                    }
                    Ok(match out.len() {
                        0 => Repr::Fp(0),
                        1 => out.into_iter().next().unwrap(),
                        _ => Repr::Ext(*l, out),
                    })
                }
            }
        }
        if self.desc.characteristic() != 0 {
            return Err(Error::WrongField("expected characteristic 0".into()));
        }
        let repr = go(&self.repr, target)?;
        Ok(FieldElement { desc: target.clone(), repr })
    }

    /// Denominators appearing in the representation (for good-prime checks).
    pub fn denominators(&self) -> Vec<BigInt> {
        fn go(r: &Repr, out: &mut Vec<BigInt>) {
            match r {
                Repr::Rat(q) => {
                    if !q.denom().is_one() {
                        out.push(q.denom().abs());
                    }
                }
                Repr::Fp(_) => {}
                Repr::Ext(_, v) => v.iter().for_each(|c| go(c, out)),
            }
        }
        let mut out = Vec::new();
        go(&self.repr, &mut out);
        out
    }

    /// Deterministic serialization used for tie-breaking orders.
    pub fn sort_key(&self) -> String {
        fn go(r: &Repr, out: &mut String) {
            match r {
                Repr::Rat(q) => out.push_str(&format!("r{}/{}", q.numer(), q.denom())),
                Repr::Fp(x) => out.push_str(&format!("f{x}")),
                Repr::Ext(l, v) => {
                    out.push_str(&format!("e{l}["));
                    for c in v {
                        go(c, out);
                        out.push(',');
                    }
                    out.push(']');
                }
            }
        }
        let mut s = String::new();
        go(&self.repr, &mut s);
        s
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn fmt_repr(r: &Repr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match r {
                Repr::Rat(q) => {
                    if q.denom().is_one() {
                        write!(f, "{}", q.numer())
                    } else {
                        write!(f, "{}/{}", q.numer(), q.denom())
                    }
                }
                Repr::Fp(x) => write!(f, "{x}"),
                Repr::Ext(l, v) => {
                    let mut first = true;
                    for (i, c) in v.iter().enumerate().rev() {
                        if c.is_zero() {
                            continue;
                        }
                        if !first {
                            write!(f, " + ")?;
                        }
                        first = false;
                        if i == 0 {
                            fmt_repr(c, f)?;
                            continue;
                        }
                        let coeff_is_one = matches!(c, Repr::Rat(q) if q.is_one())
                            || matches!(c, Repr::Fp(1));
                        if !coeff_is_one {
                            if matches!(c, Repr::Ext(_, _)) {
                                write!(f, "(")?;
                                fmt_repr(c, f)?;
                                write!(f, ")")?;
                            } else {
                                fmt_repr(c, f)?;
                            }
                            write!(f, "*")?;
                        }
                        write!(f, "g{l}")?;
                        if i > 1 {
                            write!(f, "^{i}")?;
                        }
                    }
                    if first {
                        write!(f, "0")?;
                    }
                    Ok(())
                }
            }
        }
        fmt_repr(&self.repr, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FPoly;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    pub(crate) fn sqrt2_field() -> FieldDescriptor {
        let d = q();
        let minpoly = FPoly::from_coeffs(
            d.clone(),
            vec![
                FieldElement::from_integer(&d, -2),
                FieldElement::zero(&d),
                FieldElement::one(&d),
            ],
        );
        d.extend(&minpoly).unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        let d = q();
        let a = FieldElement::from_integer(&d, 3);
        let b = FieldElement::from_integer(&d, 7);
        let c = a.div(&b).unwrap();
        assert_eq!(c.mul(&b).unwrap(), a);
    }

    #[test]
    fn fp_inverse() {
        let d = FieldDescriptor::prime_field(13).unwrap();
        for n in 1..13 {
            let x = FieldElement::from_integer(&d, n);
            let y = x.invert().unwrap();
            assert!(x.mul(&y).unwrap().is_one());
        }
    }

    #[test]
    fn quadratic_tower_arithmetic() {
        let k = sqrt2_field();
        let g = FieldElement::generator(&k, 0);
        let two = FieldElement::from_integer(&k, 2);
        assert_eq!(g.mul(&g).unwrap(), two);
        // (1+g)^{-1} = g-1 since (1+g)(g-1) = g^2-1 = 1
        let one = FieldElement::one(&k);
        let inv = one.add(&g).unwrap().invert().unwrap();
        let expect = g.sub(&one).unwrap();
        assert_eq!(inv, expect);
    }

    #[test]
    fn two_level_tower() {
        // Q(sqrt2)(sqrt3): g2^2 = 3 over Q(sqrt2).
        let k1 = sqrt2_field();
        let minpoly = FPoly::from_coeffs(
            k1.clone(),
            vec![
                FieldElement::from_integer(&k1, -3),
                FieldElement::zero(&k1),
                FieldElement::one(&k1),
            ],
        );
        let k2 = k1.extend(&minpoly).unwrap();
        let g1 = FieldElement::generator(&k2, 0);
        let g2 = FieldElement::generator(&k2, 1);
        // (g1*g2)^2 = 6
        let prod = g1.mul(&g2).unwrap();
        let six = FieldElement::from_integer(&k2, 6);
        assert_eq!(prod.mul(&prod).unwrap(), six);
        // 1/(g1+g2) * (g1+g2) = 1
        let s = g1.add(&g2).unwrap();
        assert!(s.invert().unwrap().mul(&s).unwrap().is_one());
        // g1 descends to the level-1 field
        assert!(g1.descend_to(&k1).is_some());
        assert!(g2.descend_to(&k1).is_none());
    }

    #[test]
    fn frobenius_on_f25() {
        // F_25 = F_5(g), g^2 = 2. g^5 = -g.
        let f5 = FieldDescriptor::prime_field(5).unwrap();
        let minpoly = FPoly::from_coeffs(
            f5.clone(),
            vec![
                FieldElement::from_integer(&f5, -2),
                FieldElement::zero(&f5),
                FieldElement::one(&f5),
            ],
        );
        let f25 = f5.extend(&minpoly).unwrap();
        let g = FieldElement::generator(&f25, 0);
        assert_eq!(g.frobenius().unwrap(), g.neg());
        assert_eq!(g.neg().is_pth_power().unwrap(), g);
        let two = FieldElement::from_integer(&f25, 2);
        assert_eq!(two.frobenius().unwrap(), two);
        let zero = FieldElement::zero(&f25);
        assert_eq!(zero.frobenius().unwrap(), zero);
    }

    #[test]
    fn frobenius_is_field_homomorphism_exhaustive() {
        let f5 = FieldDescriptor::prime_field(5).unwrap();
        let minpoly = FPoly::from_coeffs(
            f5.clone(),
            vec![
                FieldElement::from_integer(&f5, -2),
                FieldElement::zero(&f5),
                FieldElement::one(&f5),
            ],
        );
        let f25 = f5.extend(&minpoly).unwrap();
        let g = FieldElement::generator(&f25, 0);
        let mut elems = Vec::new();
        for a in 0..5 {
            for b in 0..5 {
                let x = FieldElement::from_integer(&f25, a)
                    .add(&FieldElement::from_integer(&f25, b).mul(&g).unwrap())
                    .unwrap();
                elems.push(x);
            }
        }
        for x in &elems {
            assert_eq!(x.frobenius().unwrap().is_pth_power().unwrap(), *x);
            for y in &elems {
                let fx = x.frobenius().unwrap();
                let fy = y.frobenius().unwrap();
                assert_eq!(x.mul(y).unwrap().frobenius().unwrap(), fx.mul(&fy).unwrap());
                assert_eq!(x.add(y).unwrap().frobenius().unwrap(), fx.add(&fy).unwrap());
            }
        }
    }
}
