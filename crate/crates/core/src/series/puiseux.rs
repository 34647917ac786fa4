//! One-variable truncated Puiseux series.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scalars::{FieldDescriptor, FieldElement};

use super::DEFAULT_PRECISION;

/// Exact exponents: rationals with machine-word numerator/denominator.
pub type Exp = Ratio<i64>;

/// Truncation order: series terms with exponent `>=` the order are unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trunc {
    /// Known below this exponent.
    At(Exp),
    /// Exact: every term is known (a Laurent polynomial).
    Infinite,
}

impl Trunc {
    pub fn min(self, other: Trunc) -> Trunc {
        match (self, other) {
            (Trunc::Infinite, o) => o,
            (s, Trunc::Infinite) => s,
            (Trunc::At(a), Trunc::At(b)) => Trunc::At(a.min(b)),
        }
    }

    pub fn shift(self, by: Exp) -> Trunc {
        match self {
            Trunc::Infinite => Trunc::Infinite,
            Trunc::At(a) => Trunc::At(a + by),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Trunc::Infinite)
    }

    pub fn as_exp(&self) -> Option<Exp> {
        match self {
            Trunc::Infinite => None,
            Trunc::At(a) => Some(*a),
        }
    }

    /// Does the window include every exponent strictly below `e`?
    pub fn covers(&self, e: Exp) -> bool {
        match self {
            Trunc::Infinite => true,
            Trunc::At(a) => *a >= e,
        }
    }
}

impl PartialOrd for Trunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self, other) {
            (Trunc::Infinite, Trunc::Infinite) => Ordering::Equal,
            (Trunc::Infinite, _) => Ordering::Greater,
            (_, Trunc::Infinite) => Ordering::Less,
            (Trunc::At(a), Trunc::At(b)) => a.cmp(b),
        })
    }
}

/// A truncated Laurent series in `t^(1/ram)` with exact coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PuiseuxSeries {
    field: FieldDescriptor,
    /// Ramification index: exponents lie in `(1/ram) * Z`.
    ram: u32,
    /// Truncation, in absolute exponent units.
    trunc: Trunc,
    /// Keys are exponents scaled by `ram` (so integral); values nonzero.
    coeffs: BTreeMap<i64, FieldElement>,
}

impl PuiseuxSeries {
    // -- constructors ------------------------------------------------------

    /// Exact zero.
    pub fn zero(field: &FieldDescriptor) -> Self {
        PuiseuxSeries {
            field: field.clone(),
            ram: 1,
            trunc: Trunc::Infinite,
            coeffs: BTreeMap::new(),
        }
    }

    /// Zero known only below `trunc`.
    pub fn zero_to(field: &FieldDescriptor, trunc: Exp) -> Self {
        PuiseuxSeries {
            field: field.clone(),
            ram: (*trunc.denom()).max(1) as u32,
            trunc: Trunc::At(trunc),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.descriptor().clone();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        PuiseuxSeries { field, ram: 1, trunc: Trunc::Infinite, coeffs }
    }

    pub fn one(field: &FieldDescriptor) -> Self {
        PuiseuxSeries::constant(FieldElement::one(field))
    }

    /// The exact monomial `c * t^e`.
    pub fn monomial(c: FieldElement, e: Exp) -> Self {
        let field = c.descriptor().clone();
        let ram = (*e.denom()).unsigned_abs() as u32;
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(*e.numer() * (e.denom().signum()), c);
        }
        PuiseuxSeries { field, ram: ram.max(1), trunc: Trunc::Infinite, coeffs }
    }

    /// The variable `t`.
    pub fn variable(field: &FieldDescriptor) -> Self {
        PuiseuxSeries::monomial(FieldElement::one(field), Exp::from_integer(1))
    }

    /// Build from `(` exponent `,` coefficient `)` pairs and a truncation.
    pub fn from_terms(
        field: &FieldDescriptor,
        terms: impl IntoIterator<Item = (Exp, FieldElement)>,
        trunc: Trunc,
    ) -> Result<Self> {
        let mut ram: i64 = 1;
        let items: Vec<(Exp, FieldElement)> = terms.into_iter().collect();
        for (e, _) in &items {
            ram = ram.lcm(e.denom());
        }
        if let Trunc::At(a) = trunc {
            ram = ram.lcm(a.denom());
        }
        let mut coeffs = BTreeMap::new();
        for (e, c) in items {
            if c.descriptor() != field {
                return Err(Error::WrongField("series coefficient".into()));
            }
            if c.is_zero() {
                continue;
            }
            if let Trunc::At(a) = trunc {
                if e >= a {
                    continue;
                }
            }
            let key = *(e * Exp::from_integer(ram)).numer();
            let entry = coeffs.entry(key).or_insert_with(|| FieldElement::zero(field));
            *entry = entry.add(&c)?;
        }
        coeffs.retain(|_, v| !v.is_zero());
        let mut s = PuiseuxSeries { field: field.clone(), ram: ram as u32, trunc, coeffs };
        s.normalize_ram();
        Ok(s)
    }

    // -- accessors ---------------------------------------------------------

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    /// Iterate terms as `(exponent, coefficient)` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (Exp, &FieldElement)> + '_ {
        let r = self.ram as i64;
        self.coeffs.iter().map(move |(k, v)| (Exp::new(*k, r), v))
    }

    pub fn coeff(&self, e: Exp) -> FieldElement {
        let scaled = e * Exp::from_integer(self.ram as i64);
        if *scaled.denom() != 1 {
            return FieldElement::zero(&self.field);
        }
        self.coeffs
            .get(scaled.numer())
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Provably zero: no terms and nothing hidden.
    pub fn is_provably_zero(&self) -> bool {
        self.coeffs.is_empty() && self.trunc.is_infinite()
    }

    /// Zero as far as the window shows (may hide terms beyond it).
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The leading term `(ord, coefficient)`:
    /// - `Ok(Some(..))` when a term exists,
    /// - `Ok(None)` for the exact zero,
    /// - `Err(InsufficientPrecision)` when the window is empty but finite.
    pub fn leading(&self) -> Result<Option<(Exp, FieldElement)>> {
        if let Some((k, v)) = self.coeffs.iter().next() {
            return Ok(Some((Exp::new(*k, self.ram as i64), v.clone())));
        }
        if self.trunc.is_infinite() {
            Ok(None)
        } else {
            Err(Error::InsufficientPrecision(format!(
                "leading term undecidable: zero to order {}",
                fmt_exp(self.trunc.as_exp().unwrap())
            )))
        }
    }

    /// The order `ord_t`; `Ok(None)` for the exact zero.
    pub fn ord(&self) -> Result<Option<Exp>> {
        Ok(self.leading()?.map(|(e, _)| e))
    }

    /// Smallest exponent that could carry a nonzero coefficient: the lowest
    /// stored key, or the truncation bound for an (in-window) zero.
    fn lower_bound(&self) -> Trunc {
        match self.coeffs.keys().next() {
            Some(k) => Trunc::At(Exp::new(*k, self.ram as i64)),
            None => self.trunc,
        }
    }

    // -- normalization -----------------------------------------------------

    /// Restore the minimal ramification index.
    pub fn normalize_ram(&mut self) {
        let mut g: i64 = self.ram as i64;
        for k in self.coeffs.keys() {
            g = g.gcd(k);
        }
        if let Trunc::At(a) = self.trunc {
            // keep the truncation on-grid
            let scaled = a * Exp::from_integer(self.ram as i64);
            debug_assert_eq!(*scaled.denom(), 1);
            g = g.gcd(scaled.numer());
        }
        if g > 1 {
            let coeffs = std::mem::take(&mut self.coeffs);
            self.coeffs = coeffs.into_iter().map(|(k, v)| (k / g, v)).collect();
            self.ram /= g as u32;
        }
        if self.coeffs.is_empty() && self.trunc.is_infinite() {
            self.ram = 1;
        }
    }

    /// Inflate to a ramification index that `multiple_of` divides.
    pub fn with_ram(&self, multiple_of: u32) -> Self {
        let new_ram = (self.ram as i64).lcm(&(multiple_of as i64)) as u32;
        if new_ram == self.ram {
            return self.clone();
        }
        let f = (new_ram / self.ram) as i64;
        PuiseuxSeries {
            field: self.field.clone(),
            ram: new_ram,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(k, v)| (k * f, v.clone())).collect(),
        }
    }

    /// Lower the truncation (dropping now-unknown terms).
    pub fn truncate_to(&self, trunc: Trunc) -> Self {
        let new_trunc = self.trunc.min(trunc);
        let mut out = self.clone();
        out.trunc = new_trunc;
        if let Trunc::At(a) = new_trunc {
            let r = self.ram as i64;
            out.coeffs.retain(|k, _| Exp::new(*k, r) < a);
        }
        out.normalize_ram();
        out
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::WrongField("series over different fields".into()));
        }
        Ok(())
    }

    /// Embed coefficients into a larger tower.
    pub fn embed(&self, target: &FieldDescriptor) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (k, v) in &self.coeffs {
            coeffs.insert(*k, v.embed(target)?);
        }
        Ok(PuiseuxSeries {
            field: target.clone(),
            ram: self.ram,
            trunc: self.trunc,
            coeffs,
        })
    }

    /// Reduce rational coefficients mod p.
    pub fn reduce_mod_p(&self, target: &FieldDescriptor) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (k, v) in &self.coeffs {
            let c = v.reduce_mod_p(target)?;
            if !c.is_zero() {
                coeffs.insert(*k, c);
            }
        }
        Ok(PuiseuxSeries {
            field: target.clone(),
            ram: self.ram,
            trunc: self.trunc,
            coeffs,
        })
    }

    // -- ring operations ----------------------------------------------------

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let ram = (self.ram as i64).lcm(&(other.ram as i64)) as u32;
        let a = self.with_ram(ram);
        let b = other.with_ram(ram);
        let trunc = a.trunc.min(b.trunc);
        let mut coeffs = a.coeffs;
        for (k, v) in b.coeffs {
            match coeffs.entry(k) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(v);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&v)?;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        if let Trunc::At(t) = trunc {
            let r = ram as i64;
            coeffs.retain(|k, _| Exp::new(*k, r) < t);
        }
        let mut out = PuiseuxSeries { field: self.field.clone(), ram, trunc, coeffs };
        out.normalize_ram();
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            field: self.field.clone(),
            ram: self.ram,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_provably_zero() || other.is_provably_zero() {
            return Ok(PuiseuxSeries::zero(&self.field));
        }
        let ram = (self.ram as i64).lcm(&(other.ram as i64)) as u32;
        let a = self.with_ram(ram);
        let b = other.with_ram(ram);
        // out trunc = min(trunc_a + lb_b, trunc_b + lb_a)
        let trunc = match (a.trunc, b.lower_bound(), b.trunc, a.lower_bound()) {
            (Trunc::Infinite, _, Trunc::Infinite, _) => Trunc::Infinite,
            (ta, lb, tb, la) => {
                let t1 = match (ta, lb) {
                    (Trunc::Infinite, _) => Trunc::Infinite,
                    (Trunc::At(x), Trunc::At(y)) => Trunc::At(x + y),
                    (Trunc::At(_), Trunc::Infinite) => Trunc::Infinite, // b provably zero
                };
                let t2 = match (tb, la) {
                    (Trunc::Infinite, _) => Trunc::Infinite,
                    (Trunc::At(x), Trunc::At(y)) => Trunc::At(x + y),
                    (Trunc::At(_), Trunc::Infinite) => Trunc::Infinite,
                };
                t1.min(t2)
            }
        };
        let mut coeffs: BTreeMap<i64, FieldElement> = BTreeMap::new();
        let cap = match trunc {
            Trunc::At(t) => Some(t * Exp::from_integer(ram as i64)),
            Trunc::Infinite => None,
        };
        for (ka, va) in &a.coeffs {
            for (kb, vb) in &b.coeffs {
                let k = ka + kb;
                if let Some(c) = cap {
                    if Exp::from_integer(k) >= c {
                        continue;
                    }
                }
                let prod = va.mul(vb)?;
                if prod.is_zero() {
                    continue;
                }
                match coeffs.entry(k) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get().add(&prod)?;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        let mut out = PuiseuxSeries { field: self.field.clone(), ram, trunc, coeffs };
        out.normalize_ram();
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        if c.is_zero() {
            return Ok(PuiseuxSeries {
                field: self.field.clone(),
                ram: 1,
                trunc: self.trunc,
                coeffs: BTreeMap::new(),
            });
        }
        let mut coeffs = BTreeMap::new();
        for (k, v) in &self.coeffs {
            let p = v.mul(c)?;
            if !p.is_zero() {
                coeffs.insert(*k, p);
            }
        }
        Ok(PuiseuxSeries {
            field: self.field.clone(),
            ram: self.ram,
            trunc: self.trunc,
            coeffs,
        })
    }

    /// Multiply by the exact monomial `t^e`.
    pub fn shift_exp(&self, e: Exp) -> Self {
        let ram = (self.ram as i64).lcm(e.denom()) as u32;
        let s = self.with_ram(ram);
        let de = *(e * Exp::from_integer(ram as i64)).numer();
        PuiseuxSeries {
            field: s.field,
            ram,
            trunc: s.trunc.shift(e),
            coeffs: s.coeffs.into_iter().map(|(k, v)| (k + de, v)).collect(),
        }
    }

    /// Multiplicative inverse. The leading term must be decidable; for
    /// exact inputs the result is truncated to `width` integral orders
    /// beyond the leading exponent (`DEFAULT_PRECISION` when `None`).
    pub fn invert(&self, width: Option<i64>) -> Result<Self> {
        let lead = self.leading()?;
        let (m, c) = match lead {
            None => return Err(Error::DivisionByZeroSeries),
            Some(x) => x,
        };
        if self.coeffs.len() == 1 && self.trunc.is_infinite() {
            // exact monomial: exact inverse
            return Ok(PuiseuxSeries::monomial(c.invert()?, -m));
        }
        // window width available from the input
        let w = match self.trunc {
            Trunc::Infinite => Exp::from_integer(width.unwrap_or(DEFAULT_PRECISION)),
            Trunc::At(a) => {
                let natural = a - m;
                match width {
                    Some(wd) => natural.min(Exp::from_integer(wd)),
                    None => natural,
                }
            }
        };
        let cinv = c.invert()?;
        // f = c t^m (1 + u), ord u > 0; 1/f = c^{-1} t^{-m} sum (-u)^k
        let unit = self.shift_exp(-m).scale(&cinv)?.truncate_to(Trunc::At(w));
        let u = unit.sub(&PuiseuxSeries::one(&self.field))?;
        let mut acc = PuiseuxSeries::one(&self.field).truncate_to(Trunc::At(w));
        let mut pow = PuiseuxSeries::one(&self.field).truncate_to(Trunc::At(w));
        // ord(u) >= 1/ram, so the loop ends after w*ram steps at most.
        let steps = (w * Exp::from_integer(self.ram.max(u.ram) as i64)).ceil().to_integer();
        for _ in 0..steps.max(0) {
            pow = pow.mul(&u)?.neg();
            if pow.is_zero_to_precision() {
                break;
            }
            acc = acc.add(&pow)?;
        }
        Ok(acc.scale(&cinv)?.shift_exp(-m))
    }

    pub fn div(&self, other: &Self, width: Option<i64>) -> Result<Self> {
        self.mul(&other.invert(width)?)
    }

    /// Integer power (negative exponents invert first).
    pub fn pow(&self, e: i64, width: Option<i64>) -> Result<Self> {
        let mut base = if e < 0 { self.invert(width)? } else { self.clone() };
        let mut acc = PuiseuxSeries::one(&self.field);
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        // preserve the trunc of the power computation even for k=0/1
        if e == 0 {
            acc = acc.truncate_to(base.trunc.shift(Exp::from_integer(0)));
        }
        Ok(acc)
    }

    // -- the operations from the calculus of the negative part --------------

    /// The negative part `f_-`: the sum of terms with exponent `< 0`.
    /// Exact provided the window reaches 0.
    pub fn negative_part(&self) -> Result<Self> {
        if !self.trunc.covers(Exp::from_integer(0)) {
            return Err(Error::InsufficientPrecision(format!(
                "negative part needs the window to reach 0, have {}",
                fmt_exp(self.trunc.as_exp().unwrap())
            )));
        }
        let coeffs: BTreeMap<i64, FieldElement> = self
            .coeffs
            .iter()
            .filter(|(k, _)| **k < 0)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        let mut out = PuiseuxSeries {
            field: self.field.clone(),
            ram: self.ram,
            trunc: Trunc::Infinite,
            coeffs,
        };
        out.normalize_ram();
        Ok(out)
    }

    /// `f - f_-` (order `>= 0`), with the original truncation.
    pub fn nonnegative_part(&self) -> Result<Self> {
        self.sub(&self.negative_part()?)
    }

    /// The logarithmic derivative action `t d/dt`: termwise `e * c * t^e`.
    /// In characteristic p, terms whose scaled exponent is divisible by p
    /// are annihilated.
    pub fn derive_log(&self) -> Self {
        let r = self.ram as i64;
        let mut coeffs = BTreeMap::new();
        for (k, v) in &self.coeffs {
            // multiplier k/ram in the field
            let m = FieldElement::from_rational(
                &self.field,
                num_rational::BigRational::new((*k).into(), r.into()),
            );
            let m = match m {
                Ok(m) => m,
                Err(_) => continue, // p | ram is excluded by good-prime policy
            };
            let c = v.mul(&m).expect("same field");
            if !c.is_zero() {
                coeffs.insert(*k, c);
            }
        }
        PuiseuxSeries {
            field: self.field.clone(),
            ram: self.ram,
            trunc: self.trunc,
            coeffs,
        }
    }

    /// Plain derivative `d/dt`: termwise `e * c * t^(e-1)`.
    pub fn derive(&self) -> Self {
        self.derive_log().shift_exp(Exp::from_integer(-1))
    }

    /// The inverse of `t d/dt`: termwise `(1/e) * c * t^e`. Exponent 0 is
    /// non-integrable; in characteristic p so is any exponent whose scaled
    /// numerator is divisible by p.
    pub fn log_antiderivative(&self) -> Result<Self> {
        let r = self.ram as i64;
        let p = self.field.characteristic();
        let mut coeffs = BTreeMap::new();
        for (k, v) in &self.coeffs {
            if *k == 0 {
                return Err(Error::NonIntegrableTerm("0".into()));
            }
            if p > 0 && (*k).rem_euclid(p as i64) == 0 {
                return Err(Error::NonIntegrableTerm(fmt_exp(Exp::new(*k, r))));
            }
            let m = FieldElement::from_rational(
                &self.field,
                num_rational::BigRational::new(r.into(), (*k).into()),
            )
            .map_err(|_| Error::NonIntegrableTerm(fmt_exp(Exp::new(*k, r))))?;
            coeffs.insert(*k, v.mul(&m).expect("same field"));
        }
        Ok(PuiseuxSeries {
            field: self.field.clone(),
            ram: self.ram,
            trunc: self.trunc,
            coeffs,
        })
    }

    // -- substitution --------------------------------------------------------

    /// Compose `self(t -> image)`. The image must have strictly positive
    /// order. Ramified series (`ram > 1`) are supported when the image is a
    /// monomial `c * v^a` whose coefficient and exponent admit the needed
    /// roots; the general case requires `ram == 1`.
    pub fn substitute(&self, image: &PuiseuxSeries) -> Result<Self> {
        self.check_field(image)?;
        if self.coeffs.is_empty() {
            // propagate a conservative trunc: unknown terms t^e map to
            // order >= e * ord(image)
            return match (self.trunc, image.ord()?) {
                (Trunc::Infinite, _) => Ok(PuiseuxSeries::zero(&self.field)),
                (Trunc::At(a), Some(o)) => Ok(PuiseuxSeries::zero_to(&self.field, a * o)),
                (Trunc::At(_), None) => Ok(PuiseuxSeries::zero(&self.field)),
            };
        }
        let image_ord = match image.ord()? {
            Some(o) if o > Exp::from_integer(0) => o,
            Some(_) | None => {
                return Err(Error::NonPositiveOrder("t".into()));
            }
        };
        if self.ram == 1 {
            // Horner-style over integer exponents, with inverse powers for
            // the pole part.
            let lo = *self.coeffs.keys().next().unwrap();
            let hi = *self.coeffs.keys().last().unwrap();
            let mut acc = PuiseuxSeries::zero(&self.field);
            // positive part via Horner from the top
            let mut k = hi;
            if hi >= 0 {
                let start = lo.max(0);
                while k >= start {
                    acc = acc.mul(image)?;
                    let c = self
                        .coeffs
                        .get(&k)
                        .cloned()
                        .unwrap_or_else(|| FieldElement::zero(&self.field));
                    acc = acc.add(&PuiseuxSeries::constant(c))?;
                    k -= 1;
                }
                let power = image.pow(start, None)?;
                acc = acc.mul(&power)?;
            }
            if lo < 0 {
                let inv = image.invert(None)?;
                let mut pw = PuiseuxSeries::one(&self.field);
                for j in 1..=(-lo) {
                    pw = pw.mul(&inv)?;
                    if let Some(c) = self.coeffs.get(&(-j)) {
                        acc = acc.add(&pw.scale(c)?)?;
                    }
                }
            }
            // cap by the trunc image: unknown tail t^a maps to ord >= a*image_ord
            let cap = match self.trunc {
                Trunc::Infinite => Trunc::Infinite,
                Trunc::At(a) => Trunc::At(a * image_ord),
            };
            return Ok(acc.truncate_to(cap));
        }
        // Ramified: require a monomial image.
        if image.coeffs.len() == 1 && image.trunc.is_infinite() {
            let (e_im, c_im) = image.terms().next().map(|(e, c)| (e, c.clone())).unwrap();
            let r = self.ram as i64;
            let mut out = PuiseuxSeries::zero(&self.field);
            for (k, v) in &self.coeffs {
                // t^(k/r) -> c^(k/r) v^(e_im * k/r)
                let exp = e_im * Exp::new(*k, r);
                let coeff = if c_im.is_one() {
                    v.clone()
                } else if k.rem_euclid(r) == 0 {
                    v.mul(&c_im.pow(k / r)?)?
                } else {
                    return Err(Error::InvalidInput(
                        "ramified substitution needs a monomial image with unit coefficient"
                            .into(),
                    ));
                };
                out = out.add(&PuiseuxSeries::monomial(coeff, exp))?;
            }
            let cap = match self.trunc {
                Trunc::Infinite => Trunc::Infinite,
                Trunc::At(a) => Trunc::At(a * image_ord),
            };
            return Ok(out.truncate_to(cap));
        }
        Err(Error::InvalidInput(
            "substitution into a ramified series requires a monomial image".into(),
        ))
    }

    /// Value at `t = 0`: the constant term, requiring order `>= 0` and a
    /// window that reaches past 0.
    pub fn eval_at_zero(&self) -> Result<FieldElement> {
        if let Some((k, _)) = self.coeffs.iter().next() {
            if *k < 0 {
                return Err(Error::NonPositiveOrder("t".into()));
            }
        }
        if !self.trunc.covers(Exp::new(1, self.ram as i64)) {
            return Err(Error::InsufficientPrecision(
                "constant term not covered by the window".into(),
            ));
        }
        Ok(self
            .coeffs
            .get(&0)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field)))
    }

    /// Rendering with a custom variable name.
    pub fn display_with<'a>(&'a self, var: &'a str) -> DisplaySeries<'a> {
        DisplaySeries { series: self, var }
    }

    /// Deterministic serialization for order-stable outputs.
    pub fn sort_key(&self) -> String {
        format!("{}", self.display_with("t"))
    }
}

fn fmt_exp(e: Exp) -> String {
    if *e.denom() == 1 {
        format!("{}", e.numer())
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

/// Helper for rendering a series with a chosen variable name.
pub struct DisplaySeries<'a> {
    series: &'a PuiseuxSeries,
    var: &'a str,
}

impl fmt::Display for DisplaySeries<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.series;
        let var = self.var;
        let mut first = true;
        for (e, c) in s.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = format!("{}", c);
            let coeff_simple = !coeff.contains('+') && !coeff.contains('*');
            if e == Exp::from_integer(0) {
                if coeff_simple {
                    write!(f, "{}", coeff)?;
                } else {
                    write!(f, "({})", coeff)?;
                }
                continue;
            }
            if c.is_one() {
                // bare power
            } else if coeff_simple {
                write!(f, "{}*", coeff)?;
            } else {
                write!(f, "({})*", coeff)?;
            }
            if e == Exp::from_integer(1) {
                write!(f, "{}", var)?;
            } else if *e.denom() == 1 && *e.numer() > 0 {
                write!(f, "{}^{}", var, e.numer())?;
            } else {
                write!(f, "{}^({})", var, fmt_exp(e))?;
            }
        }
        match s.trunc {
            Trunc::Infinite => {
                if first {
                    write!(f, "0")?;
                }
            }
            Trunc::At(a) => {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "O({}^({}))", var, fmt_exp(a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("t"))
    }
}

impl fmt::Debug for PuiseuxSeries {
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

    fn exp(n: i64, d: i64) -> Exp {
        Exp::new(n, d)
    }

    #[test]
    fn negative_part_examples() {
        // t^{-1} + 1 + t -> t^{-1}
        let f = PuiseuxSeries::from_terms(
            &q(),
            vec![
                (exp(-1, 1), fe(1)),
                (exp(0, 1), fe(1)),
                (exp(1, 1), fe(1)),
            ],
            Trunc::Infinite,
        )
        .unwrap();
        let neg = f.negative_part().unwrap();
        assert_eq!(neg, PuiseuxSeries::monomial(fe(1), exp(-1, 1)));
        // the complement has ord >= 0
        let rest = f.nonnegative_part().unwrap();
        assert!(rest.ord().unwrap().unwrap() >= exp(0, 1));
        assert_eq!(neg.add(&rest).unwrap(), f);

        // ramified: 3*t_2^{-3} + t_2^{-1} + t_2
        let g = PuiseuxSeries::from_terms(
            &q(),
            vec![
                (exp(-3, 2), fe(3)),
                (exp(-1, 2), fe(1)),
                (exp(1, 2), fe(1)),
            ],
            Trunc::Infinite,
        )
        .unwrap();
        let gneg = g.negative_part().unwrap();
        assert_eq!(gneg.term_count(), 2);
        assert_eq!(gneg.coeff(exp(-3, 2)), fe(3));

        // no negative exponents -> exact zero
        let h = PuiseuxSeries::from_terms(
            &q(),
            vec![(exp(0, 1), fe(1)), (exp(2, 1), fe(1))],
            Trunc::Infinite,
        )
        .unwrap();
        assert!(h.negative_part().unwrap().is_provably_zero());

        // window below 0: undecidable
        let bad = PuiseuxSeries::zero_to(&q(), exp(-1, 1));
        assert!(matches!(
            bad.negative_part(),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn log_antiderivative_examples() {
        // I_t(t^{-2}) = -(1/2) t^{-2}
        let f = PuiseuxSeries::monomial(fe(1), exp(-2, 1));
        let i = f.log_antiderivative().unwrap();
        let expected = PuiseuxSeries::monomial(
            FieldElement::from_rational(&q(), num_rational::BigRational::new((-1).into(), 2.into()))
                .unwrap(),
            exp(-2, 1),
        );
        assert_eq!(i, expected);
        // t d/dt returns the original
        assert_eq!(i.derive_log(), f);

        // I_t(3 t_2^{-1}) = (2/-1)*3 t_2^{-1} = -6 t_2^{-1}
        let g = PuiseuxSeries::monomial(fe(3), exp(-1, 2));
        let ig = g.log_antiderivative().unwrap();
        assert_eq!(ig, PuiseuxSeries::monomial(fe(-6), exp(-1, 2)));

        // constants are non-integrable
        let c = PuiseuxSeries::constant(fe(1));
        assert!(matches!(
            c.log_antiderivative(),
            Err(Error::NonIntegrableTerm(_))
        ));
    }

    #[test]
    fn derive_log_examples() {
        // t^{-1} -> -t^{-1}
        let f = PuiseuxSeries::monomial(fe(1), exp(-1, 1));
        assert_eq!(f.derive_log(), PuiseuxSeries::monomial(fe(-1), exp(-1, 1)));
        // constants -> 0
        assert!(PuiseuxSeries::constant(fe(5)).derive_log().is_provably_zero());
        // t^p over F_p -> 0
        let f5 = FieldDescriptor::prime_field(5).unwrap();
        let tp = PuiseuxSeries::monomial(FieldElement::from_integer(&f5, 1), exp(5, 1));
        assert!(tp.derive_log().is_provably_zero());
    }

    #[test]
    fn inversion_geometric_series() {
        // invert(1 - t) to width 3: 1 + t + t^2 + O(t^3)
        let one_minus_t = PuiseuxSeries::from_terms(
            &q(),
            vec![(exp(0, 1), fe(1)), (exp(1, 1), fe(-1))],
            Trunc::Infinite,
        )
        .unwrap();
        let inv = one_minus_t.invert(Some(3)).unwrap();
        assert_eq!(inv.coeff(exp(0, 1)), fe(1));
        assert_eq!(inv.coeff(exp(1, 1)), fe(1));
        assert_eq!(inv.coeff(exp(2, 1)), fe(1));
        assert_eq!(inv.trunc(), Trunc::At(exp(3, 1)));
        // product is 1 to the window
        let prod = inv.mul(&one_minus_t).unwrap();
        assert_eq!(prod.coeff(exp(0, 1)), fe(1));
        assert_eq!(prod.term_count(), 1);
    }

    #[test]
    fn division_by_provable_zero_fails() {
        let z = PuiseuxSeries::zero(&q());
        assert!(matches!(z.invert(None), Err(Error::DivisionByZeroSeries)));
        // t - t is provably zero
        let t = PuiseuxSeries::variable(&q());
        let z2 = t.sub(&t).unwrap();
        assert!(matches!(z2.invert(None), Err(Error::DivisionByZeroSeries)));
    }

    #[test]
    fn mul_exact() {
        // (1+t)(1-t) = 1 - t^2 exactly
        let a = PuiseuxSeries::from_terms(
            &q(),
            vec![(exp(0, 1), fe(1)), (exp(1, 1), fe(1))],
            Trunc::Infinite,
        )
        .unwrap();
        let b = PuiseuxSeries::from_terms(
            &q(),
            vec![(exp(0, 1), fe(1)), (exp(1, 1), fe(-1))],
            Trunc::Infinite,
        )
        .unwrap();
        let p = a.mul(&b).unwrap();
        assert!(p.trunc().is_infinite());
        assert_eq!(p.coeff(exp(0, 1)), fe(1));
        assert_eq!(p.coeff(exp(2, 1)), fe(-1));
        assert_eq!(p.term_count(), 2);
    }

    #[test]
    fn substitution_examples() {
        // f = t^{-1}, t -> v^2 gives v^{-2}
        let f = PuiseuxSeries::monomial(fe(1), exp(-1, 1));
        let v2 = PuiseuxSeries::monomial(fe(1), exp(2, 1));
        let r = f.substitute(&v2).unwrap();
        assert_eq!(r, PuiseuxSeries::monomial(fe(1), exp(-2, 1)));
        // identity substitution
        let t = PuiseuxSeries::variable(&q());
        let g = PuiseuxSeries::from_terms(
            &q(),
            vec![(exp(-1, 1), fe(2)), (exp(3, 1), fe(5))],
            Trunc::Infinite,
        )
        .unwrap();
        assert_eq!(g.substitute(&t).unwrap(), g);
        // ramified monomial: t_2^{-1} under t -> v^4 gives v^{-2}
        let h = PuiseuxSeries::monomial(fe(1), exp(-1, 2));
        let v4 = PuiseuxSeries::monomial(fe(1), exp(4, 1));
        assert_eq!(h.substitute(&v4).unwrap(), PuiseuxSeries::monomial(fe(1), exp(-2, 1)));
        // composing into a pole fails
        let pole = PuiseuxSeries::monomial(fe(1), exp(-1, 1));
        assert!(matches!(g.substitute(&pole), Err(Error::NonPositiveOrder(_))));
    }

    #[test]
    fn ord_consistent_under_ram_inflation() {
        let f = PuiseuxSeries::from_terms(
            &q(),
            vec![(exp(-3, 2), fe(3)), (exp(1, 2), fe(1))],
            Trunc::Infinite,
        )
        .unwrap();
        let ord1 = f.ord().unwrap().unwrap();
        let f6 = f.with_ram(6);
        let ord2 = f6.ord().unwrap().unwrap();
        assert_eq!(ord1, ord2);
        // normalize_ram restores minimality
        let mut g = f6.clone();
        g.normalize_ram();
        assert_eq!(g.ram(), 2);
    }

    #[test]
    fn display_format() {
        let threehalves =
            FieldElement::from_rational(&q(), num_rational::BigRational::new(3.into(), 2.into()))
                .unwrap();
        let f = PuiseuxSeries::from_terms(
            &q(),
            vec![(exp(-3, 2), threehalves), (exp(1, 2), fe(1))],
            Trunc::At(exp(5, 2)),
        )
        .unwrap();
        assert_eq!(format!("{}", f), "3/2*t^(-3/2) + t^(1/2) + O(t^(5/2))");
    }

    #[test]
    fn trunc_propagation_through_mul() {
        // (t^{-1} + O(t^2)) * (t^3 exact) -> t^2 + O(t^5)
        let a = PuiseuxSeries::from_terms(
            &q(),
            vec![(exp(-1, 1), fe(1))],
            Trunc::At(exp(2, 1)),
        )
        .unwrap();
        let b = PuiseuxSeries::monomial(fe(1), exp(3, 1));
        let p = a.mul(&b).unwrap();
        assert_eq!(p.trunc(), Trunc::At(exp(5, 1)));
        assert_eq!(p.coeff(exp(2, 1)), fe(1));
    }
}
