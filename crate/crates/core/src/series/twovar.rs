//! Two-variable series: Laurent in `t` with truncated Puiseux-in-`s`
//! coefficients.
//!
//! Values live in `k((s_d'))((t_d))` and its subrings (`k[[s]]((t))`,
//! `k[[s_d, t_d]]`, ...). Storage is `t`-major: a map from `t`-exponents to
//! `s`-series. Two windows are tracked: a `t`-truncation for the outer
//! Laurent expansion and a uniform `s`-truncation shared by every slice;
//! terms `s^i t^j` with `j >= t_trunc` or `i >= s_trunc` are unknown.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scalars::{FieldDescriptor, FieldElement};

use super::puiseux::{Exp, PuiseuxSeries, Trunc};

/// Laurent-in-`t` series with Puiseux-in-`s` coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct TwoVarSeries {
    field: FieldDescriptor,
    /// `t`-exponents lie in `(1/t_ram) * Z`.
    t_ram: u32,
    /// Truncation in `t` (absolute exponent units).
    t_trunc: Trunc,
    /// Uniform truncation in `s`, applied to every slice.
    s_trunc: Trunc,
    /// Keys: `t`-exponent scaled by `t_ram`; values: nonempty `s`-series
    /// truncated at `s_trunc`.
    slices: BTreeMap<i64, PuiseuxSeries>,
}

impl TwoVarSeries {
    // -- constructors --------------------------------------------------------

    pub fn zero(field: &FieldDescriptor) -> Self {
        TwoVarSeries {
            field: field.clone(),
            t_ram: 1,
            t_trunc: Trunc::Infinite,
            s_trunc: Trunc::Infinite,
            slices: BTreeMap::new(),
        }
    }

    pub fn zero_to(field: &FieldDescriptor, s_trunc: Trunc, t_trunc: Trunc) -> Self {
        TwoVarSeries {
            field: field.clone(),
            t_ram: 1,
            t_trunc,
            s_trunc,
            slices: BTreeMap::new(),
        }
    }

    pub fn one(field: &FieldDescriptor) -> Self {
        TwoVarSeries::from_s_series(&PuiseuxSeries::one(field), Trunc::Infinite)
    }

    /// A pure `s`-series placed at `t^0`.
    pub fn from_s_series(s: &PuiseuxSeries, t_trunc: Trunc) -> Self {
        let mut slices = BTreeMap::new();
        let s_trunc = s.trunc();
        if !s.is_zero_to_precision() {
            slices.insert(0, s.clone());
        }
        TwoVarSeries {
            field: s.field().clone(),
            t_ram: 1,
            t_trunc,
            s_trunc,
            slices,
        }
    }

    /// A pure `t`-series (coefficients constant in `s`).
    pub fn from_t_series(t: &PuiseuxSeries, s_trunc: Trunc) -> Self {
        let mut slices = BTreeMap::new();
        for (e, c) in t.terms() {
            let cs = PuiseuxSeries::constant(c.clone()).truncate_to(s_trunc);
            if !cs.is_zero_to_precision() {
                let key = *(e * Exp::from_integer(t.ram() as i64)).numer();
                slices.insert(key, cs);
            }
        }
        TwoVarSeries {
            field: t.field().clone(),
            t_ram: t.ram(),
            t_trunc: t.trunc(),
            s_trunc,
            slices,
        }
    }

    /// The monomial `c * s^i t^j`.
    pub fn monomial(c: FieldElement, s_exp: Exp, t_exp: Exp) -> Self {
        let field = c.descriptor().clone();
        let s = PuiseuxSeries::monomial(c, s_exp);
        let mut slices = BTreeMap::new();
        if !s.is_zero_to_precision() {
            slices.insert(*t_exp.numer(), s);
        }
        TwoVarSeries {
            field,
            t_ram: *t_exp.denom() as u32,
            t_trunc: Trunc::Infinite,
            s_trunc: Trunc::Infinite,
            slices,
        }
    }

    /// Build from `(t-exponent, s-series)` slices with a shared `t`-window.
    pub fn from_slices(
        field: &FieldDescriptor,
        items: impl IntoIterator<Item = (Exp, PuiseuxSeries)>,
        t_trunc: Trunc,
    ) -> Result<Self> {
        let items: Vec<(Exp, PuiseuxSeries)> = items.into_iter().collect();
        let mut t_ram: i64 = 1;
        for (e, _) in &items {
            t_ram = t_ram.lcm(e.denom());
        }
        if let Trunc::At(a) = t_trunc {
            t_ram = t_ram.lcm(a.denom());
        }
        let mut s_trunc = Trunc::Infinite;
        for (_, s) in &items {
            s_trunc = s_trunc.min(s.trunc());
        }
        let mut out = TwoVarSeries {
            field: field.clone(),
            t_ram: t_ram as u32,
            t_trunc,
            s_trunc,
            slices: BTreeMap::new(),
        };
        for (e, s) in items {
            if s.field() != field {
                return Err(Error::WrongField("slice coefficients".into()));
            }
            if let Trunc::At(a) = t_trunc {
                if e >= a {
                    continue;
                }
            }
            let key = *(e * Exp::from_integer(t_ram)).numer();
            let clipped = s.truncate_to(s_trunc);
            if clipped.is_zero_to_precision() {
                continue;
            }
            match out.slices.entry(key) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(clipped);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let sum = o.get().add(&clipped)?;
                    if sum.is_zero_to_precision() {
                        o.remove();
                    } else {
                        *o.get_mut() = sum;
                    }
                }
            }
        }
        Ok(out)
    }

    // -- accessors -----------------------------------------------------------

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn t_trunc(&self) -> Trunc {
        self.t_trunc
    }

    pub fn s_trunc(&self) -> Trunc {
        self.s_trunc
    }

    pub fn t_ram(&self) -> u32 {
        self.t_ram
    }

    /// Iterate `(t-exponent, s-series)` slices in increasing `t`-order.
    pub fn slices(&self) -> impl Iterator<Item = (Exp, &PuiseuxSeries)> + '_ {
        let r = self.t_ram as i64;
        self.slices.iter().map(move |(k, v)| (Exp::new(*k, r), v))
    }

    /// The `s`-series coefficient of `t^e` (zero-to-`s_trunc` if absent).
    pub fn t_coeff(&self, e: Exp) -> PuiseuxSeries {
        let scaled = e * Exp::from_integer(self.t_ram as i64);
        if *scaled.denom() == 1 {
            if let Some(s) = self.slices.get(scaled.numer()) {
                return s.clone();
            }
        }
        match self.s_trunc {
            Trunc::Infinite => PuiseuxSeries::zero(&self.field),
            Trunc::At(a) => PuiseuxSeries::zero_to(&self.field, a),
        }
    }

    pub fn is_provably_zero(&self) -> bool {
        self.slices.is_empty() && self.t_trunc.is_infinite() && self.s_trunc.is_infinite()
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.slices.is_empty()
    }

    /// `ord_t`: smallest `t`-exponent with a nonzero slice. `Ok(None)` for
    /// an exact zero; an error when the leading form is hidden by either
    /// window.
    pub fn ord_t(&self) -> Result<Option<Exp>> {
        if let Some((k, _)) = self.slices.iter().next() {
            return Ok(Some(Exp::new(*k, self.t_ram as i64)));
        }
        if self.t_trunc.is_infinite() && self.s_trunc.is_infinite() {
            Ok(None)
        } else {
            Err(Error::IndeterminateLeadingForm(
                "no visible terms inside the (s, t) window".into(),
            ))
        }
    }

    /// Leading slice `(t-exponent, s-series)`.
    pub fn t_leading(&self) -> Result<Option<(Exp, PuiseuxSeries)>> {
        match self.ord_t()? {
            None => Ok(None),
            Some(e) => Ok(Some((e, self.t_coeff(e)))),
        }
    }

    /// Bi-order of the support: the minimum of `(s-exp, t-exp)` under the
    /// component-wise partial order, when it exists. `Ok(None)` signals
    /// "support has no minimum"; precision failures are errors.
    pub fn bi_order(&self) -> Result<Option<(Exp, Exp)>> {
        if self.slices.is_empty() {
            return Err(Error::IndeterminateLeadingForm("empty support".into()));
        }
        let mut min_s: Option<Exp> = None;
        let mut min_t: Option<Exp> = None;
        for (te, s) in self.slices() {
            let so = s
                .ord()?
                .ok_or_else(|| Error::IndeterminateLeadingForm("empty slice".into()))?;
            min_s = Some(match min_s {
                None => so,
                Some(m) => m.min(so),
            });
            min_t = Some(match min_t {
                None => te,
                Some(m) => m.min(te),
            });
        }
        let (ms, mt) = (min_s.unwrap(), min_t.unwrap());
        // the minimum exists iff the coefficient of s^ms t^mt is nonzero
        let slice = self.t_coeff(mt);
        if slice.coeff(ms).is_zero() {
            Ok(None)
        } else {
            Ok(Some((ms, mt)))
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::WrongField("series over different fields".into()));
        }
        Ok(())
    }

    fn with_t_ram(&self, multiple_of: u32) -> Self {
        let new_ram = (self.t_ram as i64).lcm(&(multiple_of as i64)) as u32;
        if new_ram == self.t_ram {
            return self.clone();
        }
        let f = (new_ram / self.t_ram) as i64;
        TwoVarSeries {
            field: self.field.clone(),
            t_ram: new_ram,
            t_trunc: self.t_trunc,
            s_trunc: self.s_trunc,
            slices: self.slices.iter().map(|(k, v)| (k * f, v.clone())).collect(),
        }
    }

    fn t_lower_bound(&self) -> Trunc {
        match self.slices.keys().next() {
            Some(k) => Trunc::At(Exp::new(*k, self.t_ram as i64)),
            None => self.t_trunc,
        }
    }

    /// Re-clip all slices to the current windows and drop empties.
    fn renormalize(mut self) -> Self {
        let s_trunc = self.s_trunc;
        let t_trunc = self.t_trunc;
        let r = self.t_ram as i64;
        let mut slices = std::mem::take(&mut self.slices);
        slices.retain(|k, _| match t_trunc {
            Trunc::Infinite => true,
            Trunc::At(a) => Exp::new(*k, r) < a,
        });
        let slices: BTreeMap<i64, PuiseuxSeries> = slices
            .into_iter()
            .map(|(k, v)| (k, v.truncate_to(s_trunc)))
            .filter(|(_, v)| !v.is_zero_to_precision())
            .collect();
        self.slices = slices;
        self
    }

    pub fn truncate_to(&self, s_trunc: Trunc, t_trunc: Trunc) -> Self {
        let mut out = self.clone();
        out.s_trunc = out.s_trunc.min(s_trunc);
        out.t_trunc = out.t_trunc.min(t_trunc);
        out.renormalize()
    }

    // -- arithmetic ----------------------------------------------------------

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let ram = (self.t_ram as i64).lcm(&(other.t_ram as i64)) as u32;
        let a = self.with_t_ram(ram);
        let b = other.with_t_ram(ram);
        let mut out = TwoVarSeries {
            field: self.field.clone(),
            t_ram: ram,
            t_trunc: a.t_trunc.min(b.t_trunc),
            s_trunc: a.s_trunc.min(b.s_trunc),
            slices: a.slices,
        };
        for (k, v) in b.slices {
            match out.slices.entry(k) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(v);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&v)?;
                    if s.is_zero_to_precision() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        Ok(out.renormalize())
    }

    pub fn neg(&self) -> Self {
        TwoVarSeries {
            field: self.field.clone(),
            t_ram: self.t_ram,
            t_trunc: self.t_trunc,
            s_trunc: self.s_trunc,
            slices: self.slices.iter().map(|(k, v)| (*k, v.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_provably_zero() || other.is_provably_zero() {
            return Ok(TwoVarSeries::zero(&self.field));
        }
        let ram = (self.t_ram as i64).lcm(&(other.t_ram as i64)) as u32;
        let a = self.with_t_ram(ram);
        let b = other.with_t_ram(ram);
        let t_trunc = {
            let t1 = match (a.t_trunc, b.t_lower_bound()) {
                (Trunc::Infinite, _) | (_, Trunc::Infinite) => Trunc::Infinite,
                (Trunc::At(x), Trunc::At(y)) => Trunc::At(x + y),
            };
            let t2 = match (b.t_trunc, a.t_lower_bound()) {
                (Trunc::Infinite, _) | (_, Trunc::Infinite) => Trunc::Infinite,
                (Trunc::At(x), Trunc::At(y)) => Trunc::At(x + y),
            };
            t1.min(t2)
        };
        let mut out = TwoVarSeries {
            field: self.field.clone(),
            t_ram: ram,
            t_trunc,
            s_trunc: Trunc::Infinite, // tightened below from slice products
            slices: BTreeMap::new(),
        };
        let cap = t_trunc.as_exp().map(|t| t * Exp::from_integer(ram as i64));
        let mut s_trunc = Trunc::Infinite;
        for (ka, va) in &a.slices {
            for (kb, vb) in &b.slices {
                let k = ka + kb;
                if let Some(c) = cap {
                    if Exp::from_integer(k) >= c {
                        continue;
                    }
                }
                let prod = va.mul(vb)?;
                s_trunc = s_trunc.min(prod.trunc());
                match out.slices.entry(k) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get().add(&prod)?;
                        *e.get_mut() = s;
                    }
                }
            }
        }
        // The hidden s-tails of each factor also bound the output window.
        let s_in = match (a.s_trunc, b.min_s_ord()?, b.s_trunc, a.min_s_ord()?) {
            (Trunc::Infinite, _, Trunc::Infinite, _) => Trunc::Infinite,
            (ta, ob, tb, oa) => {
                let t1 = match ta {
                    Trunc::Infinite => Trunc::Infinite,
                    Trunc::At(x) => Trunc::At(x + ob),
                };
                let t2 = match tb {
                    Trunc::Infinite => Trunc::Infinite,
                    Trunc::At(x) => Trunc::At(x + oa),
                };
                t1.min(t2)
            }
        };
        out.s_trunc = s_trunc.min(s_in);
        Ok(out.renormalize())
    }

    /// Smallest `s`-order over all slices (0 when there are none).
    fn min_s_ord(&self) -> Result<Exp> {
        let mut m: Option<Exp> = None;
        for (_, s) in self.slices() {
            if let Some(o) = s.ord()? {
                m = Some(match m {
                    None => o,
                    Some(x) => x.min(o),
                });
            }
        }
        Ok(m.unwrap_or_else(|| Exp::from_integer(0)))
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        let mut slices = BTreeMap::new();
        for (k, v) in &self.slices {
            let p = v.scale(c)?;
            if !p.is_zero_to_precision() {
                slices.insert(*k, p);
            }
        }
        Ok(TwoVarSeries {
            field: self.field.clone(),
            t_ram: self.t_ram,
            t_trunc: self.t_trunc,
            s_trunc: self.s_trunc,
            slices,
        })
    }

    /// Multiply by the exact monomial `t^e`.
    pub fn shift_t(&self, e: Exp) -> Self {
        let ram = (self.t_ram as i64).lcm(e.denom()) as u32;
        let s = self.with_t_ram(ram);
        let de = *(e * Exp::from_integer(ram as i64)).numer();
        TwoVarSeries {
            field: s.field,
            t_ram: ram,
            t_trunc: s.t_trunc.shift(e),
            s_trunc: s.s_trunc,
            slices: s.slices.into_iter().map(|(k, v)| (k + de, v)).collect(),
        }
    }

    /// Multiply by a pure `s`-series.
    pub fn scale_s(&self, c: &PuiseuxSeries) -> Result<Self> {
        self.mul(&TwoVarSeries::from_s_series(c, Trunc::Infinite))
    }

    /// Inverse, via a geometric expansion in the `t`-direction around the
    /// leading slice (which must itself be `s`-invertible).
    pub fn invert(&self, t_width: Option<i64>) -> Result<Self> {
        let (m, lead) = match self.t_leading()? {
            None => return Err(Error::DivisionByZeroSeries),
            Some(x) => x,
        };
        if self.slices.len() == 1
            && self.t_trunc.is_infinite()
            && lead.term_count() == 1
            && lead.trunc().is_infinite()
        {
            // exact monomial in both variables: exact inverse
            let (se, c) = lead.terms().next().map(|(a, b)| (a, b.clone())).unwrap();
            return Ok(TwoVarSeries::monomial(c.invert()?, -se, -m));
        }
        let lead_inv = lead.invert(None)?;
        let w = match self.t_trunc {
            Trunc::Infinite => Exp::from_integer(t_width.unwrap_or(super::DEFAULT_PRECISION)),
            Trunc::At(a) => {
                let natural = a - m;
                match t_width {
                    Some(wd) => natural.min(Exp::from_integer(wd)),
                    None => natural,
                }
            }
        };
        let unit = self
            .shift_t(-m)
            .scale_s(&lead_inv)?
            .truncate_to(Trunc::Infinite, Trunc::At(w));
        let u = unit.sub(&TwoVarSeries::one(&self.field))?;
        let mut acc = TwoVarSeries::one(&self.field).truncate_to(unit.s_trunc, Trunc::At(w));
        let mut pow = acc.clone();
        let steps = (w * Exp::from_integer(self.t_ram.max(u.t_ram) as i64))
            .ceil()
            .to_integer();
        for _ in 0..steps.max(0) {
            pow = pow.mul(&u)?.neg();
            if pow.is_zero_to_precision() {
                break;
            }
            acc = acc.add(&pow)?;
        }
        Ok(acc.scale_s(&lead_inv)?.shift_t(-m))
    }

    pub fn pow(&self, e: i64, t_width: Option<i64>) -> Result<Self> {
        let mut base = if e < 0 { self.invert(t_width)? } else { self.clone() };
        let mut acc = TwoVarSeries::one(&self.field);
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
        Ok(acc)
    }

    // -- derivations and the t-calculus ---------------------------------------

    /// `t d/dt`, slice-wise.
    pub fn derive_log_t(&self) -> Self {
        let r = self.t_ram as i64;
        let mut slices = BTreeMap::new();
        for (k, v) in &self.slices {
            let m = FieldElement::from_rational(
                &self.field,
                num_rational::BigRational::new((*k).into(), r.into()),
            );
            let m = match m {
                Ok(m) => m,
                Err(_) => continue,
            };
            let c = v.scale(&m).expect("same field");
            if !c.is_zero_to_precision() {
                slices.insert(*k, c);
            }
        }
        TwoVarSeries {
            field: self.field.clone(),
            t_ram: self.t_ram,
            t_trunc: self.t_trunc,
            s_trunc: self.s_trunc,
            slices,
        }
    }

    /// `d/dt`.
    pub fn derive_t(&self) -> Self {
        self.derive_log_t().shift_t(Exp::from_integer(-1))
    }

    /// `d/ds`, slice-wise. The `s`-window shrinks by one order.
    pub fn derive_s(&self) -> Self {
        let mut slices = BTreeMap::new();
        let mut s_trunc = match self.s_trunc {
            Trunc::Infinite => Trunc::Infinite,
            Trunc::At(a) => Trunc::At(a - Exp::from_integer(1)),
        };
        for (k, v) in &self.slices {
            let d = v.derive().truncate_to(s_trunc);
            s_trunc = s_trunc.min(d.trunc());
            if !d.is_zero_to_precision() {
                slices.insert(*k, d);
            }
        }
        TwoVarSeries {
            field: self.field.clone(),
            t_ram: self.t_ram,
            t_trunc: self.t_trunc,
            s_trunc,
            slices,
        }
    }

    /// `I_t` applied slice-wise in the `t`-direction.
    pub fn log_antiderivative_t(&self) -> Result<Self> {
        let r = self.t_ram as i64;
        let p = self.field.characteristic();
        let mut slices = BTreeMap::new();
        for (k, v) in &self.slices {
            if *k == 0 || (p > 0 && (*k).rem_euclid(p as i64) == 0) {
                return Err(Error::NonIntegrableTerm(format!("{}/{}", k, r)));
            }
            let m = FieldElement::from_rational(
                &self.field,
                num_rational::BigRational::new(r.into(), (*k).into()),
            )
            .map_err(|_| Error::NonIntegrableTerm(format!("{}/{}", k, r)))?;
            slices.insert(*k, v.scale(&m)?);
        }
        Ok(TwoVarSeries {
            field: self.field.clone(),
            t_ram: self.t_ram,
            t_trunc: self.t_trunc,
            s_trunc: self.s_trunc,
            slices,
        })
    }

    /// Terms with negative `t`-exponent; exact in `t` provided the window
    /// reaches 0.
    pub fn negative_part_t(&self) -> Result<Self> {
        if !self.t_trunc.covers(Exp::from_integer(0)) {
            return Err(Error::InsufficientPrecision(
                "negative part needs the t-window to reach 0".into(),
            ));
        }
        let slices: BTreeMap<i64, PuiseuxSeries> = self
            .slices
            .iter()
            .filter(|(k, _)| **k < 0)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        Ok(TwoVarSeries {
            field: self.field.clone(),
            t_ram: self.t_ram,
            t_trunc: Trunc::Infinite,
            s_trunc: self.s_trunc,
            slices,
        })
    }

    // -- specialization and substitution --------------------------------------

    /// Set `s = 0`: every slice is evaluated at 0, producing a 1-variable
    /// series in `t`. Fails on `s`-poles or when a constant term is hidden.
    pub fn specialize_s0(&self) -> Result<PuiseuxSeries> {
        let mut terms = Vec::new();
        for (e, s) in self.slices() {
            let c = s.eval_at_zero()?;
            if !c.is_zero() {
                terms.push((e, c));
            }
        }
        PuiseuxSeries::from_terms(&self.field, terms, self.t_trunc)
    }

    /// Substitute `s -> s_image`, `t -> t_image` (both two-variable
    /// series in the target pair of variables). `t_image` must have
    /// positive `t`-order; fractional powers require monomial images.
    pub fn substitute(&self, s_image: &TwoVarSeries, t_image: &TwoVarSeries) -> Result<Self> {
        let mut acc = TwoVarSeries::zero(&self.field);
        // conservative windows from orders of images
        let t_ord = match t_image.ord_t()? {
            Some(o) if o > Exp::from_integer(0) => o,
            _ => return Err(Error::NonPositiveOrder("t".into())),
        };
        for (te, slice) in self.slices() {
            // slice(s -> s_image): a two-variable value
            let slice_img = substitute_s_series(slice, s_image)?;
            // times t_image^te
            let t_pow = pow_frac(t_image, te)?;
            acc = acc.add(&slice_img.mul(&t_pow)?)?;
        }
        let t_cap = match self.t_trunc {
            Trunc::Infinite => Trunc::Infinite,
            Trunc::At(a) => Trunc::At(a * t_ord),
        };
        // The hidden s-tail maps to order >= s_trunc * ord(s_image); fold
        // that into both windows conservatively via the t-order of s_image.
        let s_cap = match (self.s_trunc, s_image.ord_t().ok().flatten()) {
            (Trunc::Infinite, _) => Trunc::Infinite,
            (Trunc::At(a), Some(o)) if o > Exp::from_integer(0) => Trunc::At(a * o),
            (Trunc::At(_), _) => Trunc::Infinite,
        };
        let t_cap = t_cap.min(s_cap);
        Ok(acc.truncate_to(acc.s_trunc, t_cap))
    }
}

/// `series(s -> image)` where `series` is a 1-variable `s`-series and the
/// image is a two-variable value.
pub(crate) fn substitute_s_series(
    series: &PuiseuxSeries,
    image: &TwoVarSeries,
) -> Result<TwoVarSeries> {
    let field = series.field().clone();
    let mut acc = TwoVarSeries::zero(&field);
    for (e, c) in series.terms() {
        let p = pow_frac(image, e)?;
        acc = acc.add(&p.scale(c)?)?;
    }
    // hidden tail: order >= trunc * ord(image)
    if let Trunc::At(a) = series.trunc() {
        // use the bi-degree-agnostic t-order as the erosion measure
        if let Ok(Some(o)) = image.ord_t() {
            if o > Exp::from_integer(0) {
                acc = acc.truncate_to(acc.s_trunc(), Trunc::At(a * o));
            }
        } else if let Ok(Some((so, _))) = image.bi_order() {
            let _ = so;
        }
    }
    Ok(acc)
}

/// Integer or fractional power of a two-variable series. Fractional
/// exponents require an exact monomial base.
fn pow_frac(base: &TwoVarSeries, e: Exp) -> Result<TwoVarSeries> {
    if *e.denom() == 1 {
        return base.pow(*e.numer(), None);
    }
    // monomial base: c * s^i t^j
    let mut it = base.slices();
    if let Some((te, s)) = it.next() {
        if it.next().is_none() && base.t_trunc().is_infinite() && s.term_count() == 1 {
            let (se, c) = s.terms().next().map(|(a, b)| (a, b.clone())).unwrap();
            if c.is_one() {
                return Ok(TwoVarSeries::monomial(c, se * e, te * e));
            }
        }
    }
    Err(Error::InvalidInput(
        "fractional power requires a unit monomial base".into(),
    ))
}

impl fmt::Display for TwoVarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (te, s) in self.slices() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = format!("{}", s.display_with("s"));
            // strip the per-slice O(): the windows are printed once at the end
            let body = match body.find(" + O(") {
                Some(i) => &body[..i],
                None => body.as_str(),
            };
            let body = if body.starts_with("O(") { "0" } else { body };
            if te == Exp::from_integer(0) {
                write!(f, "({})", body)?;
            } else if *te.denom() == 1 && *te.numer() > 0 {
                write!(f, "({})*t^{}", body, te.numer())?;
            } else if te == Exp::from_integer(1) {
                write!(f, "({})*t", body)?;
            } else {
                write!(f, "({})*t^({}/{})", body, te.numer(), te.denom())?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        match self.s_trunc {
            Trunc::At(a) => write!(f, " + O(s^({}/{}))", a.numer(), a.denom())?,
            Trunc::Infinite => {}
        }
        match self.t_trunc {
            Trunc::At(a) => write!(f, " + O(t^({}/{}))", a.numer(), a.denom())?,
            Trunc::Infinite => {}
        }
        Ok(())
    }
}

impl fmt::Debug for TwoVarSeries {
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
    fn monomial_substitution() {
        // f = s * t^{-1}; s -> u + v, t -> v^2 gives u v^{-2} + v^{-1}
        let f = TwoVarSeries::monomial(fe(1), exp(1, 1), exp(-1, 1));
        // images live in the (u, v) pair: u is the s-slot, v the t-slot
        let s_img = TwoVarSeries::monomial(fe(1), exp(1, 1), exp(0, 1))
            .add(&TwoVarSeries::monomial(fe(1), exp(0, 1), exp(1, 1)))
            .unwrap();
        let t_img = TwoVarSeries::monomial(fe(1), exp(0, 1), exp(2, 1));
        let r = f.substitute(&s_img, &t_img).unwrap();
        let expect = TwoVarSeries::monomial(fe(1), exp(1, 1), exp(-2, 1))
            .add(&TwoVarSeries::monomial(fe(1), exp(0, 1), exp(-1, 1)))
            .unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn specialization_at_zero() {
        // s * t^{-1} at s=0 is 0
        let f = TwoVarSeries::monomial(fe(1), exp(1, 1), exp(-1, 1));
        let sp = f.specialize_s0().unwrap();
        assert!(sp.is_provably_zero());
        // (1+s) t^{-1} at s=0 is t^{-1}
        let g = TwoVarSeries::monomial(fe(1), exp(0, 1), exp(-1, 1))
            .add(&TwoVarSeries::monomial(fe(1), exp(1, 1), exp(-1, 1)))
            .unwrap();
        let sp = g.specialize_s0().unwrap();
        assert_eq!(sp, PuiseuxSeries::monomial(fe(1), exp(-1, 1)));
    }

    #[test]
    fn flat_pair_derivations() {
        // a = (1+s)t^{-1}: t d/dt a = -(1+s)t^{-1}, d/ds a = t^{-1}
        let a = TwoVarSeries::monomial(fe(1), exp(0, 1), exp(-1, 1))
            .add(&TwoVarSeries::monomial(fe(1), exp(1, 1), exp(-1, 1)))
            .unwrap();
        let dlog = a.derive_log_t();
        assert_eq!(dlog, a.neg());
        let ds = a.derive_s();
        assert_eq!(ds, TwoVarSeries::monomial(fe(1), exp(0, 1), exp(-1, 1)));
    }

    #[test]
    fn bi_order_examples() {
        // s^{-1} t^{-1} + s^{-1}: support {(-1,-1), (-1,0)}: min = (-1,-1)
        let f = TwoVarSeries::monomial(fe(1), exp(-1, 1), exp(-1, 1))
            .add(&TwoVarSeries::monomial(fe(1), exp(-1, 1), exp(0, 1)))
            .unwrap();
        assert_eq!(f.bi_order().unwrap(), Some((exp(-1, 1), exp(-1, 1))));
        // s t^{-1} + t: support {(1,-1),(0,1)}: min would be (0,-1): absent
        let g = TwoVarSeries::monomial(fe(1), exp(1, 1), exp(-1, 1))
            .add(&TwoVarSeries::monomial(fe(1), exp(0, 1), exp(1, 1)))
            .unwrap();
        assert_eq!(g.bi_order().unwrap(), None);
    }

    #[test]
    fn inversion() {
        // 1/(1 - s t) = 1 + s t + s^2 t^2 + ...
        let f = TwoVarSeries::one(&q())
            .sub(&TwoVarSeries::monomial(fe(1), exp(1, 1), exp(1, 1)))
            .unwrap();
        let inv = f.invert(Some(4)).unwrap();
        assert_eq!(inv.t_coeff(exp(2, 1)).coeff(exp(2, 1)), fe(1));
        let prod = f.mul(&inv).unwrap();
        assert_eq!(prod.t_coeff(exp(0, 1)).coeff(exp(0, 1)), fe(1));
        assert_eq!(prod.slices().count(), 1);
    }
}
