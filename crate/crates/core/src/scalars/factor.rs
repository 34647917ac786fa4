//! Univariate factorization over the supported fields.
//!
//! - Finite fields: distinct-degree factorization followed by a
//!   deterministic equal-degree split (trace method, candidates drawn from
//!   a fixed enumeration of the field).
//! - `Q`: reduction to integer polynomials (mod-p factorization, Hensel
//!   lifting, subset recombination).
//! - Characteristic-zero towers: Trager's method through a cached
//!   primitive-element presentation.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::descriptor::PrimitiveData;
use super::poly::FPoly;
use super::zfactor;
use super::{FieldDescriptor, FieldElement};

/// Factor a polynomial into monic irreducible factors with multiplicities,
/// sorted deterministically (degree, then serialized coefficients).
pub fn factor(f: &FPoly) -> Result<Vec<(FPoly, usize)>> {
    let desc = f.descriptor().clone();
    if f.degree().is_none() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let f = f.make_monic()?;
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let mut out = if desc.characteristic() > 0 {
        factor_finite(&f)?
    } else if desc.tower_height() == 0 {
        zfactor::factor_over_q(&f)?
    } else {
        factor_tower(&f)?
    };
    out.sort_by_key(|(g, _)| {
        (g.degree().unwrap_or(0), g.coeffs().iter().map(|c| c.sort_key()).collect::<String>())
    });
    Ok(out)
}

/// Irreducibility test for monic polynomials of degree >= 1.
pub fn is_irreducible(f: &FPoly) -> Result<bool> {
    if f.degree() == Some(1) {
        return Ok(true);
    }
    let fs = factor(f)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

/// Roots of `f` lying in its own coefficient field, with multiplicities.
pub fn roots_in_field(f: &FPoly) -> Result<Vec<(FieldElement, usize)>> {
    let mut out = Vec::new();
    for (g, e) in factor(f)? {
        if g.degree() == Some(1) {
            out.push((g.coeff(0).neg(), e));
        }
    }
    Ok(out)
}

/// All roots of `f` over a splitting tower built on demand. Extensions are
/// adjoined deterministically: smallest irreducible non-linear factor
/// first (by degree, then serialized order).
pub fn split_completely(f: &FPoly) -> Result<(FieldDescriptor, Vec<(FieldElement, usize)>)> {
    let mut desc = f.descriptor().clone();
    let mut f = f.clone();
    loop {
        let fs = factor(&f)?;
        if fs.iter().all(|(g, _)| g.degree() == Some(1)) {
            let roots = fs.into_iter().map(|(g, e)| (g.coeff(0).neg(), e)).collect();
            return Ok((desc, roots));
        }
        let (g, _) = fs
            .iter()
            .find(|(g, _)| g.degree().map(|d| d > 1).unwrap_or(false))
            .expect("non-linear factor exists");
        // `g` is certified irreducible by `factor`, so skip the re-check.
        desc = desc.extend_unchecked(g);
        f = f.embed(&desc)?;
    }
}

// ---------------------------------------------------------------------------
// finite fields
// ---------------------------------------------------------------------------

fn field_size(desc: &FieldDescriptor) -> BigUint {
    let p = BigUint::from(desc.characteristic());
    let mut q = p.clone();
    for _ in 1..desc.total_degree().max(1) {
        q = &q * &p;
    }
    q
}

/// The `n`-th element of the field in a fixed enumeration (base-p digits
/// over the monomial basis of the tower).
fn element_from_index(desc: &FieldDescriptor, n: u64) -> FieldElement {
    let p = desc.characteristic();
    let height = desc.tower_height();
    let mut elem = FieldElement::zero(desc);
    let mut m = n;
    let mut idx = vec![0usize; height];
    let total = desc.total_degree();
    for _ in 0..total.max(1) {
        let d = (m % p) as i64;
        m /= p;
        if d != 0 {
            let mut mono = FieldElement::from_integer(desc, d);
            for (lvl, &e) in idx.iter().enumerate() {
                if e > 0 {
                    let g = FieldElement::generator(desc, lvl);
                    mono = mono.mul(&g.pow(e as i64).unwrap()).unwrap();
                }
            }
            elem = elem.add(&mono).unwrap();
        }
        let mut carry = true;
        for (lvl, e) in idx.iter_mut().enumerate() {
            if !carry {
                break;
            }
            *e += 1;
            if *e >= desc.level_degree(lvl) {
                *e = 0;
            } else {
                carry = false;
            }
        }
    }
    elem
}

fn powmod(base: &FPoly, exp: &BigUint, modulus: &FPoly) -> Result<FPoly> {
    let desc = base.descriptor().clone();
    let mut acc = FPoly::one(&desc);
    let mut b = base.divrem(modulus)?.1;
    let bits = exp.bits();
    for i in 0..bits {
        if exp.bit(i) {
            acc = acc.mul(&b)?.divrem(modulus)?.1;
        }
        if i + 1 < bits {
            b = b.mul(&b)?.divrem(modulus)?.1;
        }
    }
    Ok(acc)
}

fn factor_finite(f: &FPoly) -> Result<Vec<(FPoly, usize)>> {
    let mut out: Vec<(FPoly, usize)> = Vec::new();
    let sf = f.squarefree_part()?;
    for g in factor_squarefree_finite(&sf)? {
        let mut e = 0usize;
        let mut h = f.clone();
        loop {
            let (q, r) = h.divrem(&g)?;
            if !r.is_zero() {
                break;
            }
            e += 1;
            h = q;
        }
        debug_assert!(e >= 1);
        out.push((g, e));
    }
    Ok(out)
}

fn factor_squarefree_finite(f: &FPoly) -> Result<Vec<FPoly>> {
    let desc = f.descriptor().clone();
    match f.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(1) => return Ok(vec![f.clone()]),
        _ => {}
    }
    let q = field_size(&desc);
    let x = FPoly::monomial(FieldElement::one(&desc), 1);

    // Distinct-degree stage.
    let mut groups: Vec<(FPoly, usize)> = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0usize;
    while rest.degree().map(|dd| dd > 0).unwrap_or(false) {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            let dd = rest.degree().unwrap();
            groups.push((rest.clone(), dd));
            break;
        }
        h = powmod(&h, &q, &rest)?;
        let g = h.sub(&x)?.gcd(&rest)?;
        if g.degree().map(|dd| dd > 0).unwrap_or(false) {
            groups.push((g.clone(), d));
            let (qq, _) = rest.divrem(&g)?;
            rest = qq.make_monic()?;
            h = h.divrem(&rest)?.1;
        }
    }

    let mut out = Vec::new();
    for (g, d) in groups {
        split_equal_degree(&g, d, &q, &mut out)?;
    }
    Ok(out)
}

/// Split a product of distinct irreducibles of known equal degree `d`,
/// deterministically.
fn split_equal_degree(g: &FPoly, d: usize, q: &BigUint, out: &mut Vec<FPoly>) -> Result<()> {
    let desc = g.descriptor().clone();
    let deg = g.degree().unwrap();
    if deg == d {
        out.push(g.make_monic()?);
        return Ok(());
    }
    let p = desc.characteristic();
    let mut qd = BigUint::one();
    for _ in 0..d {
        qd = &qd * q;
    }
    let fsz = field_size(&desc).to_u64().unwrap_or(u64::MAX).max(1);
    let max_iter = 64u64.saturating_mul(deg as u64 + 2);
    for trial in 0..max_iter {
        let c = element_from_index(&desc, trial % fsz);
        let deg_u = 1 + (trial / fsz) as usize;
        let u = FPoly::monomial(FieldElement::one(&desc), deg_u)
            .add(&FPoly::from_coeffs(desc.clone(), vec![c]))?;
        let w = if p == 2 {
            // trace to F_2: u + u^2 + u^4 + ... over log2(q^d) squarings
            let bits = qd.bits() - 1;
            let mut acc = u.divrem(g)?.1;
            let mut term = acc.clone();
            for _ in 1..bits {
                term = term.mul(&term)?.divrem(g)?.1;
                acc = acc.add(&term)?;
            }
            acc
        } else {
            let e = (&qd - BigUint::one()) / BigUint::from(2u32);
            powmod(&u, &e, g)?.sub(&FPoly::one(&desc))?
        };
        let t = w.gcd(g)?;
        if let Some(dt) = t.degree() {
            if dt > 0 && dt < deg {
                split_equal_degree(&t, d, q, out)?;
                let (rest, _) = g.divrem(&t)?;
                split_equal_degree(&rest.make_monic()?, d, q, out)?;
                return Ok(());
            }
        }
    }
    Err(Error::IterationCap(
        "equal-degree splitting exhausted its candidate sequence".into(),
    ))
}

// ---------------------------------------------------------------------------
// characteristic-zero towers (Trager)
// ---------------------------------------------------------------------------

fn rat(desc: &FieldDescriptor, r: &BigRational) -> FieldElement {
    FieldElement::from_rational(desc, r.clone()).expect("char 0")
}

/// The primitive field `Q(gamma)` together with the tower generators
/// expressed inside it.
struct GammaView {
    field: FieldDescriptor,
    gens: Vec<FieldElement>,
    deg: usize,
}

impl GammaView {
    fn build(prim: &PrimitiveData) -> Result<GammaView> {
        let q = FieldDescriptor::rationals();
        let mp = FPoly::from_coeffs(q.clone(), prim.minpoly.iter().map(|c| rat(&q, c)).collect());
        let field = q.extend_unchecked(&mp);
        let gamma = FieldElement::generator(&field, 0);
        let gens = prim
            .generators
            .iter()
            .map(|g| {
                FPoly::from_coeffs(field.clone(), g.iter().map(|c| rat(&field, c)).collect())
                    .eval(&gamma)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GammaView { field, gens, deg: prim.minpoly.len() - 1 })
    }

    /// Rewrite a tower element as gamma-power coordinates (length `deg`).
    fn coords(&self, e: &FieldElement) -> Result<Vec<BigRational>> {
        let v = eval_repr_at(e.repr(), &self.gens, &self.field)?;
        Ok(gamma_poly_coeffs(&v, self.deg))
    }
}

fn eval_repr_at(
    r: &super::element::Repr,
    gens: &[FieldElement],
    target: &FieldDescriptor,
) -> Result<FieldElement> {
    use super::element::Repr;
    match r {
        Repr::Rat(q) => FieldElement::from_rational(target, q.clone()),
        Repr::Fp(_) => Err(Error::WrongField("characteristic mismatch".into())),
        Repr::Ext(l, v) => {
            let g = &gens[l - 1];
            let mut acc = FieldElement::zero(target);
            for c in v.iter().rev() {
                acc = acc.mul(g)?.add(&eval_repr_at(c, gens, target)?)?;
            }
            Ok(acc)
        }
    }
}

/// Coordinates of a `Q(gamma)` element w.r.t. the gamma power basis,
/// padded to `deg`.
fn gamma_poly_coeffs(e: &FieldElement, deg: usize) -> Vec<BigRational> {
    use super::element::Repr;
    let mut out = vec![BigRational::zero(); deg];
    match e.repr() {
        Repr::Rat(r) => {
            out[0] = r.clone();
        }
        Repr::Ext(_, v) => {
            for (i, c) in v.iter().enumerate() {
                match c {
                    Repr::Rat(r) => out[i] = r.clone(),
                    _ => unreachable!("gamma field has height 1"),
                }
            }
        }
        Repr::Fp(_) => unreachable!("characteristic 0"),
    }
    out
}

/// Lagrange interpolation through the given rational sample points.
fn interpolate_q(samples: &[(i64, FieldElement)], desc: &FieldDescriptor) -> Result<FPoly> {
    let mut acc = FPoly::zero(desc);
    for (i, (xi, yi)) in samples.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut num = FPoly::one(desc);
        let mut den = FieldElement::one(desc);
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            num = num.mul(&FPoly::linear_root(&FieldElement::from_integer(desc, *xj)))?;
            den = den.mul(&FieldElement::from_integer(desc, xi - xj))?;
        }
        acc = acc.add(&num.scale(&yi.div(&den)?)?)?;
    }
    Ok(acc)
}

/// Resultant in `x` of `a(x)` (constant in `T`) and `b(x, T)`, both given
/// by their `x`-coefficient lists of `Q[T]`-polynomials. Computed by
/// evaluation and interpolation; sample points where the `x`-leading
/// coefficient of `b` vanishes are skipped so every sample sees the same
/// `x`-degree.
fn resultant_x_interp(
    a_coeffs: &[FPoly],
    b_coeffs: &[FPoly],
    degree_bound: usize,
    desc: &FieldDescriptor,
) -> Result<FPoly> {
    let mut b = b_coeffs.to_vec();
    while b.last().map(FPoly::is_zero).unwrap_or(false) {
        b.pop();
    }
    if b.is_empty() {
        return Ok(FPoly::zero(desc));
    }
    let lead = b.last().unwrap().clone();
    let mut samples = Vec::with_capacity(degree_bound + 1);
    let mut t = 0i64;
    while samples.len() <= degree_bound {
        let tv = FieldElement::from_integer(desc, t);
        if lead.eval(&tv)?.is_zero() {
            t += 1;
            continue;
        }
        let av = FPoly::from_coeffs(
            desc.clone(),
            a_coeffs.iter().map(|c| c.eval(&tv)).collect::<Result<Vec<_>>>()?,
        );
        let bv = FPoly::from_coeffs(
            desc.clone(),
            b.iter().map(|c| c.eval(&tv)).collect::<Result<Vec<_>>>()?,
        );
        samples.push((t, av.resultant(&bv)?));
        t += 1;
        if t > 4 * (degree_bound as i64 + 2) {
            return Err(Error::IterationCap("resultant interpolation".into()));
        }
    }
    interpolate_q(&samples, desc)
}

/// Norm of `sum_j c_j(gamma) y^j` under `y = T - lam*gamma`:
/// `Res_x(minpoly(x), sum_j c_j(x) (T - lam x)^j)` as a `Q[T]`-polynomial.
fn norm_after_shift(
    minpoly: &[BigRational],
    coeff_coords: &[Vec<BigRational>],
    lam: i64,
    q: &FieldDescriptor,
) -> Result<FPoly> {
    let prev_deg = minpoly.len() - 1;
    let next_deg = coeff_coords.len() - 1;
    let bound = prev_deg * next_deg;
    let a_coeffs: Vec<FPoly> = minpoly
        .iter()
        .map(|c| FPoly::from_coeffs(q.clone(), vec![rat(q, c)]))
        .collect();
    // b[x-power] = polynomial in T
    let mut b: Vec<Vec<BigRational>> = Vec::new();
    let mut binom = vec![vec![BigRational::zero(); next_deg + 1]; next_deg + 1];
    for j in 0..=next_deg {
        binom[j][0] = BigRational::one();
        for k in 1..=j {
            let upper = binom[j - 1][k - 1].clone();
            let lower = if k <= j - 1 { binom[j - 1][k].clone() } else { BigRational::zero() };
            binom[j][k] = upper + lower;
        }
    }
    let lam_r = BigRational::from(num_bigint::BigInt::from(-lam));
    for (j, cj) in coeff_coords.iter().enumerate() {
        for (i, ci) in cj.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            // c_i x^i (T - lam x)^j = sum_k binom(j,k) T^k (-lam)^{j-k} x^{i+j-k}
            for k in 0..=j {
                let mut coef = ci * &binom[j][k];
                for _ in 0..(j - k) {
                    coef = coef * &lam_r;
                }
                let xe = i + j - k;
                if b.len() <= xe {
                    b.resize(xe + 1, Vec::new());
                }
                if b[xe].len() <= k {
                    b[xe].resize(k + 1, BigRational::zero());
                }
                b[xe][k] = &b[xe][k] + coef;
            }
        }
    }
    let b_coeffs: Vec<FPoly> = b
        .iter()
        .map(|tc| FPoly::from_coeffs(q.clone(), tc.iter().map(|c| rat(q, c)).collect()))
        .collect();
    resultant_x_interp(&a_coeffs, &b_coeffs, bound, q)
}

/// Build (or fetch) the primitive-element presentation of a
/// characteristic-zero tower.
fn primitive_data(desc: &FieldDescriptor) -> Result<PrimitiveData> {
    debug_assert_eq!(desc.characteristic(), 0);
    debug_assert!(desc.tower_height() >= 1);
    desc.0
        .primitive
        .get_or_try_init(|| compute_primitive_data(desc))
        .cloned()
}

fn compute_primitive_data(desc: &FieldDescriptor) -> Result<PrimitiveData> {
    let q = FieldDescriptor::rationals();
    let height = desc.tower_height();

    // Level 1: gamma = g1.
    let level1 = desc.level_minpoly(0);
    let mut minpoly: Vec<BigRational> = (0..=level1.degree().unwrap())
        .map(|i| {
            level1
                .coeff(i)
                .as_rational()
                .cloned()
                .expect("level-1 minimal polynomial has rational coefficients")
        })
        .collect();
    let mut generators: Vec<Vec<BigRational>> =
        vec![vec![BigRational::zero(), BigRational::one()]];
    // gamma as an element of the full tower
    let mut gamma_tower = FieldElement::generator(desc, 0);

    for lvl in 1..height {
        let prev_deg = minpoly.len() - 1;
        let view = GammaView::build(&PrimitiveData {
            minpoly: minpoly.clone(),
            generators: generators.clone(),
            gamma: gamma_tower.repr().clone(),
        })?;

        // Coefficients of the next minimal polynomial in gamma coordinates.
        let next_mp = desc.level_minpoly(lvl);
        let next_deg = next_mp.degree().unwrap();
        let coeff_coords: Vec<Vec<BigRational>> = (0..=next_deg)
            .map(|i| view.coords(&next_mp.coeff(i)))
            .collect::<Result<Vec<_>>>()?;

        // Search for a lambda making the norm squarefree.
        let mut found = None;
        for k in 1..=32i64 {
            for lam in [k, -k] {
                let cand = norm_after_shift(&minpoly, &coeff_coords, lam, &q)?;
                if cand.is_zero() {
                    continue;
                }
                let g = cand.gcd(&cand.derivative())?;
                if g.degree() == Some(0) {
                    found = Some((lam, cand.make_monic()?));
                    break;
                }
            }
            if found.is_some() {
                break;
            }
        }
        let (lam, new_minpoly) =
            found.ok_or_else(|| Error::IterationCap("primitive element search".into()))?;
        debug_assert_eq!(new_minpoly.degree(), Some(prev_deg * next_deg));

        let new_field = q.extend_unchecked(&new_minpoly);
        let gamma_new = FieldElement::generator(&new_field, 0);

        // gamma_prev inside the new field: unique common root of
        // minpoly_prev(x) and M(x, gamma_new - lam*x).
        let mp_prev_new = FPoly::from_coeffs(
            new_field.clone(),
            minpoly.iter().map(|c| rat(&new_field, c)).collect(),
        );
        let y_of_x = FPoly::from_coeffs(
            new_field.clone(),
            vec![gamma_new.clone(), FieldElement::from_integer(&new_field, -lam)],
        );
        let mut m_sub = FPoly::zero(&new_field);
        let mut ypow = FPoly::one(&new_field);
        for cj in &coeff_coords {
            let cpoly = FPoly::from_coeffs(
                new_field.clone(),
                cj.iter().map(|c| rat(&new_field, c)).collect(),
            );
            m_sub = m_sub.add(&cpoly.mul(&ypow)?)?;
            ypow = ypow.mul(&y_of_x)?;
        }
        let lin = mp_prev_new.gcd(&m_sub)?;
        if lin.degree() != Some(1) {
            return Err(Error::IterationCap(
                "primitive element: common root not unique".into(),
            ));
        }
        let gamma_prev_in_new = lin.coeff(0).neg();

        let deg_new = new_minpoly.degree().unwrap();
        let mut new_gens = Vec::with_capacity(lvl + 1);
        for old in &generators {
            let oldp = FPoly::from_coeffs(
                new_field.clone(),
                old.iter().map(|c| rat(&new_field, c)).collect(),
            );
            let v = oldp.eval(&gamma_prev_in_new)?;
            new_gens.push(gamma_poly_coeffs(&v, deg_new));
        }
        // theta_lvl = gamma_new - lam * gamma_prev
        let theta = gamma_new.sub(&gamma_prev_in_new.scale_int(lam))?;
        new_gens.push(gamma_poly_coeffs(&theta, deg_new));

        generators = new_gens;
        minpoly = (0..=deg_new)
            .map(|i| new_minpoly.coeff(i).as_rational().cloned().unwrap())
            .collect();
        // gamma = theta_lvl + lam * gamma_prev, tracked inside the tower
        gamma_tower = FieldElement::generator(desc, lvl).add(&gamma_tower.scale_int(lam))?;
    }

    Ok(PrimitiveData { minpoly, generators, gamma: gamma_tower.repr().clone() })
}

/// Trager factorization of a monic polynomial over a characteristic-zero
/// tower.
fn factor_tower(f: &FPoly) -> Result<Vec<(FPoly, usize)>> {
    let desc = f.descriptor().clone();
    let prim = primitive_data(&desc)?;
    let view = GammaView::build(&prim)?;
    let q = FieldDescriptor::rationals();
    let gamma_tower = FieldElement::from_repr(desc.clone(), prim.gamma.clone());

    let sf = f.squarefree_part()?;
    let multiplicity_of = |g: &FPoly| -> Result<usize> {
        let mut e = 0usize;
        let mut h = f.clone();
        loop {
            let (qq, r) = h.divrem(g)?;
            if !r.is_zero() {
                break;
            }
            e += 1;
            h = qq;
        }
        Ok(e)
    };

    match sf.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(1) => return Ok(vec![(sf.clone(), multiplicity_of(&sf)?)]),
        _ => {}
    }

    // Shift search: norm of sf(T - lam*gamma) must be squarefree.
    let mut chosen: Option<(i64, FPoly)> = None;
    for lam_t in [0i64, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7] {
        let g = sf.shift(&gamma_tower.scale_int(-lam_t))?;
        let coeff_coords: Vec<Vec<BigRational>> = (0..=g.degree().unwrap())
            .map(|i| view.coords(&g.coeff(i)))
            .collect::<Result<Vec<_>>>()?;
        let norm = norm_after_shift(&prim.minpoly, &coeff_coords, 0, &q)?;
        if norm.is_zero() {
            continue;
        }
        let d = norm.gcd(&norm.derivative())?;
        if d.degree() == Some(0) {
            chosen = Some((lam_t, norm.make_monic()?));
            break;
        }
    }
    let (lam_t, norm) =
        chosen.ok_or_else(|| Error::IterationCap("norm shift search in tower factorization".into()))?;

    let mut out: Vec<(FPoly, usize)> = Vec::new();
    for (ni, _) in zfactor::factor_over_q(&norm)? {
        let ni_tower = ni.embed_into_tower(&desc)?;
        let shifted = ni_tower.shift(&gamma_tower.scale_int(lam_t))?;
        let g = sf.gcd(&shifted)?;
        if g.degree().map(|d| d >= 1).unwrap_or(false) {
            let e = multiplicity_of(&g)?;
            debug_assert!(e >= 1);
            out.push((g, e));
        }
    }
    Ok(out)
}

impl FPoly {
    /// Interpret a rational polynomial inside a tower over `Q`.
    pub(crate) fn embed_into_tower(&self, tower: &FieldDescriptor) -> Result<FPoly> {
        let mut out = Vec::with_capacity(self.coeffs().len());
        for c in self.coeffs() {
            let r = c
                .as_rational()
                .ok_or_else(|| Error::WrongField("expected rational coefficients".into()))?;
            out.push(FieldElement::from_rational(tower, r.clone())?);
        }
        Ok(FPoly::from_coeffs(tower.clone(), out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn qpoly(coeffs: &[i64]) -> FPoly {
        let d = q();
        FPoly::from_coeffs(
            d.clone(),
            coeffs.iter().map(|&n| FieldElement::from_integer(&d, n)).collect(),
        )
    }

    fn fppoly(p: u64, coeffs: &[i64]) -> FPoly {
        let d = FieldDescriptor::prime_field(p).unwrap();
        FPoly::from_coeffs(
            d.clone(),
            coeffs.iter().map(|&n| FieldElement::from_integer(&d, n)).collect(),
        )
    }

    #[test]
    fn extend_q_by_sqrt2_and_reject_square() {
        let d = q();
        assert!(d.extend(&qpoly(&[-2, 0, 1])).is_ok());
        let err = d.extend(&qpoly(&[-4, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::ReducibleMinimalPolynomial(_)));
    }

    #[test]
    fn extend_f5_by_nonsquare() {
        // 2 is a non-square mod 5 (squares are {0,1,4}): T^2-2 gives F_25.
        let squares: Vec<u64> = (0..5u64).map(|x| x * x % 5).collect();
        assert!(!squares.contains(&2));
        let f5 = FieldDescriptor::prime_field(5).unwrap();
        let k = f5.extend(&fppoly(5, &[-2, 0, 1])).unwrap();
        assert_eq!(k.total_degree(), 2);
        assert!(matches!(
            f5.extend(&fppoly(5, &[-4, 0, 1])),
            Err(Error::ReducibleMinimalPolynomial(_))
        ));
    }

    #[test]
    fn finite_field_factorization_reassembles() {
        let f = fppoly(5, &[1, 0, 0, 0, 1]); // x^4 + 1
        let fs = factor(&f).unwrap();
        let total: usize = fs.iter().map(|(g, e)| g.degree().unwrap() * e).sum();
        assert_eq!(total, 4);
        let mut prod = FPoly::one(f.descriptor());
        for (g, e) in &fs {
            for _ in 0..*e {
                prod = prod.mul(g).unwrap();
            }
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn finite_field_roots() {
        let f = fppoly(7, &[-1, 0, 1]); // x^2 - 1 over F_7
        let mut roots: Vec<u64> = roots_in_field(&f)
            .unwrap()
            .into_iter()
            .map(|(r, _)| r.as_fp().unwrap())
            .collect();
        roots.sort();
        assert_eq!(roots, vec![1, 6]);
    }

    #[test]
    fn f25_splitting() {
        // x^2 - 2 over F_5 is irreducible; over F_25 it splits.
        let f = fppoly(5, &[-2, 0, 1]);
        let (k, roots) = split_completely(&f).unwrap();
        assert_eq!(k.total_degree(), 2);
        assert_eq!(roots.len(), 2);
        for (r, _) in roots {
            assert_eq!(r.mul(&r).unwrap(), FieldElement::from_integer(&k, 2));
        }
    }

    #[test]
    fn split_completely_adjoins_roots() {
        let f = qpoly(&[-2, 0, 1]);
        let (k, roots) = split_completely(&f).unwrap();
        assert_eq!(k.tower_height(), 1);
        assert_eq!(roots.len(), 2);
        for (r, e) in roots {
            assert_eq!(e, 1);
            assert_eq!(r.mul(&r).unwrap(), FieldElement::from_integer(&k, 2));
        }
    }

    #[test]
    fn tower_factorization_via_trager() {
        // Over Q(sqrt2), x^2 - 2 = (x - g)(x + g).
        let d = q();
        let k = d.extend(&qpoly(&[-2, 0, 1])).unwrap();
        let f = qpoly(&[-2, 0, 1]).embed_into_tower(&k).unwrap();
        let fs = factor(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(g, _)| g.degree() == Some(1)));
    }

    #[test]
    fn two_level_split() {
        // x^4 - 5x^2 + 6 = (x^2-2)(x^2-3): splitting field of degree 4.
        let f = qpoly(&[6, 0, -5, 0, 1]);
        let (k, roots) = split_completely(&f).unwrap();
        assert_eq!(roots.iter().map(|(_, e)| e).sum::<usize>(), 4);
        assert_eq!(k.total_degree(), 4);
    }

    #[test]
    fn irreducible_cubic_over_extension() {
        // x^3 - 2 over Q(sqrt2) stays irreducible.
        let d = q();
        let k = d.extend(&qpoly(&[-2, 0, 1])).unwrap();
        let f = qpoly(&[-2, 0, 0, 1]).embed_into_tower(&k).unwrap();
        assert!(is_irreducible(&f).unwrap());
    }
}
