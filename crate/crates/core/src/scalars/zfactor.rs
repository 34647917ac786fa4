//! Factorization of integer polynomials: factor mod a good small prime,
//! Hensel-lift to a coefficient bound, recombine subsets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::factor;
use super::poly::FPoly;
use super::{FieldDescriptor, FieldElement};

type ZPoly = Vec<BigInt>;

fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().map(Zero::is_zero).unwrap_or(false) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push(x - y);
    }
    trim(out)
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push(x + y);
    }
    trim(out)
}

fn mod_sym(a: &BigInt, m: &BigInt) -> BigInt {
    let mut r = a.mod_floor(m);
    if &r + &r > *m {
        r -= m;
    }
    r
}

fn zpoly_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| mod_sym(c, m)).collect())
}

/// Division in (Z/m)[x] by a monic divisor, symmetric representatives.
fn zdivrem_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let mut rem = zpoly_mod(a, m);
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quo = vec![BigInt::zero(); rem.len() - db];
    while rem.len() > db {
        let da = rem.len() - 1;
        let q = rem[da].clone();
        let shift = da - db;
        for (i, c) in b.iter().enumerate() {
            let t = &q * c;
            rem[shift + i] = mod_sym(&(&rem[shift + i] - t), m);
        }
        quo[shift] = q;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quo), rem)
}

/// Quadratic Hensel step: given `f = g*h mod m` with `g, h` monic and
/// `s*g + t*h = 1 mod m` (deg s < deg h, deg t < deg g), produce the same
/// data mod `m^2`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    // e = f - g*h mod m^2
    let e = zpoly_mod(&zsub(f, &zmul(g, h)), &m2);
    // s*e = q*h + r
    let se = zpoly_mod(&zmul(s, &e), &m2);
    let (q, r) = zdivrem_monic_mod(&se, h, &m2);
    // g' = g + t*e + q*g ; h' = h + r
    let g1 = zpoly_mod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h1 = zpoly_mod(&zadd(h, &r), &m2);

    // Lift the Bezout pair: b = s*g' + t*h' - 1 mod m^2
    let b = zpoly_mod(
        &zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &[BigInt::one()]),
        &m2,
    );
    // s*b = c*h' + d
    let sb = zpoly_mod(&zmul(s, &b), &m2);
    let (c, d) = zdivrem_monic_mod(&sb, &h1, &m2);
    let s1 = zpoly_mod(&zsub(s, &d), &m2);
    // t' = t - t*b - c*g'
    let t1 = zpoly_mod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lift a multi-factor factorization `f = prod f_i mod p` (all monic, f
/// monic) to mod `p^(2^iters) >= bound`, via a balanced product tree.
fn hensel_lift_tree(f: &ZPoly, factors: &[ZPoly], p: &BigInt, bound: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g: ZPoly = left
        .iter()
        .fold(vec![BigInt::one()], |acc, x| zpoly_mod(&zmul(&acc, x), p));
    let h: ZPoly = right
        .iter()
        .fold(vec![BigInt::one()], |acc, x| zpoly_mod(&zmul(&acc, x), p));
    // Bezout over F_p via FPoly machinery.
    let (s, t) = bezout_mod_p(&g, &h, p);
    let (mut gm, mut hm, mut sm, mut tm) = (g, h, s, t);
    let mut m = p.clone();
    while m < *bound {
        let (g1, h1, s1, t1) = hensel_step(f, &gm, &hm, &sm, &tm, &m);
        gm = g1;
        hm = h1;
        sm = s1;
        tm = t1;
        m = &m * &m;
    }
    let mut out = hensel_lift_tree(&gm, left, p, bound);
    out.extend(hensel_lift_tree(&hm, right, p, bound));
    out
}

fn bezout_mod_p(g: &[BigInt], h: &[BigInt], p: &BigInt) -> (ZPoly, ZPoly) {
    let pd = FieldDescriptor::prime_field(p.to_u64_digits().1[0]).expect("prime");
    let to_fp = |v: &[BigInt]| -> FPoly {
        FPoly::from_coeffs(
            pd.clone(),
            v.iter()
                .map(|c| {
                    FieldElement::from_rational(&pd, num_rational::BigRational::from(c.clone()))
                        .expect("integer")
                })
                .collect(),
        )
    };
    let gp = to_fp(g);
    let hp = to_fp(h);
    let (one, s, t) = gp.ext_gcd(&hp).expect("coprime mod p");
    debug_assert!(one.degree() == Some(0));
    let back = |f: &FPoly| -> ZPoly {
        trim(
            f.coeffs()
                .iter()
                .map(|c| {
                    let r = c.as_fp().unwrap();
                    mod_sym(&BigInt::from(r), p)
                })
                .collect(),
        )
    };
    (back(&s), back(&t))
}

/// Factor a monic square-free integer polynomial into irreducible monic
/// integer factors.
fn factor_squarefree_monic(f: &ZPoly) -> Result<Vec<ZPoly>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    // Pick a prime keeping f squarefree mod p.
    let mut chosen: Option<u64> = None;
    for p in [
        3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97, 101, 103,
    ] {
        let pb = BigInt::from(p);
        let fp = zpoly_mod(f, &pb);
        if fp.len() != f.len() {
            continue; // leading coefficient vanished (cannot happen: monic)
        }
        let pd = FieldDescriptor::prime_field(p)?;
        let fpoly = FPoly::from_coeffs(
            pd.clone(),
            fp.iter()
                .map(|c| {
                    FieldElement::from_rational(&pd, num_rational::BigRational::from(c.clone()))
                })
                .collect::<Result<Vec<_>>>()?,
        );
        let g = fpoly.gcd(&fpoly.derivative())?;
        if g.degree() == Some(0) {
            chosen = Some(p);
            break;
        }
    }
    let p = chosen.ok_or_else(|| {
        Error::InvalidInput("no small prime keeps the polynomial squarefree".into())
    })?;
    let pb = BigInt::from(p);
    let pd = FieldDescriptor::prime_field(p)?;
    let fpoly = FPoly::from_coeffs(
        pd.clone(),
        f.iter()
            .map(|c| FieldElement::from_rational(&pd, num_rational::BigRational::from(c.clone())))
            .collect::<Result<Vec<_>>>()?,
    );
    let modular: Vec<FPoly> = factor::factor(&fpoly)?
        .into_iter()
        .flat_map(|(g, e)| std::iter::repeat(g).take(e))
        .collect();
    if modular.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    let modular_z: Vec<ZPoly> = modular
        .iter()
        .map(|g| {
            trim(
                g.coeffs()
                    .iter()
                    .map(|c| mod_sym(&BigInt::from(c.as_fp().unwrap()), &pb))
                    .collect(),
            )
        })
        .collect();

    // Mignotte-style bound: |factor coeffs| <= 2^n * sqrt(n+1) * max|f|.
    let height = f.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = (BigInt::one() << (n + 2)) * (BigInt::from(n as u64 + 1)) * height;
    let two_bound: BigInt = &bound * 2;

    let lifted = hensel_lift_tree(f, &modular_z, &pb, &two_bound);
    let mut pk = pb.clone();
    while pk < two_bound {
        pk = &pk * &pk;
    }

    // Subset recombination.
    let mut remaining: Vec<ZPoly> = lifted;
    let mut current = f.clone();
    let mut out: Vec<ZPoly> = Vec::new();
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        let mut found = None;
        'subsets: for mask in 1u64..(1u64 << remaining.len()) {
            if (mask.count_ones() as usize) != size {
                continue;
            }
            let mut cand = vec![BigInt::one()];
            for (i, g) in remaining.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    cand = zpoly_mod(&zmul(&cand, g), &pk);
                }
            }
            // Trial division over Z.
            if divides_exactly(&current, &cand) {
                found = Some((mask, cand));
                break 'subsets;
            }
        }
        match found {
            Some((mask, cand)) => {
                let (q, _) = zdivrem_exact(&current, &cand);
                current = q;
                out.push(cand);
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 0)
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if current.len() > 1 {
        out.push(current);
    }
    Ok(out)
}

fn zdivrem_exact(a: &[BigInt], b: &[BigInt]) -> (ZPoly, ZPoly) {
    // b monic
    let db = b.len() - 1;
    let mut rem: ZPoly = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut quo = vec![BigInt::zero(); rem.len() - db];
    while rem.len() > db {
        let da = rem.len() - 1;
        let q = rem[da].clone();
        let shift = da - db;
        for (i, c) in b.iter().enumerate() {
            let t = &q * c;
            rem[shift + i] -= t;
        }
        quo[shift] = q;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quo), rem)
}

fn divides_exactly(a: &[BigInt], b: &[BigInt]) -> bool {
    if b.len() > a.len() {
        return false;
    }
    let (_, r) = zdivrem_exact(a, b);
    r.is_empty()
}

/// Factor a monic polynomial over `Q` into monic irreducible `Q`-factors
/// with multiplicities. Handles non-squarefree input.
pub(crate) fn factor_over_q(f: &FPoly) -> Result<Vec<(FPoly, usize)>> {
    let desc = f.descriptor().clone();
    debug_assert_eq!(desc.characteristic(), 0);
    debug_assert_eq!(desc.tower_height(), 0);
    debug_assert!(f.is_monic());

    let mut out: Vec<(FPoly, usize)> = Vec::new();
    let sf = f.squarefree_part()?;
    for g in factor_squarefree_q(&sf)? {
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
    out.sort_by_key(|(g, _)| {
        (g.degree().unwrap_or(0), g.coeffs().iter().map(|c| c.sort_key()).collect::<String>())
    });
    Ok(out)
}

/// Irreducible monic `Q`-factors of a squarefree monic rational polynomial.
fn factor_squarefree_q(f: &FPoly) -> Result<Vec<FPoly>> {
    let desc = f.descriptor().clone();
    let n = match f.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(1) => return Ok(vec![f.clone()]),
        Some(n) => n,
    };
    // Scale x -> x/c to make the polynomial integral and monic:
    // for monic f with rational coefficients, substitute x = y/c, multiply
    // by c^n with c the lcm of denominators; then y-poly is monic integral.
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        let r = c.as_rational().expect("base rationals");
        lcm = lcm.lcm(r.denom());
    }
    // g(y) = c^n f(y/c): coeff_i(g) = coeff_i(f) * c^{n-i}
    let mut g: ZPoly = Vec::with_capacity(n + 1);
    for (i, c) in f.coeffs().iter().enumerate() {
        let r = c.as_rational().unwrap();
        let scale = num_traits::pow::pow(lcm.clone(), n - i);
        let v = r * num_rational::BigRational::from(scale);
        debug_assert!(v.is_integer());
        g.push(v.to_integer());
    }
    let factors = factor_squarefree_monic(&g)?;
    // Undo the substitution: factor h(y) of degree m gives monic rational
    // factor h(c x)/c^m.
    let mut out = Vec::new();
    for h in factors {
        let m = h.len() - 1;
        let mut coeffs = Vec::with_capacity(h.len());
        for (i, c) in h.iter().enumerate() {
            // coefficient of x^i: c * c_lcm^i / c_lcm^m
            let num = num_rational::BigRational::from(c.clone())
                * num_rational::BigRational::from(num_traits::pow::pow(lcm.clone(), i));
            let den = num_rational::BigRational::from(num_traits::pow::pow(lcm.clone(), m));
            coeffs.push(FieldElement::from_rational(&desc, num / den)?);
        }
        out.push(FPoly::from_coeffs(desc.clone(), coeffs));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpoly(coeffs: &[i64]) -> FPoly {
        let d = FieldDescriptor::rationals();
        FPoly::from_coeffs(
            d.clone(),
            coeffs.iter().map(|&n| FieldElement::from_integer(&d, n)).collect(),
        )
    }

    #[test]
    fn factors_product_of_linears() {
        // (x-1)(x-2)(x+3)
        let f = qpoly(&[-1, 1]).mul(&qpoly(&[-2, 1])).unwrap().mul(&qpoly(&[3, 1])).unwrap();
        let fs = factor_over_q(&f).unwrap();
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|(_, e)| *e == 1));
    }

    #[test]
    fn keeps_irreducible_quadratic() {
        let f = qpoly(&[1, 0, 1]); // x^2+1
        let fs = factor_over_q(&f).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].0, f);
    }

    #[test]
    fn splits_x4_minus_4() {
        // x^4 - 4 = (x^2-2)(x^2+2)
        let f = qpoly(&[-4, 0, 0, 0, 1]);
        let fs = factor_over_q(&f).unwrap();
        assert_eq!(fs.len(), 2);
        for (g, e) in fs {
            assert_eq!(e, 1);
            assert_eq!(g.degree(), Some(2));
        }
    }

    #[test]
    fn multiplicities() {
        // (x-1)^2 (x^2+x+1)
        let f = qpoly(&[-1, 1])
            .mul(&qpoly(&[-1, 1]))
            .unwrap()
            .mul(&qpoly(&[1, 1, 1]))
            .unwrap();
        let fs = factor_over_q(&f).unwrap();
        let mut degs: Vec<(usize, usize)> =
            fs.iter().map(|(g, e)| (g.degree().unwrap(), *e)).collect();
        degs.sort();
        assert_eq!(degs, vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn rational_coefficients() {
        // (x - 1/2)(x + 1/3)
        let d = FieldDescriptor::rationals();
        let half = FieldElement::from_rational(&d, num_rational::BigRational::new(1.into(), 2.into())).unwrap();
        let third = FieldElement::from_rational(&d, num_rational::BigRational::new((-1).into(), 3.into())).unwrap();
        let f = FPoly::linear_root(&half).mul(&FPoly::linear_root(&third)).unwrap();
        let fs = factor_over_q(&f).unwrap();
        assert_eq!(fs.len(), 2);
    }
}
