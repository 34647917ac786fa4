//! Newton-Puiseux roots of monic polynomials over series.

use crate::error::{Error, Result};
use crate::scalars::{factor, FPoly, FieldDescriptor, FieldElement};
use crate::series::{Exp, PuiseuxSeries, Trunc};

use super::newton::newton_nu;
use super::poly::SeriesPolynomial;

/// One root of a series polynomial, living over a (possibly extended)
/// field, together with its multiplicity and the certified residual
/// order: `ord_t P(value) >= certified`.
#[derive(Debug, Clone)]
pub struct PuiseuxRoot {
    pub value: PuiseuxSeries,
    pub multiplicity: usize,
    pub field: FieldDescriptor,
    pub certified: Exp,
}

/// All roots of a monic polynomial, over a splitting tower built on
/// demand, certified to (at least) order `n_target`.
///
/// The total multiplicity always equals the degree. Slopes are processed
/// most-negative first; ties among residue roots are broken by the
/// deterministic order of the factorization routines.
pub fn puiseux_roots(p: &SeriesPolynomial, n_target: Exp) -> Result<Vec<PuiseuxRoot>> {
    let n = p
        .degree()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if !p.is_monic() {
        return Err(Error::InvalidInput("puiseux_roots requires a monic polynomial".into()));
    }
    let ch = p.field().characteristic();
    if ch > 0 && ch <= n as u64 {
        return Err(Error::CharacteristicTooSmall(format!(
            "need p > {n} for the degree-{n} Newton-Puiseux recursion, have p = {ch}"
        )));
    }
    let mut out = Vec::new();
    roots_rec(p.clone(), n_target, 0, &mut out)?;
    // embed everything into the final common tower (the deepest field built)
    let deepest = out
        .iter()
        .map(|r| r.field.clone())
        .max_by_key(|f| f.tower_height())
        .unwrap_or_else(|| p.field().clone());
    let mut merged: Vec<PuiseuxRoot> = Vec::new();
    for r in out {
        let value = r.value.embed(&deepest)?;
        // merge equal roots (can arise from parallel branches)
        if let Some(existing) = merged.iter_mut().find(|m| m.value == value) {
            existing.multiplicity += r.multiplicity;
            existing.certified = existing.certified.min(r.certified);
        } else {
            merged.push(PuiseuxRoot {
                value,
                multiplicity: r.multiplicity,
                field: deepest.clone(),
                certified: r.certified,
            });
        }
    }
    debug_assert_eq!(
        merged.iter().map(|r| r.multiplicity).sum::<usize>(),
        n,
        "root multiplicities must sum to the degree"
    );
    Ok(merged)
}

/// Verify a root by evaluation: returns the witnessed lower bound on
/// `ord_t P(root)` — the window boundary when the residual vanishes
/// through its whole window, or the order of the first visible term.
pub fn residual_order(p: &SeriesPolynomial, root: &PuiseuxSeries) -> Result<Exp> {
    let r = p.eval(root)?;
    if r.is_zero_to_precision() {
        return Ok(match r.trunc() {
            Trunc::Infinite => Exp::new(i64::MAX / 2, 1), // exactly zero
            Trunc::At(a) => a,
        });
    }
    Ok(r.ord()?.expect("nonzero"))
}

fn roots_rec(
    p: SeriesPolynomial,
    target: Exp,
    depth: usize,
    out: &mut Vec<PuiseuxRoot>,
) -> Result<()> {
    let field = p.field().clone();
    let n = p.degree().expect("monic");
    if depth > 64 {
        return Err(Error::IterationCap("newton-puiseux recursion depth".into()));
    }
    if n == 0 {
        return Ok(());
    }
    if n == 1 {
        let root = p.coeff(0).neg();
        let certified = match root.trunc() {
            Trunc::Infinite => Exp::new(i64::MAX / 2, 1),
            Trunc::At(a) => a,
        };
        out.push(PuiseuxRoot {
            value: root,
            multiplicity: 1,
            field,
            certified,
        });
        return Ok(());
    }

    // Case-2 loop: accumulate a monomial prefix until the polygon splits,
    // the polynomial becomes T^n, or the slope passes the target.
    let mut prefix = PuiseuxSeries::zero(&field);
    let mut current = p;
    let nu0 = newton_nu(&current)?.nu.unwrap_or(Exp::from_integer(0));
    let ram0 = current
        .coeffs()
        .iter()
        .map(|c| c.ram() as i64)
        .max()
        .unwrap_or(1);
    let abs_nu0 = if nu0 < Exp::from_integer(0) { -nu0 } else { nu0 };
    let cap_exp = (Exp::from_integer(n as i64) * (target + abs_nu0)
        * Exp::from_integer(ram0))
    .ceil()
    .to_integer()
    .max(4);
    let mut iter = 0i64;

    loop {
        iter += 1;
        if iter > cap_exp {
            return Err(Error::IterationCap(format!(
                "case-2 shift loop exceeded {cap_exp} iterations"
            )));
        }
        let nd = newton_nu(&current)?;
        let nu = match nd.nu {
            None => {
                // current = T^n exactly: the prefix is an exact root of
                // multiplicity n
                let certified = certify(&current, &prefix, target)?;
                out.push(PuiseuxRoot {
                    value: prefix,
                    multiplicity: n,
                    field,
                    certified,
                });
                return Ok(());
            }
            Some(v) => v,
        };
        if nu >= target {
            // all remaining root terms lie at or beyond the target
            let value = prefix.truncate_to(Trunc::At(target));
            out.push(PuiseuxRoot {
                value,
                multiplicity: n,
                field,
                certified: certify(&current, &prefix, target)?,
            });
            return Ok(());
        }

        // distinct-root analysis of Q_0
        let q0 = nd.q0.clone();
        let single = single_root(&q0)?;
        match single {
            Some(alpha) => {
                // Case 2: recenter by alpha * t^nu and continue.
                debug_assert!(!alpha.is_zero());
                let shift = PuiseuxSeries::monomial(alpha, nu);
                current = current.shift_var(&shift)?;
                prefix = prefix.add(&shift)?;
            }
            None => {
                // Case 1: split the residue polynomial into two coprime
                // monic parts, over an extension when necessary.
                let (k2, h1bar, h2bar) = split_residue(&q0)?;
                let q_t = if k2 == field {
                    nd.q_t.clone()
                } else {
                    nd.q_t.embed(&k2)?
                };
                // Hensel precision: enough to certify sub-roots to
                // (target - nu), with a slack of one degree-scaled slope.
                let sub_target = target - nu;
                let lift_n = sub_target * Exp::from_integer(n as i64)
                    + Exp::from_integer(2 * n as i64);
                let (h1, h2) = super::hensel::hensel_split(&q_t, &h1bar, &h2bar, lift_n)?;
                for h in [h1, h2] {
                    let mut sub = Vec::new();
                    roots_rec(h, sub_target, depth + 1, &mut sub)?;
                    for r in sub {
                        // map back: root_current = t^nu * root_sub
                        let scaled = r.value.shift_exp(nu);
                        let pre = prefix.embed(&r.field)?;
                        let value = pre.add(&scaled)?;
                        out.push(PuiseuxRoot {
                            value,
                            multiplicity: r.multiplicity,
                            field: r.field,
                            certified: (r.certified + nu).min(target),
                        });
                    }
                }
                return Ok(());
            }
        }
    }
}

/// Residual certificate for an (approximate) root of multiplicity n:
/// the remaining polynomial's constant coefficient order, floored at the
/// target.
fn certify(current: &SeriesPolynomial, _prefix: &PuiseuxSeries, target: Exp) -> Result<Exp> {
    let c0 = current.coeff(0);
    let lower = match c0.ord()? {
        None => match c0.trunc() {
            Trunc::Infinite => Exp::new(i64::MAX / 2, 1),
            Trunc::At(a) => a,
        },
        Some(o) => o,
    };
    if lower < target {
        return Err(Error::InsufficientPrecision(format!(
            "root residual witnessed only to order {}/{}",
            lower.numer(),
            lower.denom()
        )));
    }
    Ok(lower)
}

/// If the polynomial is `(T - alpha)^n` for some alpha in the field,
/// return it. Characteristic constraints (p > n) are checked upstream.
fn single_root(q0: &FPoly) -> Result<Option<FieldElement>> {
    let n = q0.degree().unwrap_or(0);
    if n == 0 {
        return Ok(None);
    }
    let field = q0.descriptor().clone();
    // alpha = -coeff_{n-1} / n
    let alpha = q0
        .coeff(n - 1)
        .neg()
        .div(&FieldElement::from_integer(&field, n as i64))?;
    if alpha.is_zero() {
        // (T - 0)^n = T^n would mean no achieving index; the polygon
        // guarantees a nonzero lower coefficient here
        return Ok(None);
    }
    let candidate = FPoly::linear_root(&alpha);
    let mut power = FPoly::one(&field);
    for _ in 0..n {
        power = power.mul(&candidate)?;
    }
    if power == *q0 {
        Ok(Some(alpha))
    } else {
        Ok(None)
    }
}

/// Split a residue polynomial (with at least two distinct roots over the
/// algebraic closure) into two coprime monic factors, extending the field
/// if every irreducible factor is a power of a single one.
fn split_residue(q0: &FPoly) -> Result<(FieldDescriptor, FPoly, FPoly)> {
    let field = q0.descriptor().clone();
    let factors = factor::factor(q0)?;
    if factors.len() >= 2 {
        // first factor (deterministic order) against the rest
        let (g, e) = &factors[0];
        let mut h1 = FPoly::one(&field);
        for _ in 0..*e {
            h1 = h1.mul(g)?;
        }
        let mut h2 = FPoly::one(&field);
        for (gi, ei) in factors.iter().skip(1) {
            for _ in 0..*ei {
                h2 = h2.mul(gi)?;
            }
        }
        return Ok((field, h1, h2));
    }
    // single irreducible factor of degree >= 2: adjoin one root
    let (g, e) = &factors[0];
    debug_assert!(g.degree().map(|d| d >= 2).unwrap_or(false));
    let k2 = field.extend_unchecked(g);
    let g2 = g.embed(&k2)?;
    let theta = FieldElement::generator(&k2, k2.tower_height() - 1);
    let lin = FPoly::linear_root(&theta);
    let (rest, r) = g2.divrem(&lin)?;
    debug_assert!(r.is_zero());
    let mut h1 = FPoly::one(&k2);
    let mut h2 = FPoly::one(&k2);
    for _ in 0..*e {
        h1 = h1.mul(&lin)?;
        h2 = h2.mul(&rest)?;
    }
    Ok((k2, h1, h2))
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

    fn verify_roots(p: &SeriesPolynomial, roots: &[PuiseuxRoot], min_ord: Exp) {
        let total: usize = roots.iter().map(|r| r.multiplicity).sum();
        assert_eq!(Some(total - 1), p.degree().map(|d| d - 1));
        for r in roots {
            let pk = p.embed(&r.field).unwrap();
            let res = residual_order(&pk, &r.value).unwrap();
            assert!(
                res >= min_ord,
                "residual order {res:?} below requested {min_ord:?} for root {}",
                r.value
            );
        }
    }

    #[test]
    fn sqrt_t() {
        // T^2 - t: roots +-t^(1/2)
        let t = PuiseuxSeries::variable(&q());
        let p = SeriesPolynomial::from_coeffs(
            q(),
            vec![t.neg(), PuiseuxSeries::zero(&q()), PuiseuxSeries::one(&q())],
        );
        let roots = puiseux_roots(&p, Exp::new(6, 1)).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(r.multiplicity, 1);
            assert_eq!(r.value.ord().unwrap().unwrap(), Exp::new(1, 2));
        }
        verify_roots(&p, &roots, Exp::new(6, 1));
    }

    #[test]
    fn double_root_with_pole() {
        // (T - t^{-1})^2: single root t^{-1} of multiplicity 2, exact.
        let tinv = PuiseuxSeries::monomial(fe(1), Exp::new(-1, 1));
        let p = SeriesPolynomial::linear_root(&tinv)
            .mul(&SeriesPolynomial::linear_root(&tinv))
            .unwrap();
        let roots = puiseux_roots(&p, Exp::new(8, 1)).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        assert_eq!(roots[0].value, tinv);
    }

    #[test]
    fn hensel_case_roots() {
        // T^2 - 3T + 2 + t: roots 1 + t + t^2 + 2t^3 + ... and
        // 2 - t - t^2 - 2t^3 - ...
        let t = PuiseuxSeries::variable(&q());
        let p = SeriesPolynomial::from_coeffs(
            q(),
            vec![
                PuiseuxSeries::constant(fe(2)).add(&t).unwrap(),
                PuiseuxSeries::constant(fe(-3)),
                PuiseuxSeries::one(&q()),
            ],
        );
        let roots = puiseux_roots(&p, Exp::new(8, 1)).unwrap();
        assert_eq!(roots.len(), 2);
        verify_roots(&p, &roots, Exp::new(8, 1));
        let mut constants: Vec<FieldElement> = roots
            .iter()
            .map(|r| r.value.coeff(Exp::new(0, 1)))
            .collect();
        constants.sort_by_key(|c| c.sort_key());
        assert_eq!(constants, vec![fe(1), fe(2)]);
        // linear coefficients +-1
        for r in &roots {
            let c0 = r.value.coeff(Exp::new(0, 1));
            let c1 = r.value.coeff(Exp::new(1, 1));
            if c0 == fe(1) {
                assert_eq!(c1, fe(1));
            } else {
                assert_eq!(c1, fe(-1));
            }
        }
    }

    #[test]
    fn cubic_with_fractional_slope() {
        // T^3 - t^2: roots are the three cube-root branches of t^(2/3)
        let t2 = PuiseuxSeries::monomial(fe(1), Exp::new(2, 1));
        let p = SeriesPolynomial::from_coeffs(
            q(),
            vec![
                t2.neg(),
                PuiseuxSeries::zero(&q()),
                PuiseuxSeries::zero(&q()),
                PuiseuxSeries::one(&q()),
            ],
        );
        let roots = puiseux_roots(&p, Exp::new(5, 1)).unwrap();
        let total: usize = roots.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, 3);
        verify_roots(&p, &roots, Exp::new(5, 1));
        for r in &roots {
            assert_eq!(r.value.ord().unwrap().unwrap(), Exp::new(2, 3));
        }
    }

    #[test]
    fn perturbation_lemma_property() {
        // eigenvalues of Gamma + B agree with the diagonal of Gamma to
        // order m when ord(B) >= m: check on a 2x2 instance via the
        // characteristic polynomial.
        let t = PuiseuxSeries::variable(&q());
        let m = 3i64;
        let tm = PuiseuxSeries::monomial(fe(1), Exp::new(m, 1));
        // Gamma = diag(1, 2), B = t^3 * [[1, 1], [1, 1]]
        let a11 = PuiseuxSeries::constant(fe(1)).add(&tm).unwrap();
        let a22 = PuiseuxSeries::constant(fe(2)).add(&tm).unwrap();
        // charpoly = (T - a11)(T - a22) - t^{2m}
        let prod = SeriesPolynomial::linear_root(&a11)
            .mul(&SeriesPolynomial::linear_root(&a22))
            .unwrap();
        let t2m = PuiseuxSeries::monomial(fe(1), Exp::new(2 * m, 1));
        let p = prod
            .sub(&SeriesPolynomial::from_coeffs(q(), vec![t2m]))
            .unwrap();
        let roots = puiseux_roots(&p, Exp::new(8, 1)).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let c = r.value.coeff(Exp::new(0, 1));
            let diag = if c == fe(1) {
                PuiseuxSeries::constant(fe(1))
            } else {
                PuiseuxSeries::constant(fe(2))
            };
            let diff = r.value.sub(&diag.embed(&r.field).unwrap()).unwrap();
            let o = diff.ord().unwrap().unwrap();
            assert!(o >= Exp::new(m, 1), "difference order {o:?} below m");
        }
        let _ = t;
    }
}
