//! Hensel lifting of a residue factorization through the series variable.

use crate::error::{Error, Result};
use crate::scalars::{FPoly, FieldElement};
use crate::series::{Exp, PuiseuxSeries, Trunc};

use super::poly::SeriesPolynomial;

/// Lift `P = h1 * h2 mod t^N` from a coprime residue factorization
/// `P_0 = hbar1 * hbar2`.
///
/// `P` must be monic with coefficient orders `>= 0`. The factors are built
/// by the order-by-order recursion: at each order the defect polynomial is
/// split through the Bezout identity `1 = hbar1*F1 + hbar2*F2`, keeping
/// `deg` of the correction to `h1` below `deg hbar1` and likewise for
/// `h2`, which pins the unique monic lift.
pub fn hensel_split(
    p: &SeriesPolynomial,
    hbar1: &FPoly,
    hbar2: &FPoly,
    n: Exp,
) -> Result<(SeriesPolynomial, SeriesPolynomial)> {
    let field = p.field().clone();
    let deg = p
        .degree()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if !p.is_monic() {
        return Err(Error::InvalidInput("hensel_split requires a monic polynomial".into()));
    }
    for j in 0..deg {
        let c = p.coeff(j);
        if let Some(o) = c.ord()? {
            if o < Exp::from_integer(0) {
                return Err(Error::InvalidInput(
                    "hensel_split requires non-negative coefficient orders".into(),
                ));
            }
        }
    }
    if !hbar1.is_monic() || !hbar2.is_monic() {
        return Err(Error::InvalidInput("residue factors must be monic".into()));
    }
    let d1 = hbar1.degree().unwrap_or(0);
    let d2 = hbar2.degree().unwrap_or(0);
    if d1 + d2 != deg {
        return Err(Error::SpecializationMismatch(format!(
            "degrees {d1}+{d2} do not sum to {deg}"
        )));
    }

    // coprimality via the resultant
    let res = hbar1.resultant(hbar2)?;
    if res.is_zero() {
        return Err(Error::NotCoprime);
    }

    // P_0 must equal hbar1*hbar2
    let p0 = p.specialize_at_zero()?;
    if p0.sub(&hbar1.mul(hbar2)?)? != FPoly::zero(&field) {
        return Err(Error::SpecializationMismatch(
            "P(T, 0) differs from the supplied residue factorization".into(),
        ));
    }

    // Bezout cofactors: 1 = hbar1*F1 + hbar2*F2
    let (one, f1, f2) = hbar1.ext_gcd(hbar2)?;
    debug_assert_eq!(one.degree(), Some(0));
    let inv = one.coeff(0).invert()?;
    let f1 = f1.scale(&inv)?;
    let f2 = f2.scale(&inv)?;

    let mut h1 = SeriesPolynomial::from_scalar_poly(hbar1);
    let mut h2 = SeriesPolynomial::from_scalar_poly(hbar2);

    loop {
        let defect = p.sub(&h1.mul(&h2)?)?;
        // lowest visible order among the defect's coefficients, and the
        // tightest window hiding a potential defect
        let mut visible: Option<Exp> = None;
        let mut window: Trunc = Trunc::Infinite;
        for j in 0..deg {
            let c = defect.coeff(j);
            if c.is_zero_to_precision() {
                window = window.min(c.trunc());
            } else {
                let o = c.ord()?.expect("nonzero");
                visible = Some(match visible {
                    None => o,
                    Some(m) => m.min(o),
                });
                window = window.min(c.trunc());
            }
        }
        let e = match visible {
            Some(o) if o < n => {
                // a hidden defect below the visible one cannot be ruled out
                if let Trunc::At(w) = window {
                    if w < o {
                        return Err(Error::InsufficientPrecision(format!(
                            "defect window t^({}/{}) below its visible order",
                            w.numer(),
                            w.denom()
                        )));
                    }
                }
                o
            }
            _ => {
                // nothing visible below N: certified iff the windows reach N
                if window.covers(n) {
                    break;
                }
                return Err(Error::InsufficientPrecision(format!(
                    "inputs certify the factorization only below t^({}/{})",
                    window.as_exp().unwrap().numer(),
                    window.as_exp().unwrap().denom()
                )));
            }
        };
        // defect slice at order e, as a scalar polynomial
        let mut q_coeffs = Vec::with_capacity(deg);
        for j in 0..deg {
            q_coeffs.push(defect.coeff(j).coeff(e));
        }
        let q = FPoly::from_coeffs(field.clone(), q_coeffs);
        // split: q = hbar1*alpha + hbar2*h with deg h < d1, deg alpha < d2
        let f2q = f2.mul(&q)?;
        let (g, h) = f2q.divrem(hbar1)?;
        let alpha = f1.mul(&q)?.add(&g.mul(hbar2)?)?;
        debug_assert!(h.degree().map(|d| d < d1.max(1)).unwrap_or(true));
        debug_assert!(alpha.degree().map(|d| d < d2.max(1)).unwrap_or(true));
        // h1 += h * t^e ; h2 += alpha * t^e
        let te = |c: &FieldElement| PuiseuxSeries::monomial(c.clone(), e);
        let h_lift = SeriesPolynomial::from_coeffs(
            field.clone(),
            h.coeffs().iter().map(te).collect(),
        );
        let a_lift = SeriesPolynomial::from_coeffs(
            field.clone(),
            alpha.coeffs().iter().map(te).collect(),
        );
        h1 = h1.add(&h_lift)?;
        h2 = h2.add(&a_lift)?;
    }

    // clip to the requested window
    let w = Trunc::At(n);
    Ok((clip_below_monic(&h1, w), clip_below_monic(&h2, w)))
}

/// Truncate non-leading coefficients of a monic polynomial.
fn clip_below_monic(p: &SeriesPolynomial, w: Trunc) -> SeriesPolynomial {
    let deg = p.degree().unwrap_or(0);
    let mut coeffs = Vec::with_capacity(deg + 1);
    for j in 0..=deg {
        if j == deg {
            coeffs.push(p.coeff(j));
        } else {
            coeffs.push(p.coeff(j).truncate_to(w));
        }
    }
    SeriesPolynomial::from_coeffs(p.field().clone(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldDescriptor;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_integer(&q(), n)
    }

    fn qp(coeffs: &[i64]) -> FPoly {
        FPoly::from_coeffs(q(), coeffs.iter().map(|&n| fe(n)).collect())
    }

    #[test]
    fn lift_of_quadratic_with_perturbation() {
        // P = T^2 - 3T + 2 + t, hbar1 = T-1, hbar2 = T-2, N = 4:
        // h1 = T - (1 + t + t^2 + 2t^3), h2 = T - (2 - t - t^2 - 2t^3).
        //
        // Oracle: multiply the returned factors and compare with P mod t^4;
        // the frozen coefficients below were cross-checked against the
        // series expansion of the roots (3 -+ sqrt(1-4t))/2.
        let t = PuiseuxSeries::variable(&q());
        let p = SeriesPolynomial::from_coeffs(
            q(),
            vec![
                PuiseuxSeries::constant(fe(2)).add(&t).unwrap(),
                PuiseuxSeries::constant(fe(-3)),
                PuiseuxSeries::one(&q()),
            ],
        );
        let (h1, h2) = hensel_split(&p, &qp(&[-1, 1]), &qp(&[-2, 1]), Exp::new(4, 1)).unwrap();
        // root of h1 = 1 + t + t^2 + 2t^3
        let r1 = h1.coeff(0).neg();
        assert_eq!(r1.coeff(Exp::new(0, 1)), fe(1));
        assert_eq!(r1.coeff(Exp::new(1, 1)), fe(1));
        assert_eq!(r1.coeff(Exp::new(2, 1)), fe(1));
        assert_eq!(r1.coeff(Exp::new(3, 1)), fe(2));
        let r2 = h2.coeff(0).neg();
        assert_eq!(r2.coeff(Exp::new(0, 1)), fe(2));
        assert_eq!(r2.coeff(Exp::new(1, 1)), fe(-1));
        assert_eq!(r2.coeff(Exp::new(2, 1)), fe(-1));
        assert_eq!(r2.coeff(Exp::new(3, 1)), fe(-2));
        // product identity mod t^4
        let prod = h1.mul(&h2).unwrap();
        let diff = prod.sub(&p).unwrap();
        for j in 0..2 {
            let c = diff.coeff(j);
            assert!(c.is_zero_to_precision(), "visible defect in coeff {j}: {c}");
            assert!(c.trunc().covers(Exp::new(4, 1)), "window short of t^4 in coeff {j}");
        }
    }

    #[test]
    fn nothing_to_lift() {
        let p = SeriesPolynomial::from_coeffs(
            q(),
            vec![
                PuiseuxSeries::constant(fe(2)),
                PuiseuxSeries::constant(fe(-3)),
                PuiseuxSeries::one(&q()),
            ],
        );
        let (h1, h2) = hensel_split(&p, &qp(&[-1, 1]), &qp(&[-2, 1]), Exp::new(6, 1)).unwrap();
        assert_eq!(h1.coeff(0).coeff(Exp::new(0, 1)), fe(-1));
        assert_eq!(h2.coeff(0).coeff(Exp::new(0, 1)), fe(-2));
        // exact: no window created beyond the clip
        let prod = h1.mul(&h2).unwrap();
        let diff = prod.sub(&p).unwrap();
        for j in 0..2 {
            assert!(diff.coeff(j).is_zero_to_precision());
        }
    }

    #[test]
    fn rejects_non_coprime() {
        let t = PuiseuxSeries::variable(&q());
        let p = SeriesPolynomial::from_coeffs(
            q(),
            vec![
                PuiseuxSeries::constant(fe(1)).add(&t).unwrap(),
                PuiseuxSeries::constant(fe(-2)),
                PuiseuxSeries::one(&q()),
            ],
        );
        let err = hensel_split(&p, &qp(&[-1, 1]), &qp(&[-1, 1]), Exp::new(4, 1)).unwrap_err();
        assert!(matches!(err, Error::NotCoprime));
    }

    #[test]
    fn rejects_specialization_mismatch() {
        let p = SeriesPolynomial::from_coeffs(
            q(),
            vec![
                PuiseuxSeries::constant(fe(5)),
                PuiseuxSeries::constant(fe(-3)),
                PuiseuxSeries::one(&q()),
            ],
        );
        let err = hensel_split(&p, &qp(&[-1, 1]), &qp(&[-2, 1]), Exp::new(4, 1)).unwrap_err();
        assert!(matches!(err, Error::SpecializationMismatch(_)));
    }
}
