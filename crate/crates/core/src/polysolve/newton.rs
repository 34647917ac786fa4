//! Newton polygon data for monic polynomials over series.


use crate::error::{Error, Result};
use crate::scalars::FPoly;
use crate::series::{Exp, PuiseuxSeries};

use super::poly::SeriesPolynomial;

/// The minimal-slope data of a monic series polynomial:
/// `nu = min_j ord(a_j) / (n - j)`, the ramification needed to make it
/// integral, the achieving indices, and the rescaled polynomial.
#[derive(Debug, Clone)]
pub struct NewtonData {
    /// The minimal slope; `None` when every non-leading coefficient is
    /// provably zero (`P = T^n`).
    pub nu: Option<Exp>,
    /// Minimal positive integer with `d * nu` integral.
    pub d: u32,
    /// Indices attaining the minimum.
    pub achieving: Vec<usize>,
    /// `Q_t(T') = t^{-n*nu} P(t^nu T')`; all coefficient orders `>= 0`.
    pub q_t: SeriesPolynomial,
    /// The residue polynomial `Q_0(T')` over the scalar field.
    pub q0: FPoly,
}

/// Compute the Newton slope of a monic polynomial.
///
/// Hidden coefficients (zero to a finite window) are tolerated as long as
/// their window proves they cannot attain the minimum; otherwise
/// [`Error::InsufficientPrecision`] is raised.
pub fn newton_nu(p: &SeriesPolynomial) -> Result<NewtonData> {
    let n = p
        .degree()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if !p.is_monic() {
        return Err(Error::InvalidInput("newton_nu requires a monic polynomial".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }

    // candidate slopes from decidable coefficients
    let mut nu: Option<Exp> = None;
    let mut orders: Vec<Option<Exp>> = Vec::with_capacity(n);
    for j in 0..n {
        let c = p.coeff(j);
        if c.is_provably_zero() {
            orders.push(None);
            continue;
        }
        match c.ord()? {
            Some(o) => {
                let slope = o / Exp::from_integer((n - j) as i64);
                nu = Some(match nu {
                    None => slope,
                    Some(m) => m.min(slope),
                });
                orders.push(Some(o));
            }
            None => orders.push(None),
        }
    }

    let nu = match nu {
        Some(v) => v,
        None => {
            // P = T^n as far as visible: check hidden windows
            for j in 0..n {
                let c = p.coeff(j);
                if !c.is_provably_zero() && !c.trunc().is_infinite() {
                    // handled below through the hidden check; here no
                    // visible slope exists at all
                    return Err(Error::InsufficientPrecision(format!(
                        "coefficient {j} is zero only to its window"
                    )));
                }
            }
            let one = PuiseuxSeries::one(p.field());
            let q0 = {
                let mut v = vec![crate::scalars::FieldElement::zero(p.field()); n + 1];
                v[n] = crate::scalars::FieldElement::one(p.field());
                FPoly::from_coeffs(p.field().clone(), v)
            };
            let _ = one;
            return Ok(NewtonData { nu: None, d: 1, achieving: Vec::new(), q_t: p.clone(), q0 });
        }
    };

    // hidden coefficients must not be able to undercut nu
    for j in 0..n {
        let c = p.coeff(j);
        if c.is_zero_to_precision() && !c.trunc().is_infinite() {
            let bound = c.trunc().as_exp().unwrap() / Exp::from_integer((n - j) as i64);
            if bound <= nu {
                return Err(Error::InsufficientPrecision(format!(
                    "coefficient {j} hidden below the candidate slope"
                )));
            }
        }
    }

    let achieving: Vec<usize> = (0..n)
        .filter(|&j| orders[j].map(|o| o / Exp::from_integer((n - j) as i64) == nu).unwrap_or(false))
        .collect();
    let d = (*nu.denom()).unsigned_abs() as u32;

    // Q_t(T') = t^{-n nu} P(t^nu T'): b_j = a_j * t^{(j-n) nu}
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let shift = Exp::from_integer(j as i64 - n as i64) * nu;
        coeffs.push(p.coeff(j).shift_exp(shift));
    }
    let q_t = SeriesPolynomial::from_coeffs(p.field().clone(), coeffs);

    // residue polynomial
    let mut q0_coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let c = q_t.coeff(j);
        if c.is_provably_zero() {
            q0_coeffs.push(crate::scalars::FieldElement::zero(p.field()));
        } else {
            q0_coeffs.push(c.eval_at_zero()?);
        }
    }
    let q0 = FPoly::from_coeffs(p.field().clone(), q0_coeffs);

    Ok(NewtonData { nu: Some(nu), d: d.max(1), achieving, q_t, q0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{FieldDescriptor, FieldElement};

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_integer(&q(), n)
    }

    #[test]
    fn slope_of_t_inverse_quadratic() {
        // T^2 - t^{-1}: nu = -1/2, d = 2, Q_0 = T'^2 - 1
        let tinv = PuiseuxSeries::monomial(fe(1), Exp::new(-1, 1));
        let p = SeriesPolynomial::from_coeffs(
            q(),
            vec![tinv.neg(), PuiseuxSeries::zero(&q()), PuiseuxSeries::one(&q())],
        );
        let nd = newton_nu(&p).unwrap();
        assert_eq!(nd.nu, Some(Exp::new(-1, 2)));
        assert_eq!(nd.d, 2);
        assert_eq!(nd.achieving, vec![0]);
        assert_eq!(nd.q0.coeff(0), fe(-1));
        assert_eq!(nd.q0.coeff(2), fe(1));
    }

    #[test]
    fn slope_of_plain_quadratic() {
        // T^2 - 3T + 2: nu = 0, Q_0 = itself
        let p = SeriesPolynomial::from_coeffs(
            q(),
            vec![
                PuiseuxSeries::constant(fe(2)),
                PuiseuxSeries::constant(fe(-3)),
                PuiseuxSeries::one(&q()),
            ],
        );
        let nd = newton_nu(&p).unwrap();
        assert_eq!(nd.nu, Some(Exp::new(0, 1)));
        assert_eq!(nd.d, 1);
        assert_eq!(nd.q0.coeff(0), fe(2));
        assert_eq!(nd.q0.coeff(1), fe(-3));
    }

    #[test]
    fn slope_of_cubic() {
        // T^3 - t^2: nu = 2/3, d = 3
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
        let nd = newton_nu(&p).unwrap();
        assert_eq!(nd.nu, Some(Exp::new(2, 3)));
        assert_eq!(nd.d, 3);
    }
}
