use std::sync::Arc;

use super::element::div_rem;
use super::{RingDescriptor, RingElement};
use crate::error::{Error, Result};

/// Bezout coefficients `a_1..a_n` with `sum a_i x_i = 1` for a fixed vector `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnimodularCertificate {
    pub coefficients: Vec<RingElement>,
}

impl UnimodularCertificate {
    /// Checks `sum a_i x_i = 1` exactly.
    pub fn certifies(&self, x: &[RingElement]) -> Result<bool> {
        if x.len() != self.coefficients.len() || x.is_empty() {
            return Ok(false);
        }
        let mut acc = x[0].zero_like();
        for (a, xi) in self.coefficients.iter().zip(x) {
            acc = acc.add(&a.mul(xi)?)?;
        }
        Ok(acc.is_one())
    }
}

/// `y` with `alpha = x1 + y*x2` a unit, together with `alpha^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionWitness {
    pub y: RingElement,
    pub alpha: RingElement,
    pub alpha_inverse: RingElement,
}

/// Finds Bezout coefficients for `x`, or reports that `x` is not unimodular.
///
/// Fields and jet rings pick the lowest-index unit coordinate; polynomial
/// rings and the integers run the extended Euclidean algorithm; products
/// work componentwise.
pub fn bezout_certificate(x: &[RingElement]) -> Result<UnimodularCertificate> {
    let first = x
        .first()
        .ok_or(Error::NotUnimodular { component: None })?;
    let desc = first.descriptor_arc().clone();
    for xi in x {
        if xi.descriptor() != &*desc {
            return Err(Error::DescriptorMismatch(
                desc.to_string(),
                xi.descriptor().to_string(),
            ));
        }
    }
    let coefficients = match &*desc {
        RingDescriptor::Rational | RingDescriptor::GaussianRational | RingDescriptor::JetRing { .. } => {
            unit_coordinate(x, &desc)?
        }
        RingDescriptor::Integer | RingDescriptor::PolyOverField(_) => extended_euclid(x)?,
        RingDescriptor::ProductRing(ds) => {
            let split: Vec<Vec<RingElement>> = x.iter().map(|e| e.components().unwrap()).collect();
            let mut per_component = Vec::with_capacity(ds.len());
            for k in 0..ds.len() {
                let column: Vec<RingElement> = split.iter().map(|c| c[k].clone()).collect();
                let cert = bezout_certificate(&column).map_err(|e| match e {
                    Error::NotUnimodular { .. } => Error::NotUnimodular { component: Some(k) },
                    other => other,
                })?;
                per_component.push(cert.coefficients);
            }
            (0..x.len())
                .map(|i| {
                    RingElement::product(
                        &desc,
                        per_component.iter().map(|c| c[i].clone()).collect(),
                    )
                })
                .collect::<Result<_>>()?
        }
        RingDescriptor::AnalyticFn => {
            return Err(Error::UnsupportedRing(
                "Bezout certificates over analytic functions".into(),
            ))
        }
    };
    Ok(UnimodularCertificate { coefficients })
}

fn unit_coordinate(x: &[RingElement], desc: &Arc<RingDescriptor>) -> Result<Vec<RingElement>> {
    let idx = x
        .iter()
        .position(|e| e.is_unit())
        .ok_or(Error::NotUnimodular { component: None })?;
    let mut out = vec![RingElement::zero_arc(desc); x.len()];
    out[idx] = x[idx].invert_unit()?;
    Ok(out)
}

/// Extended gcd folded over the vector; the final gcd must be a unit.
fn extended_euclid(x: &[RingElement]) -> Result<Vec<RingElement>> {
    let mut coeffs = vec![x[0].zero_like(); x.len()];
    coeffs[0] = x[0].one_like();
    let mut g = x[0].clone();
    for (i, xi) in x.iter().enumerate().skip(1) {
        let (g2, s, t) = ext_gcd(&g, xi)?;
        for c in coeffs.iter_mut().take(i) {
            *c = c.mul(&s)?;
        }
        coeffs[i] = t;
        g = g2;
    }
    if !g.is_unit() {
        return Err(Error::NotUnimodular { component: None });
    }
    let inv = g.invert_unit()?;
    coeffs.iter().map(|c| c.mul(&inv)).collect()
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`.
pub(crate) fn ext_gcd(a: &RingElement, b: &RingElement) -> Result<(RingElement, RingElement, RingElement)> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (a.one_like(), a.zero_like());
    let (mut t0, mut t1) = (a.zero_like(), a.one_like());
    while !r1.is_zero() {
        let (q, r) = div_rem(&r0, &r1)?;
        let s2 = s0.sub(&q.mul(&s1)?)?;
        let t2 = t0.sub(&q.mul(&t1)?)?;
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    Ok((r0, s0, t0))
}

/// Stable-rank-1 reduction: given a certified unimodular pair `(x1, x2)`,
/// finds `y` with `x1 + y*x2` a unit.
pub fn reduce_unimodular_pair(
    x1: &RingElement,
    x2: &RingElement,
    cert: &UnimodularCertificate,
) -> Result<ReductionWitness> {
    if x1.descriptor() != x2.descriptor() {
        return Err(Error::DescriptorMismatch(
            x1.descriptor().to_string(),
            x2.descriptor().to_string(),
        ));
    }
    let desc = x1.descriptor();
    if !desc.has_reduction_oracle() {
        return Err(Error::OracleUnavailable(desc.to_string()));
    }
    if !cert.certifies(&[x1.clone(), x2.clone()])? {
        return Err(Error::CertificateInvalid);
    }
    let y = reduction_parameter(x1, x2)?;
    let alpha = x1.add(&y.mul(x2)?)?;
    let alpha_inverse = alpha
        .invert_unit()
        .map_err(|_| Error::InternalInvariantViolation("reduction produced a non-unit".into()))?;
    Ok(ReductionWitness {
        y,
        alpha,
        alpha_inverse,
    })
}

fn reduction_parameter(x1: &RingElement, x2: &RingElement) -> Result<RingElement> {
    match x1.descriptor() {
        RingDescriptor::Rational | RingDescriptor::GaussianRational => {
            if x1.is_zero() {
                x2.invert_unit().map_err(|_| Error::CertificateInvalid)
            } else {
                Ok(x1.zero_like())
            }
        }
        RingDescriptor::JetRing { .. } => {
            if x1.is_unit() {
                Ok(x1.zero_like())
            } else if x2.is_unit() {
                // unit + element of the maximal ideal
                Ok(x1.one_like())
            } else {
                Err(Error::CertificateInvalid)
            }
        }
        RingDescriptor::ProductRing(_) => {
            let (c1, c2) = (x1.components().unwrap(), x2.components().unwrap());
            let ys = c1
                .iter()
                .zip(&c2)
                .map(|(a, b)| reduction_parameter(a, b))
                .collect::<Result<Vec<_>>>()?;
            RingElement::product(x1.descriptor(), ys)
        }
        d => Err(Error::OracleUnavailable(d.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::testing::*;

    #[test]
    fn field_unit_coordinate() {
        let x = [q(0, 1), q(4, 1)];
        let c = bezout_certificate(&x).unwrap();
        assert_eq!(c.coefficients, vec![q(0, 1), q(1, 4)]);
        assert!(c.certifies(&x).unwrap());
    }

    #[test]
    fn polynomial_extended_gcd() {
        let d = qpoly_desc();
        let x = [qpoly(&[0, 1]), qpoly(&[1, 1])];
        let c = bezout_certificate(&x).unwrap();
        assert_eq!(c.coefficients, vec![qpoly(&[-1]), qpoly(&[1])]);
        assert!(c.certifies(&x).unwrap());
        let not = [qpoly(&[0, 1]), qpoly(&[0, 2, 1])];
        assert_eq!(
            bezout_certificate(&not).unwrap_err(),
            Error::NotUnimodular { component: None }
        );
        let _ = d;
    }

    #[test]
    fn jet_unit_coordinate() {
        let x = [qjet(3, &[0, 1]), qjet(3, &[1, 1])];
        let c = bezout_certificate(&x).unwrap();
        assert_eq!(c.coefficients[0], qjet(3, &[0]));
        assert_eq!(c.coefficients[1], qjet(3, &[1, -1, 1]));
    }

    #[test]
    fn integer_extended_gcd() {
        let x = [RingElement::integer(6), RingElement::integer(10), RingElement::integer(15)];
        let c = bezout_certificate(&x).unwrap();
        assert!(c.certifies(&x).unwrap());
    }

    #[test]
    fn product_reports_failing_component() {
        let d: RingDescriptor = "product(jet(rational,3),jet(rational,3))".parse().unwrap();
        let a = RingElement::product(&d, vec![qjet(3, &[1]), qjet(3, &[0, 1])]).unwrap();
        let b = RingElement::product(&d, vec![qjet(3, &[0, 1]), qjet(3, &[0, 0, 1])]).unwrap();
        assert_eq!(
            bezout_certificate(&[a, b]).unwrap_err(),
            Error::NotUnimodular { component: Some(1) }
        );
    }

    #[test]
    fn analytic_is_unsupported() {
        let f = RingElement::one(&RingDescriptor::AnalyticFn);
        assert!(matches!(bezout_certificate(&[f]), Err(Error::UnsupportedRing(_))));
    }

    #[test]
    fn reduction_examples() {
        let x = [q(0, 1), q(4, 1)];
        let w = reduce_unimodular_pair(&x[0], &x[1], &bezout_certificate(&x).unwrap()).unwrap();
        assert_eq!((w.y.clone(), w.alpha.clone()), (q(1, 4), q(1, 1)));

        let x = [q(7, 1), q(3, 1)];
        let w = reduce_unimodular_pair(&x[0], &x[1], &bezout_certificate(&x).unwrap()).unwrap();
        assert_eq!((w.y.clone(), w.alpha.clone()), (q(0, 1), q(7, 1)));
        assert!(w.alpha.mul(&w.alpha_inverse).unwrap().is_one());

        let x = [qjet(3, &[0, 1]), qjet(3, &[1, 1])];
        let w = reduce_unimodular_pair(&x[0], &x[1], &bezout_certificate(&x).unwrap()).unwrap();
        assert_eq!(w.y, qjet(3, &[1]));
        assert_eq!(w.alpha, qjet(3, &[1, 2]));
    }

    #[test]
    fn reduction_errors() {
        let x = [qpoly(&[0, 1]), qpoly(&[1, 1])];
        let c = bezout_certificate(&x).unwrap();
        assert!(matches!(
            reduce_unimodular_pair(&x[0], &x[1], &c),
            Err(Error::OracleUnavailable(_))
        ));
        let x = [q(2, 1), q(3, 1)];
        let bad = UnimodularCertificate {
            coefficients: vec![q(1, 1), q(1, 1)],
        };
        assert_eq!(
            reduce_unimodular_pair(&x[0], &x[1], &bad).unwrap_err(),
            Error::CertificateInvalid
        );
    }
}
