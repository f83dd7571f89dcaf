use num_bigint::BigInt;
use num_rational::BigRational;

use super::{RingDescriptor, RingElement};
use crate::error::{Error, Result};

/// Upper bound on the nilpotency index of an element of `desc`, if nilpotent
/// elements there have bounded index.
pub(crate) fn nilpotency_bound(desc: &RingDescriptor) -> usize {
    match desc {
        RingDescriptor::JetRing { order, .. } => *order,
        RingDescriptor::ProductRing(cs) => cs.iter().map(nilpotency_bound).max().unwrap_or(1),
        _ => 1,
    }
}

fn require_rationals(desc: &RingDescriptor) -> Result<()> {
    if !desc.is_exact() {
        return Err(Error::UnsupportedRing(
            "principal-unit logarithms need an exact ring".into(),
        ));
    }
    if !desc.contains_rationals() {
        return Err(Error::RingWithoutRationals(desc.to_string()));
    }
    Ok(())
}

/// `log(1 + m) = sum_{j>=1} (-1)^{j+1} m^j / j` for nilpotent `m`; the series
/// terminates.
pub fn principal_unit_log(u: &RingElement) -> Result<RingElement> {
    require_rationals(u.descriptor())?;
    let m = u.sub(&u.one_like())?;
    if !m.is_nilpotent() {
        return Err(Error::NotPrincipalUnit);
    }
    let mut acc = u.zero_like();
    let mut power = m.clone();
    let mut j: i64 = 1;
    while !power.is_zero() {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&power.scale(&BigRational::new(sign.into(), j.into()))?)?;
        power = power.mul(&m)?;
        j += 1;
        if j as usize > nilpotency_bound(u.descriptor()) + 1 {
            return Err(Error::InternalInvariantViolation(
                "log series did not terminate".into(),
            ));
        }
    }
    Ok(acc)
}

/// `exp(m) = sum m^j / j!` for nilpotent `m`.
pub fn nilpotent_element_exp(m: &RingElement) -> Result<RingElement> {
    require_rationals(m.descriptor())?;
    if !m.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let mut acc = m.one_like();
    let mut term = m.one_like();
    let mut j: i64 = 1;
    loop {
        term = term.mul(m)?.scale(&BigRational::new(BigInt::from(1), j.into()))?;
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term)?;
        j += 1;
    }
    Ok(acc)
}

/// An `n`-th root of a principal unit, `exp(log(u) / n)`.
pub fn unit_nth_root(u: &RingElement, n: u32) -> Result<RingElement> {
    if n == 0 {
        return Err(Error::InternalInvariantViolation("root of order 0".into()));
    }
    let l = principal_unit_log(u)?;
    let scaled = l.scale(&BigRational::new(1.into(), n.into()))?;
    nilpotent_element_exp(&scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::testing::*;
    use num_rational::BigRational;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn rjet(order: usize, cs: &[(i64, i64)]) -> RingElement {
        let d = RingDescriptor::jet(RingDescriptor::Rational, order).unwrap();
        RingElement::jet(
            &d,
            cs.iter().map(|&(p, q)| RingElement::from_big_rational(r(p, q))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn log_of_one_plus_z() {
        let u = qjet(3, &[1, 1]);
        assert_eq!(principal_unit_log(&u).unwrap(), rjet(3, &[(0, 1), (1, 1), (-1, 2)]));
        assert!(principal_unit_log(&qjet(2, &[1])).unwrap().is_zero());
    }

    #[test]
    fn exp_log_round_trip_order_four() {
        let u = qjet(4, &[1, 1, 1]);
        let l = principal_unit_log(&u).unwrap();
        assert_eq!(nilpotent_element_exp(&l).unwrap(), u);
    }

    #[test]
    fn square_root_of_one_plus_two_z() {
        let f = unit_nth_root(&qjet(3, &[1, 2]), 2).unwrap();
        assert_eq!(f, rjet(3, &[(1, 1), (1, 1), (-1, 2)]));
        assert_eq!(f.pow(2), qjet(3, &[1, 2]));
        assert!(unit_nth_root(&q(1, 1), 5).unwrap().is_one());
        assert_eq!(unit_nth_root(&qjet(2, &[1, 1]), 1).unwrap(), qjet(2, &[1, 1]));
    }

    #[test]
    fn errors() {
        assert_eq!(principal_unit_log(&qjet(3, &[2, 1])).unwrap_err(), Error::NotPrincipalUnit);
        assert_eq!(principal_unit_log(&q(3, 1)).unwrap_err(), Error::NotPrincipalUnit);
        assert!(matches!(
            principal_unit_log(&RingElement::integer(1)),
            Err(Error::RingWithoutRationals(_))
        ));
    }
}
