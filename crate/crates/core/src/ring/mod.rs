//! Commutative unital rings: descriptors, canonical elements, Bezout
//! certificates and the stable-rank-1 reduction oracle.

mod bezout;
mod descriptor;
mod element;
pub mod json;
mod units;

use num_complex::Complex;
use num_rational::BigRational;

pub use bezout::{bezout_certificate, reduce_unimodular_pair, ReductionWitness, UnimodularCertificate};
pub use descriptor::RingDescriptor;
pub use element::{div_rem, RingElement};
pub use units::{nilpotent_element_exp, principal_unit_log, unit_nth_root};

pub(crate) use element::euclid_size;
pub(crate) use units::nilpotency_bound;

/// `Q(i)`.
pub type Gaussian = Complex<BigRational>;

#[cfg(test)]
pub(crate) mod testing {
    use super::*;

    pub fn q(p: i64, d: i64) -> RingElement {
        RingElement::rational(p, d)
    }

    pub fn qpoly_desc() -> RingDescriptor {
        RingDescriptor::poly(RingDescriptor::Rational).unwrap()
    }

    pub fn qpoly(cs: &[i64]) -> RingElement {
        RingElement::polynomial(&qpoly_desc(), cs.iter().map(|&c| q(c, 1)).collect()).unwrap()
    }

    pub fn qjet(order: usize, cs: &[i64]) -> RingElement {
        let d = RingDescriptor::jet(RingDescriptor::Rational, order).unwrap();
        RingElement::jet(&d, cs.iter().map(|&c| q(c, 1)).collect()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;
    use crate::random::random_element;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rational_sum() {
        assert!(q(2, 3).add(&q(1, 3)).unwrap().is_one());
    }

    #[test]
    fn jet_product_truncates() {
        let p = qjet(3, &[1, 1]).mul(&qjet(3, &[1, -1, 1])).unwrap();
        assert!(p.is_one());
    }

    #[test]
    fn polynomial_units() {
        assert!(!qpoly(&[1, 1]).is_unit());
        assert!(qpoly(&[5]).is_unit());
        assert_eq!(qpoly(&[1, 1]).invert_unit().unwrap_err(), crate::Error::NotAUnit);
    }

    #[test]
    fn descriptor_mismatch() {
        assert!(matches!(
            q(1, 2).add(&qjet(2, &[1])),
            Err(crate::Error::DescriptorMismatch(..))
        ));
    }

    #[test]
    fn jet_inverse() {
        let u = qjet(4, &[2, 3, -1, 5]);
        assert!(u.mul(&u.invert_unit().unwrap()).unwrap().is_one());
    }

    fn rings() -> Vec<RingDescriptor> {
        [
            "integer",
            "rational",
            "gaussian",
            "poly(rational)",
            "jet(rational,4)",
            "product(jet(rational,3),rational)",
        ]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
    }

    proptest! {
        #[test]
        fn ring_axioms(seed in any::<u64>(), which in 0usize..6) {
            let d = &rings()[which];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_element(d, &mut rng, 3);
            let b = random_element(d, &mut rng, 3);
            let c = random_element(d, &mut rng, 3);
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.one_like().mul(&a).unwrap(), a.clone());
            prop_assert!(a.sub(&a).unwrap().is_zero());
            if a.is_unit() {
                prop_assert!(a.mul(&a.invert_unit().unwrap()).unwrap().is_one());
            }
        }

        #[test]
        fn witnesses_and_certificates_hold(seed in any::<u64>(), which in 0usize..3) {
            let d: RingDescriptor = ["rational", "jet(rational,4)", "product(jet(rational,3),jet(gaussian,2))"][which]
                .parse().unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x1 = random_element(&d, &mut rng, 3);
            let x2 = random_element(&d, &mut rng, 3);
            if let Ok(cert) = bezout_certificate(&[x1.clone(), x2.clone()]) {
                prop_assert!(cert.certifies(&[x1.clone(), x2.clone()]).unwrap());
                let w = reduce_unimodular_pair(&x1, &x2, &cert).unwrap();
                let alpha = x1.add(&w.y.mul(&x2).unwrap()).unwrap();
                prop_assert!(alpha.is_unit());
                prop_assert_eq!(&alpha, &w.alpha);
                prop_assert!(w.alpha.mul(&w.alpha_inverse).unwrap().is_one());
            }
        }

        #[test]
        fn log_exp_inverse_on_nilpotents(seed in any::<u64>(), order in 1usize..6) {
            let d = RingDescriptor::jet(RingDescriptor::Rational, order).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut m = random_element(&d, &mut rng, 4);
            m = m.sub(&m.constant_part()).unwrap();
            let u = nilpotent_element_exp(&m).unwrap();
            prop_assert_eq!(principal_unit_log(&u).unwrap(), m.clone());
            prop_assert_eq!(nilpotent_element_exp(&principal_unit_log(&u).unwrap()).unwrap(), u.clone());
            let k = (seed % 4 + 1) as u32;
            prop_assert_eq!(unit_nth_root(&u, k).unwrap().pow(k), u);
        }
    }
}
