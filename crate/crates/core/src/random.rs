//! Seeded generators for test inputs.

use num_rational::BigRational;
use rand::Rng;

use crate::analytic::FuncExpr;
use crate::ring::{Gaussian, RingDescriptor, RingElement};

fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    BigRational::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=bound.max(1)).into())
}

fn small_gaussian<R: Rng>(rng: &mut R, bound: i64) -> Gaussian {
    Gaussian::new(small_rational(rng, bound), small_rational(rng, bound))
}

/// A random element of `desc` with small coefficients (numerators and
/// denominators bounded by `bound`, polynomial degree at most 2).
pub fn random_element<R: Rng>(desc: &RingDescriptor, rng: &mut R, bound: i64) -> RingElement {
    match desc {
        RingDescriptor::Integer => RingElement::integer(rng.gen_range(-bound..=bound)),
        RingDescriptor::Rational => RingElement::from_big_rational(small_rational(rng, bound)),
        RingDescriptor::GaussianRational => {
            let g = small_gaussian(rng, bound);
            RingElement::gaussian(g.re, g.im)
        }
        RingDescriptor::PolyOverField(base) => {
            let deg = rng.gen_range(0..=2);
            let cs = (0..=deg).map(|_| random_element(base, rng, bound)).collect();
            RingElement::polynomial(desc, cs).expect("coefficients lie in the base field")
        }
        RingDescriptor::JetRing { base, order } => {
            let cs = (0..=*order).map(|_| random_element(base, rng, bound)).collect();
            RingElement::jet(desc, cs).expect("coefficients lie in the base field")
        }
        RingDescriptor::ProductRing(parts) => {
            let cs = parts.iter().map(|p| random_element(p, rng, bound)).collect();
            RingElement::product(desc, cs).expect("components match")
        }
        RingDescriptor::AnalyticFn => {
            let deg = rng.gen_range(0..=2);
            RingElement::analytic(FuncExpr::poly((0..=deg).map(|_| small_gaussian(rng, bound)).collect()))
        }
    }
}
