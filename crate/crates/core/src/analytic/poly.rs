use std::ops::Neg;

use num_traits::{Num, Zero};

use crate::C64;

/// Dense univariate polynomial with ascending coefficients and no trailing
/// zeros (the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Num + Clone> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `z - root`
    pub fn linear(root: T) -> Self {
        Self::new(vec![T::zero() - root, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, z: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
                        + other.coeffs.get(i).cloned().unwrap_or_else(T::zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
                        - other.coeffs.get(i).cloned().unwrap_or_else(T::zero)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::constant(T::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        let mut k = T::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Self::new(out)
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let lead = d.leading().expect("division by the zero polynomial").clone();
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        if r.len() < dl {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![T::zero(); r.len() - dl + 1];
        for shift in (0..q.len()).rev() {
            let c = r[shift + dl - 1].clone() / lead.clone();
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[shift + j] = r[shift + j].clone() - c.clone() * dj.clone();
            }
            q[shift] = c;
        }
        r.truncate(dl - 1);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let l = l.clone();
                Self::new(self.coeffs.iter().map(|c| c.clone() / l.clone()).collect())
            }
            None => Self::zero(),
        }
    }

    /// Monic gcd (exact fields only).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Taylor coefficients at `base`: `p(base + h) = sum c_k h^k`, `k <= order`.
    pub fn taylor_at(&self, base: &T, order: usize) -> Vec<T> {
        let mut work = self.coeffs.clone();
        let mut out = Vec::with_capacity(order + 1);
        for _ in 0..=order {
            if work.is_empty() {
                out.push(T::zero());
                continue;
            }
            // synthetic division by (z - base): remainder is the next coefficient
            let mut carry = T::zero();
            for c in work.iter_mut().rev() {
                let v = c.clone() + carry.clone() * base.clone();
                *c = carry;
                carry = v;
            }
            out.push(carry);
            work.pop();
        }
        out
    }

    /// Square-free decomposition (Yun): returns `(factor, multiplicity)` pairs
    /// of monic square-free polynomials whose product with multiplicities is
    /// the monic part of `self`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let c = df.div_rem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let ai = b.gcd(&d);
            b = b.div_rem(&ai).0;
            let ci = d.div_rem(&ai).0;
            d = ci.sub(&b.derivative());
            if ai.degree().unwrap_or(0) > 0 {
                out.push((ai, i));
            }
            i += 1;
        }
        out
    }
}

impl<T: Num + Clone + Neg<Output = T>> Neg for Polynomial<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Polynomial<C64> {
    /// Largest coefficient modulus.
    pub fn coefficient_scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `sum |a_k| |z|^k`, the natural rounding-error scale for `p(z)`.
    pub fn abs_eval(&self, z: C64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }
}

impl<T: Zero + Clone> Default for Polynomial<T> {
    fn default() -> Self {
        Polynomial { coeffs: Vec::new() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn qp(cs: &[i64]) -> Polynomial<BigRational> {
        Polynomial::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = qp(&[-1, 0, 1]); // z^2 - 1
        let b = qp(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, qp(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&qp(&[1, 2, 1])), qp(&[1, 1]));
    }

    #[test]
    fn taylor_shift() {
        // (z^2 - 1) at z = 1: 0 + 2h + h^2
        let t = qp(&[-1, 0, 1]).taylor_at(&BigRational::from_integer(1.into()), 3);
        assert_eq!(t, qp(&[0, 2, 1]).coeffs().iter().cloned().chain([BigRational::zero()]).collect::<Vec<_>>());
    }

    #[test]
    fn yun_decomposition() {
        // (z-2)^3 (z+1)
        let p = qp(&[-2, 1]).pow(3).mul(&qp(&[1, 1]));
        let sq = p.squarefree_decomposition();
        assert_eq!(sq, vec![(qp(&[1, 1]), 1), (qp(&[-2, 1]), 3)]);
        assert!(qp(&[0, 0, 1]).squarefree_decomposition() == vec![(qp(&[0, 1]), 2)]);
    }
}
