use num_traits::{Num, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Truncated Taylor expansion `sum_{j<=N} b_j (z - base)^j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Jet<T = C64> {
    pub base: T,
    pub coeffs: Vec<T>,
}

impl<T: Num + Clone> Jet<T> {
    pub fn new(base: T, coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a jet has at least one coefficient");
        Jet { base, coeffs }
    }

    pub fn constant(base: T, value: T, order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[0] = value;
        Jet { base, coeffs }
    }

    /// The jet of the identity function `z` at `base`.
    pub fn variable(base: T, order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[0] = base.clone();
        if order >= 1 {
            coeffs[1] = T::one();
        }
        Jet { base, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<T> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, T::zero());
        Jet {
            base: self.base.clone(),
            coeffs,
        }
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        Jet {
            base: self.base.clone(),
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        Jet {
            base: self.base.clone(),
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() - other.coeffs[i].clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Jet {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|c| T::zero() - c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Jet {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Jet {
            base: self.base.clone(),
            coeffs: out,
        }
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Jet::constant(self.base.clone(), T::one(), self.order());
        let mut b = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Option<Self> {
        let b0 = self.coeffs[0].clone();
        if b0.is_zero() {
            return None;
        }
        let inv0 = T::one() / b0;
        let mut w: Vec<T> = Vec::with_capacity(self.coeffs.len());
        w.push(inv0.clone());
        for k in 1..self.coeffs.len() {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * w[k - j].clone();
            }
            w.push(T::zero() - acc * inv0.clone());
        }
        Some(Jet {
            base: self.base.clone(),
            coeffs: w,
        })
    }

    /// Evaluates the truncated series at `base + h`.
    pub fn eval_offset(&self, h: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * h.clone() + c.clone())
    }

    /// Drops the first `k` coefficients (division by `(z - base)^k`).
    pub(crate) fn shift_down(&self, k: usize) -> Self {
        Jet {
            base: self.base.clone(),
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    fn small_int(k: usize) -> T {
        (0..k).fold(T::zero(), |acc, _| acc + T::one())
    }

    /// `exp` of a jet whose constant term is zero (exact for any field).
    pub fn exp_nilpotent(&self) -> Option<Self> {
        if !self.coeffs[0].is_zero() {
            return None;
        }
        Some(self.exp_with_constant(T::one()))
    }

    /// Series recurrence `g_k = (1/k) sum_{j=1..k} j f_j g_{k-j}` with `g_0` given.
    fn exp_with_constant(&self, g0: T) -> Self {
        let n = self.order();
        let mut g = Vec::with_capacity(n + 1);
        g.push(g0);
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + Self::small_int(j) * self.coeffs[j].clone() * g[k - j].clone();
            }
            g.push(acc / Self::small_int(k));
        }
        Jet {
            base: self.base.clone(),
            coeffs: g,
        }
    }

    /// `log` with a caller-supplied constant term `g_0` (a logarithm of `b_0`).
    fn log_with_constant(&self, g0: T) -> Option<Self> {
        let b0 = self.coeffs[0].clone();
        if b0.is_zero() {
            return None;
        }
        let n = self.order();
        let mut g = Vec::with_capacity(n + 1);
        g.push(g0);
        for k in 1..=n {
            // k b_0 g_k = k b_k - sum_{j=1..k-1} j g_j b_{k-j}
            let mut acc = Self::small_int(k) * self.coeffs[k].clone();
            for j in 1..k {
                acc = acc - Self::small_int(j) * g[j].clone() * self.coeffs[k - j].clone();
            }
            g.push(acc / (Self::small_int(k) * b0.clone()));
        }
        Some(Jet {
            base: self.base.clone(),
            coeffs: g,
        })
    }

    /// Logarithm of a jet with constant term exactly one (exact fields).
    pub fn log_principal_unit(&self) -> Option<Self> {
        if !(self.coeffs[0].clone() - T::one()).is_zero() {
            return None;
        }
        self.log_with_constant(T::zero())
    }
}

impl Jet<C64> {
    pub fn exp(&self) -> Self {
        self.exp_with_constant(self.coeffs[0].exp())
    }

    /// First index whose coefficient exceeds `rel_threshold` times the largest
    /// coefficient modulus; `None` if the jet is numerically zero.
    pub fn valuation(&self, rel_threshold: f64) -> Option<usize> {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return None;
        }
        self.coeffs
            .iter()
            .position(|c| c.norm() > rel_threshold * scale)
    }
}

/// `g = log f` on jets with the principal branch for the constant term.
pub fn jet_log(j: &Jet<C64>) -> Result<Jet<C64>> {
    let b0 = j.coeffs[0];
    if b0 == C64::zero() {
        return Err(Error::VanishingConstantTerm);
    }
    j.log_with_constant(b0.ln()).ok_or(Error::VanishingConstantTerm)
}

pub fn jet_exp(j: &Jet<C64>) -> Jet<C64> {
    j.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn log_of_one_plus_h() {
        let g = jet_log(&Jet::new(c(0.0), vec![c(1.0), c(1.0)])).unwrap();
        assert_eq!(g.coeffs, vec![c(0.0), c(1.0)]);
    }

    #[test]
    fn log_of_e_times_one_plus_h() {
        let e = std::f64::consts::E;
        let g = jet_log(&Jet::new(c(0.0), vec![c(e), c(e)])).unwrap();
        assert!((g.coeffs[0] - c(1.0)).norm() < 1e-15);
        assert!((g.coeffs[1] - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn vanishing_constant_term() {
        assert_eq!(
            jet_log(&Jet::new(c(0.0), vec![c(0.0), c(1.0)])).unwrap_err(),
            Error::VanishingConstantTerm
        );
    }

    #[test]
    fn exact_log_exp_round_trip() {
        let q = |p: i64, d: i64| BigRational::new(p.into(), d.into());
        let j = Jet::new(q(0, 1), vec![q(1, 1), q(3, 2), q(-1, 3), q(2, 1)]);
        let l = j.log_principal_unit().unwrap();
        assert_eq!(l.exp_nilpotent().unwrap(), j);
    }

    #[test]
    fn reciprocal_geometric() {
        let j = Jet::new(c(0.0), vec![c(1.0), c(-1.0), c(0.0), c(0.0)]);
        assert_eq!(j.recip().unwrap().coeffs, vec![c(1.0); 4]);
    }

    proptest! {
        #[test]
        fn exp_log_round_trip(
            r0 in 0.5f64..2.0,
            theta in -3.0f64..3.0,
            rest in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 0..7),
        ) {
            let mut coeffs = vec![C64::from_polar(r0, theta)];
            coeffs.extend(rest.iter().map(|&(a, b)| C64::new(a, b)));
            let j = Jet::new(C64::new(0.3, -0.2), coeffs);
            let back = jet_exp(&jet_log(&j).unwrap());
            for (a, b) in back.coeffs.iter().zip(&j.coeffs) {
                prop_assert!((a - b).norm() <= 1e-12, "{a} vs {b}");
            }
        }
    }
}
