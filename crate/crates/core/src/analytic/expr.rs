use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::jet::Jet;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::ring::Gaussian;
use crate::C64;

/// Relative threshold below which a jet coefficient counts as zero.
pub const VALUATION_THRESHOLD: f64 = 1e-9;
/// Order of the local expansion used to evaluate annotated quotients.
pub const JET_EVAL_ORDER: usize = 12;
/// Quotients with `|den|` below this and no annotation are poles.
pub const POLE_FLOOR: f64 = 1e-280;

/// Radius around an annotated removable singularity of the given order
/// inside which quotients are evaluated through jets. Outside it the direct
/// quotient loses about `eps / r^order` to cancellation.
pub fn jet_switch_radius(point: C64, order: usize) -> f64 {
    (1.0 + point.norm()) * 10f64.powf(-3.0 / order.max(1) as f64)
}

fn same_point(a: C64, b: C64) -> bool {
    (a - b).norm() <= 1e-12 * (1.0 + a.norm())
}

/// A point where a quotient is known to be holomorphic, with the order of
/// vanishing of its denominator there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Removable {
    pub point: C64,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Node {
    Const {
        value: C64,
    },
    Var,
    /// Exact polynomial literal in `z`.
    Poly {
        #[serde(with = "gaussian_vec")]
        coeffs: Vec<Gaussian>,
    },
    Add {
        lhs: FuncExpr,
        rhs: FuncExpr,
    },
    Sub {
        lhs: FuncExpr,
        rhs: FuncExpr,
    },
    Mul {
        lhs: FuncExpr,
        rhs: FuncExpr,
    },
    Neg {
        arg: FuncExpr,
    },
    Div {
        num: FuncExpr,
        den: FuncExpr,
        #[serde(default)]
        removable: Vec<Removable>,
    },
    Exp {
        arg: FuncExpr,
    },
    Pow {
        base: FuncExpr,
        exp: i32,
    },
}

mod gaussian_vec {
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    use crate::ring::json::{gaussian_from_json, gaussian_to_json};
    use crate::ring::Gaussian;

    pub fn serialize<S: Serializer>(v: &[Gaussian], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(gaussian_to_json).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Gaussian>, D::Error> {
        let raw = Vec::<Value>::deserialize(d)?;
        raw.iter()
            .map(|x| gaussian_from_json(x, "coeffs").map_err(D::Error::custom))
            .collect()
    }
}

/// Immutable, shareable expression tree for a holomorphic function of `z`.
#[derive(Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FuncExpr(Arc<Node>);

impl PartialEq for FuncExpr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl fmt::Debug for FuncExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FuncExpr({self})")
    }
}

pub(crate) fn gaussian_to_c64(g: &Gaussian) -> C64 {
    C64::new(
        g.re.to_f64().unwrap_or(f64::NAN),
        g.im.to_f64().unwrap_or(f64::NAN),
    )
}

type EvalCache = HashMap<*const Node, C64>;
type JetCache = HashMap<(*const Node, usize), Jet>;

impl FuncExpr {
    fn new(node: Node) -> Self {
        FuncExpr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn zero() -> Self {
        Self::new(Node::Poly { coeffs: Vec::new() })
    }

    pub fn one() -> Self {
        Self::exact(Gaussian::one())
    }

    pub fn var() -> Self {
        Self::new(Node::Var)
    }

    pub fn constant(value: C64) -> Self {
        Self::new(Node::Const { value })
    }

    pub fn exact(value: Gaussian) -> Self {
        Self::poly(vec![value])
    }

    pub fn rational(p: i64, q: i64) -> Self {
        Self::exact(Gaussian::new(BigRational::new(p.into(), q.into()), BigRational::zero()))
    }

    /// Exact polynomial literal (ascending coefficients).
    pub fn poly(mut coeffs: Vec<Gaussian>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self::new(Node::Poly { coeffs })
    }

    /// Horner form of a floating-point polynomial.
    pub fn from_float_poly(p: &Polynomial<C64>) -> Self {
        let mut acc = Self::zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * &Self::var()) + &Self::constant(*c);
        }
        acc
    }

    pub fn exp(&self) -> Self {
        match self.node() {
            _ if self.is_structurally_zero() => Self::one(),
            Node::Const { value } => Self::constant(value.exp()),
            _ => Self::new(Node::Exp { arg: self.clone() }),
        }
    }

    pub fn powi(&self, k: i32) -> Self {
        match k {
            0 => Self::one(),
            1 => self.clone(),
            _ => Self::new(Node::Pow {
                base: self.clone(),
                exp: k,
            }),
        }
    }

    /// Quotient `self / den`, holomorphic at the annotated points.
    pub fn div(&self, den: &FuncExpr, removable: Vec<Removable>) -> Self {
        if self.is_structurally_zero() {
            return Self::zero();
        }
        if den.is_exact_one() {
            return self.clone();
        }
        if let Node::Poly { coeffs } = den.node() {
            if coeffs.len() == 1 {
                return self * &Self::exact(coeffs[0].inv());
            }
        }
        if removable.is_empty() {
            if let (Node::Const { value: a }, Node::Const { value: b }) = (self.node(), den.node()) {
                if *b != C64::zero() {
                    return Self::constant(a / b);
                }
            }
        }
        Self::new(Node::Div {
            num: self.clone(),
            den: den.clone(),
            removable,
        })
    }

    /// `1/self`, preferring `exp(-g)` for `self = exp(g)`.
    pub fn reciprocal(&self) -> Self {
        match self.node() {
            Node::Exp { arg } => (-arg).exp(),
            Node::Const { value } => Self::constant(value.inv()),
            Node::Poly { coeffs } if coeffs.len() == 1 => Self::exact(coeffs[0].inv()),
            Node::Pow { base, exp } => base.powi(-exp),
            _ => Self::one().div(self, Vec::new()),
        }
    }

    pub fn is_structurally_zero(&self) -> bool {
        match self.node() {
            Node::Poly { coeffs } => coeffs.is_empty(),
            Node::Const { value } => *value == C64::zero(),
            _ => false,
        }
    }

    fn is_exact_one(&self) -> bool {
        matches!(self.node(), Node::Poly { coeffs } if coeffs.len() == 1 && coeffs[0].is_one())
    }

    /// Units recognizable from the tree shape alone.
    pub fn is_syntactic_unit(&self) -> bool {
        match self.node() {
            Node::Const { value } => *value != C64::zero(),
            Node::Poly { coeffs } => coeffs.len() == 1,
            Node::Exp { .. } => true,
            Node::Mul { lhs, rhs } => lhs.is_syntactic_unit() && rhs.is_syntactic_unit(),
            Node::Neg { arg } => arg.is_syntactic_unit(),
            Node::Pow { base, .. } => base.is_syntactic_unit(),
            Node::Div { num, den, .. } => num.is_syntactic_unit() && den.is_syntactic_unit(),
            _ => false,
        }
    }

    /// The exact polynomial this tree denotes, if it is built only from
    /// polynomial literals, `z`, sums, products and nonnegative powers.
    pub fn to_exact_poly(&self) -> Option<Polynomial<Gaussian>> {
        Some(match self.node() {
            Node::Poly { coeffs } => Polynomial::new(coeffs.clone()),
            Node::Var => Polynomial::new(vec![Gaussian::zero(), Gaussian::one()]),
            Node::Add { lhs, rhs } => lhs.to_exact_poly()?.add(&rhs.to_exact_poly()?),
            Node::Sub { lhs, rhs } => lhs.to_exact_poly()?.sub(&rhs.to_exact_poly()?),
            Node::Mul { lhs, rhs } => lhs.to_exact_poly()?.mul(&rhs.to_exact_poly()?),
            Node::Neg { arg } => -arg.to_exact_poly()?,
            Node::Pow { base, exp } if *exp >= 0 => base.to_exact_poly()?.pow(*exp as usize),
            _ => return None,
        })
    }

    /// Like [`to_exact_poly`](Self::to_exact_poly) but also admits floating constants.
    pub fn to_float_poly(&self) -> Option<Polynomial<C64>> {
        Some(match self.node() {
            Node::Const { value } => Polynomial::new(vec![*value]),
            Node::Poly { coeffs } => Polynomial::new(coeffs.iter().map(gaussian_to_c64).collect()),
            Node::Var => Polynomial::new(vec![C64::zero(), C64::one()]),
            Node::Add { lhs, rhs } => lhs.to_float_poly()?.add(&rhs.to_float_poly()?),
            Node::Sub { lhs, rhs } => lhs.to_float_poly()?.sub(&rhs.to_float_poly()?),
            Node::Mul { lhs, rhs } => lhs.to_float_poly()?.mul(&rhs.to_float_poly()?),
            Node::Neg { arg } => -arg.to_float_poly()?,
            Node::Pow { base, exp } if *exp >= 0 => base.to_float_poly()?.pow(*exp as usize),
            _ => return None,
        })
    }

    /// Evaluates at `z` in double precision.
    pub fn eval(&self, z: C64) -> Result<C64> {
        self.eval_cached(z, &mut EvalCache::new())
    }

    /// Evaluates several expressions at `z`, sharing common subtrees.
    pub fn eval_all(exprs: &[FuncExpr], z: C64) -> Result<Vec<C64>> {
        let mut cache = EvalCache::new();
        exprs.iter().map(|e| e.eval_cached(z, &mut cache)).collect()
    }

    fn eval_cached(&self, z: C64, cache: &mut EvalCache) -> Result<C64> {
        let key = Arc::as_ptr(&self.0);
        if let Some(v) = cache.get(&key) {
            return Ok(*v);
        }
        let v = match self.node() {
            Node::Const { value } => *value,
            Node::Var => z,
            Node::Poly { coeffs } => coeffs
                .iter()
                .rev()
                .fold(C64::zero(), |acc, c| acc * z + gaussian_to_c64(c)),
            Node::Add { lhs, rhs } => lhs.eval_cached(z, cache)? + rhs.eval_cached(z, cache)?,
            Node::Sub { lhs, rhs } => lhs.eval_cached(z, cache)? - rhs.eval_cached(z, cache)?,
            Node::Mul { lhs, rhs } => lhs.eval_cached(z, cache)? * rhs.eval_cached(z, cache)?,
            Node::Neg { arg } => -arg.eval_cached(z, cache)?,
            Node::Exp { arg } => arg.eval_cached(z, cache)?.exp(),
            Node::Pow { base, exp } => {
                let b = base.eval_cached(z, cache)?;
                if *exp < 0 && b.norm() < POLE_FLOOR {
                    return Err(Error::UnannotatedPole(format!("{z}")));
                }
                b.powi(*exp)
            }
            Node::Div {
                num,
                den,
                removable,
            } => {
                let near = removable.iter().find(|r| {
                    // the local expansion is only accurate well inside the
                    // distance to the next zero of the denominator
                    let gap = removable
                        .iter()
                        .filter(|o| !same_point(o.point, r.point))
                        .map(|o| 0.5 * (o.point - r.point).norm())
                        .fold(f64::INFINITY, f64::min);
                    (z - r.point).norm() < jet_switch_radius(r.point, r.order).min(gap)
                });
                match near {
                    Some(r) => {
                        let j = self.jet_at(r.point, JET_EVAL_ORDER)?;
                        j.eval_offset(&(z - r.point))
                    }
                    None => {
                        let d = den.eval_cached(z, cache)?;
                        if d.norm() < POLE_FLOOR {
                            return Err(Error::UnannotatedPole(format!("{z}")));
                        }
                        num.eval_cached(z, cache)? / d
                    }
                }
            }
        };
        cache.insert(key, v);
        Ok(v)
    }

    /// Truncated Taylor expansion of order `order` at `z0`.
    pub fn jet_at(&self, z0: C64, order: usize) -> Result<Jet> {
        self.jet_cached(z0, order, &mut JetCache::new())
    }

    fn jet_cached(&self, z0: C64, order: usize, cache: &mut JetCache) -> Result<Jet> {
        let key = (Arc::as_ptr(&self.0), order);
        if let Some(j) = cache.get(&key) {
            return Ok(j.clone());
        }
        let j = match self.node() {
            Node::Const { value } => Jet::constant(z0, *value, order),
            Node::Var => Jet::variable(z0, order),
            Node::Poly { coeffs } => {
                let p = Polynomial::new(coeffs.iter().map(gaussian_to_c64).collect());
                Jet::new(z0, p.taylor_at(&z0, order))
            }
            Node::Add { lhs, rhs } => lhs
                .jet_cached(z0, order, cache)?
                .add(&rhs.jet_cached(z0, order, cache)?),
            Node::Sub { lhs, rhs } => lhs
                .jet_cached(z0, order, cache)?
                .sub(&rhs.jet_cached(z0, order, cache)?),
            Node::Mul { lhs, rhs } => lhs
                .jet_cached(z0, order, cache)?
                .mul(&rhs.jet_cached(z0, order, cache)?),
            Node::Neg { arg } => arg.jet_cached(z0, order, cache)?.neg(),
            Node::Exp { arg } => arg.jet_cached(z0, order, cache)?.exp(),
            Node::Pow { base, exp } => {
                let b = base.jet_cached(z0, order, cache)?;
                if *exp >= 0 {
                    b.powi(*exp as u32)
                } else {
                    b.recip()
                        .ok_or_else(|| Error::PoleAtBase(format!("{z0}")))?
                        .powi(exp.unsigned_abs())
                }
            }
            Node::Div {
                num,
                den,
                removable,
            } => {
                let annotated = removable
                    .iter()
                    .filter(|r| same_point(r.point, z0))
                    .map(|r| r.order)
                    .max()
                    .unwrap_or(0);
                let mut extra = annotated;
                loop {
                    let dj = den.jet_cached(z0, order + extra, cache)?;
                    let Some(v) = dj.valuation(VALUATION_THRESHOLD) else {
                        if extra > order + 32 {
                            return Err(Error::PoleAtBase(format!("{z0}")));
                        }
                        extra += 8;
                        continue;
                    };
                    if v > extra {
                        extra = v;
                        continue;
                    }
                    let nj = num.jet_cached(z0, order + v, cache)?;
                    let nscale = nj.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
                    if nj.coeffs[..v]
                        .iter()
                        .any(|c| c.norm() > VALUATION_THRESHOLD * nscale)
                    {
                        return Err(Error::PoleAtBase(format!("{z0}")));
                    }
                    let dshift = dj.truncate(order + v).shift_down(v);
                    let recip = dshift
                        .recip()
                        .ok_or_else(|| Error::PoleAtBase(format!("{z0}")))?;
                    break nj.shift_down(v).mul(&recip);
                }
            }
        };
        cache.insert(key, j.clone());
        Ok(j)
    }

    /// Candidate zeros (a superset of the true zero set, with multiplicity
    /// upper bounds) when they can be located from the tree shape; `None`
    /// when the zero set is not computable this way.
    pub fn zero_candidates(&self) -> Option<Vec<(C64, usize)>> {
        if self.is_structurally_zero() {
            return None;
        }
        if let Some(p) = self.to_exact_poly() {
            return Some(
                super::roots::poly_roots_exact(&p, 1e-10)
                    .ok()?
                    .roots
                    .iter()
                    .map(|r| (r.location, r.multiplicity))
                    .collect(),
            );
        }
        if let Some(p) = self.to_float_poly() {
            if p.degree()? == 0 {
                return Some(Vec::new());
            }
            return Some(
                super::roots::poly_roots(&p, 1e-8)
                    .ok()?
                    .roots
                    .iter()
                    .map(|r| (r.location, r.multiplicity))
                    .collect(),
            );
        }
        match self.node() {
            Node::Exp { .. } => Some(Vec::new()),
            Node::Neg { arg } => arg.zero_candidates(),
            Node::Pow { base, exp } if *exp > 0 => Some(
                base.zero_candidates()?
                    .into_iter()
                    .map(|(p, m)| (p, m * *exp as usize))
                    .collect(),
            ),
            Node::Pow { base, .. } => base.zero_candidates().map(|_| Vec::new()),
            Node::Mul { lhs, rhs } => {
                let mut out = lhs.zero_candidates()?;
                for (p, m) in rhs.zero_candidates()? {
                    match out.iter_mut().find(|(q, _)| (*q - p).norm() <= 1e-9 * (1.0 + p.norm())) {
                        Some(entry) => entry.1 += m,
                        None => out.push((p, m)),
                    }
                }
                Some(out)
            }
            Node::Div { num, .. } => num.zero_candidates(),
            _ => None,
        }
    }
}

impl Add for &FuncExpr {
    type Output = FuncExpr;
    fn add(self, rhs: &FuncExpr) -> FuncExpr {
        if self.is_structurally_zero() {
            return rhs.clone();
        }
        if rhs.is_structurally_zero() {
            return self.clone();
        }
        match (self.node(), rhs.node()) {
            (Node::Poly { .. }, Node::Poly { .. }) => FuncExpr::poly(
                self.to_exact_poly().unwrap().add(&rhs.to_exact_poly().unwrap()).into_coeffs(),
            ),
            (Node::Const { value: a }, Node::Const { value: b }) => FuncExpr::constant(a + b),
            _ => FuncExpr::new(Node::Add {
                lhs: self.clone(),
                rhs: rhs.clone(),
            }),
        }
    }
}

impl Sub for &FuncExpr {
    type Output = FuncExpr;
    fn sub(self, rhs: &FuncExpr) -> FuncExpr {
        if rhs.is_structurally_zero() {
            return self.clone();
        }
        if self.is_structurally_zero() {
            return -rhs;
        }
        if self == rhs {
            return FuncExpr::zero();
        }
        match (self.node(), rhs.node()) {
            (Node::Poly { .. }, Node::Poly { .. }) => FuncExpr::poly(
                self.to_exact_poly().unwrap().sub(&rhs.to_exact_poly().unwrap()).into_coeffs(),
            ),
            (Node::Const { value: a }, Node::Const { value: b }) => FuncExpr::constant(a - b),
            _ => FuncExpr::new(Node::Sub {
                lhs: self.clone(),
                rhs: rhs.clone(),
            }),
        }
    }
}

impl Mul for &FuncExpr {
    type Output = FuncExpr;
    fn mul(self, rhs: &FuncExpr) -> FuncExpr {
        if self.is_structurally_zero() || rhs.is_structurally_zero() {
            return FuncExpr::zero();
        }
        if self.is_exact_one() {
            return rhs.clone();
        }
        if rhs.is_exact_one() {
            return self.clone();
        }
        match (self.node(), rhs.node()) {
            (Node::Poly { .. }, Node::Poly { .. }) => FuncExpr::poly(
                self.to_exact_poly().unwrap().mul(&rhs.to_exact_poly().unwrap()).into_coeffs(),
            ),
            (Node::Const { value: a }, Node::Const { value: b }) => FuncExpr::constant(a * b),
            _ => FuncExpr::new(Node::Mul {
                lhs: self.clone(),
                rhs: rhs.clone(),
            }),
        }
    }
}

impl Neg for &FuncExpr {
    type Output = FuncExpr;
    fn neg(self) -> FuncExpr {
        match self.node() {
            Node::Poly { coeffs } => FuncExpr::poly(coeffs.iter().map(|c| -c.clone()).collect()),
            Node::Const { value } => FuncExpr::constant(-value),
            Node::Neg { arg } => arg.clone(),
            _ => FuncExpr::new(Node::Neg { arg: self.clone() }),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FuncExpr {
            type Output = FuncExpr;
            fn $m(self, rhs: FuncExpr) -> FuncExpr {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FuncExpr {
    type Output = FuncExpr;
    fn neg(self) -> FuncExpr {
        -&self
    }
}

fn fmt_gaussian(g: &Gaussian) -> String {
    let part = |q: &BigRational| {
        if q.is_integer() {
            q.numer().to_string()
        } else {
            format!("{}/{}", q.numer(), q.denom())
        }
    };
    if g.im.is_zero() {
        part(&g.re)
    } else if g.re.is_zero() {
        format!("{}i", part(&g.im))
    } else {
        format!("({}+{}i)", part(&g.re), part(&g.im))
    }
}

impl fmt::Display for FuncExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const { value } => write!(f, "({}{:+}i)", value.re, value.im),
            Node::Var => write!(f, "z"),
            Node::Poly { coeffs } => {
                if coeffs.is_empty() {
                    return write!(f, "0");
                }
                let terms: Vec<String> = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| match i {
                        0 => fmt_gaussian(c),
                        1 => format!("{}*z", fmt_gaussian(c)),
                        _ => format!("{}*z^{i}", fmt_gaussian(c)),
                    })
                    .collect();
                if terms.len() == 1 {
                    write!(f, "{}", terms[0])
                } else {
                    write!(f, "({})", terms.join(" + "))
                }
            }
            Node::Add { lhs, rhs } => write!(f, "({lhs} + {rhs})"),
            Node::Sub { lhs, rhs } => write!(f, "({lhs} - {rhs})"),
            Node::Mul { lhs, rhs } => write!(f, "{lhs}*{rhs}"),
            Node::Neg { arg } => write!(f, "-{arg}"),
            Node::Div { num, den, .. } => write!(f, "({num})/({den})"),
            Node::Exp { arg } => write!(f, "exp({arg})"),
            Node::Pow { base, exp } => write!(f, "{base}^{exp}"),
        }
    }
}

/// `f(z)` for `f` given as an expression (convenience for tests and the CLI).
pub fn evaluate(f: &FuncExpr, z: C64) -> Result<C64> {
    f.eval(z)
}

pub fn jet_at(f: &FuncExpr, z0: C64, order: usize) -> Result<Jet> {
    f.jet_at(z0, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: i64) -> Gaussian {
        Gaussian::new(BigRational::from_integer(p.into()), BigRational::zero())
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn exp_at_zero() {
        assert_eq!(FuncExpr::var().exp().eval(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn removable_quotient_at_its_singularity() {
        let num = FuncExpr::poly(vec![g(-1), g(0), g(1)]);
        let den = FuncExpr::poly(vec![g(-1), g(1)]);
        let q = num.div(&den, vec![Removable { point: c(1.0, 0.0), order: 1 }]);
        let v = q.eval(c(1.0, 0.0)).unwrap();
        assert!((v - c(2.0, 0.0)).norm() < 1e-14);
        let v = q.eval(c(1.0 + 1e-4, 0.0)).unwrap();
        assert!((v - c(2.0 + 1e-4, 0.0)).norm() < 1e-13);
        let bare = num.div(&den, vec![]);
        assert!(matches!(bare.eval(c(1.0, 0.0)), Err(Error::UnannotatedPole(_))));
    }

    #[test]
    fn polynomial_at_i() {
        let p = FuncExpr::poly(vec![g(1), g(2)]);
        assert_eq!(p.eval(c(0.0, 1.0)).unwrap(), c(1.0, 2.0));
    }

    #[test]
    fn taylor_jets() {
        let j = FuncExpr::var().exp().jet_at(c(0.0, 0.0), 2).unwrap();
        assert_eq!(j.coeffs, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.5, 0.0)]);
        let geo = FuncExpr::one().div(&FuncExpr::poly(vec![g(1), g(-1)]), vec![]);
        let j = geo.jet_at(c(0.0, 0.0), 3).unwrap();
        for b in j.coeffs {
            assert!((b - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn pole_at_base() {
        let q = FuncExpr::one().div(&FuncExpr::var(), vec![]);
        assert!(matches!(q.jet_at(c(0.0, 0.0), 2), Err(Error::PoleAtBase(_))));
    }

    #[test]
    fn smart_constructors_fold_exact_polynomials() {
        let z = FuncExpr::var();
        let p = &(&z * &z) - &FuncExpr::one();
        assert_eq!(p.to_exact_poly().unwrap(), Polynomial::new(vec![g(-1), g(0), g(1)]));
        assert!((&FuncExpr::rational(1, 2) + &FuncExpr::rational(-1, 2)).is_structurally_zero());
    }

    #[test]
    fn json_round_trip() {
        let e = FuncExpr::poly(vec![g(1), g(2)])
            .exp()
            .div(&FuncExpr::var(), vec![Removable { point: c(0.0, 0.0), order: 1 }]);
        let s = serde_json::to_string(&e).unwrap();
        let back: FuncExpr = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn zero_candidates_of_products() {
        let z = FuncExpr::var();
        let p = &(&z * &z) - &FuncExpr::one();
        let e = &p.exp() * &p;
        let mut zs = e.zero_candidates().unwrap();
        zs.sort_by(|a, b| a.0.re.partial_cmp(&b.0.re).unwrap());
        assert_eq!(zs.len(), 2);
        assert!((zs[0].0 - c(-1.0, 0.0)).norm() < 1e-12);
        assert!(FuncExpr::var().exp().zero_candidates().unwrap().is_empty());
        let s = &FuncExpr::var().exp() - &FuncExpr::one();
        assert!(s.zero_candidates().is_none());
    }
}
