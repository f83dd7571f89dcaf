use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Gaussian, RingDescriptor};
use crate::analytic::FuncExpr;
use crate::error::{Error, Result};

/// Canonical payload of a ring element. Interpreted relative to a descriptor.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Value {
    Int(BigInt),
    Rat(BigRational),
    Gauss(Gaussian),
    /// Ascending coefficients, no trailing zeros.
    Poly(Vec<Value>),
    /// Exactly `order` coefficients.
    Jet(Vec<Value>),
    Product(Vec<Value>),
    Analytic(FuncExpr),
}

/// An element of one of the supported rings, tagged with its descriptor.
///
/// Payloads are always canonical, so derived equality is ring equality for
/// the exact rings.
#[derive(Debug, Clone, PartialEq)]
pub struct RingElement {
    desc: Arc<RingDescriptor>,
    value: Value,
}

impl RingElement {
    pub(crate) fn from_parts(desc: Arc<RingDescriptor>, value: Value) -> Self {
        RingElement { desc, value }
    }

    pub(crate) fn value(&self) -> &Value {
        &self.value
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.desc
    }

    pub(crate) fn descriptor_arc(&self) -> &Arc<RingDescriptor> {
        &self.desc
    }

    pub fn zero(desc: &RingDescriptor) -> Self {
        Self::zero_arc(&Arc::new(desc.clone()))
    }

    pub fn one(desc: &RingDescriptor) -> Self {
        Self::one_arc(&Arc::new(desc.clone()))
    }

    pub(crate) fn zero_arc(desc: &Arc<RingDescriptor>) -> Self {
        RingElement {
            value: v_zero(desc),
            desc: desc.clone(),
        }
    }

    pub(crate) fn one_arc(desc: &Arc<RingDescriptor>) -> Self {
        RingElement {
            value: v_one(desc),
            desc: desc.clone(),
        }
    }

    pub fn zero_like(&self) -> Self {
        Self::zero_arc(&self.desc)
    }

    pub fn one_like(&self) -> Self {
        Self::one_arc(&self.desc)
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        RingElement {
            desc: Arc::new(RingDescriptor::Integer),
            value: Value::Int(value.into()),
        }
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self::from_big_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_big_rational(q: BigRational) -> Self {
        RingElement {
            desc: Arc::new(RingDescriptor::Rational),
            value: Value::Rat(q),
        }
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        RingElement {
            desc: Arc::new(RingDescriptor::GaussianRational),
            value: Value::Gauss(Gaussian::new(re, im)),
        }
    }

    /// Builds a polynomial from base-field coefficients (ascending degree).
    pub fn polynomial(desc: &RingDescriptor, coeffs: Vec<RingElement>) -> Result<Self> {
        let RingDescriptor::PolyOverField(base) = desc else {
            return Err(Error::UnsupportedRing(format!("{desc} is not a polynomial ring")));
        };
        let mut vs = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            c.check_desc(base)?;
            vs.push(c.value);
        }
        trim(base, &mut vs);
        Ok(RingElement {
            desc: Arc::new(desc.clone()),
            value: Value::Poly(vs),
        })
    }

    /// Builds a jet from base-field coefficients; missing coefficients are
    /// zero, extra ones are truncated.
    pub fn jet(desc: &RingDescriptor, coeffs: Vec<RingElement>) -> Result<Self> {
        let RingDescriptor::JetRing { base, order } = desc else {
            return Err(Error::UnsupportedRing(format!("{desc} is not a jet ring")));
        };
        let mut vs = Vec::with_capacity(*order);
        for c in coeffs.into_iter().take(*order) {
            c.check_desc(base)?;
            vs.push(c.value);
        }
        vs.resize(*order, v_zero(base));
        Ok(RingElement {
            desc: Arc::new(desc.clone()),
            value: Value::Jet(vs),
        })
    }

    pub fn product(desc: &RingDescriptor, components: Vec<RingElement>) -> Result<Self> {
        let RingDescriptor::ProductRing(ds) = desc else {
            return Err(Error::UnsupportedRing(format!("{desc} is not a product ring")));
        };
        if ds.len() != components.len() {
            return Err(Error::DescriptorMismatch(
                desc.to_string(),
                format!("{} components", components.len()),
            ));
        }
        let mut vs = Vec::with_capacity(ds.len());
        for (c, d) in components.into_iter().zip(ds) {
            c.check_desc(d)?;
            vs.push(c.value);
        }
        Ok(RingElement {
            desc: Arc::new(desc.clone()),
            value: Value::Product(vs),
        })
    }

    pub fn analytic(f: FuncExpr) -> Self {
        RingElement {
            desc: Arc::new(RingDescriptor::AnalyticFn),
            value: Value::Analytic(f),
        }
    }

    /// The image of a rational number under the canonical map `Q -> R`.
    pub fn from_rational(desc: &RingDescriptor, q: &BigRational) -> Result<Self> {
        Ok(RingElement {
            value: v_from_rational(desc, q)?,
            desc: Arc::new(desc.clone()),
        })
    }

    pub fn from_int(desc: &RingDescriptor, k: i64) -> Self {
        RingElement {
            value: v_from_int(desc, &BigInt::from(k)),
            desc: Arc::new(desc.clone()),
        }
    }

    /// The indeterminate `z` of a polynomial or jet ring (componentwise for products).
    pub fn variable(desc: &RingDescriptor) -> Result<Self> {
        Ok(RingElement {
            value: v_variable(desc)?,
            desc: Arc::new(desc.clone()),
        })
    }

    fn check_desc(&self, d: &RingDescriptor) -> Result<()> {
        if *self.desc == *d {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(self.desc.to_string(), d.to_string()))
        }
    }

    fn same_ring(&self, other: &RingElement) -> Result<()> {
        if Arc::ptr_eq(&self.desc, &other.desc) || self.desc == other.desc {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(
                self.desc.to_string(),
                other.desc.to_string(),
            ))
        }
    }

    fn wrap(&self, value: Value) -> RingElement {
        RingElement {
            desc: self.desc.clone(),
            value,
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.wrap(v_add(&self.desc, &self.value, &other.value)))
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.wrap(v_sub(&self.desc, &self.value, &other.value)))
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.wrap(v_mul(&self.desc, &self.value, &other.value)))
    }

    pub fn neg(&self) -> RingElement {
        self.wrap(v_neg(&self.desc, &self.value))
    }

    pub fn pow(&self, k: u32) -> RingElement {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = acc.wrap(v_mul(&self.desc, &acc.value, &self.value));
        }
        acc
    }

    /// Multiplies by the image of a rational scalar.
    pub fn scale(&self, q: &BigRational) -> Result<RingElement> {
        let s = v_from_rational(&self.desc, q)?;
        Ok(self.wrap(v_mul(&self.desc, &self.value, &s)))
    }

    pub fn is_zero(&self) -> bool {
        v_is_zero(&self.desc, &self.value)
    }

    pub fn is_one(&self) -> bool {
        self.value == v_one(&self.desc)
    }

    /// Unit test in the ring. For analytic functions this is syntactic
    /// (nonzero constants, exponentials and their products).
    pub fn is_unit(&self) -> bool {
        v_is_unit(&self.desc, &self.value)
    }

    pub fn invert_unit(&self) -> Result<RingElement> {
        Ok(self.wrap(v_inv(&self.desc, &self.value)?))
    }

    /// Nilpotency test (exact rings). For jets: vanishing constant term.
    pub fn is_nilpotent(&self) -> bool {
        v_is_nilpotent(&self.desc, &self.value)
    }

    /// The constant part in the sense of a principal unit: for jets the
    /// constant coefficient, for products componentwise, otherwise the element.
    #[cfg(test)]
    pub(crate) fn constant_part(&self) -> RingElement {
        self.wrap(v_constant_part(&self.desc, &self.value))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rat(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match &self.value {
            Value::Int(k) => Some(k),
            _ => None,
        }
    }

    pub fn as_gaussian(&self) -> Option<Gaussian> {
        match &self.value {
            Value::Gauss(g) => Some(g.clone()),
            Value::Rat(q) => Some(Gaussian::new(q.clone(), BigRational::zero())),
            _ => None,
        }
    }

    pub fn as_analytic(&self) -> Option<&FuncExpr> {
        match &self.value {
            Value::Analytic(f) => Some(f),
            _ => None,
        }
    }

    /// Coefficients of a polynomial or jet as base-field elements.
    pub fn coefficients(&self) -> Option<Vec<RingElement>> {
        let base = match &*self.desc {
            RingDescriptor::PolyOverField(b) => b,
            RingDescriptor::JetRing { base, .. } => base,
            _ => return None,
        };
        let base = Arc::new((**base).clone());
        match &self.value {
            Value::Poly(cs) | Value::Jet(cs) => Some(
                cs.iter()
                    .map(|c| RingElement::from_parts(base.clone(), c.clone()))
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn components(&self) -> Option<Vec<RingElement>> {
        let RingDescriptor::ProductRing(ds) = &*self.desc else {
            return None;
        };
        let Value::Product(vs) = &self.value else {
            return None;
        };
        Some(
            ds.iter()
                .zip(vs)
                .map(|(d, v)| RingElement::from_parts(Arc::new(d.clone()), v.clone()))
                .collect(),
        )
    }

    /// Degree of a nonzero polynomial.
    pub fn degree(&self) -> Option<usize> {
        match &self.value {
            Value::Poly(cs) if !cs.is_empty() => Some(cs.len() - 1),
            _ => None,
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", v_display(&self.desc, &self.value))
    }
}

pub(crate) fn v_zero(d: &RingDescriptor) -> Value {
    match d {
        RingDescriptor::Integer => Value::Int(BigInt::zero()),
        RingDescriptor::Rational => Value::Rat(BigRational::zero()),
        RingDescriptor::GaussianRational => Value::Gauss(Gaussian::zero()),
        RingDescriptor::PolyOverField(_) => Value::Poly(Vec::new()),
        RingDescriptor::JetRing { base, order } => Value::Jet(vec![v_zero(base); *order]),
        RingDescriptor::ProductRing(ds) => Value::Product(ds.iter().map(v_zero).collect()),
        RingDescriptor::AnalyticFn => Value::Analytic(FuncExpr::zero()),
    }
}

pub(crate) fn v_one(d: &RingDescriptor) -> Value {
    v_from_int(d, &BigInt::one())
}

fn v_from_int(d: &RingDescriptor, k: &BigInt) -> Value {
    match d {
        RingDescriptor::Integer => Value::Int(k.clone()),
        RingDescriptor::Rational => Value::Rat(BigRational::from_integer(k.clone())),
        RingDescriptor::GaussianRational => Value::Gauss(Gaussian::new(
            BigRational::from_integer(k.clone()),
            BigRational::zero(),
        )),
        RingDescriptor::PolyOverField(base) => {
            let mut cs = vec![v_from_int(base, k)];
            trim(base, &mut cs);
            Value::Poly(cs)
        }
        RingDescriptor::JetRing { base, order } => {
            let mut cs = vec![v_zero(base); *order];
            cs[0] = v_from_int(base, k);
            Value::Jet(cs)
        }
        RingDescriptor::ProductRing(ds) => {
            Value::Product(ds.iter().map(|c| v_from_int(c, k)).collect())
        }
        RingDescriptor::AnalyticFn => Value::Analytic(FuncExpr::exact(Gaussian::new(
            BigRational::from_integer(k.clone()),
            BigRational::zero(),
        ))),
    }
}

fn v_from_rational(d: &RingDescriptor, q: &BigRational) -> Result<Value> {
    Ok(match d {
        RingDescriptor::Integer => {
            if q.is_integer() {
                Value::Int(q.to_integer())
            } else {
                return Err(Error::RingWithoutRationals(d.to_string()));
            }
        }
        RingDescriptor::Rational => Value::Rat(q.clone()),
        RingDescriptor::GaussianRational => {
            Value::Gauss(Gaussian::new(q.clone(), BigRational::zero()))
        }
        RingDescriptor::PolyOverField(base) => {
            let mut cs = vec![v_from_rational(base, q)?];
            trim(base, &mut cs);
            Value::Poly(cs)
        }
        RingDescriptor::JetRing { base, order } => {
            let mut cs = vec![v_zero(base); *order];
            cs[0] = v_from_rational(base, q)?;
            Value::Jet(cs)
        }
        RingDescriptor::ProductRing(ds) => Value::Product(
            ds.iter()
                .map(|c| v_from_rational(c, q))
                .collect::<Result<_>>()?,
        ),
        RingDescriptor::AnalyticFn => Value::Analytic(FuncExpr::exact(Gaussian::new(
            q.clone(),
            BigRational::zero(),
        ))),
    })
}

fn v_variable(d: &RingDescriptor) -> Result<Value> {
    Ok(match d {
        RingDescriptor::PolyOverField(base) => Value::Poly(vec![v_zero(base), v_one(base)]),
        RingDescriptor::JetRing { base, order } => {
            let mut cs = vec![v_zero(base); *order];
            if *order > 1 {
                cs[1] = v_one(base);
            }
            Value::Jet(cs)
        }
        RingDescriptor::ProductRing(ds) => {
            Value::Product(ds.iter().map(v_variable).collect::<Result<_>>()?)
        }
        RingDescriptor::AnalyticFn => Value::Analytic(FuncExpr::var()),
        _ => return Err(Error::UnsupportedRing(format!("{d} has no variable"))),
    })
}

pub(crate) fn trim(base: &RingDescriptor, cs: &mut Vec<Value>) {
    while cs.last().is_some_and(|c| v_is_zero(base, c)) {
        cs.pop();
    }
}

pub(crate) fn v_is_zero(d: &RingDescriptor, a: &Value) -> bool {
    match (d, a) {
        (_, Value::Int(k)) => k.is_zero(),
        (_, Value::Rat(q)) => q.is_zero(),
        (_, Value::Gauss(g)) => g.is_zero(),
        (_, Value::Poly(cs)) => cs.is_empty(),
        (RingDescriptor::JetRing { base, .. }, Value::Jet(cs)) => {
            cs.iter().all(|c| v_is_zero(base, c))
        }
        (RingDescriptor::ProductRing(ds), Value::Product(vs)) => {
            ds.iter().zip(vs).all(|(d, v)| v_is_zero(d, v))
        }
        (_, Value::Analytic(f)) => f.is_structurally_zero(),
        _ => unreachable!("payload does not match descriptor {d}"),
    }
}

fn zip_map(
    d: &RingDescriptor,
    a: &Value,
    b: &Value,
    f: impl Fn(&RingDescriptor, &Value, &Value) -> Value,
) -> Value {
    match (d, a, b) {
        (RingDescriptor::PolyOverField(base), Value::Poly(x), Value::Poly(y)) => {
            let n = x.len().max(y.len());
            let z = v_zero(base);
            let mut out: Vec<Value> = (0..n)
                .map(|i| f(base, x.get(i).unwrap_or(&z), y.get(i).unwrap_or(&z)))
                .collect();
            trim(base, &mut out);
            Value::Poly(out)
        }
        (RingDescriptor::JetRing { base, .. }, Value::Jet(x), Value::Jet(y)) => {
            Value::Jet(x.iter().zip(y).map(|(p, q)| f(base, p, q)).collect())
        }
        (RingDescriptor::ProductRing(ds), Value::Product(x), Value::Product(y)) => Value::Product(
            ds.iter()
                .zip(x.iter().zip(y))
                .map(|(d, (p, q))| f(d, p, q))
                .collect(),
        ),
        _ => unreachable!("payload does not match descriptor {d}"),
    }
}

pub(crate) fn v_add(d: &RingDescriptor, a: &Value, b: &Value) -> Value {
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => Value::Int(x + y),
        (Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
        (Value::Gauss(x), Value::Gauss(y)) => Value::Gauss(x + y),
        (Value::Analytic(x), Value::Analytic(y)) => Value::Analytic(x + y),
        _ => zip_map(d, a, b, v_add),
    }
}

pub(crate) fn v_sub(d: &RingDescriptor, a: &Value, b: &Value) -> Value {
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => Value::Int(x - y),
        (Value::Rat(x), Value::Rat(y)) => Value::Rat(x - y),
        (Value::Gauss(x), Value::Gauss(y)) => Value::Gauss(x - y),
        (Value::Analytic(x), Value::Analytic(y)) => Value::Analytic(x - y),
        _ => zip_map(d, a, b, v_sub),
    }
}

pub(crate) fn v_neg(d: &RingDescriptor, a: &Value) -> Value {
    match a {
        Value::Int(x) => Value::Int(-x),
        Value::Rat(x) => Value::Rat(-x),
        Value::Gauss(x) => Value::Gauss(-x.clone()),
        Value::Analytic(x) => Value::Analytic(-x),
        _ => v_sub(d, &v_zero(d), a),
    }
}

pub(crate) fn v_mul(d: &RingDescriptor, a: &Value, b: &Value) -> Value {
    match (d, a, b) {
        (_, Value::Int(x), Value::Int(y)) => Value::Int(x * y),
        (_, Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
        (_, Value::Gauss(x), Value::Gauss(y)) => Value::Gauss(x * y),
        (_, Value::Analytic(x), Value::Analytic(y)) => Value::Analytic(x * y),
        (RingDescriptor::PolyOverField(base), Value::Poly(x), Value::Poly(y)) => {
            if x.is_empty() || y.is_empty() {
                return Value::Poly(Vec::new());
            }
            let mut out = vec![v_zero(base); x.len() + y.len() - 1];
            for (i, p) in x.iter().enumerate() {
                for (j, q) in y.iter().enumerate() {
                    out[i + j] = v_add(base, &out[i + j], &v_mul(base, p, q));
                }
            }
            trim(base, &mut out);
            Value::Poly(out)
        }
        (RingDescriptor::JetRing { base, order }, Value::Jet(x), Value::Jet(y)) => {
            let mut out = vec![v_zero(base); *order];
            for (i, p) in x.iter().enumerate() {
                if v_is_zero(base, p) {
                    continue;
                }
                for (j, q) in y.iter().enumerate().take(order - i) {
                    out[i + j] = v_add(base, &out[i + j], &v_mul(base, p, q));
                }
            }
            Value::Jet(out)
        }
        _ => zip_map(d, a, b, v_mul),
    }
}

pub(crate) fn v_is_unit(d: &RingDescriptor, a: &Value) -> bool {
    match (d, a) {
        (_, Value::Int(k)) => k.abs().is_one(),
        (_, Value::Rat(q)) => !q.is_zero(),
        (_, Value::Gauss(g)) => !g.is_zero(),
        (_, Value::Poly(cs)) => cs.len() == 1,
        (RingDescriptor::JetRing { base, .. }, Value::Jet(cs)) => !v_is_zero(base, &cs[0]),
        (RingDescriptor::ProductRing(ds), Value::Product(vs)) => {
            ds.iter().zip(vs).all(|(d, v)| v_is_unit(d, v))
        }
        (_, Value::Analytic(f)) => f.is_syntactic_unit(),
        _ => unreachable!("payload does not match descriptor {d}"),
    }
}

pub(crate) fn v_inv(d: &RingDescriptor, a: &Value) -> Result<Value> {
    if !v_is_unit(d, a) {
        return Err(Error::NotAUnit);
    }
    Ok(match (d, a) {
        (_, Value::Int(k)) => Value::Int(k.clone()),
        (_, Value::Rat(q)) => Value::Rat(q.recip()),
        (_, Value::Gauss(g)) => Value::Gauss(g.inv()),
        (RingDescriptor::PolyOverField(base), Value::Poly(cs)) => {
            Value::Poly(vec![v_inv(base, &cs[0])?])
        }
        (RingDescriptor::JetRing { base, order }, Value::Jet(cs)) => {
            // u * w = 1: w_0 = 1/u_0, w_k = -(sum_{j=1..k} u_j w_{k-j}) / u_0
            let inv0 = v_inv(base, &cs[0])?;
            let mut w = Vec::with_capacity(*order);
            w.push(inv0.clone());
            for k in 1..*order {
                let mut acc = v_zero(base);
                for j in 1..=k {
                    acc = v_add(base, &acc, &v_mul(base, &cs[j], &w[k - j]));
                }
                w.push(v_neg(base, &v_mul(base, &acc, &inv0)));
            }
            Value::Jet(w)
        }
        (RingDescriptor::ProductRing(ds), Value::Product(vs)) => Value::Product(
            ds.iter()
                .zip(vs)
                .map(|(d, v)| v_inv(d, v))
                .collect::<Result<_>>()?,
        ),
        (_, Value::Analytic(f)) => Value::Analytic(f.reciprocal()),
        _ => unreachable!("payload does not match descriptor {d}"),
    })
}

fn v_is_nilpotent(d: &RingDescriptor, a: &Value) -> bool {
    match (d, a) {
        (RingDescriptor::JetRing { base, .. }, Value::Jet(cs)) => v_is_zero(base, &cs[0]),
        (RingDescriptor::ProductRing(ds), Value::Product(vs)) => {
            ds.iter().zip(vs).all(|(d, v)| v_is_nilpotent(d, v))
        }
        (RingDescriptor::AnalyticFn, _) => false,
        _ => v_is_zero(d, a),
    }
}

#[cfg(test)]
fn v_constant_part(d: &RingDescriptor, a: &Value) -> Value {
    match (d, a) {
        (RingDescriptor::JetRing { base, order }, Value::Jet(cs)) => {
            let mut out = vec![v_zero(base); *order];
            out[0] = cs[0].clone();
            Value::Jet(out)
        }
        (RingDescriptor::ProductRing(ds), Value::Product(vs)) => Value::Product(
            ds.iter()
                .zip(vs)
                .map(|(d, v)| v_constant_part(d, v))
                .collect(),
        ),
        _ => a.clone(),
    }
}

/// Euclidean size used to drive division with remainder: `|k|` for integers,
/// `degree + 1` for polynomials (zero has size 0).
pub(crate) fn euclid_size(a: &RingElement) -> Option<BigInt> {
    match &a.value {
        Value::Int(k) => Some(k.abs()),
        Value::Poly(cs) => Some(BigInt::from(cs.len())),
        _ => None,
    }
}

/// Division with remainder in `Z` (floor) or `k[z]`.
pub fn div_rem(a: &RingElement, b: &RingElement) -> Result<(RingElement, RingElement)> {
    a.same_ring(b)?;
    if b.is_zero() {
        return Err(Error::NotAUnit);
    }
    match (&*a.desc, &a.value, &b.value) {
        (RingDescriptor::Integer, Value::Int(x), Value::Int(y)) => {
            let (q, r) = x.div_mod_floor(y);
            Ok((a.wrap(Value::Int(q)), a.wrap(Value::Int(r))))
        }
        (RingDescriptor::PolyOverField(base), Value::Poly(x), Value::Poly(y)) => {
            let lead_inv = v_inv(base, y.last().unwrap())?;
            let mut r = x.clone();
            let mut q = vec![v_zero(base); x.len().saturating_sub(y.len()) + 1];
            while r.len() >= y.len() && !r.is_empty() {
                let shift = r.len() - y.len();
                let c = v_mul(base, r.last().unwrap(), &lead_inv);
                for (j, yj) in y.iter().enumerate() {
                    r[shift + j] = v_sub(base, &r[shift + j], &v_mul(base, &c, yj));
                }
                q[shift] = c;
                // leading term cancels exactly
                r.pop();
                trim(base, &mut r);
            }
            trim(base, &mut q);
            Ok((a.wrap(Value::Poly(q)), a.wrap(Value::Poly(r))))
        }
        _ => Err(Error::UnsupportedRing(format!(
            "division with remainder over {}",
            a.desc
        ))),
    }
}

fn rat_display(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn v_display(d: &RingDescriptor, a: &Value) -> String {
    match (d, a) {
        (_, Value::Int(k)) => k.to_string(),
        (_, Value::Rat(q)) => rat_display(q),
        (_, Value::Gauss(g)) => {
            if g.im.is_zero() {
                rat_display(&g.re)
            } else if g.re.is_zero() {
                format!("{}i", rat_display(&g.im))
            } else {
                format!("({}{}{}i)", rat_display(&g.re), if g.im.is_negative() { "" } else { "+" }, rat_display(&g.im))
            }
        }
        (RingDescriptor::PolyOverField(base), Value::Poly(cs))
        | (RingDescriptor::JetRing { base, .. }, Value::Jet(cs)) => {
            let mut terms = Vec::new();
            for (i, c) in cs.iter().enumerate() {
                if v_is_zero(base, c) {
                    continue;
                }
                let s = v_display(base, c);
                terms.push(match i {
                    0 => s,
                    1 => format!("{s}*z"),
                    _ => format!("{s}*z^{i}"),
                });
            }
            let body = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            };
            match d {
                RingDescriptor::JetRing { order, .. } => format!("{body} + O(z^{order})"),
                _ => body,
            }
        }
        (RingDescriptor::ProductRing(ds), Value::Product(vs)) => {
            let parts: Vec<String> = ds.iter().zip(vs).map(|(d, v)| v_display(d, v)).collect();
            format!("({})", parts.join(", "))
        }
        (_, Value::Analytic(f)) => f.to_string(),
        _ => "<invalid>".into(),
    }
}
