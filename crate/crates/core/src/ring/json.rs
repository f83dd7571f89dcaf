//! JSON encodings for ring elements.
//!
//! Rationals are strings `"p/q"` (or `"p"` for integers), Gaussian rationals
//! are `{"re": "p/q", "im": "p/q"}`, polynomials and jets are ascending
//! coefficient arrays, products are arrays of components and analytic
//! elements are expression trees.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value as Json};

use super::element::{trim, v_zero, Value};
use super::{Gaussian, RingDescriptor, RingElement};
use crate::analytic::FuncExpr;
use crate::error::{Error, Result};

pub fn rational_to_json(q: &BigRational) -> Json {
    if q.is_integer() {
        Json::String(q.numer().to_string())
    } else {
        Json::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

pub fn rational_from_json(v: &Json, field: &str) -> Result<BigRational> {
    match v {
        Json::String(s) => parse_rational(s).map_err(|m| Error::parse(field, m)),
        Json::Number(n) => n
            .as_i64()
            .map(|k| BigRational::from_integer(k.into()))
            .ok_or_else(|| Error::parse(field, "non-integer JSON number; use a \"p/q\" string")),
        _ => Err(Error::parse(field, "expected a rational string \"p/q\"")),
    }
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| format!("bad numerator in `{s}`"))?;
    let q = BigInt::from_str(q).map_err(|_| format!("bad denominator in `{s}`"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(p, q))
}

pub fn gaussian_to_json(g: &Gaussian) -> Json {
    json!({"re": rational_to_json(&g.re), "im": rational_to_json(&g.im)})
}

pub fn gaussian_from_json(v: &Json, field: &str) -> Result<Gaussian> {
    match v {
        Json::Object(o) => {
            let re = o
                .get("re")
                .map(|x| rational_from_json(x, &format!("{field}.re")))
                .transpose()?
                .unwrap_or_else(BigRational::zero);
            let im = o
                .get("im")
                .map(|x| rational_from_json(x, &format!("{field}.im")))
                .transpose()?
                .unwrap_or_else(BigRational::zero);
            Ok(Gaussian::new(re, im))
        }
        _ => Ok(Gaussian::new(rational_from_json(v, field)?, BigRational::zero())),
    }
}

impl RingElement {
    pub fn to_json(&self) -> Json {
        value_to_json(self.value())
    }

    pub fn from_json(desc: &RingDescriptor, v: &Json) -> Result<Self> {
        Self::from_json_at(desc, v, "element")
    }

    pub fn from_json_at(desc: &RingDescriptor, v: &Json, field: &str) -> Result<Self> {
        Ok(RingElement::from_parts(
            Arc::new(desc.clone()),
            value_from_json(desc, v, field)?,
        ))
    }
}

fn value_to_json(v: &Value) -> Json {
    match v {
        Value::Int(k) => Json::String(k.to_string()),
        Value::Rat(q) => rational_to_json(q),
        Value::Gauss(g) => gaussian_to_json(g),
        Value::Poly(cs) | Value::Jet(cs) | Value::Product(cs) => {
            Json::Array(cs.iter().map(value_to_json).collect())
        }
        Value::Analytic(f) => serde_json::to_value(f).expect("expression trees serialize"),
    }
}

fn value_from_json(d: &RingDescriptor, v: &Json, field: &str) -> Result<Value> {
    Ok(match d {
        RingDescriptor::Integer => match v {
            Json::String(s) => Value::Int(
                BigInt::from_str(s.trim())
                    .map_err(|_| Error::parse(field, format!("bad integer `{s}`")))?,
            ),
            Json::Number(n) => Value::Int(
                n.as_i64()
                    .ok_or_else(|| Error::parse(field, "expected an integer"))?
                    .into(),
            ),
            _ => return Err(Error::parse(field, "expected an integer")),
        },
        RingDescriptor::Rational => Value::Rat(rational_from_json(v, field)?),
        RingDescriptor::GaussianRational => Value::Gauss(gaussian_from_json(v, field)?),
        RingDescriptor::PolyOverField(base) => {
            let mut cs = coeff_array(base, v, field)?;
            trim(base, &mut cs);
            Value::Poly(cs)
        }
        RingDescriptor::JetRing { base, order } => {
            let mut cs = coeff_array(base, v, field)?;
            if cs.len() > *order {
                return Err(Error::parse(
                    field,
                    format!("jet has {} coefficients, ring order is {order}", cs.len()),
                ));
            }
            cs.resize(*order, v_zero(base));
            Value::Jet(cs)
        }
        RingDescriptor::ProductRing(ds) => {
            let arr = v
                .as_array()
                .ok_or_else(|| Error::parse(field, "expected an array of components"))?;
            if arr.len() != ds.len() {
                return Err(Error::parse(
                    field,
                    format!("expected {} components, got {}", ds.len(), arr.len()),
                ));
            }
            Value::Product(
                ds.iter()
                    .zip(arr)
                    .enumerate()
                    .map(|(i, (d, x))| value_from_json(d, x, &format!("{field}[{i}]")))
                    .collect::<Result<_>>()?,
            )
        }
        RingDescriptor::AnalyticFn => Value::Analytic(
            serde_json::from_value::<FuncExpr>(v.clone())
                .map_err(|e| Error::parse(field, e.to_string()))?,
        ),
    })
}

fn coeff_array(base: &RingDescriptor, v: &Json, field: &str) -> Result<Vec<Value>> {
    match v {
        Json::Array(arr) => arr
            .iter()
            .enumerate()
            .map(|(i, x)| value_from_json(base, x, &format!("{field}[{i}]")))
            .collect(),
        // a bare scalar is a constant
        _ => Ok(vec![value_from_json(base, v, field)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        let q = rational_from_json(&json!("-6/4"), "x").unwrap();
        assert_eq!(q, BigRational::new((-3).into(), 2.into()));
        assert_eq!(rational_to_json(&q), json!("-3/2"));
        assert_eq!(rational_from_json(&json!(5), "x").unwrap(), BigRational::from_integer(5.into()));
        assert!(rational_from_json(&json!("1/0"), "x").is_err());
    }

    #[test]
    fn element_round_trip_in_compound_rings() {
        let d: RingDescriptor = "product(jet(gaussian,2),poly(rational))".parse().unwrap();
        let v = json!([[{"re": "1/2", "im": "-1"}, "3"], ["0", "1", "0"]]);
        let e = RingElement::from_json(&d, &v).unwrap();
        let back = e.to_json();
        assert_eq!(RingElement::from_json(&d, &back).unwrap(), e);
        // trailing polynomial zero is dropped, gaussian with zero imaginary part is kept as object
        assert_eq!(back[1], json!(["0", "1"]));
    }

    #[test]
    fn parse_errors_name_the_field() {
        let d = RingDescriptor::jet(RingDescriptor::Rational, 2).unwrap();
        let err = RingElement::from_json_at(&d, &json!(["1", "x"]), "entries[0][1]").unwrap_err();
        match err {
            Error::Parse { field, .. } => assert_eq!(field, "entries[0][1][1]"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
