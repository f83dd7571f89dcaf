use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};

/// Describes which commutative unital ring a value lives in.
///
/// Polynomial and jet rings are only supported over the two exact fields,
/// so every jet ring here is local and every polynomial ring is Euclidean.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integer,
    Rational,
    GaussianRational,
    /// `k[z]` for a field `k`.
    PolyOverField(Box<RingDescriptor>),
    /// `k[z]/(z^order)`.
    JetRing {
        base: Box<RingDescriptor>,
        order: usize,
    },
    ProductRing(Vec<RingDescriptor>),
    /// Holomorphic functions given by expression trees. Equality is structural.
    AnalyticFn,
}

impl RingDescriptor {
    pub fn poly(base: RingDescriptor) -> Result<Self> {
        let d = RingDescriptor::PolyOverField(Box::new(base));
        d.validate()?;
        Ok(d)
    }

    pub fn jet(base: RingDescriptor, order: usize) -> Result<Self> {
        let d = RingDescriptor::JetRing {
            base: Box::new(base),
            order,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn product(components: Vec<RingDescriptor>) -> Result<Self> {
        let d = RingDescriptor::ProductRing(components);
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RingDescriptor::Integer
            | RingDescriptor::Rational
            | RingDescriptor::GaussianRational
            | RingDescriptor::AnalyticFn => Ok(()),
            RingDescriptor::PolyOverField(base) => {
                if base.is_field() {
                    Ok(())
                } else {
                    Err(Error::InvalidDescriptor(format!(
                        "polynomial base must be a field, got {base}"
                    )))
                }
            }
            RingDescriptor::JetRing { base, order } => {
                if *order < 1 {
                    return Err(Error::InvalidDescriptor(
                        "jet ring truncation order must be >= 1".into(),
                    ));
                }
                if !base.is_field() {
                    return Err(Error::InvalidDescriptor(format!(
                        "jet base must be a field, got {base}"
                    )));
                }
                Ok(())
            }
            RingDescriptor::ProductRing(components) => {
                if components.is_empty() {
                    return Err(Error::InvalidDescriptor(
                        "product ring needs at least one component".into(),
                    ));
                }
                for c in components {
                    if matches!(c, RingDescriptor::AnalyticFn) {
                        return Err(Error::InvalidDescriptor(
                            "analytic components are not allowed in product rings".into(),
                        ));
                    }
                    c.validate()?;
                }
                Ok(())
            }
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(
            self,
            RingDescriptor::Rational | RingDescriptor::GaussianRational
        )
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, RingDescriptor::AnalyticFn)
    }

    /// Whether `1/k` exists in the ring for every positive integer `k`.
    pub fn contains_rationals(&self) -> bool {
        match self {
            RingDescriptor::Integer => false,
            RingDescriptor::ProductRing(cs) => cs.iter().all(|c| c.contains_rationals()),
            _ => true,
        }
    }

    /// Static metadata: does the ring carry a constructive stable-rank-1
    /// reduction (fields, jets over a field, finite products of those)?
    pub fn has_reduction_oracle(&self) -> bool {
        match self {
            RingDescriptor::Rational | RingDescriptor::GaussianRational => true,
            RingDescriptor::JetRing { .. } => true,
            RingDescriptor::ProductRing(cs) => cs.iter().all(|c| c.has_reduction_oracle()),
            _ => false,
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            RingDescriptor::Integer => json!("integer"),
            RingDescriptor::Rational => json!("rational"),
            RingDescriptor::GaussianRational => json!("gaussian"),
            RingDescriptor::AnalyticFn => json!("analytic"),
            RingDescriptor::PolyOverField(base) => json!({"kind": "poly", "base": base.to_json()}),
            RingDescriptor::JetRing { base, order } => {
                json!({"kind": "jet", "base": base.to_json(), "order": order})
            }
            RingDescriptor::ProductRing(cs) => json!({
                "kind": "product",
                "components": cs.iter().map(|c| c.to_json()).collect::<Vec<_>>()
            }),
        }
    }

    pub fn from_json(value: &Json) -> Result<Self> {
        Self::from_json_at(value, "ring")
    }

    fn from_json_at(value: &Json, field: &str) -> Result<Self> {
        let kind = match value {
            Json::String(s) => s.as_str(),
            Json::Object(obj) => obj
                .get("kind")
                .and_then(Json::as_str)
                .ok_or_else(|| Error::parse(format!("{field}.kind"), "missing string field"))?,
            _ => {
                return Err(Error::parse(
                    field,
                    "descriptor must be a string or a tagged object",
                ))
            }
        };
        let sub = |name: &str| -> Result<&Json> {
            value
                .get(name)
                .ok_or_else(|| Error::parse(format!("{field}.{name}"), "missing field"))
        };
        let d = match kind {
            "integer" => RingDescriptor::Integer,
            "rational" => RingDescriptor::Rational,
            "gaussian" | "gaussian_rational" => RingDescriptor::GaussianRational,
            "analytic" => RingDescriptor::AnalyticFn,
            "poly" => RingDescriptor::PolyOverField(Box::new(Self::from_json_at(
                sub("base")?,
                &format!("{field}.base"),
            )?)),
            "jet" => {
                let base = Self::from_json_at(sub("base")?, &format!("{field}.base"))?;
                let order = sub("order")?.as_u64().ok_or_else(|| {
                    Error::parse(format!("{field}.order"), "expected a positive integer")
                })? as usize;
                RingDescriptor::JetRing {
                    base: Box::new(base),
                    order,
                }
            }
            "product" => {
                let cs = sub("components")?.as_array().ok_or_else(|| {
                    Error::parse(format!("{field}.components"), "expected an array")
                })?;
                RingDescriptor::ProductRing(
                    cs.iter()
                        .enumerate()
                        .map(|(i, c)| Self::from_json_at(c, &format!("{field}.components[{i}]")))
                        .collect::<Result<_>>()?,
                )
            }
            "mpoly" | "multivariate" => {
                return Err(Error::UnsupportedRing(
                    "multivariable polynomial rings".into(),
                ))
            }
            other => return Err(Error::parse(field, format!("unknown ring kind `{other}`"))),
        };
        d.validate()
            .map_err(|e| Error::parse(field, e.to_string()))?;
        Ok(d)
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integer => write!(f, "integer"),
            RingDescriptor::Rational => write!(f, "rational"),
            RingDescriptor::GaussianRational => write!(f, "gaussian"),
            RingDescriptor::AnalyticFn => write!(f, "analytic"),
            RingDescriptor::PolyOverField(b) => write!(f, "poly({b})"),
            RingDescriptor::JetRing { base, order } => write!(f, "jet({base},{order})"),
            RingDescriptor::ProductRing(cs) => {
                write!(f, "product(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parses the compact form produced by `Display`, e.g. `jet(rational,3)` or
/// `product(jet(rational,3),jet(rational,3))`. JSON descriptors are accepted too.
impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') || s.starts_with('"') {
            let v: Json = serde_json::from_str(s).map_err(|e| Error::parse("ring", e.to_string()))?;
            return Self::from_json(&v);
        }
        let mut p = CompactParser { src: s, pos: 0 };
        let d = p.descriptor()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(Error::parse("ring", format!("trailing input at byte {}", p.pos)));
        }
        d.validate().map_err(|e| Error::parse("ring", e.to_string()))?;
        Ok(d)
    }
}

struct CompactParser<'a> {
    src: &'a str,
    pos: usize,
}

impl CompactParser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse("ring", format!("expected `{c}` at byte {}", self.pos)))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn descriptor(&mut self) -> Result<RingDescriptor> {
        let name = self.ident().to_string();
        Ok(match name.as_str() {
            "integer" | "Z" => RingDescriptor::Integer,
            "rational" | "Q" => RingDescriptor::Rational,
            "gaussian" => RingDescriptor::GaussianRational,
            "analytic" => RingDescriptor::AnalyticFn,
            "poly" => {
                self.expect('(')?;
                let base = self.descriptor()?;
                self.expect(')')?;
                RingDescriptor::PolyOverField(Box::new(base))
            }
            "jet" => {
                self.expect('(')?;
                let base = self.descriptor()?;
                self.expect(',')?;
                let digits = self.ident().to_string();
                let order = digits
                    .parse::<usize>()
                    .map_err(|_| Error::parse("ring", format!("bad jet order `{digits}`")))?;
                self.expect(')')?;
                RingDescriptor::JetRing {
                    base: Box::new(base),
                    order,
                }
            }
            "product" => {
                self.expect('(')?;
                let mut cs = vec![self.descriptor()?];
                while self.eat(',') {
                    cs.push(self.descriptor()?);
                }
                self.expect(')')?;
                RingDescriptor::ProductRing(cs)
            }
            "mpoly" => {
                return Err(Error::UnsupportedRing(
                    "multivariable polynomial rings".into(),
                ))
            }
            other => return Err(Error::parse("ring", format!("unknown ring kind `{other}`"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_syntax_round_trips() {
        for s in [
            "rational",
            "integer",
            "gaussian",
            "poly(rational)",
            "jet(rational,3)",
            "product(jet(rational,3),jet(gaussian,2),rational)",
        ] {
            let d: RingDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
            assert_eq!(RingDescriptor::from_json(&d.to_json()).unwrap(), d);
        }
    }

    #[test]
    fn json_descriptor_matches_documented_shape() {
        let d = RingDescriptor::jet(RingDescriptor::Rational, 3).unwrap();
        assert_eq!(
            d.to_json(),
            json!({"kind":"jet","base":"rational","order":3})
        );
    }

    #[test]
    fn invalid_descriptors_are_rejected() {
        assert!(RingDescriptor::jet(RingDescriptor::Rational, 0).is_err());
        assert!(RingDescriptor::product(vec![]).is_err());
        assert!(RingDescriptor::poly(RingDescriptor::Integer).is_err());
        assert!(matches!(
            "mpoly(rational)".parse::<RingDescriptor>(),
            Err(Error::UnsupportedRing(_))
        ));
    }

    #[test]
    fn oracle_metadata() {
        assert!(RingDescriptor::Rational.has_reduction_oracle());
        assert!(!RingDescriptor::poly(RingDescriptor::Rational)
            .unwrap()
            .has_reduction_oracle());
        assert!(!RingDescriptor::Integer.has_reduction_oracle());
        let p = RingDescriptor::product(vec![
            RingDescriptor::jet(RingDescriptor::Rational, 3).unwrap(),
            RingDescriptor::Rational,
        ])
        .unwrap();
        assert!(p.has_reduction_oracle());
    }
}
