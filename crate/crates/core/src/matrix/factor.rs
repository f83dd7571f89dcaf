use std::fmt;

use serde_json::{json, Value as Json};

use super::RingMatrix;
use crate::error::{Error, Result};
use crate::ring::{RingDescriptor, RingElement};

/// A unipotent triangular matrix. `Single` has exactly one off-diagonal
/// entry; indices are 0-based in memory and 1-based in JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum ElementaryFactor {
    Single { n: usize, i: usize, j: usize, a: RingElement },
    Upper(RingMatrix),
    Lower(RingMatrix),
}

impl ElementaryFactor {
    /// `E_ij(a)`: identity plus `a` at `(i, j)`.
    pub fn single(n: usize, i: usize, j: usize, a: RingElement) -> Result<Self> {
        if i == j || i >= n || j >= n {
            return Err(Error::InternalInvariantViolation(format!(
                "bad elementary position ({}, {}) for n = {n}",
                i + 1,
                j + 1
            )));
        }
        Ok(ElementaryFactor::Single { n, i, j, a })
    }

    pub fn upper(m: RingMatrix) -> Result<Self> {
        if !m.is_upper_unitriangular() {
            return Err(Error::NotUnipotent);
        }
        Ok(ElementaryFactor::Upper(m))
    }

    pub fn lower(m: RingMatrix) -> Result<Self> {
        if !m.is_lower_unitriangular() {
            return Err(Error::NotUnipotent);
        }
        Ok(ElementaryFactor::Lower(m))
    }

    pub fn dim(&self) -> usize {
        match self {
            ElementaryFactor::Single { n, .. } => *n,
            ElementaryFactor::Upper(m) | ElementaryFactor::Lower(m) => m.dim(),
        }
    }

    pub fn to_matrix(&self) -> RingMatrix {
        match self {
            ElementaryFactor::Single { n, i, j, a } => {
                let mut m = RingMatrix::identity(a.descriptor(), *n);
                m.entries[i * n + j] = a.clone();
                m
            }
            ElementaryFactor::Upper(m) | ElementaryFactor::Lower(m) => m.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(match self {
            ElementaryFactor::Single { n, i, j, a } => ElementaryFactor::Single {
                n: *n,
                i: *i,
                j: *j,
                a: a.neg(),
            },
            ElementaryFactor::Upper(m) => ElementaryFactor::Upper(m.unitriangular_inverse()?),
            ElementaryFactor::Lower(m) => ElementaryFactor::Lower(m.unitriangular_inverse()?),
        })
    }

    pub fn is_identity(&self) -> bool {
        match self {
            ElementaryFactor::Single { a, .. } => a.is_zero(),
            ElementaryFactor::Upper(m) | ElementaryFactor::Lower(m) => m.is_identity(),
        }
    }

    fn is_upper(&self) -> bool {
        match self {
            ElementaryFactor::Single { i, j, .. } => i < j,
            ElementaryFactor::Upper(_) => true,
            ElementaryFactor::Lower(_) => false,
        }
    }

    /// Unitriangular with the structure its kind promises.
    pub fn is_well_formed(&self) -> bool {
        match self {
            ElementaryFactor::Single { n, i, j, .. } => i != j && i < n && j < n,
            ElementaryFactor::Upper(m) => m.is_upper_unitriangular(),
            ElementaryFactor::Lower(m) => m.is_lower_unitriangular(),
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            ElementaryFactor::Single { i, j, a, .. } => {
                json!({"kind": "single", "i": i + 1, "j": j + 1, "a": a.to_json()})
            }
            ElementaryFactor::Upper(m) => json!({"kind": "upper", "entries": m.rows_to_json()}),
            ElementaryFactor::Lower(m) => json!({"kind": "lower", "entries": m.rows_to_json()}),
        }
    }

    pub fn from_json(desc: &RingDescriptor, n: usize, v: &Json, field: &str) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(Json::as_str)
            .ok_or_else(|| Error::parse(format!("{field}.kind"), "missing or not a string"))?;
        match kind {
            "single" => {
                let index = |name: &str| {
                    v.get(name)
                        .and_then(Json::as_u64)
                        .filter(|&k| k >= 1 && k as usize <= n)
                        .map(|k| k as usize - 1)
                        .ok_or_else(|| Error::parse(format!("{field}.{name}"), format!("expected an index in 1..={n}")))
                };
                let (i, j) = (index("i")?, index("j")?);
                if i == j {
                    return Err(Error::parse(format!("{field}.j"), "single factor must be off-diagonal"));
                }
                let a = v.get("a").ok_or_else(|| Error::parse(format!("{field}.a"), "missing"))?;
                let a = RingElement::from_json_at(desc, a, &format!("{field}.a"))?;
                Ok(ElementaryFactor::Single { n, i, j, a })
            }
            "upper" | "lower" => {
                let entries = v
                    .get("entries")
                    .ok_or_else(|| Error::parse(format!("{field}.entries"), "missing"))?;
                let m = RingMatrix::rows_from_json(desc, n, entries, &format!("{field}.entries"))?;
                let ok = if kind == "upper" {
                    m.is_upper_unitriangular()
                } else {
                    m.is_lower_unitriangular()
                };
                if !ok {
                    return Err(Error::parse(
                        format!("{field}.entries"),
                        format!("not {kind} unitriangular"),
                    ));
                }
                Ok(if kind == "upper" {
                    ElementaryFactor::Upper(m)
                } else {
                    ElementaryFactor::Lower(m)
                })
            }
            other => Err(Error::parse(format!("{field}.kind"), format!("unknown factor kind `{other}`"))),
        }
    }
}

impl fmt::Display for ElementaryFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryFactor::Single { i, j, a, .. } => write!(f, "E{}{}({a})", i + 1, j + 1),
            ElementaryFactor::Upper(m) => write!(f, "U{m}"),
            ElementaryFactor::Lower(m) => write!(f, "L{m}"),
        }
    }
}

/// Merges neighbouring factors of the same orientation and drops identities,
/// until neither applies.
pub(crate) fn simplify_factors(factors: Vec<ElementaryFactor>) -> Result<Vec<ElementaryFactor>> {
    let mut out: Vec<ElementaryFactor> = Vec::with_capacity(factors.len());
    for f in factors {
        if f.is_identity() {
            continue;
        }
        match out.last() {
            Some(prev) if prev.is_upper() == f.is_upper() && !matches!((prev, &f), (ElementaryFactor::Single { .. }, ElementaryFactor::Single { .. })) => {
                let prod = prev.to_matrix().matmul(&f.to_matrix())?;
                out.pop();
                let merged = if f.is_upper() {
                    ElementaryFactor::Upper(prod)
                } else {
                    ElementaryFactor::Lower(prod)
                };
                if !merged.is_identity() {
                    out.push(merged);
                }
            }
            _ => out.push(f),
        }
    }
    Ok(out)
}

/// An ordered factor list with `F_1 * F_2 * ... * F_k = target`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationCertificate {
    pub target: RingMatrix,
    pub factors: Vec<ElementaryFactor>,
    pub algorithm: String,
}

impl FactorizationCertificate {
    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Left-to-right product of the factors.
    pub fn product(&self) -> Result<RingMatrix> {
        let mut acc = RingMatrix::identity(self.target.descriptor(), self.target.dim());
        for f in &self.factors {
            acc = acc.matmul(&f.to_matrix())?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "target": self.target.to_json(),
            "factors": self.factors.iter().map(ElementaryFactor::to_json).collect::<Vec<_>>(),
            "algorithm": self.algorithm,
            "factor_count": self.factors.len(),
        })
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let target = v.get("target").ok_or_else(|| Error::parse("target", "missing"))?;
        let target = RingMatrix::from_json_at(target, "target")?;
        let factors = v
            .get("factors")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::parse("factors", "missing or not an array"))?
            .iter()
            .enumerate()
            .map(|(k, f)| ElementaryFactor::from_json(target.descriptor(), target.dim(), f, &format!("factors[{k}]")))
            .collect::<Result<_>>()?;
        let algorithm = v
            .get("algorithm")
            .and_then(Json::as_str)
            .unwrap_or("unknown")
            .to_string();
        Ok(FactorizationCertificate {
            target,
            factors,
            algorithm,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorCheck {
    pub index: usize,
    pub well_formed: bool,
    pub det_one: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub passed: bool,
    pub factor_count: usize,
    pub factor_checks: Vec<FactorCheck>,
    /// First differing entry of product vs target, 1-based.
    pub first_mismatch: Option<(usize, usize)>,
    pub message: String,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} factors; {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.factor_count,
            self.message
        )
    }
}

/// Replays a certificate exactly. Never fails; problems are reported.
pub fn verify_factorization(cert: &FactorizationCertificate) -> VerificationReport {
    let n = cert.target.dim();
    let factor_checks: Vec<FactorCheck> = cert
        .factors
        .iter()
        .enumerate()
        .map(|(index, f)| FactorCheck {
            index,
            well_formed: f.dim() == n && f.is_well_formed(),
            det_one: f.dim() == n && f.to_matrix().det().map(|d| d.is_one()).unwrap_or(f.is_well_formed()),
        })
        .collect();
    let mut report = VerificationReport {
        passed: false,
        factor_count: cert.factors.len(),
        factor_checks,
        first_mismatch: None,
        message: String::new(),
    };
    if let Some(bad) = report.factor_checks.iter().find(|c| !c.well_formed || !c.det_one) {
        report.message = format!("factor {} is not a unitriangular {n}x{n} matrix", bad.index + 1);
        return report;
    }
    let product = match cert.product() {
        Ok(p) => p,
        Err(e) => {
            report.message = format!("replay failed: {e}");
            return report;
        }
    };
    for i in 0..n {
        for j in 0..n {
            if product.get(i, j) != cert.target.get(i, j) {
                report.first_mismatch = Some((i + 1, j + 1));
                report.message = format!(
                    "product differs from target at ({}, {}): {} vs {}",
                    i + 1,
                    j + 1,
                    product.get(i, j),
                    cert.target.get(i, j)
                );
                return report;
            }
        }
    }
    report.passed = true;
    report.message = "product equals target exactly".into();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::testing::*;

    fn e(i: usize, j: usize, a: i64) -> ElementaryFactor {
        ElementaryFactor::single(2, i, j, q(a, 1)).unwrap()
    }

    #[test]
    fn empty_certificate_for_identity() {
        let cert = FactorizationCertificate {
            target: RingMatrix::identity(&RingDescriptor::Rational, 3),
            factors: vec![],
            algorithm: "none".into(),
        };
        assert!(verify_factorization(&cert).passed);
    }

    #[test]
    fn tampering_is_located() {
        let target = e(0, 1, 1).to_matrix().matmul(&e(1, 0, 1).to_matrix()).unwrap();
        let mut cert = FactorizationCertificate {
            target,
            factors: vec![e(0, 1, 1), e(1, 0, 1)],
            algorithm: "hand".into(),
        };
        assert!(verify_factorization(&cert).passed);
        cert.factors[1] = e(1, 0, 2);
        let r = verify_factorization(&cert);
        assert!(!r.passed);
        assert_eq!(r.first_mismatch, Some((1, 1)));
    }

    #[test]
    fn elementary_factors_have_det_one() {
        for f in [e(0, 1, 5), e(1, 0, -3)] {
            assert!(f.to_matrix().det().unwrap().is_one());
            assert!(f.to_matrix().matmul(&f.inverse().unwrap().to_matrix()).unwrap().is_identity());
        }
        assert!(ElementaryFactor::single(2, 1, 1, q(1, 1)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let u = RingMatrix::from_rows(vec![vec![q(1, 1), q(2, 3)], vec![q(0, 1), q(1, 1)]]).unwrap();
        let cert = FactorizationCertificate {
            target: u.matmul(&e(1, 0, 4).to_matrix()).unwrap(),
            factors: vec![ElementaryFactor::upper(u).unwrap(), e(1, 0, 4)],
            algorithm: "hand".into(),
        };
        let back = FactorizationCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        let j = cert.to_json();
        assert_eq!(j["factors"][1]["i"], 2);
    }

    #[test]
    fn simplification_merges_and_drops() {
        let up = |a| ElementaryFactor::Upper(e(0, 1, a).to_matrix());
        let out = simplify_factors(vec![up(1), up(-1), ElementaryFactor::Lower(e(1, 0, 2).to_matrix()), up(3)]).unwrap();
        assert_eq!(out.len(), 2);
        assert!(simplify_factors(vec![up(0)]).unwrap().is_empty());
    }
}
