//! Dense square matrices over a ring, elementary factors and factorization
//! certificates.

mod factor;

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::ring::{RingDescriptor, RingElement};

pub(crate) use factor::simplify_factors;
pub use factor::{verify_factorization, ElementaryFactor, FactorCheck, FactorizationCertificate, VerificationReport};

/// Largest dimension accepted by [`RingMatrix::det`].
pub const MAX_DET_DIM: usize = 8;

/// Square matrix with entries in one ring, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RingMatrix {
    desc: Arc<RingDescriptor>,
    n: usize,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    pub fn new(desc: &RingDescriptor, n: usize, entries: Vec<RingElement>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch(0, 1));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(n, (entries.len() as f64).sqrt() as usize));
        }
        for e in &entries {
            if e.descriptor() != desc {
                return Err(Error::DescriptorMismatch(desc.to_string(), e.descriptor().to_string()));
            }
        }
        Ok(RingMatrix {
            desc: Arc::new(desc.clone()),
            n,
            entries,
        })
    }

    /// Builds from rows; the ring is taken from the first entry.
    pub fn from_rows(rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(n, rows.iter().map(Vec::len).max().unwrap_or(0)));
        }
        let desc = rows
            .first()
            .and_then(|r| r.first())
            .map(|e| e.descriptor().clone())
            .ok_or(Error::DimensionMismatch(0, 1))?;
        Self::new(&desc, n, rows.into_iter().flatten().collect())
    }

    pub fn identity(desc: &RingDescriptor, n: usize) -> Self {
        let mut m = Self::zero(desc, n);
        for i in 0..n {
            m.entries[i * n + i] = RingElement::one(desc);
        }
        m
    }

    pub fn zero(desc: &RingDescriptor, n: usize) -> Self {
        RingMatrix {
            desc: Arc::new(desc.clone()),
            n,
            entries: vec![RingElement::zero(desc); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.desc
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: RingElement) -> Result<()> {
        if value.descriptor() != &*self.desc {
            return Err(Error::DescriptorMismatch(
                self.desc.to_string(),
                value.descriptor().to_string(),
            ));
        }
        self.entries[i * self.n + j] = value;
        Ok(())
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<RingElement>> {
        self.entries.chunks(self.n).map(<[RingElement]>::to_vec).collect()
    }

    fn check_compatible(&self, other: &RingMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.desc != other.desc {
            return Err(Error::DescriptorMismatch(self.desc.to_string(), other.desc.to_string()));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_compatible(other)?;
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RingElement::zero(&self.desc);
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(other.get(k, j))?)?;
                }
                out.push(acc);
            }
        }
        Ok(RingMatrix {
            desc: self.desc.clone(),
            n,
            entries: out,
        })
    }

    pub fn add(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_compatible(other)?;
        self.zip_with(other, RingElement::add)
    }

    pub fn sub(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_compatible(other)?;
        self.zip_with(other, RingElement::sub)
    }

    fn zip_with(
        &self,
        other: &RingMatrix,
        f: impl Fn(&RingElement, &RingElement) -> Result<RingElement>,
    ) -> Result<RingMatrix> {
        Ok(RingMatrix {
            desc: self.desc.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn scale(&self, s: &RingElement) -> Result<RingMatrix> {
        Ok(RingMatrix {
            desc: self.desc.clone(),
            n: self.n,
            entries: self.entries.iter().map(|e| s.mul(e)).collect::<Result<_>>()?,
        })
    }

    /// `row_target += a * row_source`, i.e. left multiplication by `E(target, source; a)`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, a: &RingElement) -> Result<()> {
        for j in 0..self.n {
            let v = self.get(target, j).add(&a.mul(self.get(source, j))?)?;
            self.entries[target * self.n + j] = v;
        }
        Ok(())
    }

    /// Exact determinant by cofactor expansion over column subsets.
    pub fn det(&self) -> Result<RingElement> {
        let n = self.n;
        if n > MAX_DET_DIM {
            return Err(Error::DimensionTooLarge(n));
        }
        // d[mask] = det of rows 0..|mask| restricted to the columns in mask
        let mut d = vec![RingElement::zero(&self.desc); 1 << n];
        d[0] = RingElement::one(&self.desc);
        for mask in 0usize..(1 << n) {
            let k = mask.count_ones() as usize;
            if k >= n || d[mask].is_zero() {
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let a = self.get(k, j);
                if a.is_zero() {
                    continue;
                }
                let term = a.mul(&d[mask])?;
                let above = (mask >> (j + 1)).count_ones();
                let next = mask | (1 << j);
                d[next] = if above % 2 == 0 {
                    d[next].add(&term)?
                } else {
                    d[next].sub(&term)?
                };
            }
        }
        Ok(d[(1 << n) - 1].clone())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i).is_one() && (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i).is_one() && (i + 1..self.n).all(|j| self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> RingMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).clone());
            }
        }
        RingMatrix {
            desc: self.desc.clone(),
            n,
            entries,
        }
    }

    /// Inverse of a unitriangular matrix, `sum_k (-N)^k` with `N = A - I`.
    pub fn unitriangular_inverse(&self) -> Result<RingMatrix> {
        if !self.is_upper_unitriangular() && !self.is_lower_unitriangular() {
            return Err(Error::NotUnipotent);
        }
        let id = RingMatrix::identity(&self.desc, self.n);
        let neg_n = id.sub(self)?;
        let mut acc = id.clone();
        let mut power = id;
        for _ in 1..self.n {
            power = power.matmul(&neg_n)?;
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    pub fn rows_to_json(&self) -> Json {
        Json::Array(
            self.entries
                .chunks(self.n)
                .map(|r| Json::Array(r.iter().map(RingElement::to_json).collect()))
                .collect(),
        )
    }

    pub fn rows_from_json(desc: &RingDescriptor, n: usize, v: &Json, field: &str) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::parse(field, "expected an array of rows"))?;
        if rows.len() != n {
            return Err(Error::parse(field, format!("expected {n} rows, found {}", rows.len())));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::parse(format!("{field}[{i}]"), "expected an array"))?;
            if row.len() != n {
                return Err(Error::parse(
                    format!("{field}[{i}]"),
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
            for (j, e) in row.iter().enumerate() {
                entries.push(RingElement::from_json_at(desc, e, &format!("{field}[{i}][{j}]"))?);
            }
        }
        Self::new(desc, n, entries)
    }

    /// `{"ring": descriptor, "n": n, "entries": [[...], ...]}`
    pub fn to_json(&self) -> Json {
        json!({"ring": self.desc.to_json(), "n": self.n, "entries": self.rows_to_json()})
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        Self::from_json_at(v, "")
    }

    pub(crate) fn from_json_at(v: &Json, prefix: &str) -> Result<Self> {
        let field = |name: &str| {
            if prefix.is_empty() {
                name.to_string()
            } else {
                format!("{prefix}.{name}")
            }
        };
        let obj = v
            .as_object()
            .ok_or_else(|| Error::parse(if prefix.is_empty() { "<root>" } else { prefix }, "expected an object"))?;
        let ring = obj.get("ring").ok_or_else(|| Error::parse(field("ring"), "missing"))?;
        let desc = RingDescriptor::from_json(ring).map_err(|e| match e {
            Error::Parse { field: f, message } => Error::parse(format!("{}.{f}", field("ring")), message),
            other => other,
        })?;
        let entries = obj
            .get("entries")
            .ok_or_else(|| Error::parse(field("entries"), "missing"))?;
        let n = match obj.get("n") {
            Some(n) => n
                .as_u64()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::parse(field("n"), "expected a positive integer"))? as usize,
            None => entries.as_array().map(Vec::len).unwrap_or(0),
        };
        Self::rows_from_json(&desc, n, entries, &field("entries"))
    }
}

impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_element;
    use crate::ring::testing::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qm(rows: &[&[i64]]) -> RingMatrix {
        RingMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()).unwrap()
    }

    #[test]
    fn products() {
        let a = qm(&[&[1, 1], &[0, 1]]);
        let b = qm(&[&[1, 0], &[1, 1]]);
        assert_eq!(a.matmul(&b).unwrap(), qm(&[&[2, 1], &[1, 1]]));
        let id = RingMatrix::identity(&RingDescriptor::Rational, 2);
        assert_eq!(id.matmul(&a).unwrap(), a);
        let e = |x| qm(&[&[1, x], &[0, 1]]);
        assert_eq!(e(3).matmul(&e(-7)).unwrap(), e(-4));
    }

    #[test]
    fn mismatches() {
        let a = qm(&[&[1, 1], &[0, 1]]);
        let b = RingMatrix::identity(&RingDescriptor::Rational, 3);
        assert_eq!(a.matmul(&b).unwrap_err(), Error::DimensionMismatch(2, 3));
        let c = RingMatrix::identity(&RingDescriptor::Integer, 2);
        assert!(matches!(a.matmul(&c), Err(Error::DescriptorMismatch(..))));
    }

    #[test]
    fn determinants() {
        assert!(RingMatrix::identity(&qpoly_desc(), 5).det().unwrap().is_one());
        let m = RingMatrix::from_rows(vec![
            vec![qpoly(&[1, 1]), qpoly(&[0, 1])],
            vec![qpoly(&[0, 1]), qpoly(&[1, -1])],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), qpoly(&[1, 0, -2]));
        assert_eq!(
            RingMatrix::identity(&RingDescriptor::Rational, 9).det().unwrap_err(),
            Error::DimensionTooLarge(9)
        );
        let p = qm(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert!(p.det().unwrap().is_one());
        let s = qm(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(s.det().unwrap(), q(-1, 1));
    }

    #[test]
    fn det_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in ["integer", "rational", "gaussian", "poly(rational)", "jet(rational,3)", "product(rational,jet(rational,2))"] {
            let desc: RingDescriptor = d.parse().unwrap();
            for n in 1..=3 {
                let mut rand_mat = || {
                    RingMatrix::new(&desc, n, (0..n * n).map(|_| random_element(&desc, &mut rng, 3)).collect())
                        .unwrap()
                };
                let (a, b) = (rand_mat(), rand_mat());
                let lhs = a.matmul(&b).unwrap().det().unwrap();
                let rhs = a.det().unwrap().mul(&b.det().unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{d} n={n}");
            }
        }
    }

    #[test]
    fn unitriangular_inverse() {
        let u = qm(&[&[1, 2, -3], &[0, 1, 5], &[0, 0, 1]]);
        assert!(u.matmul(&u.unitriangular_inverse().unwrap()).unwrap().is_identity());
        assert_eq!(qm(&[&[2, 0], &[0, 1]]).unitriangular_inverse().unwrap_err(), Error::NotUnipotent);
    }

    #[test]
    fn json_round_trip() {
        let m = RingMatrix::from_rows(vec![
            vec![qpoly(&[1, 1]), qpoly(&[0, 1])],
            vec![qpoly(&[0, 1]), qpoly(&[1, -1])],
        ])
        .unwrap();
        assert_eq!(RingMatrix::from_json(&m.to_json()).unwrap(), m);
        let bad = json!({"ring": "rational", "n": 2, "entries": [["1", "x"], ["0", "1"]]});
        match RingMatrix::from_json(&bad).unwrap_err() {
            Error::Parse { field, .. } => assert_eq!(field, "entries[0][1]"),
            e => panic!("{e}"),
        }
    }
}
