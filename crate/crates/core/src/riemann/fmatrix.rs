use serde::{Deserialize, Serialize};

use crate::analytic::{CMatrix, FuncExpr, Polynomial};
use crate::error::{Error, Result};
use crate::matrix::RingMatrix;
use crate::ring::{Gaussian, RingDescriptor, RingElement};
use crate::C64;

/// Square matrix of holomorphic functions, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<FuncExpr>>", try_from = "Vec<Vec<FuncExpr>>")]
pub struct FuncMatrix {
    n: usize,
    entries: Vec<FuncExpr>,
}

impl From<FuncMatrix> for Vec<Vec<FuncExpr>> {
    fn from(m: FuncMatrix) -> Self {
        m.rows()
    }
}

impl TryFrom<Vec<Vec<FuncExpr>>> for FuncMatrix {
    type Error = String;
    fn try_from(rows: Vec<Vec<FuncExpr>>) -> std::result::Result<Self, String> {
        FuncMatrix::from_rows(rows).map_err(|e| e.to_string())
    }
}

/// Exact polynomial behind a ring element with polynomial, constant or
/// polynomial-expression value.
pub fn element_to_poly(e: &RingElement) -> Result<Polynomial<Gaussian>> {
    let scalar = |x: &RingElement| -> Result<Gaussian> {
        x.as_gaussian()
            .ok_or_else(|| Error::UnsupportedRing(format!("coefficient {x} is not rational or Gaussian")))
    };
    match e.descriptor() {
        RingDescriptor::Rational | RingDescriptor::GaussianRational => Ok(Polynomial::new(vec![scalar(e)?])),
        RingDescriptor::PolyOverField(_) => Ok(Polynomial::new(
            e.coefficients()
                .unwrap_or_default()
                .iter()
                .map(scalar)
                .collect::<Result<_>>()?,
        )),
        RingDescriptor::AnalyticFn => e
            .as_analytic()
            .and_then(FuncExpr::to_exact_poly)
            .ok_or_else(|| Error::UnsupportedRing("entry is not a polynomial expression".into())),
        d => Err(Error::UnsupportedRing(format!("{d} entries are not polynomials in z"))),
    }
}

impl FuncMatrix {
    pub fn new(n: usize, entries: Vec<FuncExpr>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch(n, (entries.len() as f64).sqrt() as usize));
        }
        Ok(FuncMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<FuncExpr>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(n, rows.iter().map(Vec::len).max().unwrap_or(0)));
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &FuncExpr::one())
    }

    pub fn zero(n: usize) -> Self {
        FuncMatrix {
            n,
            entries: vec![FuncExpr::zero(); n * n],
        }
    }

    pub fn scalar(n: usize, s: &FuncExpr) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = s.clone();
        }
        m
    }

    /// Polynomial matrix from a ring matrix over the rationals, Gaussian
    /// rationals, a polynomial ring over them, or polynomial expressions.
    pub fn from_ring_matrix(x: &RingMatrix) -> Result<Self> {
        let entries = x
            .entries()
            .iter()
            .map(|e| element_to_poly(e).map(|p| FuncExpr::poly(p.into_coeffs())))
            .collect::<Result<_>>()?;
        Self::new(x.dim(), entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &FuncExpr {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[FuncExpr] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<FuncExpr>> {
        self.entries.chunks(self.n).map(<[FuncExpr]>::to_vec).collect()
    }

    pub fn mul(&self, other: &FuncMatrix) -> FuncMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = FuncExpr::zero();
                for k in 0..n {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                entries.push(acc);
            }
        }
        FuncMatrix { n, entries }
    }

    fn zip(&self, other: &FuncMatrix, f: impl Fn(&FuncExpr, &FuncExpr) -> FuncExpr) -> FuncMatrix {
        FuncMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &FuncMatrix) -> FuncMatrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FuncMatrix) -> FuncMatrix {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> FuncMatrix {
        FuncMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn scale(&self, s: &FuncExpr) -> FuncMatrix {
        FuncMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| s * e).collect(),
        }
    }

    pub fn trace(&self) -> FuncExpr {
        (0..self.n).fold(FuncExpr::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn eval(&self, z: C64) -> Result<CMatrix> {
        let values = FuncExpr::eval_all(&self.entries, z)?;
        Ok(CMatrix::from_rows(
            &values.chunks(self.n).map(<[C64]>::to_vec).collect::<Vec<_>>(),
        ))
    }
}
