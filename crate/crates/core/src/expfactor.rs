//! Products of exponentials from unipotent factorizations, with determinant
//! absorption for `GL_n`.

use num_rational::BigRational;
use serde_json::{json, Value as Json};

use crate::elementary::{factor_bsr1_sln, factor_euclidean};
use crate::error::{Error, Result};
use crate::matrix::{FactorizationCertificate, RingMatrix, VerificationReport};
use crate::ring::{nilpotency_bound, principal_unit_log, unit_nth_root, RingDescriptor, RingElement};

fn require_rationals(desc: &RingDescriptor) -> Result<()> {
    if !desc.is_exact() {
        return Err(Error::UnsupportedRing(format!("{desc} is not an exact ring")));
    }
    if !desc.contains_rationals() {
        return Err(Error::RingWithoutRationals(desc.to_string()));
    }
    Ok(())
}

fn scale_rational(m: &RingMatrix, q: &BigRational) -> Result<RingMatrix> {
    m.scale(&RingElement::from_rational(m.descriptor(), q)?)
}

/// `log(I + N) = sum_{j=1}^{n-1} (-1)^{j+1} N^j / j` for unitriangular `U = I + N`.
pub fn unipotent_log(u: &RingMatrix) -> Result<RingMatrix> {
    if !u.is_upper_unitriangular() && !u.is_lower_unitriangular() {
        return Err(Error::NotUnipotent);
    }
    require_rationals(u.descriptor())?;
    let n = u.dim();
    let nil = u.sub(&RingMatrix::identity(u.descriptor(), n))?;
    let mut acc = RingMatrix::zero(u.descriptor(), n);
    let mut power = nil.clone();
    for j in 1..n as i64 {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&scale_rational(&power, &BigRational::new(sign.into(), j.into()))?)?;
        power = power.matmul(&nil)?;
    }
    Ok(acc)
}

/// `exp(G) = sum G^j / j!`, for `G` whose powers vanish (strictly triangular,
/// possibly plus a nilpotent scalar).
pub fn nilpotent_exp(g: &RingMatrix) -> Result<RingMatrix> {
    let desc = g.descriptor();
    let n = g.dim();
    let cap = n * (nilpotency_bound(desc) + 1) + 1;
    let mut acc = RingMatrix::identity(desc, n);
    if g.entries().iter().all(RingElement::is_zero) {
        return Ok(acc);
    }
    require_rationals(desc)?;
    let mut term = acc.clone();
    for j in 1..=cap as i64 {
        term = scale_rational(&term.matmul(g)?, &BigRational::new(1.into(), j.into()))?;
        if term.entries().iter().all(RingElement::is_zero) {
            return Ok(acc);
        }
        acc = acc.add(&term)?;
    }
    Err(Error::NotNilpotent)
}

/// `exp(G_1) * ... * exp(G_k) = target`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpCertificate {
    pub target: RingMatrix,
    pub logs: Vec<RingMatrix>,
}

impl ExpCertificate {
    pub fn count(&self) -> usize {
        self.logs.len()
    }

    pub fn replay(&self) -> Result<RingMatrix> {
        let mut acc = RingMatrix::identity(self.target.descriptor(), self.target.dim());
        for g in &self.logs {
            acc = acc.matmul(&nilpotent_exp(g)?)?;
        }
        Ok(acc)
    }

    /// Exact replay check.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport {
            passed: false,
            factor_count: self.logs.len(),
            factor_checks: Vec::new(),
            first_mismatch: None,
            message: String::new(),
        };
        let product = match self.replay() {
            Ok(p) => p,
            Err(e) => {
                report.message = format!("replay failed: {e}");
                return report;
            }
        };
        let n = self.target.dim();
        for i in 0..n {
            for j in 0..n {
                if product.get(i, j) != self.target.get(i, j) {
                    report.first_mismatch = Some((i + 1, j + 1));
                    report.message = format!("product of exponentials differs from target at ({}, {})", i + 1, j + 1);
                    return report;
                }
            }
        }
        report.passed = true;
        report.message = "product of exponentials equals target exactly".into();
        report
    }

    pub fn to_json(&self) -> Json {
        json!({
            "target": self.target.to_json(),
            "logs": self.logs.iter().map(RingMatrix::rows_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let target = v.get("target").ok_or_else(|| Error::parse("target", "missing"))?;
        let target = crate::matrix::RingMatrix::from_json_at(target, "target")?;
        let logs = v
            .get("logs")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::parse("logs", "missing or not an array"))?
            .iter()
            .enumerate()
            .map(|(k, g)| RingMatrix::rows_from_json(target.descriptor(), target.dim(), g, &format!("logs[{k}]")))
            .collect::<Result<_>>()?;
        Ok(ExpCertificate { target, logs })
    }
}

fn unipotent_factorization(x: &RingMatrix) -> Result<FactorizationCertificate> {
    let desc = x.descriptor();
    if desc.has_reduction_oracle() {
        factor_bsr1_sln(x)
    } else if matches!(desc, RingDescriptor::PolyOverField(_)) {
        factor_euclidean(x)
    } else if matches!(desc, RingDescriptor::Integer) {
        Err(Error::RingWithoutRationals(desc.to_string()))
    } else {
        Err(Error::OracleUnavailable(desc.to_string()))
    }
}

/// Logs of the factors of a unipotent factorization, in order.
pub fn sl_to_exponentials(x: &RingMatrix) -> Result<ExpCertificate> {
    require_rationals(x.descriptor())?;
    let cert = unipotent_factorization(x)?;
    let logs = cert
        .factors
        .iter()
        .map(|f| unipotent_log(&f.to_matrix()))
        .collect::<Result<_>>()?;
    Ok(ExpCertificate {
        target: x.clone(),
        logs,
    })
}

/// Writes `det X = f^n`, factors `f^{-1} X` and absorbs `ln f * I` into the
/// first log.
pub fn gl_to_exponentials(x: &RingMatrix) -> Result<ExpCertificate> {
    let desc = x.descriptor();
    require_rationals(desc)?;
    let n = x.dim();
    let d = x.det()?;
    if !d.is_unit() {
        return Err(Error::NotInvertible);
    }
    let f = unit_nth_root(&d, n as u32)?;
    let y = x.scale(&f.invert_unit()?)?;
    let mut logs = sl_to_exponentials(&y)?.logs;
    let ln_f = principal_unit_log(&f)?;
    if !ln_f.is_zero() {
        let scalar = RingMatrix::identity(desc, n).scale(&ln_f)?;
        match logs.first_mut() {
            Some(g) => *g = g.add(&scalar)?,
            None => logs.push(scalar),
        }
    }
    Ok(ExpCertificate {
        target: x.clone(),
        logs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::testing::*;

    fn qm(rows: &[&[i64]]) -> RingMatrix {
        RingMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()).unwrap()
    }

    #[test]
    fn shear_log() {
        let a = qpoly(&[1, 3]);
        let u = RingMatrix::from_rows(vec![vec![qpoly(&[1]), a.clone()], vec![qpoly(&[]), qpoly(&[1])]]).unwrap();
        let g = unipotent_log(&u).unwrap();
        assert_eq!(g.get(0, 1), &a);
        assert!(g.get(0, 0).is_zero() && g.get(1, 0).is_zero() && g.get(1, 1).is_zero());
        assert_eq!(nilpotent_exp(&g).unwrap(), u);
    }

    #[test]
    fn three_by_three_log() {
        let u = qm(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]);
        let g = unipotent_log(&u).unwrap();
        let want = RingMatrix::from_rows(vec![
            vec![q(0, 1), q(1, 1), q(1, 2)],
            vec![q(0, 1), q(0, 1), q(1, 1)],
            vec![q(0, 1), q(0, 1), q(0, 1)],
        ])
        .unwrap();
        assert_eq!(g, want);
        assert_eq!(nilpotent_exp(&g).unwrap(), u);
        let id = RingMatrix::identity(&RingDescriptor::Rational, 3);
        assert!(unipotent_log(&id).unwrap().entries().iter().all(RingElement::is_zero));
    }

    #[test]
    fn errors() {
        assert_eq!(unipotent_log(&qm(&[&[2, 0], &[0, 1]])).unwrap_err(), Error::NotUnipotent);
        let z = RingMatrix::identity(&RingDescriptor::Integer, 2);
        assert!(matches!(unipotent_log(&z), Err(Error::RingWithoutRationals(_))));
        assert_eq!(nilpotent_exp(&qm(&[&[1, 0], &[0, 0]])).unwrap_err(), Error::NotNilpotent);
    }

    #[test]
    fn rotation_logs() {
        let cert = sl_to_exponentials(&qm(&[&[0, -1], &[1, 0]])).unwrap();
        assert_eq!(
            cert.logs,
            vec![qm(&[&[0, -1], &[0, 0]]), qm(&[&[0, 0], &[1, 0]]), qm(&[&[0, -1], &[0, 0]])]
        );
        assert!(cert.verify().passed);
        let back = ExpCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn scalar_determinant_absorbed() {
        let d = RingDescriptor::jet(RingDescriptor::Rational, 3).unwrap();
        let f = qjet(3, &[1, 2]);
        let x = RingMatrix::identity(&d, 2).scale(&f).unwrap();
        let cert = gl_to_exponentials(&x).unwrap();
        assert_eq!(cert.logs.len(), 1);
        let want = RingMatrix::identity(&d, 2).scale(&qjet(3, &[0, 2, -2])).unwrap();
        assert_eq!(cert.logs[0], want);
        assert!(cert.verify().passed);
        assert!(gl_to_exponentials(&RingMatrix::identity(&d, 2)).unwrap().logs.is_empty());
    }

    #[test]
    fn non_principal_determinant() {
        assert_eq!(gl_to_exponentials(&qm(&[&[2, 0], &[0, 1]])).unwrap_err(), Error::NotPrincipalUnit);
        assert_eq!(gl_to_exponentials(&qm(&[&[1, 1], &[1, 1]])).unwrap_err(), Error::NotInvertible);
    }
}
