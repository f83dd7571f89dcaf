//! Factorization of `SL_n` matrices into unipotent triangular factors.

use crate::error::{Error, Result};
use crate::matrix::{ElementaryFactor, FactorizationCertificate, RingMatrix};
use crate::ring::{bezout_certificate, div_rem, euclid_size, reduce_unimodular_pair, RingDescriptor, RingElement};

pub const ALGORITHM_BSR1: &str = "bsr1";
pub const ALGORITHM_GAUSS: &str = "gauss";
pub const ALGORITHM_EUCLID: &str = "euclid";

fn require_sl(x: &RingMatrix) -> Result<()> {
    if x.det()?.is_one() {
        Ok(())
    } else {
        Err(Error::NotSL)
    }
}

fn embed(n: usize, desc: &RingDescriptor, entries: &[((usize, usize), RingElement)]) -> Result<RingMatrix> {
    let mut m = RingMatrix::identity(desc, n);
    for ((i, j), a) in entries {
        m.set(*i, *j, a.clone())?;
    }
    Ok(m)
}

/// Stable-rank-1 elimination for 2x2 matrices: at most four factors.
pub fn factor_bsr1_sl2(x: &RingMatrix) -> Result<FactorizationCertificate> {
    if x.dim() != 2 {
        return Err(Error::DimensionMismatch(x.dim(), 2));
    }
    let cert = factor_bsr1_sln(x)?;
    if cert.factors.len() > 4 {
        return Err(Error::InternalInvariantViolation(format!(
            "{} factors for a 2x2 matrix",
            cert.factors.len()
        )));
    }
    Ok(cert)
}

/// Stable-rank-1 elimination: at most `2n` unipotent triangular factors.
pub fn factor_bsr1_sln(x: &RingMatrix) -> Result<FactorizationCertificate> {
    let n = x.dim();
    let desc = x.descriptor().clone();
    if !desc.has_reduction_oracle() {
        return Err(Error::OracleUnavailable(desc.to_string()));
    }
    require_sl(x)?;
    let mut w = x.clone();
    // left multipliers in the order applied
    let mut applied: Vec<ElementaryFactor> = Vec::new();
    let mut apply = |w: &mut RingMatrix, m: RingMatrix, upper: bool| -> Result<()> {
        *w = m.matmul(w)?;
        applied.push(if upper {
            ElementaryFactor::upper(m)?
        } else {
            ElementaryFactor::lower(m)?
        });
        Ok(())
    };
    for k in 0..n.saturating_sub(1) {
        let last = n - 1;
        let column: Vec<RingElement> = (k..n).map(|i| w.get(i, k).clone()).collect();
        let cert = bezout_certificate(&column)?;
        let coeffs = &cert.coefficients;
        // s = sum_{i<last} c_i x_i, so that c_last * x_last + 1 * s = 1
        let mut s = RingElement::zero(&desc);
        for (c, xi) in coeffs.iter().zip(&column).take(column.len() - 1) {
            s = s.add(&c.mul(xi)?)?;
        }
        let x_last = column.last().unwrap();
        let pair_cert = crate::ring::UnimodularCertificate {
            coefficients: vec![coeffs.last().unwrap().clone(), RingElement::one(&desc)],
        };
        let witness = reduce_unimodular_pair(x_last, &s, &pair_cert)?;
        let (y, alpha, alpha_inv) = (witness.y, witness.alpha, witness.alpha_inverse);

        let l_entries: Vec<_> = (k..last)
            .map(|i| Ok(((last, i), y.mul(&coeffs[i - k])?)))
            .collect::<Result<_>>()?;
        apply(&mut w, embed(n, &desc, &l_entries)?, false)?;
        if !w.get(last, k).is_unit() || w.get(last, k) != &alpha {
            return Err(Error::InternalInvariantViolation("reduced pivot is not the witnessed unit".into()));
        }

        let mut u_entries = vec![((k, last), RingElement::one(&desc).sub(w.get(k, k))?.mul(&alpha_inv)?)];
        for i in k + 1..last {
            u_entries.push(((i, last), w.get(i, k).neg().mul(&alpha_inv)?));
        }
        apply(&mut w, embed(n, &desc, &u_entries)?, true)?;

        apply(&mut w, embed(n, &desc, &[((last, k), alpha.neg())])?, false)?;
        let cleared = w.get(k, k).is_one() && (k + 1..n).all(|i| w.get(i, k).is_zero());
        if !cleared {
            return Err(Error::InternalInvariantViolation(format!(
                "column {} not reduced to a unit vector",
                k + 1
            )));
        }
    }
    if !w.get(n - 1, n - 1).is_one() || !w.is_upper_unitriangular() {
        return Err(Error::InternalInvariantViolation("final corner is not 1".into()));
    }
    let mut factors = applied
        .iter()
        .map(ElementaryFactor::inverse)
        .collect::<Result<Vec<_>>>()?;
    factors.push(ElementaryFactor::upper(w)?);
    let factors = crate::matrix::simplify_factors(factors)?;
    if factors.len() > 2 * n {
        return Err(Error::InternalInvariantViolation(format!(
            "{} factors exceed the bound {}",
            factors.len(),
            2 * n
        )));
    }
    Ok(FactorizationCertificate {
        target: x.clone(),
        factors,
        algorithm: ALGORITHM_BSR1.into(),
    })
}

/// Row-operation elimination shared by the field and Euclidean baselines.
/// Returns the certificate built from the inverted row operations.
fn eliminate(x: &RingMatrix, euclid: bool, algorithm: &str) -> Result<FactorizationCertificate> {
    let n = x.dim();
    let desc = x.descriptor().clone();
    let mut w = x.clone();
    let mut ops: Vec<ElementaryFactor> = Vec::new();
    let mut row_op = |w: &mut RingMatrix, target: usize, source: usize, a: RingElement| -> Result<()> {
        if a.is_zero() {
            return Ok(());
        }
        w.add_row_multiple(target, source, &a)?;
        ops.push(ElementaryFactor::single(n, target, source, a)?);
        Ok(())
    };
    for k in 0..n {
        if euclid {
            // shrink the column by division with remainder until a unit appears
            while !(k..n).any(|i| w.get(i, k).is_unit()) {
                let p = (k..n)
                    .filter(|&i| !w.get(i, k).is_zero())
                    .min_by_key(|&i| euclid_size(w.get(i, k)))
                    .ok_or(Error::NotSL)?;
                let mut progressed = false;
                for i in k..n {
                    if i == p || w.get(i, k).is_zero() {
                        continue;
                    }
                    let (q, _) = div_rem(w.get(i, k), w.get(p, k))?;
                    if !q.is_zero() {
                        progressed = true;
                    }
                    row_op(&mut w, i, p, q.neg())?;
                }
                if !progressed {
                    return Err(Error::NotSL);
                }
            }
        }
        if !w.get(k, k).is_one() {
            if let Some(r) = (k + 1..n).find(|&r| w.get(r, k).is_unit()) {
                let a = RingElement::one(&desc)
                    .sub(w.get(k, k))?
                    .mul(&w.get(r, k).invert_unit()?)?;
                row_op(&mut w, k, r, a)?;
            } else if w.get(k, k).is_unit() && k + 1 < n {
                let u = w.get(k, k).clone();
                let u_inv = u.invert_unit()?;
                for i in k + 1..n {
                    let a = w.get(i, k).neg().mul(&u_inv)?;
                    row_op(&mut w, i, k, a)?;
                }
                row_op(&mut w, k + 1, k, u_inv)?;
                row_op(&mut w, k, k + 1, RingElement::one(&desc).sub(&u)?)?;
            } else {
                return Err(Error::NotSL);
            }
        }
        for i in k + 1..n {
            let a = w.get(i, k).neg();
            row_op(&mut w, i, k, a)?;
        }
    }
    for j in (1..n).rev() {
        for i in 0..j {
            let a = w.get(i, j).neg();
            row_op(&mut w, i, j, a)?;
        }
    }
    if !w.is_identity() {
        return Err(Error::InternalInvariantViolation("elimination did not reach the identity".into()));
    }
    let factors = ops
        .iter()
        .map(ElementaryFactor::inverse)
        .collect::<Result<Vec<_>>>()?;
    Ok(FactorizationCertificate {
        target: x.clone(),
        factors,
        algorithm: algorithm.into(),
    })
}

/// Gaussian elimination over a field, without row swaps.
pub fn factor_field_gauss(x: &RingMatrix) -> Result<FactorizationCertificate> {
    let desc = x.descriptor();
    if !matches!(desc, RingDescriptor::Rational | RingDescriptor::GaussianRational) {
        return Err(Error::NotAField(desc.to_string()));
    }
    require_sl(x)?;
    eliminate(x, false, ALGORITHM_GAUSS)
}

/// Euclidean elimination over the integers or a polynomial ring over a field.
pub fn factor_euclidean(x: &RingMatrix) -> Result<FactorizationCertificate> {
    let desc = x.descriptor();
    if !matches!(desc, RingDescriptor::Integer | RingDescriptor::PolyOverField(_)) {
        return Err(Error::UnsupportedRing(format!(
            "{desc} has no division with remainder"
        )));
    }
    require_sl(x)?;
    eliminate(x, true, ALGORITHM_EUCLID)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::verify_factorization;
    use crate::ring::testing::*;

    fn qm(rows: &[&[i64]]) -> RingMatrix {
        RingMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()).unwrap()
    }

    fn zm(rows: &[&[i64]]) -> RingMatrix {
        RingMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| RingElement::integer(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rotation_over_q() {
        let x = qm(&[&[0, -1], &[1, 0]]);
        let cert = factor_bsr1_sl2(&x).unwrap();
        let want = [qm(&[&[1, -1], &[0, 1]]), qm(&[&[1, 0], &[1, 1]]), qm(&[&[1, -1], &[0, 1]])];
        assert_eq!(cert.factors.len(), 3);
        for (f, w) in cert.factors.iter().zip(&want) {
            assert_eq!(&f.to_matrix(), w);
        }
        assert!(verify_factorization(&cert).passed);
    }

    #[test]
    fn identity_gives_no_factors() {
        for n in 2..=4 {
            let id = RingMatrix::identity(&RingDescriptor::Rational, n);
            assert!(factor_bsr1_sln(&id).unwrap().factors.is_empty());
            assert!(factor_field_gauss(&id).unwrap().factors.is_empty());
        }
        assert!(factor_euclidean(&RingMatrix::identity(&RingDescriptor::Integer, 3))
            .unwrap()
            .factors
            .is_empty());
    }

    #[test]
    fn not_sl() {
        assert_eq!(factor_bsr1_sl2(&qm(&[&[2, 0], &[0, 1]])).unwrap_err(), Error::NotSL);
        assert_eq!(factor_field_gauss(&qm(&[&[2, 0], &[0, 1]])).unwrap_err(), Error::NotSL);
        assert_eq!(factor_euclidean(&zm(&[&[2, 0], &[0, 1]])).unwrap_err(), Error::NotSL);
    }

    #[test]
    fn oracle_unavailable_over_integers() {
        assert!(matches!(
            factor_bsr1_sl2(&zm(&[&[2, 1], &[1, 1]])),
            Err(Error::OracleUnavailable(_))
        ));
    }

    #[test]
    fn gauss_examples() {
        let d = RingMatrix::from_rows(vec![vec![q(2, 1), q(0, 1)], vec![q(0, 1), q(1, 2)]]).unwrap();
        let cert = factor_field_gauss(&d).unwrap();
        assert_eq!(cert.factors.len(), 4);
        assert!(cert.factors.iter().all(|f| matches!(f, ElementaryFactor::Single { .. })));
        assert!(verify_factorization(&cert).passed);
        let cert = factor_field_gauss(&qm(&[&[1, 5], &[0, 1]])).unwrap();
        assert_eq!(cert.factors, vec![ElementaryFactor::single(2, 0, 1, q(5, 1)).unwrap()]);
        assert!(matches!(factor_field_gauss(&zm(&[&[1, 0], &[0, 1]])), Err(Error::NotAField(_))));
    }

    #[test]
    fn euclid_examples() {
        let cert = factor_euclidean(&zm(&[&[2, 1], &[1, 1]])).unwrap();
        assert_eq!(
            cert.factors,
            vec![
                ElementaryFactor::single(2, 0, 1, RingElement::integer(1)).unwrap(),
                ElementaryFactor::single(2, 1, 0, RingElement::integer(1)).unwrap(),
            ]
        );
        let x = RingMatrix::from_rows(vec![
            vec![qpoly(&[1]), qpoly(&[0, 1])],
            vec![qpoly(&[0, 1]), qpoly(&[1, 0, 1])],
        ])
        .unwrap();
        let cert = factor_euclidean(&x).unwrap();
        assert_eq!(
            cert.factors,
            vec![
                ElementaryFactor::single(2, 1, 0, qpoly(&[0, 1])).unwrap(),
                ElementaryFactor::single(2, 0, 1, qpoly(&[0, 1])).unwrap(),
            ]
        );
        assert!(matches!(factor_euclidean(&qm(&[&[1, 0], &[0, 1]])), Err(Error::UnsupportedRing(_))));
    }

    #[test]
    fn euclid_needs_remainders() {
        let x = zm(&[&[7, 5, 1], &[4, 3, 2], &[0, 0, 1]]);
        assert!(x.det().unwrap().is_one());
        let cert = factor_euclidean(&x).unwrap();
        assert!(verify_factorization(&cert).passed);
        let x = zm(&[&[-1, 0], &[0, -1]]);
        assert!(verify_factorization(&factor_euclidean(&x).unwrap()).passed);
    }
}
