use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use super::fmatrix::{element_to_poly, FuncMatrix};
use crate::analytic::{
    gaussian_to_c64, hermite_interpolate, jet_log, poly_roots_exact, FuncExpr, Jet, Polynomial, Removable, Root,
    VALUATION_THRESHOLD,
};
use crate::error::{Error, Result};
use crate::matrix::RingMatrix;
use crate::ring::Gaussian;
use crate::C64;

/// Residual tolerance for root finding on the exact lower-left entry.
const ROOT_TOL: f64 = 1e-10;
/// Relative tolerance of the internal sampled sanity checks.
const CHECK_TOL: f64 = 1e-8;
/// Relative size below which a sampled function is treated as identically zero.
const ZERO_TOL: f64 = 1e-12;

/// Fixed sample points for construction-time checks.
pub(crate) fn probe_points() -> Vec<C64> {
    let mut pts = Vec::new();
    for (k, r) in [0.3, 0.75, 1.3, 1.85].iter().enumerate() {
        for j in 0..5 {
            let theta = 0.37 + 1.2566370614359172 * j as f64 + 0.61 * k as f64;
            pts.push(C64::from_polar(*r, theta));
        }
    }
    pts
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpCase {
    CZero,
    CNonzero,
}

/// `target = exp(G_1) exp(G_2) exp(G_3)` for a polynomial `SL_2` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeExpCertificate {
    pub target: RingMatrix,
    pub case: ExpCase,
    /// Polynomial `log alpha`.
    pub alpha_log: FuncExpr,
    pub beta: FuncExpr,
    /// Zeros of the lower-left entry with multiplicities.
    pub roots: Vec<Root>,
    pub y: FuncMatrix,
    pub logs: Vec<FuncMatrix>,
}

impl ThreeExpCertificate {
    pub fn to_json(&self) -> Json {
        json!({
            "target": self.target.to_json(),
            "case": self.case,
            "alpha_log": self.alpha_log,
            "beta": self.beta,
            "roots": self.roots,
            "y": self.y,
            "logs": self.logs,
        })
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let target = v.get("target").ok_or_else(|| Error::parse("target", "missing"))?;
        let target = RingMatrix::from_json_at(target, "target")?;
        fn field<T: for<'de> Deserialize<'de>>(v: &Json, name: &str) -> Result<T> {
            let x = v.get(name).ok_or_else(|| Error::parse(name, "missing"))?;
            serde_json::from_value(x.clone()).map_err(|e| Error::parse(name, e.to_string()))
        }
        Ok(ThreeExpCertificate {
            target,
            case: field(v, "case")?,
            alpha_log: field(v, "alpha_log")?,
            beta: field(v, "beta")?,
            roots: field(v, "roots")?,
            y: field(v, "y")?,
            logs: field(v, "logs")?,
        })
    }
}

fn sampled_scale(exprs: &[FuncExpr]) -> Result<Vec<f64>> {
    let mut out = vec![0.0f64; exprs.len()];
    for z in probe_points() {
        for (o, v) in out.iter_mut().zip(FuncExpr::eval_all(exprs, z)?) {
            *o = o.max(v.norm());
        }
    }
    Ok(out)
}

/// Distinct candidate zeros of the entries of a row, merged across entries.
fn row_zero_candidates(entries: &[&FuncExpr]) -> Option<Vec<(C64, usize)>> {
    let mut any = false;
    let mut pts: Vec<(C64, usize)> = Vec::new();
    for e in entries {
        if let Some(cands) = e.zero_candidates() {
            any = true;
            for (p, m) in cands {
                match pts.iter_mut().find(|(q, _)| (*q - p).norm() <= 1e-9 * (1.0 + p.norm())) {
                    Some(entry) => entry.1 = entry.1.max(m),
                    None => pts.push((p, m)),
                }
            }
        }
    }
    any.then_some(pts)
}

fn order_at(e: &FuncExpr, p: C64, bound: usize) -> Result<Option<usize>> {
    Ok(e.jet_at(p, bound + 1)?.valuation(VALUATION_THRESHOLD))
}

/// True if every candidate zero of `e` is cleared by `divisor` at full multiplicity.
fn cleared(e: &FuncExpr, divisor: &[Removable]) -> bool {
    match e.zero_candidates() {
        Some(cands) => cands.iter().all(|(p, m)| {
            divisor
                .iter()
                .any(|r| (r.point - p).norm() <= 1e-9 * (1.0 + p.norm()) && r.order >= *m)
        }),
        None => false,
    }
}

/// Logarithm of a 2x2 matrix with double eigenvalue `lambda`, where
/// `exp(gamma) = lambda^2 = det Y`: conjugates `Y` to
/// `[[lambda, b], [0, lambda]]` by a holomorphic eigenvector frame `P`.
pub fn double_ev_log(y: &FuncMatrix, lambda: &FuncExpr, gamma: &FuncExpr) -> Result<FuncMatrix> {
    if y.dim() != 2 {
        return Err(Error::DimensionMismatch(y.dim(), 2));
    }
    let half_gamma = gamma * &FuncExpr::rational(1, 2);
    let mut disc_worst: f64 = 0.0;
    for z in probe_points() {
        let m = y.eval(z)?;
        let (tr, det) = (m.trace(), m.det());
        let scale = 1f64
            .max(tr.norm_sqr())
            .max((m[(0, 0)] * m[(1, 1)]).norm())
            .max((m[(0, 1)] * m[(1, 0)]).norm());
        disc_worst = disc_worst.max((tr * tr - det * 4.0).norm() / scale);
        let l = lambda.eval(z)?;
        let g = gamma.eval(z)?;
        disc_worst = disc_worst.max((tr - l * 2.0).norm() / scale.sqrt());
        disc_worst = disc_worst.max((g.exp() - det).norm() / det.norm().max(1.0));
    }
    if disc_worst > CHECK_TOL {
        return Err(Error::NotDoubleEigenvalue(disc_worst));
    }

    let nil = y.sub(&FuncMatrix::scalar(2, lambda));
    let y_scale = sampled_scale(y.entries())?.into_iter().fold(1.0, f64::max);
    let nil_scale = sampled_scale(nil.entries())?;
    let is_zero: Vec<bool> = nil
        .entries()
        .iter()
        .zip(&nil_scale)
        .map(|(e, s)| e.is_structurally_zero() || *s <= ZERO_TOL * y_scale)
        .collect();
    if is_zero.iter().all(|&z| z) {
        return Ok(FuncMatrix::scalar(2, &half_gamma));
    }

    // row (h, g) of Y - lambda I with a computable zero set
    let rows = [0usize, 1];
    let live = |r: usize| -> Vec<&FuncExpr> {
        (0..2).filter(|&j| !is_zero[2 * r + j]).map(|j| nil.get(r, j)).collect()
    };
    let chosen = rows
        .iter()
        .copied()
        .filter(|&r| !live(r).is_empty())
        .find(|&r| row_zero_candidates(&live(r)).is_some())
        .or_else(|| rows.iter().copied().find(|&r| !live(r).is_empty()))
        .ok_or(Error::EigenvectorDegenerate)?;
    let h = if is_zero[2 * chosen] { FuncExpr::zero() } else { nil.get(chosen, 0).clone() };
    let g = if is_zero[2 * chosen + 1] { FuncExpr::zero() } else { nil.get(chosen, 1).clone() };

    // divisor of common zeros, with orders read off from jets
    let mut divisor: Vec<Removable> = Vec::new();
    for (p, bound) in row_zero_candidates(&live(chosen)).unwrap_or_default() {
        let mut order: Option<usize> = None;
        for e in [&h, &g] {
            if e.is_structurally_zero() {
                continue;
            }
            if let Some(v) = order_at(e, p, bound)? {
                order = Some(order.map_or(v, |o: usize| o.min(v)));
            }
        }
        if let Some(o) = order.filter(|&o| o > 0) {
            divisor.push(Removable { point: p, order: o });
        }
    }
    let f = divisor.iter().fold(Polynomial::constant(C64::one()), |acc, r| {
        acc.mul(&Polynomial::linear(r.point).pow(r.order))
    });
    let f = FuncExpr::from_float_poly(&f);
    let v1 = (-&g).div(&f, divisor.clone());
    let v2 = h.div(&f, divisor.clone());

    // constant second column of P
    let i = C64::i();
    let candidates = [
        (C64::one(), C64::zero()),
        (C64::zero(), C64::one()),
        (C64::one(), C64::one()),
        (C64::one(), -C64::one()),
        (C64::one(), i),
        (C64::one(), -i),
    ];
    let det_of = |(p1, p2): (C64, C64)| -> FuncExpr {
        &(&v1 * &FuncExpr::constant(p2)) - &(&v2 * &FuncExpr::constant(p1))
    };
    let provable = |(p1, p2): (C64, C64)| -> bool {
        if p2 == C64::zero() {
            cleared(&h, &divisor)
        } else if p1 == C64::zero() {
            cleared(&g, &divisor)
        } else {
            false
        }
    };
    let mut best: Option<((C64, C64), f64, bool)> = None;
    for cand in candidates {
        let det = det_of(cand);
        let mut min_abs = f64::INFINITY;
        for z in probe_points() {
            min_abs = min_abs.min(det.eval(z)?.norm());
        }
        let proven = provable(cand) && min_abs > 0.0;
        let better = match best {
            None => true,
            Some((_, m, p)) => (proven && !p) || (proven == p && min_abs > m),
        };
        if better {
            best = Some((cand, min_abs, proven));
        }
    }
    let ((p1, p2), min_abs, _) = best.expect("candidate list is non-empty");
    if min_abs <= ZERO_TOL {
        return Err(Error::EigenvectorDegenerate);
    }
    let (c1, c2) = (FuncExpr::constant(p1), FuncExpr::constant(p2));
    let det = det_of((p1, p2));
    let inv_det = FuncExpr::one().div(&det, Vec::new());
    let p = FuncMatrix::from_rows(vec![vec![v1.clone(), c1.clone()], vec![v2.clone(), c2.clone()]])?;
    let p_inv = FuncMatrix::from_rows(vec![vec![c2, -&c1], vec![-&v2, v1]])?.scale(&inv_det);
    let conj = p_inv.mul(y).mul(&p);
    let beta_t = conj.get(0, 1);
    let t = FuncMatrix::from_rows(vec![
        vec![half_gamma.clone(), beta_t * &lambda.reciprocal()],
        vec![FuncExpr::zero(), half_gamma],
    ])?;
    Ok(p.mul(&t).mul(&p_inv))
}

/// Factors a polynomial `SL_2` matrix as a product of three exponentials.
pub fn three_exp_sl2(x: &RingMatrix) -> Result<ThreeExpCertificate> {
    if x.dim() != 2 {
        return Err(Error::DimensionMismatch(x.dim(), 2));
    }
    let polys: Vec<Polynomial<Gaussian>> = x.entries().iter().map(element_to_poly).collect::<Result<_>>()?;
    let (a, b, c, d) = (&polys[0], &polys[1], &polys[2], &polys[3]);
    if a.mul(d).sub(&b.mul(c)) != Polynomial::constant(Gaussian::one()) {
        return Err(Error::NotSL);
    }
    let ex = |p: &Polynomial<Gaussian>| FuncExpr::poly(p.coeffs().to_vec());
    let (fa, fb, fc, fd) = (ex(a), ex(b), ex(c), ex(d));

    let (case, alpha_log, alpha, beta, roots) = if c.is_zero() {
        // a d = 1 forces constant a
        let a0 = a.coeffs()[0].clone();
        let alpha_log = FuncExpr::constant(-gaussian_to_c64(&a0).ln());
        let alpha = FuncExpr::exact(a0.inv());
        (ExpCase::CZero, alpha_log, alpha, FuncExpr::zero(), Vec::new())
    } else {
        let root_set = poly_roots_exact(c, ROOT_TOL).map_err(|e| match e {
            Error::RootFindingFailed(m) => Error::RootFindingFailed(m),
            other => Error::RootFindingFailed(other.to_string()),
        })?;
        let a_float = Polynomial::new(a.coeffs().iter().map(gaussian_to_c64).collect());
        let mut log_jets = Vec::new();
        for r in &root_set.roots {
            let ja = Jet::new(r.location, a_float.taylor_at(&r.location, r.multiplicity - 1));
            let inv = ja
                .recip()
                .ok_or_else(|| Error::RootFindingFailed(format!("a vanishes at the zero {} of c", r.location)))?;
            log_jets.push(jet_log(&inv)?);
        }
        let alpha_log = FuncExpr::from_float_poly(&hermite_interpolate(&log_jets)?);
        let alpha = alpha_log.exp();
        let two = FuncExpr::rational(2, 1);
        let num = &(&(&two * &alpha) - &(&fa * &(&alpha * &alpha))) - &fd;
        let removable = root_set
            .roots
            .iter()
            .map(|r| Removable {
                point: r.location,
                order: r.multiplicity,
            })
            .collect();
        let beta = num.div(&fc, removable);
        for r in &root_set.roots {
            beta.jet_at(r.location, 1).map_err(|e| match e {
                Error::PoleAtBase(p) => Error::JetDivisionFailed(p),
                other => other,
            })?;
        }
        (ExpCase::CNonzero, alpha_log, alpha, beta, root_set.roots)
    };

    let alpha_sq = &alpha * &alpha;
    let y = FuncMatrix::from_rows(vec![
        vec![&fa * &alpha_sq, &(&fa * &beta) + &fb],
        vec![&fc * &alpha_sq, &(&fc * &beta) + &fd],
    ])?;
    let two_alpha = &alpha * &FuncExpr::rational(2, 1);
    for z in probe_points() {
        let vals = FuncExpr::eval_all(&[y.trace(), two_alpha.clone(), y.get(0, 0).clone(), y.get(1, 1).clone()], z)?;
        let scale = 1f64.max(vals[1].norm()).max(vals[2].norm()).max(vals[3].norm());
        if (vals[0] - vals[1]).norm() > CHECK_TOL * scale {
            return Err(Error::InternalInvariantViolation(format!("tr Y differs from 2 alpha at {z}")));
        }
    }
    let gamma = &alpha_log * &FuncExpr::rational(2, 1);
    let g1 = double_ev_log(&y, &alpha, &gamma)?;
    let alpha_inv = alpha.reciprocal();
    let shear = &beta * &(&alpha_inv * &alpha_inv);
    let g2 = FuncMatrix::from_rows(vec![
        vec![alpha_log.clone(), shear],
        vec![FuncExpr::zero(), alpha_log.clone()],
    ])?
    .neg();
    let g3 = FuncMatrix::from_rows(vec![
        vec![-&alpha_log, FuncExpr::zero()],
        vec![FuncExpr::zero(), alpha_log.clone()],
    ])?;
    Ok(ThreeExpCertificate {
        target: x.clone(),
        case,
        alpha_log,
        beta,
        roots,
        y,
        logs: vec![g1, g2, g3],
    })
}
