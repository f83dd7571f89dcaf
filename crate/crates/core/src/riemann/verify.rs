use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::fmatrix::FuncMatrix;
use super::threeexp::ThreeExpCertificate;
use crate::analytic::{expm, CMatrix};
use crate::C64;

const GOLDEN_ANGLE: f64 = 2.399963229728653;

/// Sample points: uniform in a disk plus geometric rings around each root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub disk_points: usize,
    pub radius: f64,
    pub points_per_root: usize,
    /// Outermost near-root radius; rings shrink geometrically to 1e-4 of it.
    pub root_radius: f64,
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            disk_points: 200,
            radius: 2.0,
            points_per_root: 20,
            root_radius: 1e-2,
            seed: 0x5eed,
        }
    }
}

impl GridSpec {
    pub fn points(&self, roots: &[C64]) -> Vec<C64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut pts = Vec::with_capacity(self.disk_points + roots.len() * self.points_per_root);
        for _ in 0..self.disk_points {
            let r = self.radius * rng.gen::<f64>().sqrt();
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            pts.push(C64::from_polar(r, theta));
        }
        for root in roots {
            let k = self.points_per_root;
            for j in 0..k {
                let frac = if k > 1 { j as f64 / (k - 1) as f64 } else { 0.0 };
                let r = self.root_radius * 10f64.powf(-4.0 * frac);
                pts.push(root + C64::from_polar(r, GOLDEN_ANGLE * j as f64));
            }
        }
        pts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpTolerances {
    pub residual: f64,
    pub discriminant: f64,
    pub trace: f64,
    pub det_exp: f64,
}

impl Default for ExpTolerances {
    fn default() -> Self {
        ExpTolerances {
            residual: 1e-8,
            discriminant: 1e-10,
            trace: 1e-10,
            det_exp: 1e-8,
        }
    }
}

impl ExpTolerances {
    /// Same tolerance for every residual.
    pub fn uniform(tol: f64) -> Self {
        ExpTolerances {
            residual: tol,
            discriminant: tol,
            trace: tol,
            det_exp: tol,
        }
    }
}

/// Maxima of the sampled residuals, each relative to the size of the
/// quantities involved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThreeExpReport {
    pub passed: bool,
    pub points: usize,
    /// `|X - prod exp G_i|_F / max(1, |X|_F)`.
    pub max_residual: f64,
    pub discriminant_residual: f64,
    pub trace_residual: f64,
    pub det_exp_residual: f64,
    pub worst_point: Option<C64>,
    pub failures: Vec<String>,
}

impl fmt::Display for ThreeExpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} on {} points", if self.passed { "PASS" } else { "FAIL" }, self.points)?;
        writeln!(f, "residual      {:.16e}", self.max_residual)?;
        writeln!(f, "discriminant  {:.16e}", self.discriminant_residual)?;
        writeln!(f, "trace         {:.16e}", self.trace_residual)?;
        write!(f, "det-exp       {:.16e}", self.det_exp_residual)?;
        for m in &self.failures {
            write!(f, "\n{m}")?;
        }
        Ok(())
    }
}

struct Sample {
    residual: f64,
    discriminant: f64,
    trace: f64,
    det_exp: f64,
}

fn sample(cert: &ThreeExpCertificate, x: &FuncMatrix, z: C64) -> crate::Result<Sample> {
    let xz = x.eval(z)?;
    let mut prod = CMatrix::identity(xz.dim());
    let mut tr_sum = C64::new(0.0, 0.0);
    for g in &cert.logs {
        let gz = g.eval(z)?;
        tr_sum += gz.trace();
        prod = &prod * &expm(&gz);
    }
    let residual = (&xz - &prod).frobenius() / xz.frobenius().max(1.0);
    let det_x = xz.det();
    let det_exp = (det_x - tr_sum.exp()).norm() / det_x.norm().max(1.0);

    let yz = cert.y.eval(z)?;
    let (tr, det) = (yz.trace(), yz.det());
    let (y11, y22) = (yz[(0, 0)], yz[(1, 1)]);
    let disc_scale = 1f64
        .max(tr.norm_sqr())
        .max((y11 * y22).norm())
        .max((yz[(0, 1)] * yz[(1, 0)]).norm());
    let discriminant = (tr * tr - det * 4.0).norm() / disc_scale;
    let two_alpha = cert.alpha_log.eval(z)?.exp() * 2.0;
    let trace_scale = 1f64.max(y11.norm()).max(y22.norm()).max(two_alpha.norm());
    let trace = (tr - two_alpha).norm() / trace_scale;
    Ok(Sample {
        residual,
        discriminant,
        trace,
        det_exp,
    })
}

/// Samples the certificate on the grid and compares every residual with its
/// tolerance. Evaluation failures are reported, not raised.
pub fn verify_exp_certificate(cert: &ThreeExpCertificate, grid: &GridSpec, tol: &ExpTolerances) -> ThreeExpReport {
    let roots: Vec<C64> = cert.roots.iter().map(|r| r.location).collect();
    let points = grid.points(&roots);
    let mut report = ThreeExpReport {
        passed: false,
        points: points.len(),
        max_residual: 0.0,
        discriminant_residual: 0.0,
        trace_residual: 0.0,
        det_exp_residual: 0.0,
        worst_point: None,
        failures: Vec::new(),
    };
    if points.is_empty() {
        report.failures.push("empty grid".into());
        return report;
    }
    let x = match FuncMatrix::from_ring_matrix(&cert.target) {
        Ok(x) => x,
        Err(e) => {
            report.failures.push(format!("target: {e}"));
            return report;
        }
    };
    if cert.y.dim() != 2 || cert.logs.iter().any(|g| g.dim() != x.dim()) {
        report.failures.push("dimension mismatch between target, Y and logs".into());
        return report;
    }
    for z in points {
        match sample(cert, &x, z) {
            Ok(s) => {
                if ![s.residual, s.discriminant, s.trace, s.det_exp].iter().all(|v| v.is_finite()) {
                    report.failures.push(format!("non-finite residual at {z}"));
                }
                if s.residual > report.max_residual || report.worst_point.is_none() {
                    report.max_residual = s.residual.max(report.max_residual);
                    report.worst_point = Some(z);
                }
                report.discriminant_residual = report.discriminant_residual.max(s.discriminant);
                report.trace_residual = report.trace_residual.max(s.trace);
                report.det_exp_residual = report.det_exp_residual.max(s.det_exp);
            }
            Err(e) => {
                report.failures.push(format!("evaluation at {z}: {e}"));
            }
        }
    }
    let checks = [
        ("residual", report.max_residual, tol.residual),
        ("discriminant", report.discriminant_residual, tol.discriminant),
        ("trace", report.trace_residual, tol.trace),
        ("det-exp", report.det_exp_residual, tol.det_exp),
    ];
    for (name, value, limit) in checks {
        if value > limit {
            report.failures.push(format!("{name} residual {value:.3e} exceeds {limit:.1e}"));
        }
    }
    report.passed = report.failures.is_empty();
    report
}

