use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::expr::gaussian_to_c64;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::ring::Gaussian;
use crate::C64;

/// Iteration cap for the simultaneous root iteration.
pub const MAX_ITERATIONS: usize = 500;
/// Roots closer than this times the root scale merge into one location.
pub const CLUSTER_RADIUS: f64 = 1e-7;
/// Wider radius inside which nearby roots merge when the centroid passes a
/// derivative test for the combined multiplicity.
const DERIVATIVE_MERGE_RADIUS: f64 = 1e-3;
const DERIVATIVE_MERGE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub location: C64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Root>,
    /// Largest `|p(root)|` over the reported roots.
    pub residual_bound: f64,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

fn root_scale(p: &Polynomial<C64>) -> f64 {
    // Fujiwara-style bound on root moduli
    let c = p.coeffs();
    let n = c.len() - 1;
    let lead = c[n].norm();
    (0..n)
        .map(|k| (c[k].norm() / lead).powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        * 2.0
}

fn eval_with_derivative(p: &Polynomial<C64>, z: C64) -> (C64, C64) {
    let mut v = C64::zero();
    let mut d = C64::zero();
    for c in p.coeffs().iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// Aberth-Ehrlich iteration; returns `degree` approximate roots.
fn aberth(p: &Polynomial<C64>) -> Result<Vec<C64>> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    let radius = root_scale(p).max(1e-3);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (v, d) = eval_with_derivative(p, z[i]);
            if v.norm() <= 4.0 * f64::EPSILON * p.abs_eval(z[i]) {
                done[i] = true;
                continue;
            }
            let ratio = v / d;
            let repulsion: C64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (C64::one() - ratio * repulsion);
            if !step.is_finite() {
                let bump = C64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                z[i] += bump;
                continue;
            }
            z[i] -= step;
            if step.norm() <= f64::EPSILON * (1.0 + z[i].norm()) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence(MAX_ITERATIONS))
}

fn derivative_of_order(p: &Polynomial<C64>, k: usize) -> Polynomial<C64> {
    (0..k).fold(p.clone(), |q, _| q.derivative())
}

/// Newton on `p^(m-1)`, which has a simple root at an `m`-fold root of `p`.
fn polish(p: &Polynomial<C64>, z: C64, m: usize) -> C64 {
    let q = derivative_of_order(p, m - 1);
    let mut best = z;
    let mut best_val = q.eval(&z).norm();
    let mut cur = z;
    for _ in 0..8 {
        let (v, d) = eval_with_derivative(&q, cur);
        if d.norm() == 0.0 {
            break;
        }
        cur -= v / d;
        let val = q.eval(&cur).norm();
        if val < best_val {
            best = cur;
            best_val = val;
        } else {
            break;
        }
    }
    best
}

fn centroid_passes(p: &Polynomial<C64>, c: C64, m: usize) -> bool {
    let mut q = p.clone();
    for _ in 0..m {
        if q.eval(&c).norm() > DERIVATIVE_MERGE_TOL * q.abs_eval(c).max(f64::MIN_POSITIVE) {
            return false;
        }
        q = q.derivative();
    }
    true
}

fn cluster(p: &Polynomial<C64>, approx: &[C64], radius: f64) -> Vec<Root> {
    let mut groups: Vec<(C64, usize)> = Vec::new();
    for &z in approx {
        match groups
            .iter_mut()
            .find(|(c, m)| (*c / *m as f64 - z).norm() <= radius)
        {
            Some(g) => {
                g.0 += z;
                g.1 += 1;
            }
            None => groups.push((z, 1)),
        }
    }
    let mut roots: Vec<Root> = groups
        .into_iter()
        .map(|(s, m)| Root {
            location: s / m as f64,
            multiplicity: m,
        })
        .collect();
    let wide = DERIVATIVE_MERGE_RADIUS * radius / CLUSTER_RADIUS;
    loop {
        let mut merged = false;
        'outer: for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let (a, b) = (roots[i], roots[j]);
                if (a.location - b.location).norm() > wide {
                    continue;
                }
                let m = a.multiplicity + b.multiplicity;
                let c = (a.location * a.multiplicity as f64 + b.location * b.multiplicity as f64)
                    / m as f64;
                if centroid_passes(p, c, m) {
                    roots[i] = Root {
                        location: c,
                        multiplicity: m,
                    };
                    roots.remove(j);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            break;
        }
    }
    roots
}

fn finish(p: &Polynomial<C64>, roots: Vec<Root>, tol: f64) -> Result<RootSet> {
    let scale = p.coefficient_scale();
    let mut residual_bound: f64 = 0.0;
    for r in &roots {
        let res = p.eval(&r.location).norm();
        if res > tol * (1.0 + scale) {
            return Err(Error::RootFindingFailed(format!(
                "residual {res:e} at {} exceeds tolerance",
                r.location
            )));
        }
        residual_bound = residual_bound.max(res);
    }
    Ok(RootSet {
        roots,
        residual_bound,
    })
}

/// Roots of a floating-point polynomial, clustered with the default radius.
pub fn poly_roots(p: &Polynomial<C64>, tol: f64) -> Result<RootSet> {
    poly_roots_with_radius(p, tol, CLUSTER_RADIUS)
}

/// Like [`poly_roots`] with a relative cluster radius `radius`.
pub fn poly_roots_with_radius(p: &Polynomial<C64>, tol: f64, radius: f64) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::RootFindingFailed("zero polynomial".into()));
    }
    let approx = aberth(p)?;
    let scale = approx.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let roots = cluster(p, &approx, radius * scale)
        .into_iter()
        .map(|r| Root {
            location: polish(p, r.location, r.multiplicity),
            ..r
        })
        .collect();
    finish(p, roots, tol)
}

/// Roots of an exact polynomial: square-free decomposition first, so
/// multiplicities are exact and each factor has simple roots.
pub fn poly_roots_exact(p: &Polynomial<Gaussian>, tol: f64) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::RootFindingFailed("zero polynomial".into()));
    }
    let float = |q: &Polynomial<Gaussian>| Polynomial::new(q.coeffs().iter().map(gaussian_to_c64).collect());
    let pf = float(p);
    let mut roots = Vec::new();
    for (factor, m) in p.squarefree_decomposition() {
        let ff = float(&factor);
        for z in aberth(&ff)? {
            let z = polish(&ff, z, 1);
            roots.push(Root {
                location: z,
                multiplicity: m,
            });
        }
    }
    finish(&pf, roots, tol)
}
