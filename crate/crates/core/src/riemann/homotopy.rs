use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::fmatrix::FuncMatrix;
use super::threeexp::probe_points;
use crate::analytic::CMatrix;
use crate::error::{Error, Result};
use crate::C64;

const DET_TOL: f64 = 1e-9;

/// `E_ij(a)`: identity plus `a` at `(i, j)`, 0-based.
pub type Shear = (usize, usize, C64);

fn apply_row_op(m: &mut CMatrix, (i, j, a): Shear) {
    for col in 0..m.dim() {
        let v = m[(j, col)];
        m[(i, col)] += a * v;
    }
}

/// Shears whose left-to-right product is `m`, by elimination with pivots
/// forced to 1. Requires `det m = 1`.
pub fn complex_shear_factorization(m: &CMatrix) -> Vec<Shear> {
    let n = m.dim();
    let mut x = m.clone();
    let mut ops: Vec<Shear> = Vec::new();
    let mut push = |x: &mut CMatrix, op: Shear| {
        if op.2 != C64::zero() {
            apply_row_op(x, op);
            ops.push(op);
        }
    };
    for k in 0..n.saturating_sub(1) {
        let (r, big) = (k + 1..n)
            .map(|r| (r, x[(r, k)].norm()))
            .fold((k, 0.0), |acc, c| if c.1 > acc.1 { c } else { acc });
        if x[(k, k)].norm() < big {
            let ratio = x[(k, k)] / x[(r, k)];
            let c = if ratio == C64::zero() { C64::one() } else { ratio / ratio.norm() };
            push(&mut x, (k, r, c));
        }
        let u = x[(k, k)];
        for i in k + 1..n {
            let a = -x[(i, k)] / u;
            push(&mut x, (i, k, a));
        }
        if u != C64::one() {
            push(&mut x, (k + 1, k, u.inv()));
            push(&mut x, (k, k + 1, C64::one() - u));
            let a = -x[(k + 1, k)];
            push(&mut x, (k + 1, k, a));
        }
    }
    for k in (1..n).rev() {
        for i in 0..k {
            let a = -x[(i, k)];
            push(&mut x, (i, k, a));
        }
    }
    ops.into_iter().map(|(i, j, a)| (i, j, -a)).collect()
}

/// Path in `SL_n` from the identity (`t = 0`) to `F` (`t = 1`): for
/// `t >= 1/2` the radial contraction `F((2t - 1) z)`, below that the
/// factorization of `F(0)` with parameters scaled by `2t`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomotopyPath {
    pub f: FuncMatrix,
    pub shears: Vec<Shear>,
}

impl HomotopyPath {
    pub fn new(f: FuncMatrix) -> Result<Self> {
        let mut worst: f64 = 0.0;
        for z in probe_points().into_iter().map(|z| z / 2.0).chain([C64::zero()]) {
            worst = worst.max((f.eval(z)?.det() - C64::one()).norm());
        }
        if worst > DET_TOL {
            return Err(Error::NotSL);
        }
        let shears = complex_shear_factorization(&f.eval(C64::zero())?);
        Ok(HomotopyPath { f, shears })
    }

    pub fn at(&self, t: f64, z: C64) -> Result<CMatrix> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::parse("t", format!("{t} is outside [0, 1]")));
        }
        if t >= 0.5 {
            return self.f.eval(z * (2.0 * t - 1.0));
        }
        let s = 2.0 * t;
        let n = self.f.dim();
        let mut m = CMatrix::identity(n);
        // right-multiplying by E_ij(a) adds a times column i to column j
        for &(i, j, a) in &self.shears {
            for row in 0..n {
                let v = m[(row, i)];
                m[(row, j)] += a * s * v;
            }
        }
        Ok(m)
    }

    /// CSV rows `t, z_re, z_im`, real and imaginary parts of each entry in
    /// row-major order, then `|det - 1|`.
    pub fn to_csv(&self, ts: &[f64], zs: &[C64]) -> Result<String> {
        let n = self.f.dim();
        let mut out = String::from("t,z_re,z_im");
        for i in 1..=n {
            for j in 1..=n {
                write!(out, ",m{i}{j}_re,m{i}{j}_im").unwrap();
            }
        }
        out.push_str(",det_residual\n");
        for &t in ts {
            for &z in zs {
                let m = self.at(t, z)?;
                write!(out, "{t:.16e},{:.16e},{:.16e}", z.re, z.im).unwrap();
                for v in m.entries() {
                    write!(out, ",{:.16e},{:.16e}", v.re, v.im).unwrap();
                }
                writeln!(out, ",{:.16e}", (m.det() - C64::one()).norm()).unwrap();
            }
        }
        Ok(out)
    }
}

/// Value at `(t, z)` of the null-homotopy of `f`.
pub fn null_homotopy(f: &FuncMatrix, t: f64, z: C64) -> Result<CMatrix> {
    HomotopyPath::new(f.clone())?.at(t, z)
}
