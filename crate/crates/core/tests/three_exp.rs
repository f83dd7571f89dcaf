use elemfact::analytic::{expm, CMatrix, FuncExpr};
use elemfact::fixtures::{cohn_matrix, three_exp_suite};
use elemfact::matrix::RingMatrix;
use elemfact::riemann::{
    double_ev_log, null_homotopy, three_exp_sl2, verify_exp_certificate, ExpCase, ExpTolerances, FuncMatrix,
    GridSpec, HomotopyPath, ThreeExpCertificate,
};
use elemfact::ring::{RingDescriptor, RingElement};
use elemfact::{Error, C64};

fn qpoly(cs: &[(i64, i64)]) -> RingElement {
    let d = RingDescriptor::poly(RingDescriptor::Rational).unwrap();
    RingElement::polynomial(&d, cs.iter().map(|&(p, q)| RingElement::rational(p, q)).collect()).unwrap()
}

fn pm(rows: [[&[(i64, i64)]; 2]; 2]) -> RingMatrix {
    RingMatrix::from_rows(rows.iter().map(|r| r.iter().map(|c| qpoly(c)).collect()).collect()).unwrap()
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn fm(rows: [[C64; 2]; 2]) -> FuncMatrix {
    FuncMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| FuncExpr::constant(v)).collect())
            .collect(),
    )
    .unwrap()
}

fn default_check(cert: &ThreeExpCertificate) {
    let report = verify_exp_certificate(cert, &GridSpec::default(), &ExpTolerances::default());
    assert!(report.passed, "{report}");
}

#[test]
fn identity_has_zero_logs() {
    let x = pm([[&[(1, 1)], &[]], [&[], &[(1, 1)]]]);
    let cert = three_exp_sl2(&x).unwrap();
    assert_eq!(cert.case, ExpCase::CZero);
    for g in &cert.logs {
        for z in [c(0.0), C64::new(1.2, -0.7)] {
            assert!(g.eval(z).unwrap().frobenius() == 0.0);
        }
    }
    let report = verify_exp_certificate(&cert, &GridSpec::default(), &ExpTolerances::default());
    assert!(report.passed);
    assert_eq!(report.max_residual, 0.0);
}

#[test]
fn constant_upper_triangular_case() {
    let x = pm([[&[(2, 1)], &[(3, 1)]], [&[], &[(1, 2)]]]);
    let cert = three_exp_sl2(&x).unwrap();
    assert_eq!(cert.case, ExpCase::CZero);
    let y = cert.y.eval(c(0.3)).unwrap();
    let want = CMatrix::from_rows(&[vec![c(0.5), c(3.0)], vec![c(0.0), c(0.5)]]);
    assert!((&y - &want).frobenius() < 1e-15);
    default_check(&cert);
}

#[test]
fn lower_shear_keeps_y() {
    let x = pm([[&[(1, 1)], &[]], [&[(0, 1), (1, 1)], &[(1, 1)]]]);
    let cert = three_exp_sl2(&x).unwrap();
    assert_eq!(cert.case, ExpCase::CNonzero);
    assert_eq!(cert.roots.len(), 1);
    assert_eq!(cert.roots[0].multiplicity, 1);
    let grid = GridSpec::default();
    let target = FuncMatrix::from_ring_matrix(&x).unwrap();
    for z in grid.points(&[c(0.0)]) {
        assert!(cert.alpha_log.eval(z).unwrap().norm() < 1e-14);
        assert!(cert.beta.eval(z).unwrap().norm() < 1e-12);
        assert!((&cert.y.eval(z).unwrap() - &target.eval(z).unwrap()).frobenius() < 1e-12);
    }
    let report = verify_exp_certificate(&cert, &grid, &ExpTolerances::uniform(1e-10));
    assert!(report.passed, "{report}");
}

#[test]
fn suite_passes_default_grid() {
    for (name, x) in three_exp_suite() {
        let cert = three_exp_sl2(&x).unwrap_or_else(|e| panic!("{name}: {e}"));
        let report = verify_exp_certificate(&cert, &GridSpec::default(), &ExpTolerances::default());
        println!(
            "{name}: residual {:.2e} disc {:.2e} trace {:.2e} det {:.2e}",
            report.max_residual, report.discriminant_residual, report.trace_residual, report.det_exp_residual
        );
        assert!(report.passed, "{name}: {report}");
    }
}

#[test]
fn certificate_json_roundtrip() {
    let x = pm([[&[(1, 1), (1, 1)], &[(0, 1), (1, 1)]], [&[(0, 1), (0, 1), (1, 1)], &[(1, 1), (-1, 1), (1, 1)]]]);
    let cert = three_exp_sl2(&x).unwrap();
    let back = ThreeExpCertificate::from_json(&cert.to_json()).unwrap();
    assert_eq!(back.target, cert.target);
    default_check(&back);
}

#[test]
fn zeroed_middle_log_is_reported() {
    let x = pm([[&[(1, 1), (1, 1)], &[(1, 1)]], [&[(0, 1), (2, 1), (1, 1)], &[(1, 1), (1, 1)]]]);
    let mut cert = three_exp_sl2(&x).unwrap();
    cert.logs[1] = FuncMatrix::zero(2);
    let report = verify_exp_certificate(&cert, &GridSpec::default(), &ExpTolerances::default());
    assert!(!report.passed);
    assert!(report.max_residual > 1e-8);
}

#[test]
fn not_sl_is_rejected() {
    let x = pm([[&[(2, 1)], &[]], [&[], &[(1, 1)]]]);
    assert_eq!(three_exp_sl2(&x).unwrap_err(), Error::NotSL);
}

#[test]
fn scalar_double_eigenvalue() {
    let e = std::f64::consts::E;
    let y = fm([[c(e), c(0.0)], [c(0.0), c(e)]]);
    let g = double_ev_log(&y, &FuncExpr::constant(c(e)), &FuncExpr::constant(c(2.0))).unwrap();
    let gz = g.eval(c(0.4)).unwrap();
    assert!((&gz - &CMatrix::identity(2)).frobenius() < 1e-15);
}

#[test]
fn jordan_block_logs() {
    let y = fm([[c(0.5), c(3.0)], [c(0.0), c(0.5)]]);
    let lam = FuncExpr::constant(c(0.5));
    let gamma = FuncExpr::constant(c(0.25f64.ln()));
    let g = double_ev_log(&y, &lam, &gamma).unwrap().eval(c(0.0)).unwrap();
    assert!((&expm(&g) - &y.eval(c(0.0)).unwrap()).frobenius() < 1e-12);
    // closed form gamma/2 I + (Y - lambda I)/lambda
    let closed = CMatrix::from_rows(&[vec![c(0.5f64.ln()), c(6.0)], vec![c(0.0), c(0.5f64.ln())]]);
    assert!((&g - &closed).frobenius() < 1e-12);

    let y = fm([[c(1.0), c(1.0)], [c(0.0), c(1.0)]]);
    let g = double_ev_log(&y, &FuncExpr::one(), &FuncExpr::zero()).unwrap().eval(c(0.7)).unwrap();
    let want = CMatrix::from_rows(&[vec![c(0.0), c(1.0)], vec![c(0.0), c(0.0)]]);
    assert!((&g - &want).frobenius() < 1e-15);
}

#[test]
fn distinct_eigenvalues_rejected() {
    let y = fm([[c(2.0), c(0.0)], [c(0.0), c(0.5)]]);
    let r = double_ev_log(&y, &FuncExpr::one(), &FuncExpr::zero());
    assert!(matches!(r, Err(Error::NotDoubleEigenvalue(_))));
}

#[test]
fn homotopy_examples() {
    let id = FuncMatrix::identity(2);
    for t in [0.0, 0.3, 0.5, 1.0] {
        let m = null_homotopy(&id, t, C64::new(0.2, 0.1)).unwrap();
        assert!((&m - &CMatrix::identity(2)).frobenius() == 0.0);
    }
    let shear = FuncMatrix::from_rows(vec![
        vec![FuncExpr::one(), FuncExpr::var()],
        vec![FuncExpr::zero(), FuncExpr::one()],
    ])
    .unwrap();
    let z = C64::new(0.6, -0.2);
    let m = null_homotopy(&shear, 0.75, z).unwrap();
    assert!((m[(0, 1)] - z / 2.0).norm() < 1e-16);

    let rot = FuncMatrix::from_rows(vec![
        vec![FuncExpr::var(), FuncExpr::rational(-1, 1)],
        vec![FuncExpr::one(), FuncExpr::zero()],
    ])
    .unwrap();
    let path = HomotopyPath::new(rot).unwrap();
    assert_eq!(path.shears.len(), 3);
    for k in 0..=20 {
        let t = k as f64 / 20.0;
        let m = path.at(t, C64::new(0.5, 0.5)).unwrap();
        assert!((m.det() - C64::new(1.0, 0.0)).norm() < 1e-12);
    }
    assert!((&path.at(0.0, z).unwrap() - &CMatrix::identity(2)).frobenius() == 0.0);
    let csv = path.to_csv(&[0.0, 1.0], &[z]).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.starts_with("t,z_re,z_im,m11_re"));
}

#[test]
fn homotopy_rejects_non_sl() {
    let f = fm([[c(2.0), c(0.0)], [c(0.0), c(1.0)]]);
    assert_eq!(HomotopyPath::new(f).unwrap_err(), Error::NotSL);
}

#[test]
fn cohn_fixture_unsupported() {
    assert!(matches!(cohn_matrix(), Err(Error::UnsupportedRing(_))));
}
