//! Command-line front end: reads a matrix file, writes a certificate and a
//! verification summary.
//!
//! Exit status: 0 when verification passes, 1 when it fails, 2 on input,
//! ring or construction errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value as Json;

use elemfact::elementary::{factor_bsr1_sl2, factor_bsr1_sln, factor_euclidean, factor_field_gauss};
use elemfact::expfactor::{gl_to_exponentials, ExpCertificate};
use elemfact::matrix::{verify_factorization, FactorizationCertificate, RingMatrix};
use elemfact::riemann::{
    three_exp_sl2, verify_exp_certificate, ExpTolerances, FuncMatrix, GridSpec, HomotopyPath, ThreeExpCertificate,
};
use elemfact::ring::RingDescriptor;
use elemfact::{Error, C64};

#[derive(Parser, Debug)]
#[command(name = "elemfact", version, about = "Elementary and exponential factorizations of SL_n / GL_n matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor an SL_n matrix into unipotent triangular factors.
    Factor(JobArgs),
    /// Write a GL_n matrix as a product of exponentials of nilpotent-plus-scalar matrices.
    ExpFactor(JobArgs),
    /// Three-exponential factorization of a 2x2 polynomial SL_2 matrix, checked on a sample grid.
    ThreeExp(JobArgs),
    /// Sample the null-homotopy of an SL_n matrix of polynomials and export CSV.
    Homotopy(JobArgs),
    /// Re-check a certificate written by one of the other commands.
    Verify(JobArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Bsr1,
    Gauss,
    Euclid,
}

#[derive(Args, Debug, Clone)]
struct JobArgs {
    /// Matrix file {"ring", "n", "entries"}, or a certificate for `verify`.
    input: PathBuf,
    /// Write the certificate (CSV for `homotopy`) here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Ring descriptor replacing the one in the input, e.g. `rational`, `poly(rational)`, `jet(rational,3)`.
    #[arg(long)]
    ring: Option<String>,
    /// Factorization algorithm [default: bsr1 when the ring has a stable-rank-1 oracle, otherwise euclid].
    #[arg(long, value_enum)]
    algorithm: Option<Algorithm>,
    /// Residual tolerance [default: 1e-8 for three-exp, 1e-12 for homotopy].
    #[arg(long)]
    tol: Option<f64>,
    /// Uniform sample points in the disk (three-exp), or t and z samples per axis (homotopy).
    #[arg(long, default_value_t = 200)]
    grid_n: usize,
    /// Radius of the sample disk [default: 2 for three-exp, 1 for homotopy].
    #[arg(long)]
    radius: Option<f64>,
    /// Seed of the sample grid.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum JobKind {
    Factor,
    ExpFactor,
    ThreeExp,
    Homotopy,
    Verify,
}

/// One validated invocation.
#[derive(Debug, Clone)]
struct JobSpec {
    kind: JobKind,
    args: JobArgs,
}

impl JobSpec {
    fn new(command: Command) -> Result<Self, Error> {
        let (kind, args) = match command {
            Command::Factor(a) => (JobKind::Factor, a),
            Command::ExpFactor(a) => (JobKind::ExpFactor, a),
            Command::ThreeExp(a) => (JobKind::ThreeExp, a),
            Command::Homotopy(a) => (JobKind::Homotopy, a),
            Command::Verify(a) => (JobKind::Verify, a),
        };
        if let Some(t) = args.tol {
            if t.is_nan() || t <= 0.0 {
                return Err(parse_error("--tol", format!("must be positive, got {t}")));
            }
        }
        if args.grid_n == 0 {
            return Err(parse_error("--grid-n", "must be at least 1"));
        }
        if let Some(r) = args.radius {
            if r.is_nan() || r <= 0.0 {
                return Err(parse_error("--radius", format!("must be positive, got {r}")));
            }
        }
        Ok(JobSpec { kind, args })
    }
}

fn parse_error(field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        message: message.into(),
    }
}

/// What a job produced: the artifact, a summary and the verdict.
struct Outcome {
    artifact: String,
    summary: String,
    passed: bool,
}

fn read_json(path: &Path) -> Result<Json, Error> {
    let text = fs::read_to_string(path).map_err(|e| parse_error("input", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| parse_error("input", format!("{}: {e}", path.display())))
}

fn read_matrix(args: &JobArgs) -> Result<RingMatrix, Error> {
    let mut v = read_json(&args.input)?;
    if let Some(ring) = &args.ring {
        let desc: RingDescriptor = ring.parse().map_err(|e: Error| match e {
            Error::Parse { message, .. } => parse_error("--ring", message),
            other => other,
        })?;
        match v.as_object_mut() {
            Some(o) => {
                o.insert("ring".into(), desc.to_json());
            }
            None => return Err(parse_error("input", "expected a JSON object")),
        }
    }
    RingMatrix::from_json(&v)
}

fn pretty(v: &Json) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn factor(args: &JobArgs) -> Result<Outcome, Error> {
    let x = read_matrix(args)?;
    let desc = x.descriptor();
    let algorithm = args.algorithm.unwrap_or(if desc.has_reduction_oracle() {
        Algorithm::Bsr1
    } else {
        Algorithm::Euclid
    });
    let cert = match algorithm {
        Algorithm::Bsr1 if x.dim() == 2 => factor_bsr1_sl2(&x)?,
        Algorithm::Bsr1 => factor_bsr1_sln(&x)?,
        Algorithm::Gauss => factor_field_gauss(&x)?,
        Algorithm::Euclid => factor_euclidean(&x)?,
    };
    let report = verify_factorization(&cert);
    Ok(Outcome {
        artifact: pretty(&cert.to_json()),
        summary: report.to_string(),
        passed: report.passed,
    })
}

fn exp_factor(args: &JobArgs) -> Result<Outcome, Error> {
    let x = read_matrix(args)?;
    let cert = gl_to_exponentials(&x)?;
    let report = cert.verify();
    Ok(Outcome {
        artifact: pretty(&cert.to_json()),
        summary: format!("{}: {} exponentials; {}", verdict(report.passed), cert.count(), report.message),
        passed: report.passed,
    })
}

fn grid(args: &JobArgs) -> GridSpec {
    GridSpec {
        disk_points: args.grid_n,
        radius: args.radius.unwrap_or(2.0),
        seed: args.seed,
        ..GridSpec::default()
    }
}

fn tolerances(args: &JobArgs) -> ExpTolerances {
    let mut tol = ExpTolerances::default();
    if let Some(t) = args.tol {
        tol.residual = t;
        tol.det_exp = t;
    }
    tol
}

fn check_three_exp(cert: &ThreeExpCertificate, args: &JobArgs) -> (String, bool) {
    let report = verify_exp_certificate(cert, &grid(args), &tolerances(args));
    (report.to_string(), report.passed)
}

fn three_exp(args: &JobArgs) -> Result<Outcome, Error> {
    let x = read_matrix(args)?;
    let cert = three_exp_sl2(&x)?;
    let (summary, passed) = check_three_exp(&cert, args);
    Ok(Outcome {
        artifact: pretty(&cert.to_json()),
        summary,
        passed,
    })
}

fn homotopy(args: &JobArgs) -> Result<Outcome, Error> {
    let x = read_matrix(args)?;
    let f = FuncMatrix::from_ring_matrix(&x)?;
    let path = HomotopyPath::new(f)?;
    let n = args.grid_n;
    let radius = args.radius.unwrap_or(1.0);
    let ts: Vec<f64> = (0..n).map(|k| if n == 1 { 1.0 } else { k as f64 / (n - 1) as f64 }).collect();
    let zs: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius * ((k as f64 + 0.5) / n as f64).sqrt(), 2.399963229728653 * k as f64))
        .collect();
    let csv = path.to_csv(&ts, &zs)?;
    let tol = args.tol.unwrap_or(1e-12);
    let worst = csv
        .lines()
        .skip(1)
        .filter_map(|l| l.rsplit(',').next()?.parse::<f64>().ok())
        .fold(0.0, f64::max);
    let passed = worst <= tol;
    Ok(Outcome {
        artifact: csv,
        summary: format!(
            "{}: {} shears for F(0); max |det - 1| {worst:.16e} over {} samples (tolerance {tol:.16e})",
            verdict(passed),
            path.shears.len(),
            ts.len() * zs.len()
        ),
        passed,
    })
}

fn verify(args: &JobArgs) -> Result<Outcome, Error> {
    let v = read_json(&args.input)?;
    let (summary, passed) = if v.get("factors").is_some() {
        let report = verify_factorization(&FactorizationCertificate::from_json(&v)?);
        let mut s = report.to_string();
        if let Some((i, j)) = report.first_mismatch {
            s.push_str(&format!("\nfirst mismatch at entry ({i}, {j})"));
        }
        (s, report.passed)
    } else if v.get("case").is_some() {
        check_three_exp(&ThreeExpCertificate::from_json(&v)?, args)
    } else if v.get("logs").is_some() {
        let cert = ExpCertificate::from_json(&v)?;
        let report = cert.verify();
        let mut s = format!("{}: {} exponentials; {}", verdict(report.passed), cert.count(), report.message);
        if let Some((i, j)) = report.first_mismatch {
            s.push_str(&format!("\nfirst mismatch at entry ({i}, {j})"));
        }
        (s, report.passed)
    } else {
        return Err(parse_error("input", "not a certificate: expected `factors` or `logs`"));
    };
    Ok(Outcome {
        artifact: String::new(),
        summary,
        passed,
    })
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run(spec: &JobSpec) -> Result<Outcome, Error> {
    match spec.kind {
        JobKind::Factor => factor(&spec.args),
        JobKind::ExpFactor => exp_factor(&spec.args),
        JobKind::ThreeExp => three_exp(&spec.args),
        JobKind::Homotopy => homotopy(&spec.args),
        JobKind::Verify => verify(&spec.args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = JobSpec::new(cli.command).and_then(|spec| {
        let out = run(&spec)?;
        Ok((spec, out))
    });
    let (spec, out) = match outcome {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if !out.artifact.is_empty() {
        match &spec.args.output {
            Some(path) => {
                if let Err(e) = fs::write(path, &out.artifact) {
                    eprintln!("error: field `--output`: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            None => println!("{}", out.artifact),
        }
    }
    // keep standard output clean for the artifact unless it went to a file
    if spec.args.output.is_some() || out.artifact.is_empty() {
        println!("{}", out.summary);
    } else {
        eprintln!("{}", out.summary);
    }
    if out.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
