//! The `fraclap` command line: `transform`, `eval`, `verify`, `solve`,
//! `table`.
//!
//! Exit codes: 0 success, 2 condition violation or bad input, 3 numerical
//! failure (including a failed `verify`).

use std::f64::consts::PI;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::ballsolve::{self, indices, EigenIndex};
use crate::error::{Error, Result};
use crate::gfun::{GSpec, HypSpec, Region};
use crate::oracle::{compare_values, nested_riesz, Decay, OracleOp, PointwiseFn, QuadratureConfig, Report};
use crate::param::Param;
use crate::specfun::meijer_g;
use crate::transform::{
    ball_2f1_transform, ball_harmonic_profile, cosine_spec, hyp_transform, jacobi_eigenvalue_exact, power_ball,
    power_fullspace, riesz_transform, transform, HypTransform, RadialHarmonicFn, TransformResult,
};

#[derive(Parser, Debug)]
#[command(name = "fraclap", version, about = "Exact fractional Laplacians and Riesz potentials of Meijer-G radial functions")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Transform a function and print the resulting parameter record.
    Transform(FnArgs),
    /// Evaluate a G-function (no --alpha) or a transform at points.
    Eval(FnArgs),
    /// Compare a built-in identity against the quadrature oracle.
    Verify(VerifyArgs),
    /// Solve (-Delta)^{alpha/2}(w u) = g in the unit ball.
    Solve(SolveArgs),
    /// Tabulate eigenvalues.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kernel {
    Full,
    Ball,
    Complement,
    Hyp,
    #[value(name = "2f1")]
    TwoF1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Case {
    Getoor,
    Cosine,
    Cauchy,
    GreenHarmonic,
    Eigen,
    Semigroup,
}

#[derive(clap::Args, Debug)]
struct FnArgs {
    #[arg(long, default_value_t = 1)]
    d: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Order; negative values give the Riesz potential of order |alpha|.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, value_enum)]
    kernel: Option<Kernel>,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    rho: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    sigma: String,
    /// GSpec JSON (HypSpec JSON with --kernel hyp).
    #[arg(long)]
    g: Option<String>,
    /// Comma-separated radii, or points with colon-separated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    case: Case,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    /// Highest Jacobi degree for the eigen case.
    #[arg(long, default_value_t = 3)]
    nmax: usize,
    /// Pass threshold (relative; absolute for the harmonic case).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(clap::Args, Debug)]
struct SolveArgs {
    #[arg(long, default_value_t = 1)]
    d: u32,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Right-hand side: a constant, or a GSpec JSON profile g(x) = G(|x|^2).
    #[arg(long, default_value = "1")]
    g: String,
    #[arg(long, default_value_t = 2)]
    lmax: u32,
    #[arg(long, default_value_t = 16)]
    nmax: usize,
    /// Also evaluate the weighted solution w u at these points.
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(clap::Args, Debug)]
struct TableArgs {
    /// Eigenvalues of the weighted Jacobi basis.
    #[arg(long)]
    eigen: bool,
    #[arg(long, default_value_t = 1)]
    d: u32,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value_t = 0)]
    lmax: u32,
    #[arg(long, default_value_t = 4)]
    nmax: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Transform(a) => cmd_transform(&a),
        Command::Eval(a) => cmd_eval(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Solve(a) => cmd_solve(&a),
        Command::Table(a) => cmd_table(&a),
    };
    match result {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            if ok {
                0
            } else {
                let _ = writeln!(err, "verification failed");
                3
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// 2 for violated conditions and malformed input, 3 for numerical failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ConditionViolation(_)
        | Error::InvalidSpec(_)
        | Error::Invalid(_)
        | Error::UnsupportedDimension(_)
        | Error::UnboundSymbol(_)
        | Error::WrongRegion
        | Error::NonPositiveIntegerUpper(_)
        | Error::IntegerBDifference(..)
        | Error::Degenerate(_)
        | Error::NotInteger(..)
        | Error::BlockPattern(_) => 2,
        _ => 3,
    }
}

type Output = Result<(String, bool)>;

fn param(s: &str) -> Result<Param> {
    Param::parse(s)
}

fn points(s: &Option<String>, d: u32, default: &str) -> Result<Vec<Vec<f64>>> {
    let s = s.as_deref().unwrap_or(default);
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let coords = t
                .split(':')
                .map(|c| c.trim().parse::<f64>().map_err(|_| Error::Invalid(format!("bad point '{t}'"))))
                .collect::<Result<Vec<f64>>>()?;
            if coords.len() == 1 {
                let mut p = vec![0.0; d as usize];
                p[0] = coords[0];
                Ok(p)
            } else if coords.len() == d as usize {
                Ok(coords)
            } else {
                Err(Error::Invalid(format!("point '{t}' has {} coordinates, expected {d}", coords.len())))
            }
        })
        .collect()
}

fn fmt_point(p: &[f64]) -> String {
    p.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(" ")
}

fn norm(p: &[f64]) -> f64 {
    p.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}

enum Built {
    G(TransformResult),
    Hyp(HypTransform),
}

fn build(a: &FnArgs) -> Result<Built> {
    let alpha = param(a.alpha.as_deref().ok_or_else(|| Error::Invalid("--alpha is required".into()))?)?;
    let (rho, sigma) = (param(&a.rho)?, param(&a.sigma)?);
    Ok(match a.kernel {
        Some(Kernel::Full) => Built::G(power_fullspace(rho, sigma, a.d, a.l, alpha)?),
        Some(Kernel::Ball) => Built::G(power_ball(rho, sigma, a.d, a.l, alpha, Region::Ball)?),
        Some(Kernel::Complement) => Built::G(power_ball(rho, sigma, a.d, a.l, alpha, Region::Complement)?),
        Some(Kernel::TwoF1) => Built::G(ball_2f1_transform(rho, sigma, a.d, a.l, alpha)?),
        Some(Kernel::Hyp) => {
            let h = match &a.g {
                Some(s) => HypSpec::parse_json(s)?,
                None => cosine_spec(),
            };
            Built::Hyp(hyp_transform(&h, a.d, a.l, alpha)?)
        }
        None => {
            let g = GSpec::parse_json(a.g.as_deref().ok_or_else(|| Error::Invalid("need --kernel or --g".into()))?)?;
            Built::G(transform(&RadialHarmonicFn::with_degree(a.d, a.l, g)?, alpha)?)
        }
    })
}

fn hyp_json(h: &HypTransform) -> Value {
    json!({
        "operator": "hypergeometric",
        "alpha": h.alpha.to_string(),
        "d": h.d,
        "l": h.l,
        "input": h.input.to_json(),
        "output": h.output.to_json(),
    })
}

fn cmd_transform(a: &FnArgs) -> Output {
    let text = match (build(a)?, a.format) {
        (Built::G(t), Format::Text) => format!(
            "operator: {}\nalpha: {}\ninput: {}\noutput: {}\nvalidity: {}\n",
            t.operator, t.alpha, t.input.profile, t.output.profile, t.validity
        ),
        (Built::Hyp(h), Format::Text) => format!("input: {}\noutput: {}\n", h.input, h.output),
        (Built::G(t), _) => json_text(&t.to_json()),
        (Built::Hyp(h), _) => json_text(&hyp_json(&h)),
    };
    Ok((text, true))
}

fn cmd_eval(a: &FnArgs) -> Output {
    let pts = points(&a.points, a.d, "0.5")?;
    let mut rows: Vec<(Vec<f64>, f64, f64, bool)> = Vec::new();
    if a.alpha.is_none() {
        // the G-function itself, at r = |x|^2 ... or at the given radii
        let g = GSpec::parse_json(a.g.as_deref().ok_or_else(|| Error::Invalid("need --g or --alpha".into()))?)?;
        for p in &pts {
            let v = meijer_g(&g, p[0])?;
            rows.push((p.clone(), v.re(), v.est_abs_error, true));
        }
    } else {
        match build(a)? {
            Built::G(t) => {
                for p in &pts {
                    let v = t.evaluate(p)?;
                    rows.push((p.clone(), v.value.re(), v.value.est_abs_error, v.inside));
                }
            }
            Built::Hyp(h) => {
                for p in &pts {
                    let r = norm(p);
                    let v = h.eval_radial(r)?;
                    rows.push((p.clone(), v.re(), v.est_abs_error, true));
                }
            }
        }
    }
    let text = match a.format {
        Format::Json => json_text(&json!(rows
            .iter()
            .map(|(p, v, e, i)| json!({"point": p, "value": v, "err": e, "inside": i}))
            .collect::<Vec<_>>())),
        _ => {
            let mut s = String::from("point,value,err,inside\n");
            for (p, v, e, i) in &rows {
                s += &format!("{},{:.15e},{:.3e},{}\n", fmt_point(p), v, e, i);
            }
            s
        }
    };
    Ok((text, true))
}

fn report_text(r: &Report, f: Format) -> String {
    match f {
        Format::Json => json_text(&r.to_json()),
        _ => r.to_csv(),
    }
}

fn cmd_verify(a: &VerifyArgs) -> Output {
    let alpha_s = |default: &str| a.alpha.clone().unwrap_or_else(|| default.to_string());
    let report = match a.case {
        Case::Getoor => {
            let d = a.d.unwrap_or(1);
            let alpha = param(&alpha_s("1"))?;
            let af = alpha.re();
            let t = power_ball(Param::int(0), alpha.half(), d, 0, alpha, Region::Ball)?;
            let pts = points(&a.points, d, "0.2,0.5,0.8")?;
            let f = PointwiseFn::radial(d, Decay::Compact(1.0), move |r| (1.0 - r * r).max(0.0).powf(af / 2.0));
            let cfg = config(d, a.tol);
            compare_symbolic(&t, &f, &pts, &cfg)?
        }
        Case::Cosine => {
            let alpha = param(&alpha_s("1"))?;
            let af = alpha.re();
            let h = hyp_transform(&cosine_spec(), 1, 0, alpha)?;
            let pts = points(&a.points, 1, "0,0.3,1")?;
            let expected = pts.iter().map(|p| Ok((h.eval_radial(p[0].abs())?.re(), true))).collect::<Result<Vec<_>>>()?;
            let f = PointwiseFn::new(1, Decay::Oscillatory { period: 2.0 * PI, power: 0.0 }, |x| x[0].cos());
            compare_values(&f, fraclap_op(af), af, &pts, &expected, &config(1, a.tol))
        }
        Case::Cauchy => {
            let alpha = param(&alpha_s("1"))?;
            let t = power_fullspace(Param::int(0), Param::int(-1), 1, 0, alpha)?;
            let pts = points(&a.points, 1, "0,0.5,2")?;
            let f = PointwiseFn::new(1, Decay::Power(2.0), |x| 1.0 / (1.0 + x[0] * x[0]));
            compare_symbolic(&t, &f, &pts, &config(1, a.tol))?
        }
        Case::GreenHarmonic => {
            let d = a.d.unwrap_or(1);
            let af = param(&alpha_s("1/2"))?.re();
            let pts = points(&a.points, d, "-0.6,-0.3,0.3,0.6")?;
            let delta = d as f64;
            let f = PointwiseFn::radial(d, Decay::Compact(1.0), move |r| {
                ball_harmonic_profile(r, delta, af).unwrap_or(f64::NAN)
            })
            .with_kinks(&[0.0]);
            let expected = vec![(0.0, true); pts.len()];
            let tol = a.tol.unwrap_or(1e-4);
            let mut r = compare_values(&f, fraclap_op(af), af, &pts, &expected, &config(d, None));
            r.judge(tol, 0.0);
            r
        }
        Case::Eigen => {
            let d = a.d.unwrap_or(1);
            let af = param(&alpha_s("1"))?.re();
            let pts = points(&a.points, d, "-0.8,-0.45,0.1,0.4,0.75")?;
            let cfg = config(d, a.tol.or(Some(1e-4)));
            let mut rows = Vec::new();
            for n in 0..=a.nmax {
                for m in 1..=crate::specfun::harmonic_dim(d, a.l) {
                    let idx = EigenIndex::new(d, af, a.l, m, n)?;
                    let f = ballsolve::weighted_basis_fn(d, af, &idx)?;
                    let expected = pts
                        .iter()
                        .map(|p| Ok((idx.lambda * ballsolve::basis_fn(d, af, &idx, p)?, true)))
                        .collect::<Result<Vec<_>>>()?;
                    rows.extend(compare_values(&f, OracleOp::Singular, af, &pts, &expected, &cfg).rows);
                }
            }
            Report { rows, tol: cfg.pass_tol }
        }
        Case::Semigroup => {
            let d = a.d.unwrap_or(3);
            let pts = points(&a.points, d, "0,0.5,1.5")?;
            let f = PointwiseFn::radial(d, Decay::Compact(1.0), |r| (1.0 - r * r).max(0.0).powi(3));
            let input = RadialHarmonicFn::radial(d, crate::gfun::encode_power_kernel(Param::int(0), Param::int(3), Region::Ball)?);
            let t = riesz_transform(&input, Param::int(2))?;
            let cfg = config(d, a.tol.or(Some(1e-4)));
            let nested = nested_riesz(&f, 1.0, 1.0, &pts, 32, &cfg)?;
            let expected = pts
                .iter()
                .map(|p| {
                    let v = t.evaluate(p)?;
                    Ok((v.value.re(), v.inside))
                })
                .collect::<Result<Vec<_>>>()?;
            crate::oracle::report_from_values(&pts, &expected, &nested, &cfg)
        }
    };
    Ok((report_text(&report, a.format), report.all_pass()))
}

fn fraclap_op(alpha: f64) -> OracleOp {
    if alpha < 2.0 {
        OracleOp::Singular
    } else {
        let mut k = 2;
        while k as f64 <= alpha {
            k += 2;
        }
        OracleOp::Hypersingular(k)
    }
}

fn config(d: u32, tol: Option<f64>) -> QuadratureConfig {
    let c = QuadratureConfig::for_dimension(d);
    match tol {
        Some(t) => c.with_pass_tol(t),
        None => c,
    }
}

fn compare_symbolic(t: &TransformResult, f: &PointwiseFn, pts: &[Vec<f64>], cfg: &QuadratureConfig) -> Result<Report> {
    let expected = pts
        .iter()
        .map(|p| {
            let v = t.evaluate(p)?;
            Ok((v.value.re(), v.inside))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(compare_values(f, OracleOp::for_result(t), t.alpha.re().abs(), pts, &expected, cfg))
}

fn cmd_solve(a: &SolveArgs) -> Output {
    let alpha = param(&a.alpha)?.re();
    let d = a.d;
    let g = match a.g.trim().parse::<f64>() {
        Ok(c) => PointwiseFn::new(d, Decay::Compact(1.0), move |_| c),
        Err(_) => {
            let spec = GSpec::parse_json(&a.g)?;
            PointwiseFn::radial(d, Decay::Compact(1.0), move |r| meijer_g(&spec, r * r).map(|v| v.re()).unwrap_or(f64::NAN))
        }
    };
    let e = ballsolve::solve(&g, d, alpha, a.lmax, a.nmax)?;
    let values = match &a.points {
        Some(_) => points(&a.points, d, "")?
            .into_iter()
            .map(|p| Ok((ballsolve::evaluate_solution(&e, &p, true)?, p)))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let text = match a.format {
        Format::Json => {
            let mut v = e.to_json();
            if !values.is_empty() {
                v["values"] = json!(values.iter().map(|(v, p)| json!({"point": p, "wu": v})).collect::<Vec<_>>());
            }
            json_text(&v)
        }
        _ => {
            let mut s = String::from("l,m,n,coeff,lambda\n");
            for (i, c) in &e.terms {
                s += &format!("{},{},{},{:.15e},{:.15e}\n", i.l, i.m, i.n, c, i.lambda);
            }
            s
        }
    };
    Ok((text, true))
}

fn cmd_table(a: &TableArgs) -> Output {
    if !a.eigen {
        return Err(Error::Invalid("table needs --eigen".into()));
    }
    let alpha = param(&a.alpha)?;
    let idx = indices(a.d, alpha.re(), a.lmax, a.nmax)?;
    let rows: Vec<(u32, usize, f64, String)> = idx
        .iter()
        .filter(|i| i.m == 1)
        .map(|i| {
            let exact = jacobi_eigenvalue_exact(i.n, i.l, a.d, alpha);
            (i.l, i.n, i.lambda, exact.to_string())
        })
        .collect();
    let text = match a.format {
        Format::Json => json_text(&json!(rows
            .iter()
            .map(|(l, n, v, e)| json!({"l": l, "n": n, "lambda": v, "exact": e}))
            .collect::<Vec<_>>())),
        Format::Text => rows.iter().map(|(l, n, v, e)| format!("l={l} n={n} lambda={v} = {e}\n")).collect(),
        Format::Csv => {
            let mut s = String::from("l,n,lambda,exact\n");
            for (l, n, v, e) in &rows {
                s += &format!("{l},{n},{v:.15e},{e}\n");
            }
            s
        }
    };
    Ok((text, true))
}
