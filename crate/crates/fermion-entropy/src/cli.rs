//! Batch command-line front end.
//!
//! Every subcommand writes either CSV (floats with 17 significant digits) or
//! JSON (complex numbers as `[re, im]`) to `--output` or standard output.
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 4 critical symbol. `ENTROPY_NUM_THREADS` caps the worker pool.

use crate::asymptotics::{
    beta_squared_integral, critical_entropy_estimate, critical_entropy_from_distances, degenerate_distances,
    determinant_asymptotic, entropy_theta, entropy_theta_for_symbol, xy_series_for_curve, CRITICAL_THRESHOLD,
};
use crate::curve::CurveData;
use crate::error::{Error, Result};
use crate::exact_engine::{
    entropy_exact, entropy_scan, log_toeplitz_determinant_direct, log_toeplitz_determinant_spectral,
    spectrum_from_coefficients, symbol_coefficients,
};
use crate::model::{ChainModel, ModelSpec};
use crate::rh_verify::{full_report, RHReport, JUMP_DELTA};
use crate::symbol::SymbolData;
use crate::theta::ThetaContext;
use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "fermion-entropy", version, about = "Entanglement entropy of quadratic fermion chains")]
pub struct Cli {
    /// Run the invariant suite on the selected model (or a built-in family)
    /// and print one PASS/FAIL line per invariant.
    #[arg(long, global = true)]
    pub check: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Single entropy value as JSON.
    Entropy(EntropyArgs),
    /// Entropy against block length as CSV.
    EntropyScan(ScanArgs),
    /// Block-Toeplitz determinant: direct vs asymptotic, CSV.
    DeterminantScan(DeterminantArgs),
    /// Exact entropy along a path approaching criticality, CSV.
    CriticalScan(CriticalArgs),
    /// Curve data (Π, τ/2, κ, K, …) as JSON.
    DumpCurve(DumpArgs),
    /// Riemann–Hilbert residual report.
    VerifyRh(RhArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct ModelArgs {
    /// Built-in chain: `xy` or `xx`.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Model as a JSON file path or inline JSON object.
    #[arg(long)]
    pub model: Option<String>,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output file (standard output if omitted).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// exact | theta | series | critical
    #[arg(long, default_value = "theta")]
    pub method: String,
    /// Block length for the exact method.
    #[arg(long = "L", default_value_t = 200)]
    pub l: usize,
    /// Detection radius `|z - 1/z̄|` for the critical estimator.
    #[arg(long, default_value_t = CRITICAL_THRESHOLD)]
    pub threshold: f64,
    /// Explicit distances for the critical estimator (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub distances: Vec<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// `start:stop:step`, inclusive.
    #[arg(long = "L", default_value = "8:256:8")]
    pub l: String,
    /// Comma-separated subset of `exact,theta`.
    #[arg(long, default_value = "exact,theta")]
    pub method: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct DeterminantArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Real `λ` values with `|λ| > 1` (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub lambda: Vec<f64>,
    #[arg(long = "L", default_value = "4:80:4")]
    pub l: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CriticalArgs {
    #[arg(long, default_value = "xy")]
    pub preset: String,
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    /// `start:stop:count` for α.
    #[arg(long = "alpha-path")]
    pub alpha_path: String,
    #[arg(long = "L", default_value_t = 256)]
    pub l: usize,
    #[arg(long, default_value_t = CRITICAL_THRESHOLD)]
    pub threshold: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct DumpArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct RhArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 2.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 8)]
    pub samples: usize,
    #[arg(long = "circle-samples", default_value_t = 32)]
    pub circle_samples: usize,
    /// Offset of the straddling points from each cut.
    #[arg(long, default_value_t = JUMP_DELTA)]
    pub delta: f64,
    /// json | csv
    #[arg(long, default_value = "json")]
    pub format: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Error tagged with the stage that produced it.
#[derive(Debug)]
pub struct StageError {
    pub stage: &'static str,
    pub error: Error,
}

impl std::fmt::Display for StageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.stage, self.error)
    }
}

type CliResult<T> = std::result::Result<T, StageError>;

trait Stage<T> {
    fn stage(self, stage: &'static str) -> CliResult<T>;
}

impl<T> Stage<T> for Result<T> {
    fn stage(self, stage: &'static str) -> CliResult<T> {
        self.map_err(|error| StageError { stage, error })
    }
}

fn config<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(StageError { stage: "cli", error: Error::Config(msg.into()) })
}

/// Formats with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `[re, im]`.
pub fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

fn vector_json<'a>(v: impl IntoIterator<Item = &'a C64>) -> Value {
    Value::Array(v.into_iter().map(|z| complex_json(*z)).collect())
}

fn matrix_json(m: &DMatrix<C64>) -> Value {
    Value::Array((0..m.nrows()).map(|i| vector_json(m.row(i).iter())).collect())
}

/// `start:stop:step` (integers, inclusive).
pub fn parse_int_range(s: &str) -> CliResult<Vec<usize>> {
    let parts: Vec<&str> = s.split(':').collect();
    let nums: std::result::Result<Vec<usize>, _> = parts.iter().map(|p| p.trim().parse::<usize>()).collect();
    let Ok(nums) = nums else { return config(format!("cannot parse range '{s}'")) };
    let (a, b, step) = match nums.as_slice() {
        [a] => (*a, *a, 1),
        [a, b] => (*a, *b, 1),
        [a, b, c] => (*a, *b, *c),
        _ => return config(format!("range '{s}' must be start[:stop[:step]]")),
    };
    if step == 0 || a > b || a == 0 {
        return config(format!("range '{s}' must have 1 ≤ start ≤ stop and step > 0"));
    }
    Ok((a..=b).step_by(step).collect())
}

/// `start:stop:count` (floats, inclusive, evenly spaced).
pub fn parse_float_path(s: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return config(format!("path '{s}' must be start:stop:count"));
    }
    let (Ok(a), Ok(b), Ok(n)) = (parts[0].parse::<f64>(), parts[1].parse::<f64>(), parts[2].parse::<usize>()) else {
        return config(format!("cannot parse path '{s}'"));
    };
    if n == 0 {
        return config("path needs at least one point");
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect())
}

impl ModelArgs {
    pub fn is_set(&self) -> bool {
        self.preset.is_some() || self.model.is_some()
    }

    pub fn build(&self) -> CliResult<ChainModel> {
        let spec = match (&self.preset, &self.model) {
            (Some(_), Some(_)) => return config("give either --preset or --model, not both"),
            (Some(p), None) => {
                let Some(alpha) = self.alpha else { return config("--preset needs --alpha") };
                ModelSpec::Preset { preset: p.clone(), alpha, gamma: self.gamma }
            }
            (None, Some(m)) => {
                let text = if m.trim_start().starts_with('{') {
                    m.clone()
                } else {
                    std::fs::read_to_string(m).map_err(Error::from).stage("config")?
                };
                serde_json::from_str(&text).map_err(Error::from).stage("config")?
            }
            (None, None) => return config("a model is required (--preset/--alpha/--gamma or --model)"),
        };
        spec.build().stage("model")
    }
}

fn emit(out: &OutputArgs, text: &str) -> CliResult<()> {
    match &out.output {
        Some(p) => std::fs::write(p, text).map_err(Error::from).stage("output"),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).map_err(Error::from).stage("output")
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> CliResult<String> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(Error::from).stage("output")
}

fn symbol(model: &ChainModel) -> CliResult<SymbolData> {
    SymbolData::new(model).stage("symbol")
}

fn curve(sym: &SymbolData) -> CliResult<(CurveData, ThetaContext)> {
    let c = CurveData::new(sym).stage("curve")?;
    let ctx = c.theta_context().stage("theta")?;
    Ok((c, ctx))
}

fn run_entropy(a: &EntropyArgs) -> CliResult<String> {
    if a.method == "critical" && !a.distances.is_empty() {
        return to_json(&critical_entropy_from_distances(&a.distances).stage("asymptotics")?);
    }
    if !(a.threshold > 0.0) {
        return config("--threshold must be positive");
    }
    let sym = symbol(&a.model.build()?)?;
    let est = match a.method.as_str() {
        "exact" => entropy_exact(&sym, a.l).stage("exact_engine")?,
        "theta" => entropy_theta_for_symbol(&sym).stage("asymptotics")?,
        "series" => {
            let (c, ctx) = curve(&sym)?;
            xy_series_for_curve(&c, &ctx).stage("asymptotics")?
        }
        "critical" => critical_entropy_estimate(&sym, a.threshold).stage("asymptotics")?,
        m => return config(format!("unknown method '{m}'")),
    };
    to_json(&est)
}

fn run_entropy_scan(a: &ScanArgs) -> CliResult<String> {
    let ls = parse_int_range(&a.l)?;
    let methods: Vec<&str> = a.method.split(',').map(str::trim).collect();
    if let Some(m) = methods.iter().find(|m| !matches!(**m, "exact" | "theta")) {
        return config(format!("unknown scan method '{m}'"));
    }
    let (want_exact, want_theta) = (methods.contains(&"exact"), methods.contains(&"theta"));
    let sym = symbol(&a.model.build()?)?;
    let exact = if want_exact { Some(entropy_scan(&sym, &ls).stage("exact_engine")?) } else { None };
    let theta = if want_theta { Some(entropy_theta_for_symbol(&sym).stage("asymptotics")?.value) } else { None };
    let mut s = String::from("L");
    if want_exact {
        s += ",S_exact";
    }
    if want_theta {
        s += ",S_theta";
    }
    if want_exact && want_theta {
        s += ",abs_diff";
    }
    s.push('\n');
    for (k, &l) in ls.iter().enumerate() {
        write!(s, "{l}").unwrap();
        if let Some(e) = &exact {
            write!(s, ",{}", fmt_f64(e[k].1)).unwrap();
        }
        if let Some(t) = theta {
            write!(s, ",{}", fmt_f64(t)).unwrap();
        }
        if let (Some(e), Some(t)) = (&exact, theta) {
            write!(s, ",{}", fmt_f64((e[k].1 - t).abs())).unwrap();
        }
        s.push('\n');
    }
    Ok(s)
}

fn run_determinant_scan(a: &DeterminantArgs) -> CliResult<String> {
    let ls = parse_int_range(&a.l)?;
    if let Some(l) = a.lambda.iter().find(|l| !(l.abs() > 1.0)) {
        return config(format!("λ = {l} must satisfy |λ| > 1"));
    }
    let sym = symbol(&a.model.build()?)?;
    let (c, ctx) = curve(&sym)?;
    let lmax = *ls.iter().max().unwrap();
    let g = symbol_coefficients(&sym, lmax).stage("exact_engine")?;
    let rows: Vec<(f64, usize)> = a.lambda.iter().flat_map(|&x| ls.iter().map(move |&l| (x, l))).collect();
    let lines: Vec<String> = rows
        .par_iter()
        .map(|&(x, l)| -> CliResult<String> {
            let lam = C64::new(x, 0.0);
            let direct = log_toeplitz_determinant_direct(&g, lam, l);
            let asym = determinant_asymptotic(&c, &ctx, lam, l).stage("asymptotics")?;
            let rel = ((direct - asym.log_value).exp() - 1.0).norm();
            Ok(format!(
                "{},{l},{},{},{},{},{}\n",
                fmt_f64(x),
                fmt_f64(direct.re),
                fmt_f64(direct.im),
                fmt_f64(asym.log_value.re),
                fmt_f64(asym.log_value.im),
                fmt_f64(rel)
            ))
        })
        .collect::<CliResult<_>>()?;
    Ok(String::from("lambda,L,log_direct_re,log_direct_im,log_asymptotic_re,log_asymptotic_im,rel_error\n")
        + &lines.concat())
}

fn run_critical_scan(a: &CriticalArgs) -> CliResult<String> {
    let alphas = parse_float_path(&a.alpha_path)?;
    if !(a.threshold > 0.0) {
        return config("--threshold must be positive");
    }
    let lines: Vec<String> = alphas
        .par_iter()
        .map(|&alpha| -> CliResult<String> {
            let spec = ModelSpec::Preset { preset: a.preset.clone(), alpha, gamma: a.gamma };
            let sym = symbol(&spec.build().stage("model")?)?;
            let s = entropy_exact(&sym, a.l).stage("exact_engine")?.value;
            let pairs = degenerate_distances(&sym, a.threshold).len() as f64;
            let est = (-pairs * sym.crit_distance.ln() / 6.0, pairs);
            Ok(format!(
                "{},{},{},{},{}\n",
                fmt_f64(alpha),
                fmt_f64(sym.crit_distance),
                fmt_f64(s),
                est.1,
                fmt_f64(est.0)
            ))
        })
        .collect::<CliResult<_>>()?;
    Ok(String::from("alpha,d,S_exact,pairs,estimate\n") + &lines.concat())
}

/// JSON dump of a curve.
pub fn curve_json(c: &CurveData) -> Value {
    json!({
        "genus": c.genus,
        "lambda": vector_json(&c.lambda),
        "Pi": matrix_json(&c.pi),
        "tau_half": vector_json(c.tau_half.iter()),
        "kappa": vector_json(c.kappa.iter()),
        "K": vector_json(c.riemann_k.iter()),
        "omega_infinity": vector_json(c.omega_inf.iter()),
        "delta0": complex_json(c.delta0),
        "delta_coeffs": vector_json(&c.delta_coeffs),
        "basis_coeffs": matrix_json(&c.basis_coeffs),
        "half_periods": c.half_periods.iter().map(|h| json!({"N": h.n, "M": h.m})).collect::<Vec<_>>(),
        "transposed": c.branch.transposed,
    })
}

fn run_dump_curve(a: &DumpArgs) -> CliResult<String> {
    let sym = symbol(&a.model.build()?)?;
    let (c, _) = curve(&sym)?;
    let v = curve_json(&c);
    Ok(serde_json::to_string_pretty(&v).unwrap() + "\n")
}

fn rh_csv(r: &RHReport) -> String {
    let mut s = String::from(
        "cut,outer,jump_residual,jump_residual_half,jump_extrapolated,factor_continuity,factorization_residual\n",
    );
    for j in &r.jumps {
        writeln!(
            s,
            "{},{},{},{},{},{},{}",
            j.cut,
            j.outer,
            fmt_f64(j.residual),
            fmt_f64(j.residual_half),
            fmt_f64(j.extrapolated),
            fmt_f64(j.factor_continuity),
            fmt_f64(r.factorization.u_residual.max(r.factorization.v_residual))
        )
        .unwrap();
    }
    s
}

fn run_verify_rh(a: &RhArgs) -> CliResult<String> {
    if a.samples == 0 || a.circle_samples == 0 {
        return config("sample counts must be positive");
    }
    if !(a.delta > 0.0 && a.delta < 1e-2) {
        return config("--delta must lie in (0, 1e-2)");
    }
    let sym = symbol(&a.model.build()?)?;
    let r = full_report(&sym, a.lambda, a.samples, a.circle_samples, a.delta).stage("rh_verify")?;
    match a.format.as_str() {
        "json" => to_json(&r),
        "csv" => Ok(rh_csv(&r)),
        f => config(format!("unknown format '{f}'")),
    }
}

/// One line of the `--check` report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

fn line(name: impl Into<String>, value: f64, limit: f64) -> CheckLine {
    CheckLine { name: name.into(), value, limit, pass: value < limit }
}

/// Invariant suite for one model.
pub fn check_model(model: &ChainModel) -> CliResult<Vec<CheckLine>> {
    let label = if model.label.is_empty() { "custom".to_string() } else { model.label.clone() };
    let sym = symbol(model)?;
    let mut out = vec![line(
        format!("{label}: g circle/product consistency"),
        sym.branch_consistency(64).stage("symbol")?,
        1e-10,
    )];
    let (c, ctx) = curve(&sym)?;
    let rep = c.report().stage("curve")?;
    out.push(line(format!("{label}: Π symmetric"), rep.symmetry_residual, 1e-9));
    out.push(line(format!("{label}: Im Π positive definite (−λ_min)"), -rep.min_im_eigenvalue, -1e-10));
    out.push(line(format!("{label}: holomorphic normalisation"), rep.normalization_residual, 1e-10));
    out.push(line(format!("{label}: κ = ω(∞)"), rep.kappa_residual, 1e-8));
    out.push(line(format!("{label}: half-period lattice residual"), rep.half_period_residual, 1e-8));
    out.push(line(format!("{label}: θ(ω(λ_odd)) vanishes"), rep.theta_odd_max(), 1e-8));
    out.push(line(format!("{label}: θ(ω(λ_even)) nonzero (1/min)"), 1.0 / rep.theta_even_min(), 1e6));
    let g = symbol_coefficients(&sym, 32).stage("exact_engine")?;
    let mut det: f64 = 0.0;
    for lam in [1.5, 2.0, 5.0] {
        let lam = C64::new(lam, 0.0);
        let sp = log_toeplitz_determinant_spectral(&spectrum_from_coefficients(&g, 24), lam);
        let di = log_toeplitz_determinant_direct(&g, lam, 24);
        det = det.max(((sp - di).exp() - 1.0).norm());
    }
    out.push(line(format!("{label}: spectral vs direct determinant (L=24)"), det, 1e-8));
    let s = entropy_theta(&c, &ctx).stage("asymptotics")?;
    out.push(line(format!("{label}: entropy integrand imaginary part"), s.diagnostics.max_imag.unwrap_or(0.0), 1e-8));
    let fit_rel = {
        let f = crate::asymptotics::endpoint_fit(&c, &ctx).stage("asymptotics")?;
        f.relative_error()
    };
    out.push(line(format!("{label}: endpoint coefficient (relative)"), fit_rel, 0.02));
    let ex = entropy_exact(&sym, 200).stage("exact_engine")?.value;
    out.push(line(format!("{label}: |S_theta − S_exact(200)|"), (s.value - ex).abs(), 1e-4));
    let rh = full_report(&sym, 2.0, 4, 32, JUMP_DELTA).stage("rh_verify")?;
    let jump = rh.jumps.iter().map(|j| j.extrapolated).fold(0.0, f64::max);
    out.push(line(format!("{label}: RH jumps (extrapolated boundary values)"), jump, 1e-5));
    out.push(line(
        format!("{label}: Wiener–Hopf factorisation"),
        rh.factorization.u_residual.max(rh.factorization.v_residual),
        1e-6,
    ));
    out.push(line(format!("{label}: U₋(∞) = I"), rh.factorization.u_minus_at_infinity, 1e-7));
    out.push(line(format!("{label}: Θ(∞) closed form"), rh.infinity.diagonal_residual, 1e-7));
    out.push(line(format!("{label}: det Θ ∝ g"), rh.determinant_residual, 1e-7));
    Ok(out)
}

fn run_check(model: &ModelArgs) -> CliResult<(String, bool)> {
    let models = if model.is_set() {
        vec![model.build()?]
    } else {
        let r = [C64::from_polar(0.79, 0.3), C64::from_polar(0.79, -0.3), C64::new(1.25, 0.0), C64::new(2.2, 0.0)];
        vec![
            ChainModel::xy(0.8, 0.5).stage("model")?,
            ChainModel::xy(1.5, 0.5).stage("model")?,
            ChainModel::from_roots(&r).stage("model")?,
        ]
    };
    let mut lines = vec![line("β² integral = −1/6", (beta_squared_integral() + 1.0 / 6.0).abs(), 1e-9)];
    for m in &models {
        lines.extend(check_model(m)?);
    }
    let mut s = String::new();
    let mut ok = true;
    for l in &lines {
        ok &= l.pass;
        writeln!(s, "{} {} = {:.3e} (limit {:.1e})", if l.pass { "PASS" } else { "FAIL" }, l.name, l.value, l.limit)
            .unwrap();
    }
    Ok((s, ok))
}

/// Applies `ENTROPY_NUM_THREADS` to the global pool.
pub fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("ENTROPY_NUM_THREADS") else { return Ok(()) };
    let n: usize = match v.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => return config(format!("ENTROPY_NUM_THREADS = '{v}' is not a positive integer")),
    };
    // A second initialisation in the same process is harmless.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn dispatch(cli: &Cli) -> CliResult<i32> {
    configure_threads()?;
    if cli.check {
        let model = match &cli.command {
            Some(Command::Entropy(a)) => a.model.clone(),
            Some(Command::EntropyScan(a)) => a.model.clone(),
            Some(Command::DeterminantScan(a)) => a.model.clone(),
            Some(Command::DumpCurve(a)) => a.model.clone(),
            Some(Command::VerifyRh(a)) => a.model.clone(),
            _ => ModelArgs::default(),
        };
        let (text, ok) = run_check(&model)?;
        print!("{text}");
        return Ok(if ok { 0 } else { 3 });
    }
    let Some(cmd) = &cli.command else { return config("no subcommand given (see --help)") };
    let (text, out) = match cmd {
        Command::Entropy(a) => (run_entropy(a)?, &a.out),
        Command::EntropyScan(a) => (run_entropy_scan(a)?, &a.out),
        Command::DeterminantScan(a) => (run_determinant_scan(a)?, &a.out),
        Command::CriticalScan(a) => (run_critical_scan(a)?, &a.out),
        Command::DumpCurve(a) => (run_dump_curve(a)?, &a.out),
        Command::VerifyRh(a) => (run_verify_rh(a)?, &a.out),
    };
    emit(out, &text)?;
    Ok(0)
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.error.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_int_range("8:32:8").unwrap(), vec![8, 16, 24, 32]);
        assert_eq!(parse_int_range("5").unwrap(), vec![5]);
        assert!(parse_int_range("0:4").is_err());
        assert!(parse_int_range("a:b").is_err());
        let p = parse_float_path("0.8:0.99:3").unwrap();
        assert_eq!(p.len(), 3);
        assert!((p[1] - 0.895).abs() < 1e-15);
    }

    #[test]
    fn seventeen_digits() {
        let s = fmt_f64(0.1);
        assert_eq!(s, "1.0000000000000001e-1");
        assert_eq!(s.parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["fermion-entropy", "entropy", "--preset", "xy"]), 2);
        assert_eq!(run(["fermion-entropy", "entropy", "--preset", "xx", "--alpha", "2", "--method", "theta"]), 4);
        assert_eq!(run(["fermion-entropy", "entropy-scan", "--preset", "xy", "--alpha", "0.8", "--L", "4:0"]), 2);
        assert_eq!(run(["fermion-entropy", "--bogus"]), 2);
    }
}
