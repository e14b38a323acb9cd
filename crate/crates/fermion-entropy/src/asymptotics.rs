//! Closed-form large-`L` results: the theta-function ratio behind the
//! block-Toeplitz determinant, the entanglement-entropy integral, the genus-1
//! series, and the logarithmic divergence estimator near criticality.
//!
//! Along real `λ > 1` we parametrise `β(λ) = -iy`, i.e. `λ = coth(πy)`, so
//! that `∫₁^∞ f dλ = ∫₀^∞ f π csch²(πy) dy`.

use crate::curve::CurveData;
use crate::error::{Error, Result};
use crate::exact_engine::symbol_coefficients;
use crate::quad::gauss_legendre;
use crate::symbol::SymbolData;
use crate::theta::ThetaContext;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;

const I: C64 = C64 { re: 0.0, im: 1.0 };
/// Upper limit of the `y` integral; the weight is below `e^{-2π·12}` beyond.
const Y_MAX: f64 = 12.0;
const ENTROPY_TOL: f64 = 1e-11;
const IMAG_TOL: f64 = 1e-8;
/// Default detection radius for `|z - 1/z̄|` in the critical estimator.
pub const CRITICAL_THRESHOLD: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    ThetaIntegral,
    XySeries,
    CriticalScaling,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quad_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_imag: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub endpoint_coefficient: Option<f64>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyEstimate {
    pub value: f64,
    pub method: Method,
    pub diagnostics: Diagnostics,
}

/// `β(λ) = (1/2πi) log((λ+1)/(λ-1))`, principal branch.
pub fn beta(lambda: C64) -> Result<C64> {
    if lambda.im == 0.0 && lambda.re.abs() <= 1.0 {
        return Err(Error::DomainError(format!("β undefined on [-1, 1] (λ = {})", lambda.re)));
    }
    Ok(((lambda + 1.0) / (lambda - 1.0)).ln() / (2.0 * PI * I))
}

/// `∫₁^∞ β(λ)² dλ` by quadrature in `λ = 1 + e^s`.
pub fn beta_squared_integral() -> f64 {
    let (x, w) = gauss_legendre(32);
    let (a, b, panels) = (-80.0, 60.0, 280);
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let c = a + (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&w) {
            let s = c + 0.5 * h * xi;
            let l = 1.0 + s.exp();
            // β² = -(ln((λ+1)/(λ-1)))² / 4π², with λ - 1 = e^s
            let lg = (2.0 + s.exp()).ln() - s;
            sum += 0.5 * h * wi * -(lg * lg) / (4.0 * PI * PI) * (l - 1.0);
        }
    }
    sum
}

/// `e = (0, …, 0, 1, …, 1)`: `n - 1` zeros followed by `n` ones.
pub fn e_vector(n: usize) -> DVector<C64> {
    DVector::from_fn(2 * n - 1, |i, _| C64::new(if i + 1 >= n { 1.0 } else { 0.0 }, 0.0))
}

/// `log[θ(βe + τ/2) θ(βe - τ/2) / θ(τ/2)²]`, imaginary part reduced to
/// `(-π, π]`.
pub fn log_theta_ratio(curve: &CurveData, ctx: &ThetaContext, beta: C64) -> Result<C64> {
    let e = e_vector(curve.n);
    let t = &curve.tau_half;
    let be = e.map(|v| v * beta);
    let plus = ctx.log_theta((&be + t).as_slice())?;
    let minus = ctx.log_theta((&be - t).as_slice())?;
    let base = ctx.log_theta(t.as_slice())?;
    let v = plus + minus - 2.0 * base;
    Ok(C64::new(v.re, v.im.sin().atan2(v.im.cos())))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DeterminantAsymptotic {
    /// `L log(1 - λ²) + log_ratio`.
    pub log_value: C64,
    /// Widom's constant prefactor, `log E[Φ]`.
    pub log_ratio: C64,
}

impl DeterminantAsymptotic {
    pub fn value(&self) -> C64 {
        self.log_value.exp()
    }

    pub fn ratio(&self) -> C64 {
        self.log_ratio.exp()
    }
}

/// `D_L(λ) ≈ (1 - λ²)^L θ(βe + τ/2) θ(βe - τ/2) / θ(τ/2)²`.
pub fn determinant_asymptotic(
    curve: &CurveData,
    ctx: &ThetaContext,
    lambda: C64,
    l: usize,
) -> Result<DeterminantAsymptotic> {
    let b = beta(lambda)?;
    let log_ratio = log_theta_ratio(curve, ctx, b)?;
    let lg = (1.0 - lambda * lambda).ln();
    Ok(DeterminantAsymptotic { log_value: lg * l as f64 + log_ratio, log_ratio })
}

/// `G[Φ] = exp((1/2πi)∮ log det Φ dz/z)`, evaluated on the circle.
pub fn widom_g_factor(sym: &SymbolData, lambda: C64, samples: usize) -> Result<C64> {
    let samples = samples.max(4);
    let mut prev: Option<C64> = None;
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..samples {
        let t = 2.0 * PI * (k as f64 + 0.5) / samples as f64;
        let m = sym.eval_symbol(t, lambda)?;
        let mut lg = m.determinant().ln();
        if let Some(p) = prev {
            lg.im += 2.0 * PI * ((p.im - lg.im) / (2.0 * PI)).round();
        }
        prev = Some(lg);
        acc += lg;
    }
    Ok((acc / samples as f64).exp())
}

/// `ln ratio(β = -iy)`.
fn log_ratio_y(curve: &CurveData, ctx: &ThetaContext, y: f64) -> Result<C64> {
    log_theta_ratio(curve, ctx, C64::new(0.0, -y))
}

fn entropy_integral(
    curve: &CurveData,
    ctx: &ThetaContext,
    panels: usize,
    order: &(Vec<f64>, Vec<f64>),
) -> Result<(f64, f64)> {
    let (x, w) = order;
    let h = Y_MAX / panels as f64;
    let mut sum = 0.0;
    let mut max_imag: f64 = 0.0;
    for p in 0..panels {
        let c = (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(w) {
            let y = c + 0.5 * h * xi;
            let lr = log_ratio_y(curve, ctx, y)?;
            max_imag = max_imag.max(lr.im.abs());
            let weight = PI / (PI * y).sinh().powi(2);
            sum += 0.5 * h * wi * 0.5 * lr.re * weight;
        }
    }
    Ok((sum, max_imag))
}

/// `S = ½ ∫₁^∞ log[θ(βe + τ/2)θ(βe - τ/2)/θ(τ/2)²] dλ`.
pub fn entropy_theta(curve: &CurveData, ctx: &ThetaContext) -> Result<EntropyEstimate> {
    let rule = gauss_legendre(16);
    let mut panels = 6;
    let (mut prev, mut max_imag) = entropy_integral(curve, ctx, panels, &rule)?;
    loop {
        panels *= 2;
        let (next, mi) = entropy_integral(curve, ctx, panels, &rule)?;
        max_imag = max_imag.max(mi);
        let err = (next - prev).abs();
        if err < ENTROPY_TOL * next.abs().max(1.0) {
            if max_imag > IMAG_TOL {
                return Err(Error::QuadratureFailure(format!("entropy integrand has imaginary part {max_imag:.3e}")));
            }
            let fit = endpoint_fit(curve, ctx)?;
            let mut d = Diagnostics {
                quad_error: Some(err),
                max_imag: Some(max_imag),
                endpoint_coefficient: Some(fit.fitted),
                extra: BTreeMap::new(),
            };
            d.extra.insert("endpoint_expected".into(), fit.expected);
            d.extra.insert("panels".into(), panels as f64);
            return Ok(EntropyEstimate { value: next, method: Method::ThetaIntegral, diagnostics: d });
        }
        if panels > 1536 {
            return Err(Error::QuadratureFailure(format!("entropy integral stalled at Δ = {err:.3e}")));
        }
        prev = next;
    }
}

/// Theta entropy from a symbol; constant symbols (e.g. the gapped XX chain)
/// short-circuit to zero.
pub fn entropy_theta_for_symbol(sym: &SymbolData) -> Result<EntropyEstimate> {
    match sym.branch() {
        Ok(_) => {
            let curve = CurveData::new(sym)?;
            let ctx = curve.theta_context()?;
            entropy_theta(&curve, &ctx)
        }
        Err(Error::DegenerateModel(msg)) => {
            let g = symbol_coefficients(sym, 16)?;
            let off = (1..=16i64).map(|l| g.get(l).abs().max(g.get(-l).abs())).fold(0.0, f64::max);
            if off > 1e-12 {
                return Err(Error::DegenerateModel(msg));
            }
            let mut d = Diagnostics::default();
            d.extra.insert("constant_symbol".into(), 1.0);
            Ok(EntropyEstimate { value: 0.0, method: Method::ThetaIntegral, diagnostics: d })
        }
        Err(e) => Err(e),
    }
}

/// Quadratic fit of the integrand against `β²` near `λ = 1`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EndpointFit {
    /// Fitted limit of `log ratio / β²`.
    pub fitted: f64,
    /// `-2π⟨e, (Im Π)⁻¹ e⟩`.
    pub expected: f64,
}

impl EndpointFit {
    pub fn relative_error(&self) -> f64 {
        ((self.fitted - self.expected) / self.expected).abs()
    }
}

/// Fits `ln ratio(-iy) = A y² + B y + C` on `y ∈ [3, 12]` (`λ - 1` between
/// `1e-33` and `1e-8`) and reports `-A`, the limit of `ln ratio / β²`.
pub fn endpoint_fit(curve: &CurveData, ctx: &ThetaContext) -> Result<EndpointFit> {
    let m = 64;
    let mut a = DMatrix::zeros(m, 3);
    let mut rhs = DVector::zeros(m);
    for k in 0..m {
        let y = 3.0 + 9.0 * k as f64 / (m - 1) as f64;
        a[(k, 0)] = y * y;
        a[(k, 1)] = y;
        a[(k, 2)] = 1.0;
        rhs[k] = log_ratio_y(curve, ctx, y)?.re;
    }
    let coef = a.svd(true, true).solve(&rhs, 1e-14).map_err(|e| Error::DomainError(e.to_string()))?;
    let e = e_vector(curve.n).map(|v| v.re);
    let expected = -2.0 * PI * e.dot(&(ctx.im_pi_inverse() * &e));
    Ok(EndpointFit { fitted: -coef[0], expected })
}

/// `e(1, μ)` for complex `μ`.
fn binary_entropy_complex(mu: C64) -> C64 {
    let h = |p: C64| if p.norm() == 0.0 { C64::new(0.0, 0.0) } else { -p * p.ln() };
    h(0.5 * (1.0 + mu)) + h(0.5 * (1.0 - mu))
}

/// Genus-1 series `S = Σ_{m∈ℤ} e(1, μ_m)`, `μ_m = -i tan((m + (1-σ)/2)πτ)`.
/// Terms are added symmetrically until the geometric tail bound drops below
/// `1e-12`, or `terms` pairs if given.
pub fn xy_series_entropy(tau: C64, sigma: u8, terms: Option<usize>) -> Result<EntropyEstimate> {
    if tau.im <= 0.0 {
        return Err(Error::DomainError(format!("τ = {tau} must lie in the upper half plane")));
    }
    if sigma > 1 {
        return Err(Error::Config(format!("σ must be 0 or 1, got {sigma}")));
    }
    let shift = 0.5 * (1.0 - sigma as f64);
    let term = |m: i64| binary_entropy_complex(-I * ((m as f64 + shift) * PI * tau).tan());
    let q = (-2.0 * PI * tau.im).exp();
    let mut sum = if sigma == 1 { term(0) } else { C64::new(0.0, 0.0) };
    let start = sigma as i64;
    let mut count = 0;
    let mut last = 0.0;
    for m in start.. {
        let pair = term(m) + term(-m - (1 - sigma as i64));
        sum += pair;
        count += 1;
        last = pair.norm() * q / (1.0 - q);
        let done = match terms {
            Some(t) => count >= t,
            None => last < 1e-12 || count >= 100_000,
        };
        if done {
            break;
        }
    }
    let mut d = Diagnostics { max_imag: Some(sum.im.abs()), quad_error: Some(last), ..Default::default() };
    d.extra.insert("sigma".into(), sigma as f64);
    d.extra.insert("terms".into(), count as f64);
    Ok(EntropyEstimate { value: sum.re, method: Method::XySeries, diagnostics: d })
}

/// Resolves `σ` by comparison with the theta integral and returns the
/// matching series value.
pub fn xy_series_for_curve(curve: &CurveData, ctx: &ThetaContext) -> Result<EntropyEstimate> {
    if curve.genus != 1 {
        return Err(Error::GenusMismatch { expected: 1, found: curve.genus });
    }
    let reference = entropy_theta(curve, ctx)?.value;
    let tau = curve.pi[(0, 0)];
    let mut best: Option<EntropyEstimate> = None;
    for sigma in [0, 1] {
        let mut est = xy_series_entropy(tau, sigma, None)?;
        let diff = (est.value - reference).abs();
        est.diagnostics.extra.insert("theta_difference".into(), diff);
        if best.as_ref().is_none_or(|b| diff < b.diagnostics.extra["theta_difference"]) {
            best = Some(est);
        }
    }
    Ok(best.unwrap())
}

/// `-(1/6) Σ_j ln d_j` for explicit distances `d_j = |z_j - 1/z̄_j|`.
pub fn critical_entropy_from_distances(distances: &[f64]) -> Result<EntropyEstimate> {
    if distances.is_empty() {
        return Err(Error::NoDegeneratePairs);
    }
    if let Some(d) = distances.iter().find(|d| !(**d > 0.0)) {
        return Err(Error::DomainError(format!("distance {d} must be positive")));
    }
    let value = -distances.iter().map(|d| d.ln()).sum::<f64>() / 6.0;
    let mut diag = Diagnostics::default();
    diag.extra.insert("pairs".into(), distances.len() as f64);
    diag.extra.insert("min_distance".into(), distances.iter().cloned().fold(f64::INFINITY, f64::min));
    Ok(EntropyEstimate { value, method: Method::CriticalScaling, diagnostics: diag })
}

/// Roots of `q` within `threshold` of their reflection `1/z̄`.
pub fn degenerate_distances(sym: &SymbolData, threshold: f64) -> Vec<f64> {
    sym.roots.iter().map(|z| (z - 1.0 / z.conj()).norm()).filter(|&d| d < threshold).collect()
}

/// Divergence-rate estimator near criticality (no `O(1)` constant).
pub fn critical_entropy_estimate(sym: &SymbolData, threshold: f64) -> Result<EntropyEstimate> {
    critical_entropy_from_distances(&degenerate_distances(sym, threshold))
}
