//! Explicit solution of the matrix Riemann–Hilbert problem behind the
//! Wiener–Hopf factorisation `Φ = U₊U₋ = V₋V₊`, and numerical checks of
//! its jump conditions, normalisation and factorisation.
//!
//! `Θ(z)` is built from theta functions on the curve; then
//! `S(z) = Q(∞)Λ⁻¹Θ(∞)⁻¹Θ(z)`, `U₊ = Q S⁻¹` inside the unit circle and
//! `U₋ = S Λ Q⁻¹` outside, with `Q = [[g, -g], [i, i]]` and
//! `Λ = i·diag(λ+1, λ-1)`.

use crate::asymptotics::{beta, e_vector};
use crate::curve::CurveData;
use crate::error::{Error, Result};
use crate::symbol::SymbolData;
use crate::theta::ThetaContext;
use nalgebra::{DVector, Matrix2};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

const I: C64 = C64 { re: 0.0, im: 1.0 };
/// Default offset of the straddling points from a cut.
pub const JUMP_DELTA: f64 = 1e-6;
/// Jump samples stay in `[SPAN, 1 - SPAN]` of each cut: near an end point the
/// first-order offset error grows like `δ/dist`.
const SPAN: f64 = 0.2;

type M2 = Matrix2<C64>;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn max_abs(m: &M2) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// `σ₁`, `σ₃`.
pub fn sigma1() -> M2 {
    M2::new(c(0.0), c(1.0), c(1.0), c(0.0))
}

pub fn sigma3() -> M2 {
    M2::new(c(1.0), c(0.0), c(0.0), c(-1.0))
}

#[derive(Clone, Debug)]
pub struct RHSolution {
    pub symbol: SymbolData,
    pub curve: CurveData,
    pub ctx: ThetaContext,
    pub lambda: f64,
    pub beta: C64,
    e: DVector<C64>,
    theta_inf: M2,
    /// `Q(∞)Λ⁻¹Θ(∞)⁻¹`.
    left: M2,
}

impl RHSolution {
    pub fn new(symbol: &SymbolData, lambda: f64) -> Result<Self> {
        let curve = CurveData::new(symbol)?;
        Self::with_curve(symbol, curve, lambda)
    }

    pub fn with_curve(symbol: &SymbolData, curve: CurveData, lambda: f64) -> Result<Self> {
        if !(lambda.abs() > 1.0) {
            return Err(Error::DomainError(format!("|λ| = {} must exceed 1", lambda.abs())));
        }
        let ctx = curve.theta_context()?;
        let b = beta(c(lambda))?;
        let e = e_vector(curve.n);
        let mut rh = RHSolution {
            symbol: symbol.clone(),
            curve,
            ctx,
            lambda,
            beta: b,
            e,
            theta_inf: M2::identity(),
            left: M2::identity(),
        };
        rh.theta_inf = rh.theta_at_infinity()?;
        let q_inf = rh.q_matrix(symbol.g_infinity() * symbol.circle_sign);
        let inv = rh.theta_inf.try_inverse().ok_or_else(|| Error::DomainError("Θ(∞) is singular".into()))?;
        rh.left = q_inf * rh.lambda_matrix().try_inverse().unwrap() * inv;
        Ok(rh)
    }

    fn lt(&self, s: &DVector<C64>) -> Result<C64> {
        self.ctx.log_theta(s.as_slice())
    }

    /// `Λ = i·diag(λ+1, λ-1)`.
    pub fn lambda_matrix(&self) -> M2 {
        M2::new(I * (self.lambda + 1.0), c(0.0), c(0.0), I * (self.lambda - 1.0))
    }

    pub fn q_matrix(&self, g: C64) -> M2 {
        M2::new(g, -g, I, I)
    }

    /// Jump across cut `i` (zero-based): `σ₁` on the inner cuts,
    /// `Λσ₁Λ⁻¹` on the outer ones.
    pub fn jump_matrix(&self, i: usize) -> M2 {
        if i < self.curve.n {
            sigma1()
        } else {
            let r = (self.lambda - 1.0) / (self.lambda + 1.0);
            M2::new(c(0.0), c(1.0 / r), c(r), c(0.0))
        }
    }

    /// `Θ(z)` on the first sheet.
    pub fn theta_matrix(&self, z: C64) -> Result<M2> {
        let (om, reg) = self.curve.abel_and_delta(z)?;
        let be = self.e.map(|v| v * self.beta);
        let k = &self.curve.kappa;
        let t = &self.curve.tau_half;
        let den_p = self.lt(&(&om + t))?;
        let den_m = self.lt(&(&om - t))?;
        let l1 = self.curve.lambda[0];
        let pre = -reg.exp() / (z - l1);
        let t11 = (-reg + self.lt(&(&om + &be - k + t))? - den_p).exp();
        let t12 = pre * (self.lt(&(&om - &be + k - t))? - den_m).exp();
        let t21 = pre * (self.lt(&(&om + &be + k - t))? - den_m).exp();
        let t22 = (-reg + self.lt(&(&om - &be - k + t))? - den_p).exp();
        Ok(M2::new(t11, t12, t21, t22))
    }

    /// Limit of `Θ(z)` at infinity: diagonal, with
    /// `Θ₁₁(∞) = e^{-Δ₀} θ(βe + τ/2)/θ(κ + τ/2)` and `β → -β` for `Θ₂₂`.
    pub fn theta_at_infinity(&self) -> Result<M2> {
        let be = self.e.map(|v| v * self.beta);
        let t = &self.curve.tau_half;
        let den = self.lt(&(&self.curve.kappa + t))?;
        let d0 = self.curve.delta0;
        let t11 = (-d0 + self.lt(&(&be + t))? - den).exp();
        let t22 = (-d0 + self.lt(&(-&be + t))? - den).exp();
        Ok(M2::new(t11, c(0.0), c(0.0), t22))
    }

    pub fn theta_infinity(&self) -> M2 {
        self.theta_inf
    }

    pub fn s_matrix(&self, z: C64) -> Result<M2> {
        Ok(self.left * self.theta_matrix(z)?)
    }

    /// Analytic `g` with the sign that reproduces the symbol on the circle.
    fn g(&self, z: C64) -> Result<C64> {
        Ok(self.symbol.eval_g(z)? * self.symbol.circle_sign)
    }

    /// `U₋ = S Λ Q⁻¹`, analytic outside the unit circle, `U₋(∞) = I`.
    pub fn u_minus(&self, z: C64) -> Result<M2> {
        let q = self.q_matrix(self.g(z)?);
        Ok(self.s_matrix(z)? * self.lambda_matrix() * q.try_inverse().unwrap())
    }

    /// `U₊ = Q S⁻¹`, analytic inside the unit circle.
    pub fn u_plus(&self, z: C64) -> Result<M2> {
        let q = self.q_matrix(self.g(z)?);
        let s = self.s_matrix(z)?;
        Ok(q * s.try_inverse().ok_or_else(|| Error::DomainError(format!("S({z}) is singular")))?)
    }

    pub fn v_minus(&self, z: C64) -> Result<M2> {
        Ok(sigma3() * self.u_minus(z)?.try_inverse().unwrap() * sigma3())
    }

    pub fn v_plus(&self, z: C64) -> Result<M2> {
        Ok(sigma3() * self.u_plus(z)?.try_inverse().unwrap() * sigma3() * c(1.0 - self.lambda * self.lambda))
    }

    /// Point on cut `i` at fraction `t` plus a normal offset `δ` to its
    /// left (`+`) or right (`-`) side.
    fn straddle(&self, i: usize, t: f64, delta: f64) -> (C64, C64) {
        let (a, b) = self.curve.branch.cut(i);
        let m = a + (b - a) * t;
        let nrm = I * (b - a) / (b - a).norm();
        (m + nrm * delta, m - nrm * delta)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JumpReport {
    pub cut: usize,
    pub outer: bool,
    /// `max ‖S₊ - S₋J‖ / ‖S₋‖` over the samples at offset `δ`.
    pub residual: f64,
    /// Same at offset `δ/2`.
    pub residual_half: f64,
    /// Using boundary values extrapolated linearly from `δ` and `δ/2`.
    pub extrapolated: f64,
    /// Continuity of the factor that must not jump here (`U₊` on inner
    /// cuts, `U₋` on outer cuts), relative, at offset `δ`.
    pub factor_continuity: f64,
}

/// Jump residuals on every cut at `samples` interior points.
pub fn verify_jumps(rh: &RHSolution, samples: usize, delta: f64) -> Result<Vec<JumpReport>> {
    let n_cuts = 2 * rh.curve.n;
    (0..n_cuts)
        .into_par_iter()
        .map(|i| {
            let jmp = rh.jump_matrix(i);
            let mut rep = JumpReport {
                cut: i + 1,
                outer: i >= rh.curve.n,
                residual: 0.0,
                residual_half: 0.0,
                extrapolated: 0.0,
                factor_continuity: 0.0,
            };
            for k in 0..samples {
                let t = 0.5 - (0.5 - SPAN) * (PI * (k as f64 + 0.5) / samples as f64).cos();
                let (p1, m1) = rh.straddle(i, t, delta);
                let (p2, m2) = rh.straddle(i, t, 0.5 * delta);
                let (sp1, sm1) = (rh.s_matrix(p1)?, rh.s_matrix(m1)?);
                let (sp2, sm2) = (rh.s_matrix(p2)?, rh.s_matrix(m2)?);
                let res = |p: &M2, m: &M2| max_abs(&(p - m * jmp)) / max_abs(m);
                rep.residual = rep.residual.max(res(&sp1, &sm1));
                rep.residual_half = rep.residual_half.max(res(&sp2, &sm2));
                let sp0 = sp2 * c(2.0) - sp1;
                let sm0 = sm2 * c(2.0) - sm1;
                rep.extrapolated = rep.extrapolated.max(res(&sp0, &sm0));
                let (fp, fm) =
                    if rep.outer { (rh.u_minus(p1)?, rh.u_minus(m1)?) } else { (rh.u_plus(p1)?, rh.u_plus(m1)?) };
                rep.factor_continuity = rep.factor_continuity.max(max_abs(&(fp - fm)) / max_abs(&fm));
            }
            Ok(rep)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationReport {
    pub samples: usize,
    /// `max ‖U₊U₋ - Φ‖ / ‖Φ‖` on the circle.
    pub u_residual: f64,
    /// `max ‖V₋V₊ - Φ‖ / ‖Φ‖` on the circle.
    pub v_residual: f64,
    /// `‖U₋(z) - I‖` at `|z| = 10⁹`.
    pub u_minus_at_infinity: f64,
    pub v_minus_at_infinity: f64,
}

/// Factorisation residuals at `samples` points of the unit circle.
pub fn wiener_hopf_factors(rh: &RHSolution, samples: usize) -> Result<FactorizationReport> {
    let lam = c(rh.lambda);
    let rows: Vec<(f64, f64)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let th = 2.0 * PI * (k as f64 + 0.3) / samples as f64;
            let z = C64::from_polar(1.0, th);
            let phi = rh.symbol.eval_symbol(th, lam)?;
            let up = rh.u_plus(z)?;
            let um = rh.u_minus(z)?;
            let vp = rh.v_plus(z)?;
            let vm = rh.v_minus(z)?;
            let s = max_abs(&phi);
            Ok((max_abs(&(up * um - phi)) / s, max_abs(&(vm * vp - phi)) / s))
        })
        .collect::<Result<_>>()?;
    let far = C64::new(0.3e9, 0.95e9);
    Ok(FactorizationReport {
        samples,
        u_residual: rows.iter().map(|r| r.0).fold(0.0, f64::max),
        v_residual: rows.iter().map(|r| r.1).fold(0.0, f64::max),
        u_minus_at_infinity: max_abs(&(rh.u_minus(far)? - M2::identity())),
        v_minus_at_infinity: max_abs(&(rh.v_minus(far)? - M2::identity())),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InfinityReport {
    /// Off-diagonal `|Θ_{12}|, |Θ_{21}|` at `|z| = 10⁹`, relative to the diagonal.
    pub off_diagonal: f64,
    /// Relative mismatch between `Θ(z)` at `|z| = 10⁹` and the closed-form `Θ(∞)`.
    pub diagonal_residual: f64,
}

pub fn verify_infinity(rh: &RHSolution) -> Result<InfinityReport> {
    let mut off: f64 = 0.0;
    let mut diag: f64 = 0.0;
    let ti = rh.theta_infinity();
    let scale = ti[(0, 0)].norm().max(ti[(1, 1)].norm());
    for z in [C64::new(0.0, 1e9), C64::new(-1e9, 1.0), C64::new(0.6e9, -0.8e9)] {
        let t = rh.theta_matrix(z)?;
        off = off.max(t[(0, 1)].norm().max(t[(1, 0)].norm()) / scale);
        diag = diag.max(((t[(0, 0)] - ti[(0, 0)]).norm().max((t[(1, 1)] - ti[(1, 1)]).norm())) / scale);
    }
    Ok(InfinityReport { off_diagonal: off, diagonal_residual: diag })
}

/// Spread of `det Θ(z)·g(∞) / (g(z)·det Θ(∞))` around one at the given
/// points.
pub fn verify_determinant(rh: &RHSolution, points: &[C64]) -> Result<f64> {
    let d_inf = rh.theta_infinity().determinant() / rh.symbol.g_infinity();
    let vals: Vec<f64> = points
        .par_iter()
        .map(|&z| {
            let d = rh.theta_matrix(z)?.determinant() / rh.symbol.eval_g(z)?;
            Ok((d / d_inf - 1.0).norm())
        })
        .collect::<Result<_>>()?;
    Ok(vals.into_iter().fold(0.0, f64::max))
}

/// Sample points for the determinant check, kept away from the cuts.
pub fn default_sample_points(curve: &CurveData, count: usize) -> Vec<C64> {
    let r = curve.lambda.iter().map(|l| l.norm()).fold(1.0, f64::max);
    let mut out = Vec::with_capacity(count);
    let mut k = 0;
    while out.len() < count && k < 50 * count {
        let t = 2.0 * PI * (k as f64 * 0.618_033_988_75).fract();
        let rad = 0.2 + (r + 1.0) * ((k as f64 * 0.414_213_562_37).fract());
        let z = C64::from_polar(rad, t);
        if curve.branch.distance_to_cuts(z) > 0.05 {
            out.push(z);
        }
        k += 1;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct NonvanishingReport {
    /// Smallest `|θ(βe ± τ/2)|` over the grid, relative to the term scale.
    pub min_relative: f64,
    pub at_beta: [f64; 2],
}

/// Sweep `β = -iy` over `y ∈ [0, y_max]` and record the smallest relative
/// magnitude of `θ(βe ± τ/2)`.
pub fn verify_nonvanishing(
    curve: &CurveData,
    ctx: &ThetaContext,
    y_max: f64,
    points: usize,
) -> Result<NonvanishingReport> {
    let e = e_vector(curve.n);
    let t = &curve.tau_half;
    let mut best = NonvanishingReport { min_relative: f64::INFINITY, at_beta: [0.0, 0.0] };
    for k in 0..points.max(2) {
        let y = y_max * k as f64 / (points.max(2) - 1) as f64;
        let be = e.map(|v| v * C64::new(0.0, -y));
        for s in [&be + t, &be - t] {
            let v = ctx.evaluate(s.as_slice())?.relative_magnitude();
            if v < best.min_relative {
                best = NonvanishingReport { min_relative: v, at_beta: [0.0, -y] };
            }
        }
    }
    Ok(best)
}

/// Everything `verify-rh` reports for one model and `λ`.
#[derive(Clone, Debug, Serialize)]
pub struct RHReport {
    pub lambda: f64,
    pub jumps: Vec<JumpReport>,
    pub factorization: FactorizationReport,
    pub infinity: InfinityReport,
    pub determinant_residual: f64,
    pub nonvanishing: NonvanishingReport,
}

pub fn full_report(
    sym: &SymbolData,
    lambda: f64,
    samples_per_cut: usize,
    circle_samples: usize,
    delta: f64,
) -> Result<RHReport> {
    let rh = RHSolution::new(sym, lambda)?;
    let pts = default_sample_points(&rh.curve, 16);
    Ok(RHReport {
        lambda,
        jumps: verify_jumps(&rh, samples_per_cut, delta)?,
        factorization: wiener_hopf_factors(&rh, circle_samples)?,
        infinity: verify_infinity(&rh)?,
        determinant_residual: verify_determinant(&rh, &pts)?,
        nonvanishing: verify_nonvanishing(&rh.curve, &rh.ctx, 0.5, 51)?,
    })
}
