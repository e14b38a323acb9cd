//! Riemann theta function `θ(s) = Σ_{n∈ℤ^g} exp(iπ n·Πn + 2iπ s·n)`.
//!
//! The lattice sum is centred at the stationary point of the Gaussian
//! factor, `c = -(Im Π)⁻¹ Im s`, and the common factor `exp(π cᵀ(Im Π)c)` is
//! kept apart so that large imaginary arguments do not overflow. Lattice
//! points are enumerated inside an ellipsoid (Fincke–Pohst) chosen so the
//! discarded terms are below `e^{-TAIL_EXP}` relative to the largest one.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const TAIL_EXP: f64 = 42.0;
const MAX_POINTS: f64 = 1e7;

#[derive(Clone, Debug)]
pub struct ThetaContext {
    pub pi: DMatrix<C64>,
    pub genus: usize,
    re: DMatrix<f64>,
    im: DMatrix<f64>,
    im_inv: DMatrix<f64>,
    /// Upper Cholesky factor: `Im Π = Uᵀ U`.
    chol_u: DMatrix<f64>,
    pub min_im_eig: f64,
    /// Exponent cut-off relative to the dominant term.
    pub trunc_radius: f64,
}

/// `θ = exp(log_scale) · sum`; `abs_sum` is the sum of term magnitudes on
/// the same scale (useful as a size reference for cancellations).
#[derive(Clone, Copy, Debug)]
pub struct ThetaValue {
    pub log_scale: f64,
    pub sum: C64,
    pub abs_sum: f64,
    pub terms: usize,
}

impl ThetaValue {
    pub fn value(&self) -> C64 {
        self.sum * self.log_scale.exp()
    }

    pub fn ln(&self) -> C64 {
        self.sum.ln() + self.log_scale
    }

    /// `|θ|` relative to the term-magnitude scale.
    pub fn relative_magnitude(&self) -> f64 {
        self.sum.norm() / self.abs_sum
    }
}

impl ThetaContext {
    pub fn new(pi: DMatrix<C64>) -> Result<Self> {
        let g = pi.nrows();
        if g == 0 || pi.ncols() != g {
            return Err(Error::DomainError("period matrix must be square and non-empty".into()));
        }
        let re = pi.map(|z| z.re);
        let im_raw = pi.map(|z| z.im);
        let im = 0.5 * (&im_raw + im_raw.transpose());
        let min_im_eig = im.clone().symmetric_eigen().eigenvalues.min();
        if !(min_im_eig > 0.0) {
            return Err(Error::DomainError(format!("Im Π not positive definite (λ_min = {min_im_eig:.3e})")));
        }
        let chol = im.clone().cholesky().ok_or_else(|| Error::DomainError("Cholesky of Im Π failed".into()))?;
        let chol_u = chol.l().transpose();
        let im_inv = chol.inverse();
        Ok(Self { pi, genus: g, re, im, im_inv, chol_u, min_im_eig, trunc_radius: TAIL_EXP })
    }

    pub fn im_pi(&self) -> &DMatrix<f64> {
        &self.im
    }

    pub fn im_pi_inverse(&self) -> &DMatrix<f64> {
        &self.im_inv
    }

    pub fn theta(&self, s: &[C64]) -> Result<C64> {
        Ok(self.evaluate(s)?.value())
    }

    pub fn log_theta(&self, s: &[C64]) -> Result<C64> {
        Ok(self.evaluate(s)?.ln())
    }

    pub fn evaluate(&self, s: &[C64]) -> Result<ThetaValue> {
        let g = self.genus;
        assert_eq!(s.len(), g);
        let x = DVector::from_iterator(g, s.iter().map(|z| z.re));
        let y = DVector::from_iterator(g, s.iter().map(|z| z.im));
        let c = -(&self.im_inv * &y);
        let log_scale = PI * c.dot(&(&self.im * &c));
        // Upper bound on the smallest exponent from the rounded centre.
        let n0 = c.map(|v| v.round());
        let d0 = PI * (&self.chol_u * (&n0 - &c)).norm_squared();
        let bound = (d0 + self.trunc_radius) / PI;
        let det_u: f64 = (0..g).map(|i| self.chol_u[(i, i)]).product();
        let unit_ball = PI.powf(g as f64 / 2.0) / gamma_half_int(g);
        let estimate = unit_ball * bound.powf(g as f64 / 2.0) / det_u;
        if estimate > MAX_POINTS {
            return Err(Error::TruncationOverflow(estimate));
        }
        let mut acc = Accumulator { sum: C64::new(0.0, 0.0), abs_sum: 0.0, terms: 0 };
        let mut n = vec![0i64; g];
        self.enumerate(g, 0.0, bound, &c, &x, &mut n, &mut acc);
        Ok(ThetaValue { log_scale, sum: acc.sum, abs_sum: acc.abs_sum, terms: acc.terms })
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        level: usize,
        partial: f64,
        bound: f64,
        c: &DVector<f64>,
        x: &DVector<f64>,
        n: &mut [i64],
        acc: &mut Accumulator,
    ) {
        let g = self.genus;
        if level == 0 {
            let v = DVector::from_iterator(g, n.iter().zip(c.iter()).map(|(&k, &ci)| k as f64 - ci));
            let q = (&self.chol_u * &v).norm_squared();
            let nf = DVector::from_iterator(g, n.iter().map(|&k| k as f64));
            let phase = PI * nf.dot(&(&self.re * &nf)) + 2.0 * PI * nf.dot(x);
            let mag = (-PI * q).exp();
            acc.sum += C64::from_polar(mag, phase.rem_euclid(2.0 * PI));
            acc.abs_sum += mag;
            acc.terms += 1;
            return;
        }
        let i = level - 1;
        let uii = self.chol_u[(i, i)];
        let t: f64 = (i + 1..g).map(|j| self.chol_u[(i, j)] * (n[j] as f64 - c[j])).sum();
        let room = bound - partial;
        if room < 0.0 {
            return;
        }
        let r = room.sqrt();
        let lo = (c[i] + (-t - r) / uii).ceil() as i64;
        let hi = (c[i] + (-t + r) / uii).floor() as i64;
        for k in lo..=hi {
            n[i] = k;
            let e = uii * (k as f64 - c[i]) + t;
            self.enumerate(i, partial + e * e, bound, c, x, n, acc);
        }
    }

    /// `θ[ε;δ](s) = exp(2iπ(ε·Πε/8 + ½ε·s + ¼ε·δ)) θ(s + δ/2 + Πε/2)`.
    pub fn theta_char(&self, eps: &[f64], delta: &[f64], s: &[C64]) -> Result<C64> {
        let g = self.genus;
        let e = DVector::from_iterator(g, eps.iter().map(|&v| C64::new(v, 0.0)));
        let pe = &self.pi * &e;
        let epe: C64 = e.iter().zip(pe.iter()).map(|(a, b)| a * b).sum();
        let es: C64 = eps.iter().zip(s).map(|(a, b)| b * *a).sum();
        let ed: f64 = eps.iter().zip(delta).map(|(a, b)| a * b).sum();
        let shifted: Vec<C64> = (0..g).map(|j| s[j] + 0.5 * delta[j] + 0.5 * pe[j]).collect();
        let pre = (C64::new(0.0, 2.0 * PI) * (epe / 8.0 + 0.5 * es + 0.25 * ed)).exp();
        Ok(pre * self.theta(&shifted)?)
    }

    /// `|θ(s+ΠM) - exp(2πi(-⟨M,s⟩ - ⟨M,ΠM⟩/2)) θ(s)| / |θ(s)|`, computed in
    /// logarithmic form.
    pub fn quasi_shift_residual(&self, s: &[C64], m: &[i64]) -> Result<f64> {
        let g = self.genus;
        let mv = DVector::from_iterator(g, m.iter().map(|&k| C64::new(k as f64, 0.0)));
        let pm = &self.pi * &mv;
        let shifted: Vec<C64> = (0..g).map(|j| s[j] + pm[j]).collect();
        let ms: C64 = mv.iter().zip(s).map(|(a, b)| a * b).sum();
        let mpm: C64 = mv.iter().zip(pm.iter()).map(|(a, b)| a * b).sum();
        let lhs = self.log_theta(&shifted)?;
        let rhs = self.log_theta(s)? + C64::new(0.0, 2.0 * PI) * (-ms - 0.5 * mpm);
        Ok(((lhs - rhs).exp() - 1.0).norm())
    }
}

struct Accumulator {
    sum: C64,
    abs_sum: f64,
    terms: usize,
}

/// `Γ(g/2 + 1)`.
fn gamma_half_int(g: usize) -> f64 {
    let mut v = if g % 2 == 0 { 1.0 } else { PI.sqrt() / 2.0 };
    let mut k = if g % 2 == 0 { 1.0 } else { 1.5 };
    while k <= g as f64 / 2.0 + 1e-9 {
        v *= k;
        k += 1.0;
    }
    v
}

/// Continuous logarithm of `θ` along a path `s(t)`, `t ∈ [t0, t1]`.
#[derive(Clone, Debug)]
pub struct LogThetaPath {
    pub nodes: Vec<(f64, C64)>,
    /// Number of `2πi` branch changes relative to the principal logarithm at
    /// the end point.
    pub winding: i64,
}

pub fn log_theta_path<F: Fn(f64) -> Vec<C64>>(
    ctx: &ThetaContext,
    path: F,
    t0: f64,
    t1: f64,
    nodes: usize,
) -> Result<LogThetaPath> {
    let eval = |t: f64| -> Result<C64> {
        let v = ctx.evaluate(&path(t))?;
        if v.relative_magnitude() < 1e-12 {
            return Err(Error::ZeroOnPath(t));
        }
        Ok(v.ln())
    };
    let mut out = vec![(t0, eval(t0)?)];
    let nodes = nodes.max(2);
    for k in 1..nodes {
        let t = t0 + (t1 - t0) * k as f64 / (nodes - 1) as f64;
        refine(&eval, &mut out, t, eval(t)?, 0)?;
    }
    let (_, last) = *out.last().unwrap();
    let principal = last.im.sin().atan2(last.im.cos());
    let winding = ((last.im - principal) / (2.0 * PI)).round() as i64;
    Ok(LogThetaPath { nodes: out, winding })
}

fn refine<E: Fn(f64) -> Result<C64>>(
    eval: &E,
    out: &mut Vec<(f64, C64)>,
    t: f64,
    raw: C64,
    depth: usize,
) -> Result<()> {
    let (tp, prev) = *out.last().unwrap();
    let mut v = raw;
    let k = ((prev.im - v.im) / (2.0 * PI)).round();
    v.im += 2.0 * PI * k;
    if (v.im - prev.im).abs() > PI / 2.0 && depth < 40 {
        let tm = 0.5 * (tp + t);
        refine(eval, out, tm, eval(tm)?, depth + 1)?;
        return refine(eval, out, t, raw, depth + 1);
    }
    out.push((t, v));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jacobi_sum() -> f64 {
        (-40i64..=40).map(|m| (-PI * (m * m) as f64).exp()).sum()
    }

    #[test]
    fn identity_period_matrix_genus_two() {
        let pi = DMatrix::from_diagonal(&DVector::from_element(2, C64::new(0.0, 1.0)));
        let ctx = ThetaContext::new(pi).unwrap();
        let v = ctx.theta(&[C64::new(0.0, 0.0); 2]).unwrap();
        let j = jacobi_sum();
        assert!((j - 1.086_434_811_213_308).abs() < 1e-14);
        assert!((v - C64::new(j * j, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn even_periodic_quasi_periodic() {
        let pi = DMatrix::from_row_slice(
            2,
            2,
            &[C64::new(0.3, 1.1), C64::new(-0.2, 0.4), C64::new(-0.2, 0.4), C64::new(0.1, 0.9)],
        );
        let ctx = ThetaContext::new(pi).unwrap();
        let s = [C64::new(0.27, -0.4), C64::new(-0.61, 0.33)];
        let a = ctx.theta(&s).unwrap();
        let b = ctx.theta(&[-s[0], -s[1]]).unwrap();
        let c = ctx.theta(&[s[0] + 1.0, s[1] - 2.0]).unwrap();
        assert!((a - b).norm() / a.norm() < 1e-13);
        assert!((a - c).norm() / a.norm() < 1e-13);
        assert!(ctx.quasi_shift_residual(&s, &[0, 0]).unwrap() < 1e-15);
        assert!(ctx.quasi_shift_residual(&s, &[1, -1]).unwrap() < 1e-12);
    }

    #[test]
    fn odd_characteristic_vanishes() {
        let pi = DMatrix::from_row_slice(1, 1, &[C64::new(0.2, 0.8)]);
        let ctx = ThetaContext::new(pi).unwrap();
        let v = ctx.theta_char(&[1.0], &[1.0], &[C64::new(0.0, 0.0)]).unwrap();
        assert!(v.norm() < 1e-14);
        let s = [C64::new(0.1, 0.05)];
        let a = ctx.theta_char(&[1.0], &[0.0], &s).unwrap();
        // θ[ε+2m; δ+2k] = (-1)^{ε·k} θ[ε; δ]
        let b = ctx.theta_char(&[3.0], &[0.0], &s).unwrap();
        assert!((a - b).norm() / a.norm() < 1e-12);
        let b = ctx.theta_char(&[1.0], &[2.0], &s).unwrap();
        assert!((a + b).norm() / a.norm() < 1e-12);
        assert!((ctx.theta_char(&[0.0], &[0.0], &s).unwrap() - ctx.theta(&s).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn large_imaginary_argument_stays_finite() {
        let ctx = ThetaContext::new(DMatrix::from_element(1, 1, C64::new(0.0, 0.05))).unwrap();
        let l = ctx.log_theta(&[C64::new(0.0, -30.0)]).unwrap();
        // Dominated by exp(π y²/Im Π): ln θ ≈ π·900/0.05
        assert!((l.re - PI * 900.0 / 0.05).abs() / l.re < 1e-3);
    }

    #[test]
    fn path_unwrapping_counts_winding() {
        let ctx = ThetaContext::new(DMatrix::from_element(1, 1, C64::new(0.0, 1.0))).unwrap();
        // s = t + 0.3i, t ∈ [0, 1], is closed in value; the zero sits at ½ + ½i.
        let p = log_theta_path(&ctx, |t| vec![C64::new(t, 0.3)], 0.0, 1.0, 64).unwrap();
        let (_, a) = p.nodes[0];
        let (_, b) = *p.nodes.last().unwrap();
        assert!((b.re - a.re).abs() < 1e-12);
        assert_eq!(((b.im - a.im) / (2.0 * PI)).round() as i64, p.winding);
        let flat = log_theta_path(&ctx, |_| vec![C64::new(0.3, 0.1)], 0.0, 1.0, 8).unwrap();
        assert!(flat.nodes.iter().all(|(_, v)| (v - flat.nodes[0].1).norm() < 1e-15));
    }
}
