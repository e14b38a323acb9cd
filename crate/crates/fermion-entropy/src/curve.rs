//! The hyperelliptic curve `w² = Π (z - λ_i)` of genus `g = 2n - 1`.
//!
//! Conventions (all fixed once here):
//!
//! * sheet one carries `w ~ +z^{2n}` at infinity with cuts exactly on the
//!   segments `Σ_i = [λ_{2i-1}, λ_{2i}]`;
//! * cut boundary values are taken on the right-hand side of the oriented
//!   segment `λ_{2i-1} → λ_{2i}`;
//! * cycle `a_m` (`m = 1..g`) encircles `Σ_{m+1}`, so its period is twice the
//!   segment integral over that cut;
//! * cycle `b_k` runs through the gaps `[λ_2, λ_3], …, [λ_{2k}, λ_{2k+1}]` on
//!   both sheets, so its period is twice the sum of those gap integrals;
//! * the Abel map is based at `λ_1`; at a general point it is continued
//!   along a vertical ray from `±i∞`, whichever side of the branch-point
//!   polyline the point lies on.
//!
//! With these choices `Π` is symmetric with positive-definite imaginary
//! part, `κ = ω(∞)`, and `θ(ω(z))` vanishes at `λ_3, λ_5, …, λ_{4n-1}`.

use crate::error::{Error, Result};
use crate::quad::{adaptive_from, chebyshev_angles};
use crate::symbol::{cut_factor, BranchPoints, Origin, SymbolData};
use crate::theta::ThetaContext;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::f64::consts::PI;

const I: C64 = C64 { re: 0.0, im: 1.0 };
const SEG_TOL: f64 = 1e-11;
const PATH_TOL: f64 = 1e-12;
/// Points closer than this to a cut cannot be routed.
pub const ROUTING_CLEARANCE: f64 = 1e-9;

/// `ω(λ_i) = ½N + ½ΠM`.
#[derive(Clone, Debug, Serialize)]
pub struct HalfPeriod {
    pub n: Vec<i64>,
    pub m: Vec<i64>,
    /// Distance of the quadrature value from the reconstructed half period.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct CurveData {
    pub n: usize,
    pub genus: usize,
    pub branch: BranchPoints,
    pub lambda: Vec<C64>,
    /// `J[s][k] = ∫ z^k / w dz` over segment `s` (`[λ_{s+1}, λ_{s+2}]`).
    pub segment_integrals: Vec<Vec<C64>>,
    /// Monomial a-periods `A[m][k]`.
    pub monomial_periods: DMatrix<C64>,
    /// `dω_j = Σ_k C[j,k] z^k / w dz`.
    pub basis_coeffs: DMatrix<C64>,
    pub pi: DMatrix<C64>,
    /// Abel map at the branch points, by quadrature along the polyline.
    pub omega_branch: Vec<DVector<C64>>,
    pub half_periods: Vec<HalfPeriod>,
    pub riemann_k: DVector<C64>,
    pub tau_half: DVector<C64>,
    /// `dΔ = Σ_k d_k z^k / w dz`, `k = 0..2n-1`, leading `d_{2n-1} = -½`.
    pub delta_coeffs: Vec<C64>,
    /// `κ_j = (1/2πi) ∮_{b_j} dΔ`.
    pub kappa: DVector<C64>,
    pub omega_inf: DVector<C64>,
    /// `Δ₀ = lim_{z→∞} (Δ(z) + ½ log(z - λ_1))`.
    pub delta0: C64,
    pub chebyshev_nodes: usize,
}

/// Invariant residuals of a constructed curve.
#[derive(Clone, Debug, Serialize)]
pub struct CurveReport {
    pub genus: usize,
    pub symmetry_residual: f64,
    pub min_im_eigenvalue: f64,
    pub normalization_residual: f64,
    pub kappa_residual: f64,
    pub half_period_residual: f64,
    /// `|θ(ω(λ_i))|` relative to the term scale, `i = 1..4n`.
    pub theta_at_branch_points: Vec<f64>,
}

impl CurveReport {
    /// Largest relative `|θ(ω(λ_i))|` over odd `i ≥ 3`.
    pub fn theta_odd_max(&self) -> f64 {
        self.theta_at_branch_points.iter().enumerate().skip(2).step_by(2).map(|(_, v)| *v).fold(0.0, f64::max)
    }

    /// Smallest relative `|θ(ω(λ_i))|` over even `i`.
    pub fn theta_even_min(&self) -> f64 {
        self.theta_at_branch_points.iter().skip(1).step_by(2).cloned().fold(f64::INFINITY, f64::min)
    }
}

impl CurveData {
    pub fn new(sym: &SymbolData) -> Result<Self> {
        let branch = sym.branch()?.clone();
        branch.check_geometry()?;
        Self::from_branch_points(branch)
    }

    pub fn from_branch_points(branch: BranchPoints) -> Result<Self> {
        let n = branch.n();
        let g = 2 * n - 1;
        let lambda = branch.lambda.clone();
        let (segment_integrals, nodes) = segment_integrals(&branch, 2 * n)?;
        let j = &segment_integrals;

        let a = DMatrix::from_fn(g, g, |m, k| 2.0 * j[2 * (m + 1)][k]);
        let sv = a.singular_values();
        let cond = sv.max() / sv.min();
        if !(cond < 1e12) {
            return Err(Error::IllConditioned(cond));
        }
        let basis_coeffs = a.transpose().try_inverse().ok_or(Error::IllConditioned(f64::INFINITY))?;
        let normalized: Vec<DVector<C64>> = j
            .iter()
            .map(|row| DVector::from_fn(g, |jj, _| (0..g).map(|k| basis_coeffs[(jj, k)] * row[k]).sum()))
            .collect();

        let mut omega_branch = vec![DVector::zeros(g)];
        for s in &normalized {
            let next = omega_branch.last().unwrap() + s;
            omega_branch.push(next);
        }
        let mut pi = DMatrix::zeros(g, g);
        let mut acc = DVector::<C64>::zeros(g);
        for k in 1..=g {
            acc += &normalized[2 * k - 1];
            pi.set_column(k - 1, &acc.scale(2.0));
        }

        // Third-kind differential: a-periods of z^{2n-1} + Σ c_k z^k vanish.
        let rhs = DVector::from_fn(g, |m, _| -2.0 * j[2 * (m + 1)][2 * n - 1]);
        let c = a.clone().lu().solve(&rhs).ok_or(Error::IllConditioned(f64::INFINITY))?;
        let mut delta_coeffs: Vec<C64> = c.iter().map(|v| -0.5 * v).collect();
        delta_coeffs.push(C64::new(-0.5, 0.0));
        let delta_seg: Vec<C64> = j.iter().map(|row| row.iter().zip(&delta_coeffs).map(|(x, d)| x * d).sum()).collect();
        let mut kappa = DVector::zeros(g);
        let mut acc = C64::new(0.0, 0.0);
        for k in 1..=g {
            acc += delta_seg[2 * k - 1];
            kappa[k - 1] = 2.0 * acc / (2.0 * PI * I);
        }

        let mut curve = CurveData {
            n,
            genus: g,
            branch,
            lambda,
            segment_integrals,
            monomial_periods: a,
            basis_coeffs,
            pi,
            omega_branch,
            half_periods: vec![],
            riemann_k: DVector::zeros(g),
            tau_half: DVector::zeros(g),
            delta_coeffs,
            kappa,
            omega_inf: DVector::zeros(g),
            delta0: C64::new(0.0, 0.0),
            chebyshev_nodes: nodes,
        };
        curve.half_periods = curve.fit_half_periods()?;
        let k: DVector<C64> = -(1..=g).map(|k| curve.abel_branch_point(2 * k)).fold(DVector::zeros(g), |s, v| s + v);
        let mut tau = -k.clone();
        for (i, o) in curve.branch.origin.iter().enumerate().skip(1) {
            if matches!(o, Origin::Reciprocal(_)) {
                tau -= curve.abel_branch_point(i);
            }
        }
        curve.riemann_k = k;
        curve.tau_half = tau;
        let (om, d0) = curve.infinity_values();
        curve.omega_inf = om;
        curve.delta0 = d0;
        Ok(curve)
    }

    fn fit_half_periods(&self) -> Result<Vec<HalfPeriod>> {
        let ctx = ThetaContext::new(self.symmetric_pi())?;
        let yinv = ctx.im_pi_inverse();
        let x = self.pi.map(|z| z.re);
        Ok(self
            .omega_branch
            .iter()
            .map(|w| {
                let two = w.scale(2.0);
                let m = yinv * two.map(|z| z.im);
                let nn = two.map(|z| z.re) - &x * &m;
                let mi: Vec<i64> = m.iter().map(|v| v.round() as i64).collect();
                let ni: Vec<i64> = nn.iter().map(|v| v.round() as i64).collect();
                let rebuilt = self.half_period_vector(&ni, &mi);
                HalfPeriod { n: ni, m: mi, residual: (w - rebuilt).camax() }
            })
            .collect())
    }

    /// `½N + ½ΠM`.
    pub fn half_period_vector(&self, n: &[i64], m: &[i64]) -> DVector<C64> {
        let g = self.genus;
        let mv = DVector::from_fn(g, |i, _| C64::new(m[i] as f64, 0.0));
        let nv = DVector::from_fn(g, |i, _| C64::new(n[i] as f64, 0.0));
        (nv + &self.pi * mv).scale(0.5)
    }

    /// `ω(λ_{i+1})` from the half-period table (zero-based `i`).
    pub fn abel_branch_point(&self, i: usize) -> DVector<C64> {
        let h = &self.half_periods[i];
        self.half_period_vector(&h.n, &h.m)
    }

    /// `(Π + Πᵀ)/2`, the matrix handed to the theta function.
    pub fn symmetric_pi(&self) -> DMatrix<C64> {
        (&self.pi + self.pi.transpose()).scale(0.5)
    }

    pub fn theta_context(&self) -> Result<ThetaContext> {
        ThetaContext::new(self.symmetric_pi())
    }

    /// `e = (0, …, 0, 1, …, 1)` with the last `n` entries equal to one.
    pub fn e_vector(&self) -> DVector<C64> {
        DVector::from_fn(self.genus, |i, _| C64::new(if i + 1 >= self.n { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn w(&self, z: C64) -> C64 {
        self.branch.w(z)
    }

    /// `(dω_1/dz, …, dω_g/dz, dΔ/dz)` at `z` on sheet one.
    pub fn differentials(&self, z: C64) -> Vec<C64> {
        let g = self.genus;
        let w = self.w(z);
        let mut powers = Vec::with_capacity(g + 1);
        let mut zk = C64::new(1.0, 0.0);
        for _ in 0..=g {
            powers.push(zk / w);
            zk *= z;
        }
        let mut out: Vec<C64> = (0..g).map(|j| (0..g).map(|k| self.basis_coeffs[(j, k)] * powers[k]).sum()).collect();
        out.push(powers.iter().zip(&self.delta_coeffs).map(|(p, d)| p * d).sum());
        out
    }

    fn infinity_values(&self) -> (DVector<C64>, C64) {
        let g = self.genus;
        let l1 = self.lambda[0];
        let f = |t: f64| -> Vec<C64> {
            if t <= 0.0 || t >= 1.0 {
                return vec![C64::new(0.0, 0.0); g + 1];
            }
            let u = t * t / ((1.0 - t) * (1.0 - t));
            let du = 2.0 * t / (1.0 - t).powi(3);
            let mut d = self.differentials(l1 - u);
            for v in d.iter_mut().take(g) {
                *v *= -du;
            }
            d[g] = -(d[g] - 0.5 / (u + 1.0)) * du;
            d
        };
        let breaks = [0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.97, 0.995, 1.0];
        let r = adaptive_from(f, &breaks, g + 1, PATH_TOL, 20000);
        let om = DVector::from_fn(g, |i, _| r.value[i]);
        (om, r.value[g] + 0.5 * PI * I)
    }

    /// `+1` if `z` lies above the branch-point polyline, `-1` if below.
    pub fn side(&self, z: C64) -> Result<f64> {
        let l = &self.lambda;
        let x = z.re;
        let mut ys = Vec::new();
        if x <= l[0].re {
            ys.push(l[0].im);
        } else if x >= l[l.len() - 1].re {
            ys.push(l[l.len() - 1].im);
        } else {
            for p in l.windows(2) {
                let (a, b) = (p[0], p[1]);
                if (b.re - a.re).abs() < 1e-14 {
                    if (x - a.re).abs() < 1e-14 {
                        ys.push(a.im);
                        ys.push(b.im);
                    }
                } else if a.re.min(b.re) <= x && x <= a.re.max(b.re) {
                    let t = (x - a.re) / (b.re - a.re);
                    ys.push(a.im + t * (b.im - a.im));
                }
            }
        }
        let hi = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = ys.iter().cloned().fold(f64::INFINITY, f64::min);
        if z.im > hi {
            Ok(1.0)
        } else if z.im < lo {
            Ok(-1.0)
        } else if self.branch.distance_to_cuts(z) >= ROUTING_CLEARANCE {
            // On a gap: the upper limit is used.
            Ok(1.0)
        } else {
            Err(Error::PathRoutingFailure(z.to_string()))
        }
    }

    /// Abel map and regularised third-kind integral at `z` on sheet one:
    /// `(ω(z), Δ(z) + ½ log(z - λ_1))`.
    pub fn abel_and_delta(&self, z: C64) -> Result<(DVector<C64>, C64)> {
        if self.branch.distance_to_cuts(z) < ROUTING_CLEARANCE {
            return Err(Error::PathRoutingFailure(z.to_string()));
        }
        let sg = self.side(z)?;
        let g = self.genus;
        let l1 = self.lambda[0];
        let scale = 1.0;
        let f = |t: f64| -> Vec<C64> {
            if t <= 0.0 {
                return vec![C64::new(0.0, 0.0); g + 1];
            }
            let zeta = z + I * sg * scale * (1.0 - t) / t;
            let dz = -I * sg * scale / (t * t);
            let mut d = self.differentials(zeta);
            d[g] += 0.5 / (zeta - l1);
            d.into_iter().map(|v| v * dz).collect()
        };
        let breaks = [0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0];
        let r = adaptive_from(f, &breaks, g + 1, PATH_TOL, 20000);
        let om = &self.omega_inf + DVector::from_fn(g, |i, _| r.value[i]);
        Ok((om, self.delta0 + r.value[g]))
    }

    /// `ω(z)`; sheet two is the negative of sheet one.
    pub fn abel_map(&self, z: C64, sheet: u8) -> Result<DVector<C64>> {
        let (om, _) = self.abel_and_delta(z)?;
        Ok(if sheet == 2 { -om } else { om })
    }

    /// `Δ(z)`, with the logarithm's cut along the horizontal ray left of
    /// `λ_1`; sheet two is the negative of sheet one.
    pub fn delta_integral(&self, z: C64, sheet: u8) -> Result<C64> {
        let (_, reg) = self.abel_and_delta(z)?;
        let d = reg - 0.5 * (z - self.lambda[0]).ln();
        Ok(if sheet == 2 { -d } else { d })
    }

    /// Contour integral of `z^k / w` around cut `i` (zero-based).
    pub fn a_period(&self, k: usize, i: usize) -> C64 {
        2.0 * self.segment_integrals[2 * i][k]
    }

    pub fn report(&self) -> Result<CurveReport> {
        let ctx = self.theta_context()?;
        let g = self.genus;
        let sym = (&self.pi - self.pi.transpose()).camax();
        let norm = (&self.monomial_periods * self.basis_coeffs.transpose() - DMatrix::identity(g, g)).camax();
        let theta_at = self
            .omega_branch
            .iter()
            .map(|w| ctx.evaluate(w.as_slice()).map(|v| v.relative_magnitude()))
            .collect::<Result<Vec<_>>>()?;
        Ok(CurveReport {
            genus: g,
            symmetry_residual: sym,
            min_im_eigenvalue: ctx.min_im_eig,
            normalization_residual: norm,
            kappa_residual: (&self.kappa - &self.omega_inf).camax(),
            half_period_residual: self.half_periods.iter().map(|h| h.residual).fold(0.0, f64::max),
            theta_at_branch_points: theta_at,
        })
    }
}

/// Segment integrals `∫ z^k / w dz`, `k < kmax`, over every segment of the
/// polyline, with the Chebyshev substitution `z = m - h cos t` removing the
/// square-root end-point singularities. Node counts double until two
/// successive results agree to [`SEG_TOL`].
pub fn segment_integrals(branch: &BranchPoints, kmax: usize) -> Result<(Vec<Vec<C64>>, usize)> {
    let mut n = 64;
    let mut prev = segment_integrals_fixed(branch, kmax, n);
    loop {
        let next = segment_integrals_fixed(branch, kmax, 2 * n);
        let scale = next.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
        let diff = prev.iter().flatten().zip(next.iter().flatten()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        n *= 2;
        if diff <= SEG_TOL * scale {
            return Ok((next, n));
        }
        if n >= 1 << 16 {
            return Err(Error::QuadratureFailure(format!("segment integrals disagree by {:.3e}", diff / scale)));
        }
        prev = next;
    }
}

fn segment_integrals_fixed(branch: &BranchPoints, kmax: usize, nodes: usize) -> Vec<Vec<C64>> {
    let l = &branch.lambda;
    let t = chebyshev_angles(nodes);
    let wt = PI / nodes as f64;
    (0..l.len() - 1)
        .map(|s| {
            let (a, b) = (l[s], l[s + 1]);
            let m = 0.5 * (a + b);
            let h = 0.5 * (b - a);
            let mut row = vec![C64::new(0.0, 0.0); kmax];
            for &ti in &t {
                let z = m - h * ti.cos();
                // integrand z^k · h sin t / w
                let base = if s % 2 == 0 {
                    // right-hand boundary value: w = -(i h sin t) Π_{j≠i} f_j
                    -1.0 / (I * branch.w_skip(z, s / 2))
                } else {
                    h * ti.sin() / branch.w(z)
                };
                let mut zk = C64::new(wt, 0.0);
                for r in row.iter_mut() {
                    *r += zk * base;
                    zk *= z;
                }
            }
            row
        })
        .collect()
}

/// Left-hand boundary value of the cut factor on `[a, b]` at `z = m - h cos t`.
pub fn cut_factor_plus(a: C64, b: C64, t: f64) -> C64 {
    I * 0.5 * (b - a) * t.sin()
}

#[allow(dead_code)]
fn boundary_check(a: C64, b: C64, t: f64) -> C64 {
    let m = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let z = m - h * t.cos();
    let nrm = I * h / h.norm();
    cut_factor(z + 1e-9 * nrm, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ChainModel;

    fn curve_from_roots(r: &[C64]) -> CurveData {
        CurveData::new(&SymbolData::new(&ChainModel::from_roots(r).unwrap()).unwrap()).unwrap()
    }

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn plus_side_boundary_value() {
        let (a, b) = (C64::new(0.2, -0.1), C64::new(0.6, 0.3));
        for t in [0.3, 1.2, 2.5] {
            let near = boundary_check(a, b, t);
            assert!((near - cut_factor_plus(a, b, t)).norm() < 1e-6);
        }
    }

    #[test]
    fn genus_one_invariants() {
        let c = CurveData::new(&SymbolData::new(&ChainModel::xy(0.8, 0.5).unwrap()).unwrap()).unwrap();
        let r = c.report().unwrap();
        assert!(r.symmetry_residual < 1e-12);
        assert!(r.normalization_residual < 1e-12);
        assert!(r.kappa_residual < 1e-8, "{r:?}");
        assert!(r.theta_odd_max() < 1e-10 && r.theta_even_min() > 1e-6, "{r:?}");
        assert!(c.pi[(0, 0)].im > 0.0);
    }

    #[test]
    fn abel_map_matches_half_periods_near_branch_points() {
        let c = curve_from_roots(&[C64::new(0.5, 0.3), C64::new(0.5, -0.3), C64::new(2.5, 1.0), C64::new(2.5, -1.0)]);
        let ctx = c.theta_context().unwrap();
        let yinv = ctx.im_pi_inverse().clone();
        for (i, &l) in c.lambda.iter().enumerate() {
            // Step away from the cut attached at λ_i; ω - ω(λ_i) ~ a√ε + bε^{3/2}.
            let (a, b) = c.branch.cut(i / 2);
            let dir = if i % 2 == 0 { a - b } else { b - a };
            let dir = dir / dir.norm();
            let eps = 1e-4;
            let f = |e: f64| c.abel_map(l + e * dir, 1).unwrap();
            let om = f(eps / 4.0).scale(2.0) - f(eps);
            let d = &om - c.abel_branch_point(i);
            let m = &yinv * d.map(|v| v.im);
            let mr = m.map(|v| C64::new(v.round(), 0.0));
            let rest = &d - &c.pi * &mr;
            let res = rest.iter().map(|v| (v.re - v.re.round()).abs() + v.im.abs()).fold(0.0, f64::max);
            assert!(res < 1e-5, "branch point {i}: {res}");
        }
    }

    #[test]
    fn delta_antisymmetry_and_growth() {
        let c = curve_from_roots(&[re(0.25), re(0.6), re(1.0 / 0.45), re(3.5)]);
        let z = C64::new(0.9, 0.7);
        assert!((c.delta_integral(z, 1).unwrap() + c.delta_integral(z, 2).unwrap()).norm() < 1e-15);
        let d = |r: f64| c.abel_and_delta(C64::new(0.0, r)).unwrap().1 - c.delta0;
        let (a, b) = (d(1e3).norm(), d(1e4).norm());
        assert!(a < 1e-2 && (a / b - 10.0).abs() < 0.5, "{a} {b}");
        let w = c.abel_and_delta(C64::new(0.0, 1e8)).unwrap().0 - &c.omega_inf;
        assert!(w.camax() < 1e-7);
    }

    #[test]
    fn path_independence_above_and_below_outside_span() {
        let c = curve_from_roots(&[re(0.3), re(0.6), re(2.0), re(3.5)]);
        // To the right of every branch point both vertical routes are valid.
        let z = C64::new(5.0, 0.0);
        let above = c.abel_and_delta(z + C64::new(0.0, 1e-8)).unwrap();
        let below = c.abel_and_delta(z - C64::new(0.0, 1e-8)).unwrap();
        assert!((&above.0 - &below.0).camax() < 1e-7);
        // The regularised Δ carries the jump of ½log(z - λ_1) only.
        assert!((above.1 - below.1).norm() < 1e-7);
    }

    fn agm_k(k: f64) -> f64 {
        let (mut a, mut b) = (1.0, (1.0 - k * k).sqrt());
        for _ in 0..40 {
            (a, b) = (0.5 * (a + b), (a * b).sqrt());
        }
        PI / (2.0 * a)
    }

    #[test]
    fn genus_one_period_matches_elliptic_modulus() {
        for (alpha, gamma) in [(0.8, 0.5), (0.5, 0.3), (0.9, 0.7)] {
            let c = CurveData::new(&SymbolData::new(&ChainModel::xy(alpha, gamma).unwrap()).unwrap()).unwrap();
            let e: Vec<f64> = c.lambda.iter().map(|z| z.re).collect();
            let k2 = (e[1] - e[0]) * (e[3] - e[2]) / ((e[2] - e[0]) * (e[3] - e[1]));
            let want = agm_k((1.0 - k2).sqrt()) / agm_k(k2.sqrt());
            assert!((c.pi[(0, 0)] - C64::new(0.0, want)).norm() < 1e-10, "{alpha} {gamma}: {} vs {want}", c.pi[(0, 0)]);
        }
    }

    #[test]
    fn genus_three_invariants() {
        let r = [C64::from_polar(0.79, 0.3), C64::from_polar(0.79, -0.3), re(1.25), re(2.2)];
        let c = curve_from_roots(&r);
        assert_eq!(c.genus, 3);
        let rep = c.report().unwrap();
        assert!(rep.symmetry_residual < 1e-10, "{rep:?}");
        assert!(rep.min_im_eigenvalue > 0.0);
        assert!(rep.kappa_residual < 1e-8, "{rep:?}");
        assert!(rep.half_period_residual < 1e-9, "{rep:?}");
        assert!(rep.theta_odd_max() < 1e-8 && rep.theta_even_min() > 1e-6, "{rep:?}");
    }
}
