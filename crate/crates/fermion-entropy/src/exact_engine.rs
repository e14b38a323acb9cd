//! Finite-L ground truth: Fourier coefficients `g_l`, the block-Toeplitz
//! correlation matrix `C_L`, its ν-spectrum, the exact entropy and the
//! determinant `D_L(λ) = det(iλ + C_L)`.

use crate::asymptotics::{Diagnostics, EntropyEstimate, Method};
use crate::error::{Error, Result};
use crate::model::{build_q, ChainModel};
use crate::quad::gauss_legendre;
use crate::symbol::SymbolData;
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;
use std::f64::consts::PI;

pub const TAIL_TOL: f64 = 1e-12;
const PAIR_TOL: f64 = 1e-8;
const MAX_GRID: usize = 1 << 22;

/// Real Fourier coefficients `g_l`, `|l| ≤ max_index`, of the circle symbol.
#[derive(Clone, Debug, Serialize)]
pub struct FourierCoefficients {
    pub max_index: usize,
    values: Vec<f64>,
    /// `max(|g_{max_index}|, |g_{-max_index}|)`.
    pub tail: f64,
    /// Largest discarded imaginary part.
    pub imag_residue: f64,
}

impl FourierCoefficients {
    pub fn from_values(max_index: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), 2 * max_index + 1);
        let tail = values[0].abs().max(values[2 * max_index].abs());
        Self { max_index, values, tail, imag_residue: 0.0 }
    }

    /// `g_l`; zero outside the stored range.
    pub fn get(&self, l: i64) -> f64 {
        if l.unsigned_abs() as usize > self.max_index {
            0.0
        } else {
            self.values[(l + self.max_index as i64) as usize]
        }
    }

    fn from_complex(max_index: usize, c: impl Fn(i64) -> C64) -> Self {
        let m = max_index as i64;
        let mut imag: f64 = 0.0;
        let values = (-m..=m)
            .map(|l| {
                let v = c(l);
                imag = imag.max(v.im.abs());
                v.re
            })
            .collect();
        let mut out = Self::from_values(max_index, values);
        out.imag_residue = imag;
        out
    }
}

fn circle_samples(sym: &SymbolData, grid: usize) -> Result<Vec<C64>> {
    (0..grid).map(|k| sym.eval_g_circle(2.0 * PI * k as f64 / grid as f64)).collect()
}

fn fft_coefficients(sym: &SymbolData, grid: usize) -> Result<Vec<C64>> {
    let mut buf = circle_samples(sym, grid)?;
    FftPlanner::new().plan_fft_forward(grid).process(&mut buf);
    let s = 1.0 / grid as f64;
    Ok(buf.into_iter().map(|c| c * s).collect())
}

/// Coefficients from a uniform `grid`-point transform; fails with
/// `TailTooLarge` when `|g_{±max_index}|` exceeds [`TAIL_TOL`].
pub fn fourier_coefficients(sym: &SymbolData, max_index: usize, grid: usize) -> Result<FourierCoefficients> {
    if !grid.is_power_of_two() || grid < 8 * max_index.max(1) {
        return Err(Error::Config(format!("grid {grid} must be a power of two ≥ 8·max_index")));
    }
    let c = fft_coefficients(sym, grid)?;
    let out = FourierCoefficients::from_complex(max_index, |l| c[l.rem_euclid(grid as i64) as usize]);
    if out.tail > TAIL_TOL {
        return Err(Error::TailTooLarge { tail: out.tail, tol: TAIL_TOL });
    }
    Ok(out)
}

/// Coefficients for building `C_L` with `L = max_index + 1`. Analytic symbols
/// use the discrete transform with the grid doubled until aliasing is below
/// double precision; critical symbols (jumps on the circle) are integrated
/// panel-wise between the zeros of `q`.
pub fn symbol_coefficients(sym: &SymbolData, max_index: usize) -> Result<FourierCoefficients> {
    if sym.is_critical() {
        return piecewise_coefficients(sym, max_index);
    }
    let mut grid = (8 * (max_index + 1)).next_power_of_two().max(64);
    loop {
        let c = fft_coefficients(sym, grid)?;
        let alias = c[grid / 2].norm().max(c[grid / 2 - 1].norm());
        if alias < 1e-17 || grid >= MAX_GRID {
            return Ok(FourierCoefficients::from_complex(max_index, |l| c[l.rem_euclid(grid as i64) as usize]));
        }
        grid *= 2;
    }
}

fn piecewise_coefficients(sym: &SymbolData, max_index: usize) -> Result<FourierCoefficients> {
    let mut breaks: Vec<f64> = sym
        .roots
        .iter()
        .filter(|z| (1.0 - z.norm()).abs() < crate::symbol::CRIT_TOL)
        .map(|z| z.arg().rem_euclid(2.0 * PI))
        .collect();
    breaks.push(0.0);
    breaks.push(2.0 * PI);
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let (x, w) = gauss_legendre(24);
    let hmax = (PI / (max_index as f64 + 1.0)).min(0.25);
    let mut nodes = Vec::new();
    for p in breaks.windows(2) {
        let pieces = ((p[1] - p[0]) / hmax).ceil().max(1.0) as usize;
        let h = (p[1] - p[0]) / pieces as f64;
        for k in 0..pieces {
            let c = p[0] + (k as f64 + 0.5) * h;
            for (xi, wi) in x.iter().zip(&w) {
                let t = c + 0.5 * h * xi;
                let q = sym.q.eval(C64::from_polar(1.0, t));
                let g = if q.norm() == 0.0 { C64::new(0.0, 0.0) } else { q / q.norm() };
                nodes.push((t, 0.5 * h * wi / (2.0 * PI), g));
            }
        }
    }
    let m = max_index as i64;
    let vals: Vec<C64> = (-m..=m)
        .into_par_iter()
        .map(|l| nodes.iter().map(|&(t, w, g)| g * C64::from_polar(w, -(l as f64) * t)).sum())
        .collect();
    Ok(FourierCoefficients::from_complex(max_index, |l| vals[(l + m) as usize]))
}

/// `2L×2L` antisymmetric matrix with blocks `[[0, g_{j-k}], [-g_{k-j}, 0]]`.
#[derive(Clone, Debug)]
pub struct CorrelationMatrix {
    pub l: usize,
    pub entries: DMatrix<f64>,
}

pub fn build_correlation_matrix(g: &FourierCoefficients, l: usize) -> CorrelationMatrix {
    let mut c = DMatrix::zeros(2 * l, 2 * l);
    for j in 0..l {
        for k in 0..l {
            c[(2 * j, 2 * k + 1)] = g.get(j as i64 - k as i64);
            c[(2 * j + 1, 2 * k)] = -g.get(k as i64 - j as i64);
        }
    }
    CorrelationMatrix { l, entries: c }
}

/// `A_{jk} = g_{j-k}`: the singular values of `C_L` are those of `A`, each
/// appearing twice.
pub fn scalar_toeplitz(g: &FourierCoefficients, l: usize) -> DMatrix<f64> {
    DMatrix::from_fn(l, l, |j, k| g.get(j as i64 - k as i64))
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumResult {
    pub l: usize,
    /// Descending, clamped to `[0, 1]`.
    pub nu: Vec<f64>,
}

fn finish_spectrum(l: usize, mut nu: Vec<f64>) -> SpectrumResult {
    nu.iter_mut().for_each(|v| *v = v.clamp(0.0, 1.0));
    nu.sort_by(|a, b| b.partial_cmp(a).unwrap());
    SpectrumResult { l, nu }
}

/// ν-spectrum of a correlation matrix. Matrices with the Majorana block
/// pattern are reduced to the `L×L` matrix `A`; anything else goes through a
/// full SVD whose singular values must pair up.
pub fn spectrum(c: &CorrelationMatrix) -> Result<SpectrumResult> {
    let l = c.l;
    let e = &c.entries;
    let structured = (0..l).all(|j| {
        (0..l).all(|k| {
            e[(2 * j, 2 * k)] == 0.0
                && e[(2 * j + 1, 2 * k + 1)] == 0.0
                && e[(2 * j + 1, 2 * k)] == -e[(2 * k, 2 * j + 1)]
        })
    });
    if structured {
        let a = DMatrix::from_fn(l, l, |j, k| e[(2 * j, 2 * k + 1)]);
        return Ok(finish_spectrum(l, a.singular_values().iter().cloned().collect()));
    }
    let mut s: Vec<f64> = e.singular_values().iter().cloned().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut nu = Vec::with_capacity(l);
    for pair in s.chunks(2) {
        let gap = (pair[0] - pair[1]).abs();
        if gap > PAIR_TOL {
            return Err(Error::PairingFailure(gap));
        }
        if pair[0] > 1.0 + 1e-10 {
            return Err(Error::DomainError(format!("singular value {} exceeds 1", pair[0])));
        }
        nu.push(0.5 * (pair[0] + pair[1]));
    }
    Ok(finish_spectrum(l, nu))
}

/// Spectrum straight from the coefficients, skipping the `2L×2L` matrix.
pub fn spectrum_from_coefficients(g: &FourierCoefficients, l: usize) -> SpectrumResult {
    if l == 0 {
        return SpectrumResult { l, nu: vec![] };
    }
    finish_spectrum(l, scalar_toeplitz(g, l).singular_values().iter().cloned().collect())
}

/// `e(x, ν) = -((x+ν)/2) log((x+ν)/2) - ((x-ν)/2) log((x-ν)/2)`, `0 log 0 = 0`.
pub fn binary_entropy(x: f64, nu: f64) -> Result<f64> {
    if nu.abs() > x {
        return Err(Error::DomainError(format!("|ν| = {} exceeds x = {x}", nu.abs())));
    }
    let h = |p: f64| if p > 0.0 { -p * p.ln() } else { 0.0 };
    Ok(h(0.5 * (x + nu)) + h(0.5 * (x - nu)))
}

pub fn entropy_from_spectrum(s: &SpectrumResult) -> f64 {
    s.nu.iter().map(|&v| binary_entropy(1.0, v).unwrap()).sum()
}

/// `S = Σ_j e(1, ν_j)` for a block of length `l`.
pub fn entropy_exact(sym: &SymbolData, l: usize) -> Result<EntropyEstimate> {
    if l == 0 {
        return Ok(EntropyEstimate { value: 0.0, method: Method::Exact, diagnostics: Diagnostics::default() });
    }
    let g = symbol_coefficients(sym, l - 1)?;
    let spec = spectrum_from_coefficients(&g, l);
    let mut d = Diagnostics::default();
    d.extra.insert("block_length".into(), l as f64);
    d.extra.insert("fourier_imag_residue".into(), g.imag_residue);
    d.extra.insert("nu_max".into(), spec.nu.first().copied().unwrap_or(0.0));
    d.extra.insert("nu_min".into(), spec.nu.last().copied().unwrap_or(0.0));
    Ok(EntropyEstimate { value: entropy_from_spectrum(&spec), method: Method::Exact, diagnostics: d })
}

/// Exact entropies for several block lengths (in parallel; output order
/// follows `ls`).
pub fn entropy_scan(sym: &SymbolData, ls: &[usize]) -> Result<Vec<(usize, f64)>> {
    let lmax = ls.iter().copied().max().unwrap_or(0);
    if lmax == 0 {
        return Ok(ls.iter().map(|&l| (l, 0.0)).collect());
    }
    let g = symbol_coefficients(sym, lmax - 1)?;
    Ok(ls.par_iter().map(|&l| (l, entropy_from_spectrum(&spectrum_from_coefficients(&g, l)))).collect())
}

/// `D_L(λ) = (-1)^L Π (λ² - ν_j²)`.
pub fn toeplitz_determinant_spectral(s: &SpectrumResult, lambda: C64) -> C64 {
    let sign = if s.l % 2 == 0 { 1.0 } else { -1.0 };
    s.nu.iter().fold(C64::new(sign, 0.0), |acc, &v| acc * (lambda * lambda - v * v))
}

/// `log D_L(λ)` from the spectrum (principal branch per factor).
pub fn log_toeplitz_determinant_spectral(s: &SpectrumResult, lambda: C64) -> C64 {
    let base = if s.l % 2 == 0 { C64::new(0.0, 0.0) } else { C64::new(0.0, PI) };
    s.nu.iter().fold(base, |acc, &v| acc + (lambda * lambda - v * v).ln())
}

fn block_toeplitz(g: &FourierCoefficients, lambda: C64, l: usize) -> DMatrix<C64> {
    let il = C64::new(0.0, 1.0) * lambda;
    let mut m = DMatrix::from_element(2 * l, 2 * l, C64::new(0.0, 0.0));
    for j in 0..l {
        m[(2 * j, 2 * j)] = il;
        m[(2 * j + 1, 2 * j + 1)] = il;
        for k in 0..l {
            m[(2 * j, 2 * k + 1)] = C64::new(g.get(j as i64 - k as i64), 0.0);
            m[(2 * j + 1, 2 * k)] = C64::new(-g.get(k as i64 - j as i64), 0.0);
        }
    }
    m
}

/// `det T_L[Φ]` by LU factorisation of the dense block-Toeplitz matrix.
pub fn toeplitz_determinant_direct(g: &FourierCoefficients, lambda: C64, l: usize) -> C64 {
    if l == 0 {
        return C64::new(1.0, 0.0);
    }
    block_toeplitz(g, lambda, l).lu().determinant()
}

/// `log det T_L[Φ]` (sum of logarithms of the LU pivots), safe for large `L`.
pub fn log_toeplitz_determinant_direct(g: &FourierCoefficients, lambda: C64, l: usize) -> C64 {
    if l == 0 {
        return C64::new(0.0, 0.0);
    }
    let lu = block_toeplitz(g, lambda, l).lu();
    let sign: C64 = lu.p().determinant();
    let u = lu.u();
    let mut acc = if sign.re < 0.0 { C64::new(0.0, PI) } else { C64::new(0.0, 0.0) };
    for i in 0..2 * l {
        acc += u[(i, i)].ln();
    }
    C64::new(acc.re, (acc.im + PI).rem_euclid(2.0 * PI) - PI)
}

/// Circulant `M×M` correlation matrix of the finite periodic chain,
/// `(T_M)_{jk} = (1/M) Σ_l (Λ_l/|Λ_l|) e^{-i k_l (j-k)}` with `Λ_l = q(e^{i k_l})`.
#[derive(Clone, Debug)]
pub struct CirculantMatrix {
    pub size: usize,
    /// `t[d] = (T_M)_{j+d, j}`.
    pub column: Vec<f64>,
}

impl CirculantMatrix {
    pub fn entry(&self, j: usize, k: usize) -> f64 {
        self.column[(j + self.size - k % self.size) % self.size]
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.size, self.size, |j, k| self.entry(j, k))
    }
}

pub fn finite_chain_correlation(model: &ChainModel, m: usize) -> Result<CirculantMatrix> {
    if m <= 2 * model.n {
        return Err(Error::Config(format!("M = {m} must exceed 2n = {}", 2 * model.n)));
    }
    let q = build_q(model);
    let mut buf = Vec::with_capacity(m);
    for l in 0..m {
        let k = 2.0 * PI * l as f64 / m as f64;
        let lam = q.eval(C64::from_polar(1.0, k));
        if lam.norm() < 1e-12 {
            return Err(Error::ZeroMode(k));
        }
        buf.push(lam / lam.norm());
    }
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let s = 1.0 / m as f64;
    Ok(CirculantMatrix { size: m, column: buf.into_iter().map(|c| c.re * s).collect() })
}
