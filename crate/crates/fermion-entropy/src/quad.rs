//! Quadrature rules used throughout the crate.
//!
//! Everything here is deterministic: node sets are fixed and the adaptive
//! integrator bisects in a fixed order, so results never depend on thread
//! scheduling.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n.
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Composite Gauss–Legendre over the consecutive panels `breaks`.
pub fn composite_gl<F: Fn(f64) -> f64>(f: F, breaks: &[f64], order: usize) -> f64 {
    let (x, w) = gauss_legendre(order);
    breaks
        .windows(2)
        .map(|p| {
            let (c, h) = (0.5 * (p[0] + p[1]), 0.5 * (p[1] - p[0]));
            x.iter().zip(&w).map(|(xi, wi)| wi * f(c + h * xi)).sum::<f64>() * h
        })
        .sum()
}

/// Angles t_j = (2j-1)π/(2N) of the N-point Gauss–Chebyshev rule; the
/// common weight is π/N.
pub fn chebyshev_angles(n: usize) -> Vec<f64> {
    (1..=n).map(|j| (2 * j - 1) as f64 * PI / (2 * n) as f64).collect()
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: Fn(f64) -> Vec<C64>>(f: &F, a: f64, b: f64, dim: usize) -> (Vec<C64>, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = vec![C64::new(0.0, 0.0); dim];
    let mut g = vec![C64::new(0.0, 0.0); dim];
    let fc = f(c);
    for d in 0..dim {
        k[d] += fc[d] * WGK[7];
        g[d] += fc[d] * WG[3];
    }
    for j in 0..7 {
        let f1 = f(c - h * XGK[j]);
        let f2 = f(c + h * XGK[j]);
        for d in 0..dim {
            let s = f1[d] + f2[d];
            k[d] += s * WGK[j];
            if j % 2 == 1 {
                g[d] += s * WG[j / 2];
            }
        }
    }
    let mut err = 0.0f64;
    for d in 0..dim {
        k[d] *= h;
        g[d] *= h;
        err = err.max((k[d] - g[d]).norm());
    }
    (k, err)
}

/// Outcome of [`adaptive`].
#[derive(Clone, Debug)]
pub struct Adaptive {
    pub value: Vec<C64>,
    pub error: f64,
    pub intervals: usize,
}

/// Globally adaptive Gauss–Kronrod (7/15) integration of a vector-valued
/// complex function on [a, b]. The interval with the largest error estimate
/// is bisected until the summed estimate drops below `tol`.
pub fn adaptive<F: Fn(f64) -> Vec<C64>>(f: F, a: f64, b: f64, dim: usize, tol: f64) -> Adaptive {
    adaptive_from(f, &[a, b], dim, tol, 4000)
}

/// [`adaptive`] starting from a prescribed partition.
pub fn adaptive_from<F: Fn(f64) -> Vec<C64>>(
    f: F,
    breaks: &[f64],
    dim: usize,
    tol: f64,
    max_intervals: usize,
) -> Adaptive {
    let mut parts: Vec<(f64, f64, Vec<C64>, f64)> = breaks
        .windows(2)
        .map(|p| {
            let (v, e) = gk15(&f, p[0], p[1], dim);
            (p[0], p[1], v, e)
        })
        .collect();
    loop {
        let total: f64 = parts.iter().map(|p| p.3).sum();
        if total < tol || parts.len() >= max_intervals {
            break;
        }
        let (imax, _) =
            parts.iter().enumerate().fold((0, -1.0), |acc, (i, p)| if p.3 > acc.1 { (i, p.3) } else { acc });
        let (a, b, _, _) = parts.swap_remove(imax);
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            // Interval exhausted at machine resolution; keep it and stop.
            let (v, _) = gk15(&f, a, b, dim);
            parts.push((a, b, v, 0.0));
            continue;
        }
        let (v1, e1) = gk15(&f, a, m, dim);
        let (v2, e2) = gk15(&f, m, b, dim);
        parts.push((a, m, v1, e1));
        parts.push((m, b, v2, e2));
    }
    // Sum in interval order so the result is independent of the split history.
    parts.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let mut value = vec![C64::new(0.0, 0.0); dim];
    let mut error = 0.0;
    for p in &parts {
        for d in 0..dim {
            value[d] += p.2[d];
        }
        error += p.3;
    }
    Adaptive { value, error, intervals: parts.len() }
}
