//! Translation-invariant quadratic chains and their scalar polynomial data.
//!
//! A chain with couplings `a(j)`, `b(j)` (range `n`) and anisotropy `gamma`
//! is summarised by the Laurent polynomial
//! `q(z) = Σ_{j=-n}^{n} (a(j) - γ b(j)) z^j` and by `p(z) = z^n q(z)`.

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

const LEAD_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainModel {
    pub n: usize,
    /// `a(0..=n)`; even extension implied.
    pub a: Vec<f64>,
    /// `b(1..=n)`; odd extension implied.
    pub b: Vec<f64>,
    pub gamma: f64,
    #[serde(default)]
    pub label: String,
}

/// Polynomial with complex coefficients in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPolynomial {
    pub coeffs: Vec<C64>,
}

/// Laurent polynomial `Σ coeffs[k] z^(k + lowest)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolynomial {
    pub lowest: i32,
    pub coeffs: Vec<C64>,
}

impl ComplexPolynomial {
    /// Builds from ascending coefficients, trimming exact trailing zeros.
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == C64::new(0.0, 0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(c: &[f64]) -> Self {
        Self::new(c.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut c = vec![C64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![C64::new(0.0, 0.0); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        Self::new(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::new(vec![C64::new(0.0, 0.0)]);
        }
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect())
    }

    /// Coefficients of `z^deg p(1/z)`.
    pub fn reversed(&self) -> Self {
        Self { coeffs: self.coeffs.iter().rev().cloned().collect() }
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl LaurentPolynomial {
    pub fn eval(&self, z: C64) -> C64 {
        let poly = ComplexPolynomial { coeffs: self.coeffs.clone() };
        poly.eval(z) * z.powi(self.lowest)
    }
}

impl ChainModel {
    /// Validates coupling data. Vanishing effective leading coefficients are
    /// rejected rather than trimmed: that would silently change the genus.
    pub fn custom(a: Vec<f64>, b: Vec<f64>, gamma: f64) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::DegenerateModel("interaction range n must be at least 1".into()));
        }
        let n = a.len() - 1;
        if b.len() != n {
            return Err(Error::DegenerateModel(format!("expected {} entries for b, got {}", n, b.len())));
        }
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::DegenerateModel(format!("gamma = {gamma} outside [0, 1]")));
        }
        if a.iter().chain(&b).any(|x| !x.is_finite()) {
            return Err(Error::DegenerateModel("non-finite coupling".into()));
        }
        let lo = a[n] + gamma * b[n - 1];
        let hi = a[n] - gamma * b[n - 1];
        if lo.abs() <= LEAD_TOL || hi.abs() <= LEAD_TOL {
            return Err(Error::DegenerateModel(format!(
                "effective leading coefficients a(n)∓γb(n) = ({hi}, {lo}) must be nonzero"
            )));
        }
        Ok(Self { n, a, b, gamma, label: String::new() })
    }

    /// XY chain: `p(z) ∝ α(1-γ)/2·z² - z + α(1+γ)/2`.
    pub fn xy(alpha: f64, gamma: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::DegenerateModel(format!("alpha = {alpha} must be positive")));
        }
        if gamma >= 1.0 {
            return Err(Error::DegenerateModel("gamma = 1 (Ising limit) drops the degree of p".into()));
        }
        let mut m = Self::custom(vec![-2.0, alpha], vec![alpha], gamma)?;
        m.label = format!("xy(alpha={alpha}, gamma={gamma})");
        Ok(m)
    }

    /// Isotropic (XX) chain.
    pub fn xx(alpha: f64) -> Result<Self> {
        let mut m = Self::xy(alpha, 0.0)?;
        m.label = format!("xx(alpha={alpha})");
        Ok(m)
    }

    /// Any real polynomial of degree `2n` with `p(0) ≠ 0` is the `p` of some
    /// chain; this picks the representative with `γ = 1/2`.
    pub fn from_polynomial(p: &[f64]) -> Result<Self> {
        if p.len() < 3 || p.len() % 2 == 0 {
            return Err(Error::DegenerateModel("p must have even degree ≥ 2".into()));
        }
        let n = (p.len() - 1) / 2;
        let c = |j: i64| p[(j + n as i64) as usize];
        let a = (0..=n as i64).map(|j| 0.5 * (c(j) + c(-j))).collect();
        let b = (1..=n as i64).map(|j| c(-j) - c(j)).collect();
        Self::custom(a, b, 0.5)
    }

    /// Real polynomial whose roots are `roots` (closed under conjugation).
    pub fn from_roots(roots: &[C64]) -> Result<Self> {
        let p = ComplexPolynomial::from_roots(roots);
        if p.coeffs.iter().any(|c| c.im.abs() > 1e-10 * p.norm()) {
            return Err(Error::DegenerateModel("roots are not closed under conjugation".into()));
        }
        let re: Vec<f64> = p.coeffs.iter().map(|c| c.re).collect();
        let mut m = Self::from_polynomial(&re)?;
        m.label = "from-roots".into();
        Ok(m)
    }

    /// `a(j) - γ·sgn(j)·b(|j|)` for `j ∈ [-n, n]`.
    pub fn coupling(&self, j: i64) -> f64 {
        let k = j.unsigned_abs() as usize;
        let bj = if k == 0 { 0.0 } else { j.signum() as f64 * self.b[k - 1] };
        self.a[k] - self.gamma * bj
    }
}

pub fn build_q(model: &ChainModel) -> LaurentPolynomial {
    let n = model.n as i64;
    LaurentPolynomial { lowest: -(n as i32), coeffs: (-n..=n).map(|j| C64::new(model.coupling(j), 0.0)).collect() }
}

pub fn build_p(model: &ChainModel) -> Result<ComplexPolynomial> {
    let q = build_q(model);
    let p = ComplexPolynomial { coeffs: q.coeffs };
    if p.coeffs[0].norm() <= LEAD_TOL || p.coeffs[2 * model.n].norm() <= LEAD_TOL {
        return Err(Error::DegenerateModel("p must have degree exactly 2n with p(0) ≠ 0".into()));
    }
    Ok(p)
}

/// Model description accepted on the command line and in files.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelSpec {
    Preset {
        preset: String,
        alpha: f64,
        #[serde(default)]
        gamma: f64,
    },
    Custom {
        n: usize,
        a: Vec<f64>,
        b: Vec<f64>,
        gamma: f64,
    },
}

impl ModelSpec {
    pub fn build(&self) -> Result<ChainModel> {
        match self {
            ModelSpec::Preset { preset, alpha, gamma } => match preset.as_str() {
                "xy" => ChainModel::xy(*alpha, *gamma),
                "xx" => ChainModel::xx(*alpha),
                other => Err(Error::Config(format!("unknown preset '{other}'"))),
            },
            ModelSpec::Custom { n, a, b, gamma } => {
                if a.len() != n + 1 {
                    return Err(Error::Config(format!("n = {n} needs {} entries in a", n + 1)));
                }
                ChainModel::custom(a.clone(), b.clone(), *gamma)
            }
        }
    }
}
