//! Roots of `p`, the ordered branch points `λ_i`, the cuts `Σ_i`, the scalar
//! function `g(z)` and the 2×2 symbol `Φ(z; λ)`.

use crate::error::{Error, Result};
use crate::model::{build_p, build_q, ChainModel, ComplexPolynomial, LaurentPolynomial};
use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::cmp::Ordering;

/// Unit-circle exclusion tolerance used by the asymptotic engine.
pub const CRIT_TOL: f64 = 1e-8;
const ROOT_RESIDUAL: f64 = 1e-10;
const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Whether a branch point is a root of the (possibly inverted) family or the
/// reciprocal of one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Origin {
    Root(usize),
    Reciprocal(usize),
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Pairing {
    /// Index of `1/λ_i` in the ordered list.
    pub reciprocal: usize,
    /// Index of `conj(λ_i)`.
    pub conjugate: usize,
}

/// Ordered branch points and cut data.
#[derive(Clone, Debug)]
pub struct BranchPoints {
    pub lambda: Vec<C64>,
    pub origin: Vec<Origin>,
    pub pairing: Vec<Pairing>,
    /// Root family the origins refer to: the roots of `p`, or their
    /// reciprocals when the ordering required the transpose convention.
    pub family: Vec<C64>,
    pub transposed: bool,
}

#[derive(Clone, Debug)]
pub struct SymbolData {
    pub model: ChainModel,
    pub n: usize,
    pub p: ComplexPolynomial,
    pub q: LaurentPolynomial,
    pub roots: Vec<C64>,
    pub crit_distance: f64,
    /// `None` for critical or degenerate symbols; see [`Self::branch`].
    pub branch: Option<BranchPoints>,
    branch_issue: Option<(bool, String)>,
    /// Global sign relating the product formula for `g` to `q/|q|` on the
    /// unit circle.
    pub circle_sign: f64,
    g_inf_scale: C64,
}

/// All roots of `p`, via companion-matrix eigenvalues and Newton polishing.
pub fn find_roots(p: &ComplexPolynomial) -> Result<Vec<C64>> {
    let d = p.degree();
    if d == 0 {
        return Ok(vec![]);
    }
    if p.coeffs[0].norm() == 0.0 {
        return Err(Error::DegenerateModel("p(0) = 0".into()));
    }
    let lead = p.coeffs[d];
    let mut comp = DMatrix::<C64>::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..d {
        comp[(i, d - 1)] = -p.coeffs[i] / lead;
    }
    let eig = comp.clone().eigenvalues().ok_or(Error::ConvergenceFailure { residual: f64::INFINITY })?;
    let mut roots: Vec<C64> = eig.iter().cloned().collect();
    let real = p.coeffs.iter().all(|c| c.im == 0.0);
    let dp = p.derivative();
    for _ in 0..2 {
        for r in roots.iter_mut() {
            for _ in 0..8 {
                let step = p.eval(*r) / dp.eval(*r);
                if !step.is_finite() {
                    break;
                }
                *r -= step;
                if step.norm() <= 1e-16 * r.norm() {
                    break;
                }
            }
        }
        if real {
            symmetrize_conjugates(&mut roots);
        }
    }
    let mut worst: f64 = 0.0;
    for r in &roots {
        let scale: f64 = p.coeffs.iter().enumerate().map(|(k, c)| c.norm() * r.norm().powi(k as i32)).sum();
        worst = worst.max(p.eval(*r).norm() / scale);
    }
    if !(worst < ROOT_RESIDUAL) {
        return Err(Error::ConvergenceFailure { residual: worst });
    }
    roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    Ok(roots)
}

/// Makes nearly-real roots real and conjugate partners exact conjugates.
fn symmetrize_conjugates(roots: &mut [C64]) {
    let n = roots.len();
    let mut done = vec![false; n];
    for i in 0..n {
        if done[i] {
            continue;
        }
        let z = roots[i];
        if z.im.abs() <= 1e-9 * z.norm().max(1.0) {
            roots[i] = C64::new(z.re, 0.0);
            done[i] = true;
            continue;
        }
        let partner = (0..n)
            .filter(|&j| j != i && !done[j])
            .min_by(|&a, &b| (roots[a] - z.conj()).norm().partial_cmp(&(roots[b] - z.conj()).norm()).unwrap());
        if let Some(j) = partner {
            let avg = 0.5 * (z + roots[j].conj());
            roots[i] = avg;
            roots[j] = avg.conj();
            done[j] = true;
        }
        done[i] = true;
    }
}

/// Distance of the nearest root modulus from 1.
pub fn crit_distance(roots: &[C64]) -> f64 {
    roots.iter().map(|z| (1.0 - z.norm()).abs()).fold(f64::INFINITY, f64::min)
}

fn branch_cmp(a: C64, b: C64) -> Ordering {
    let tie = 1e-12 * a.re.abs().max(b.re.abs()).max(1.0);
    if (a.re - b.re).abs() > tie {
        return a.re.partial_cmp(&b.re).unwrap();
    }
    let (ia, ib) = (a.norm() < 1.0, b.norm() < 1.0);
    match (ia, ib) {
        (true, true) => a.im.partial_cmp(&b.im).unwrap(),
        (false, false) => b.im.partial_cmp(&a.im).unwrap(),
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
    }
}

/// Orders `{z_j} ∪ {1/z_j}` by real part (imaginary-part tie rules differ
/// inside and outside the unit circle) and applies the transpose convention
/// so that `λ_1` is a reciprocal.
pub fn order_lambdas(roots: &[C64]) -> Result<BranchPoints> {
    if let Some(z) = roots.iter().find(|z| (1.0 - z.norm()).abs() < CRIT_TOL) {
        return Err(Error::CriticalSymbol(format!("root {z} lies on the unit circle")));
    }
    let mut transposed = false;
    let mut family: Vec<C64> = roots.to_vec();
    loop {
        let mut items: Vec<(C64, Origin)> = family
            .iter()
            .enumerate()
            .map(|(j, &z)| (z, Origin::Root(j)))
            .chain(family.iter().enumerate().map(|(j, &z)| (1.0 / z, Origin::Reciprocal(j))))
            .collect();
        items.sort_by(|a, b| branch_cmp(a.0, b.0));
        if matches!(items[0].1, Origin::Root(_)) {
            if transposed {
                return Err(Error::DegenerateModel("cannot place a reciprocal first".into()));
            }
            transposed = true;
            family = family.iter().map(|z| 1.0 / z).collect();
            continue;
        }
        let lambda: Vec<C64> = items.iter().map(|x| x.0).collect();
        let origin: Vec<Origin> = items.iter().map(|x| x.1).collect();
        for i in 0..lambda.len() {
            for j in 0..i {
                if (lambda[i] - lambda[j]).norm() < 1e-10 * lambda[i].norm().max(1.0) {
                    return Err(Error::DegenerateModel(format!("repeated branch point {}", lambda[i])));
                }
            }
        }
        let nearest = |target: C64| {
            (0..lambda.len())
                .min_by(|&a, &b| (lambda[a] - target).norm().partial_cmp(&(lambda[b] - target).norm()).unwrap())
                .unwrap()
        };
        let pairing =
            lambda.iter().map(|&l| Pairing { reciprocal: nearest(1.0 / l), conjugate: nearest(l.conj()) }).collect();
        return Ok(BranchPoints { lambda, origin, pairing, family, transposed });
    }
}

impl BranchPoints {
    pub fn n(&self) -> usize {
        self.lambda.len() / 4
    }

    /// Cut `Σ_i = [λ_{2i-1}, λ_{2i}]` (zero-based `i`).
    pub fn cut(&self, i: usize) -> (C64, C64) {
        (self.lambda[2 * i], self.lambda[2 * i + 1])
    }

    pub fn cuts(&self) -> Vec<(C64, C64)> {
        (0..2 * self.n()).map(|i| self.cut(i)).collect()
    }

    /// Checks the layout the curve construction relies on: cuts `1..n` in
    /// the open unit disk, cuts `n+1..2n` strictly outside the closed disk.
    pub fn check_geometry(&self) -> Result<()> {
        let n = self.n();
        for (i, (a, b)) in self.cuts().into_iter().enumerate() {
            if i < n {
                if a.norm() >= 1.0 || b.norm() >= 1.0 {
                    return Err(Error::UnsupportedGeometry(format!(
                        "cut {} = [{a}, {b}] should lie inside the unit circle",
                        i + 1
                    )));
                }
            } else if segment_distance(C64::new(0.0, 0.0), a, b) <= 1.0 {
                return Err(Error::UnsupportedGeometry(format!(
                    "cut {} = [{a}, {b}] meets the closed unit disk",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Sheet-one `w(z) = Π_i (z - m_i) sqrt(1 - (h_i/(z - m_i))²)`: cut
    /// exactly on the segments and `w ~ z^{2n}` at infinity.
    pub fn w(&self, z: C64) -> C64 {
        self.w_skip(z, usize::MAX)
    }

    /// [`Self::w`] without the factor belonging to cut `skip`.
    pub fn w_skip(&self, z: C64, skip: usize) -> C64 {
        let mut w = C64::new(1.0, 0.0);
        for i in 0..2 * self.n() {
            if i != skip {
                let (a, b) = self.cut(i);
                w *= cut_factor(z, a, b);
            }
        }
        w
    }

    pub fn distance_to_cuts(&self, z: C64) -> f64 {
        self.cuts().into_iter().map(|(a, b)| segment_distance(z, a, b)).fold(f64::INFINITY, f64::min)
    }
}

/// `(z - m) sqrt(1 - (h/(z-m))²)` with `m`, `h` the midpoint and half-span
/// of `[a, b]`; analytic off the segment and `~ z - m` at infinity.
pub fn cut_factor(z: C64, a: C64, b: C64) -> C64 {
    // 1 - (h/(z-m))² written as (z-a)(z-b)/(z-m)² to avoid cancellation
    // near the end points.
    let d = z - 0.5 * (a + b);
    d * ((z - a) * (z - b) / (d * d)).sqrt()
}

pub fn segment_distance(z: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let t = ((z - a) * ab.conj()).re / ab.norm_sqr();
    let t = t.clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

impl SymbolData {
    pub fn new(model: &ChainModel) -> Result<Self> {
        let p = build_p(model)?;
        let q = build_q(model);
        let roots = find_roots(&p)?;
        let crit = crit_distance(&roots);
        let (branch, branch_issue) = match order_lambdas(&roots) {
            Ok(b) => (Some(b), None),
            Err(Error::CriticalSymbol(m)) => (None, Some((true, m))),
            Err(Error::DegenerateModel(m)) => (None, Some((false, m))),
            Err(e) => return Err(e),
        };
        let prod: C64 = roots.iter().map(|z| -z).product();
        let mut s = prod.sqrt();
        if (1.0 / s).re < 0.0 {
            s = -s;
        }
        let mut sym = Self {
            model: model.clone(),
            n: model.n,
            p,
            q,
            roots,
            crit_distance: crit,
            branch,
            branch_issue,
            circle_sign: 1.0,
            g_inf_scale: s,
        };
        if sym.branch.is_some() {
            let ratio = sym.eval_g(C64::new(1.0, 0.0))? / sym.eval_g_circle(0.0)?;
            sym.circle_sign = ratio.re.signum();
        }
        Ok(sym)
    }

    pub fn is_critical(&self) -> bool {
        self.crit_distance < CRIT_TOL
    }

    pub fn branch(&self) -> Result<&BranchPoints> {
        self.branch.as_ref().ok_or_else(|| match &self.branch_issue {
            Some((false, m)) => Error::DegenerateModel(m.clone()),
            Some((true, m)) => Error::CriticalSymbol(m.clone()),
            None => Error::CriticalSymbol(format!("crit_distance = {:.3e}", self.crit_distance)),
        })
    }

    /// `g(z) = Π(z - z_j) / (s·w(z))`, the branch of
    /// `sqrt(Π (z - z_j)/(1 - z_j z))` cut along the `Σ_i` with `g(∞) = 1/s > 0`.
    pub fn eval_g(&self, z: C64) -> Result<C64> {
        let br = self.branch()?;
        if br.distance_to_cuts(z) < 1e-12 {
            return Err(Error::OnBranchCut(z.to_string()));
        }
        Ok(self.eval_g_unchecked(br, z))
    }

    pub(crate) fn eval_g_unchecked(&self, br: &BranchPoints, z: C64) -> C64 {
        let num: C64 = self.roots.iter().map(|r| z - r).product();
        num / (self.g_inf_scale * br.w(z))
    }

    /// `g(∞)`.
    pub fn g_infinity(&self) -> C64 {
        1.0 / self.g_inf_scale
    }

    /// `q(e^{iθ}) / |q(e^{iθ})|`.
    pub fn eval_g_circle(&self, theta: f64) -> Result<C64> {
        let q = self.q.eval(C64::from_polar(1.0, theta));
        if q.norm() < 1e-12 {
            return Err(Error::CriticalSymbol(format!("q vanishes at θ = {theta}")));
        }
        Ok(q / q.norm())
    }

    /// `Φ(z) = [[iλ, g], [-1/g, iλ]]` with the circle form of `g`.
    pub fn eval_symbol(&self, theta: f64, lambda: C64) -> Result<Matrix2<C64>> {
        let g = self.eval_g_circle(theta)?;
        Ok(Matrix2::new(I * lambda, g, -1.0 / g, I * lambda))
    }

    /// Largest deviation between the product formula and the circle formula
    /// (after the global sign) over `samples` equispaced angles.
    pub fn branch_consistency(&self, samples: usize) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for k in 0..samples {
            let t = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
            let a = self.eval_g(C64::from_polar(1.0, t))?;
            let b = self.eval_g_circle(t)? * self.circle_sign;
            worst = worst.max((a - b).norm());
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn quadratic_roots() {
        let r = find_roots(&ComplexPolynomial::from_real(&[1.0, -2.5, 1.0])).unwrap();
        assert!((r[0] - c(0.5, 0.0)).norm() < 1e-14 && (r[1] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn quartic_imaginary_roots() {
        let want = [c(0.0, 0.5), c(0.0, -0.5), c(0.0, 2.0), c(0.0, -2.0)];
        let r = find_roots(&ComplexPolynomial::from_roots(&want)).unwrap();
        for w in want {
            assert!(r.iter().any(|z| (z - w).norm() < 1e-12));
        }
    }

    #[test]
    fn unit_circle_roots_are_critical() {
        let r = find_roots(&ComplexPolynomial::from_real(&[1.0, 0.0, 1.0])).unwrap();
        assert!(crit_distance(&r) < 1e-14);
        assert!(matches!(order_lambdas(&r), Err(Error::CriticalSymbol(_))));
    }

    #[test]
    fn real_pair_ordering() {
        let b = order_lambdas(&[c(0.5, 0.0), c(2.0, 0.0)]).unwrap_err();
        // {1/2, 2} ∪ {2, 1/2} is a repeated multiset
        assert!(matches!(b, Error::DegenerateModel(_)));
        let b = order_lambdas(&[c(0.4, 0.0), c(3.0, 0.0)]).unwrap();
        let want = [1.0 / 3.0, 0.4, 2.5, 3.0];
        for (l, w) in b.lambda.iter().zip(want) {
            assert!((l.re - w).abs() < 1e-14);
        }
        assert!(matches!(b.origin[0], Origin::Reciprocal(_)));
    }

    #[test]
    fn conjugate_ties_follow_inside_outside_rules() {
        let z = C64::from_polar(1.5, 0.4);
        let b = order_lambdas(&[z, z.conj()]).unwrap();
        assert!(b.lambda[0].im < b.lambda[1].im, "inside: ascending imaginary part");
        assert!(b.lambda[2].im > b.lambda[3].im, "outside: descending imaginary part");
    }

    #[test]
    fn g_on_circle_is_unimodular_and_consistent() {
        let s = SymbolData::new(&ChainModel::xy(0.8, 0.5).unwrap()).unwrap();
        assert!(s.branch_consistency(256).unwrap() < 1e-10);
        for k in 0..16 {
            let z = C64::from_polar(1.0, 0.3 + k as f64);
            assert!((s.eval_g(z).unwrap().norm() - 1.0).abs() < 1e-12);
        }
        let big = s.eval_g(c(1e8, 0.0)).unwrap();
        assert!(big.re > 0.0 && big.im.abs() < 1e-12);
    }

    #[test]
    fn g_reciprocity_near_circle() {
        let s =
            SymbolData::new(&ChainModel::from_roots(&[c(0.3, 0.0), c(0.6, 0.0), c(2.0, 0.0), c(3.5, 0.0)]).unwrap())
                .unwrap();
        for z in [C64::from_polar(0.95, 1.0), C64::from_polar(1.05, -2.0), C64::from_polar(0.9, 2.5)] {
            let prod = s.eval_g(z).unwrap() * s.eval_g(1.0 / z).unwrap();
            assert!((prod - 1.0).norm() < 1e-12, "{prod}");
        }
    }

    #[test]
    fn xx_gapped_symbol_is_minus_one() {
        let s = SymbolData::new(&ChainModel::xx(0.8).unwrap()).unwrap();
        for k in 0..32 {
            assert!((s.eval_g_circle(k as f64 * 0.2).unwrap() + 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn symbol_determinant_and_conjugation() {
        let s = SymbolData::new(&ChainModel::xy(1.5, 0.3).unwrap()).unwrap();
        for k in 0..64 {
            let t = k as f64 * 0.098;
            for lam in [c(2.0, 0.0), c(-1.3, 0.0), c(0.4, 0.7)] {
                let phi = s.eval_symbol(t, lam).unwrap();
                assert!((phi.determinant() - (1.0 - lam * lam)).norm() < 1e-12);
            }
            let a = s.eval_g_circle(t).unwrap();
            let b = s.eval_g_circle(-t).unwrap();
            assert!((a - b.conj()).norm() < 1e-15);
        }
    }
}
