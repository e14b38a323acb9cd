use fermion_entropy::theta::ThetaContext;
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn period_matrix(g: usize, re: &[f64], im: &[f64]) -> DMatrix<C64> {
    let a = DMatrix::from_fn(g, g, |i, j| im[i * g + j]);
    let b = DMatrix::from_fn(g, g, |i, j| re[i * g + j]);
    let im = a.transpose() * &a + DMatrix::identity(g, g) * 0.5;
    let re = (&b + b.transpose()) * 0.5;
    DMatrix::from_fn(g, g, |i, j| C64::new(re[(i, j)], im[(i, j)]))
}

fn inputs() -> impl Strategy<Value = (usize, Vec<f64>, Vec<f64>, Vec<(f64, f64)>)> {
    (1usize..=4).prop_flat_map(|g| {
        (
            Just(g),
            prop::collection::vec(-0.5..0.5f64, g * g),
            prop::collection::vec(-0.5..0.5f64, g * g),
            prop::collection::vec((-1.0..1.0f64, -0.3..0.3f64), g),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn even_and_periodic((g, re, im, s) in inputs()) {
        let ctx = ThetaContext::new(period_matrix(g, &re, &im)).unwrap();
        let s: Vec<C64> = s.into_iter().map(|(a, b)| C64::new(a, b)).collect();
        let t = ctx.theta(&s).unwrap();
        let neg: Vec<C64> = s.iter().map(|v| -v).collect();
        prop_assert!((ctx.theta(&neg).unwrap() - t).norm() <= 1e-10 * t.norm());
        let mut shifted = s.clone();
        shifted[g - 1] += 1.0;
        prop_assert!((ctx.theta(&shifted).unwrap() - t).norm() <= 1e-10 * t.norm());
    }

    #[test]
    fn quasi_periodic((g, re, im, s) in inputs(), m in prop::collection::vec(-1i64..=1, 4)) {
        let ctx = ThetaContext::new(period_matrix(g, &re, &im)).unwrap();
        let s: Vec<C64> = s.into_iter().map(|(a, b)| C64::new(a, b)).collect();
        prop_assert!(ctx.quasi_shift_residual(&s, &m[..g]).unwrap() < 1e-9);
    }

    #[test]
    fn log_theta_agrees_with_theta((g, re, im, s) in inputs()) {
        let ctx = ThetaContext::new(period_matrix(g, &re, &im)).unwrap();
        let s: Vec<C64> = s.into_iter().map(|(a, b)| C64::new(a, b)).collect();
        let t = ctx.theta(&s).unwrap();
        let l = ctx.log_theta(&s).unwrap();
        prop_assert!((l.exp() - t).norm() <= 1e-12 * t.norm().max(1.0));
    }
}
