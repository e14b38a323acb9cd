//! Riemann theta function: quasi-periodicity, parity and a Jacobi identity.
use fermion_entropy::theta::ThetaContext;
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

fn main() -> fermion_entropy::error::Result<()> {
    let pi = DMatrix::from_row_slice(
        2,
        2,
        &[C64::new(0.1, 1.2), C64::new(0.3, 0.2), C64::new(0.3, 0.2), C64::new(-0.2, 0.9)],
    );
    let ctx = ThetaContext::new(pi)?;
    let s = [C64::new(0.17, 0.05), C64::new(-0.31, 0.12)];
    let neg: Vec<C64> = s.iter().map(|v| -v).collect();
    println!("θ(s)  = {}", ctx.theta(&s)?);
    println!("θ(-s) = {}", ctx.theta(&neg)?);
    println!("quasi-period residual {:.2e}", ctx.quasi_shift_residual(&s, &[1, -2])?);

    // θ₃⁴ = θ₂⁴ + θ₄⁴ at genus one.
    let tau = DMatrix::from_element(1, 1, C64::new(0.2, 0.8));
    let ctx = ThetaContext::new(tau)?;
    let z = [C64::new(0.0, 0.0)];
    let t3 = ctx.theta_char(&[0.0], &[0.0], &z)?;
    let t2 = ctx.theta_char(&[1.0], &[0.0], &z)?;
    let t4 = ctx.theta_char(&[0.0], &[1.0], &z)?;
    println!("Jacobi residual {:.2e}", (t3.powi(4) - t2.powi(4) - t4.powi(4)).norm());
    Ok(())
}
