//! Toeplitz determinant `det(λI - C_L)` against its theta-function asymptotic.
use fermion_entropy::{
    asymptotics::determinant_asymptotic,
    curve::CurveData,
    exact_engine::{log_toeplitz_determinant_direct, symbol_coefficients},
    model::ChainModel,
    symbol::SymbolData,
};
use num_complex::Complex64 as C64;

fn main() -> fermion_entropy::error::Result<()> {
    let sym = SymbolData::new(&ChainModel::xy(0.8, 0.5)?)?;
    let curve = CurveData::new(&sym)?;
    let ctx = curve.theta_context()?;
    let g = symbol_coefficients(&sym, 200)?;
    let lambda = C64::new(2.0, 0.0);
    for l in [5, 10, 20, 40, 80] {
        let direct = log_toeplitz_determinant_direct(&g, lambda, l);
        let asym = determinant_asymptotic(&curve, &ctx, lambda, l)?;
        let rel = ((direct - asym.log_value).exp() - 1.0).norm();
        println!("L = {l:3}  log D = {:.12}  relative error {rel:.3e}", direct.re);
    }
    Ok(())
}
