//! Limiting entropy from the theta-function integral, compared with the
//! exact value at a large block size.
use fermion_entropy::{
    asymptotics::{endpoint_fit, entropy_theta},
    curve::CurveData,
    exact_engine::entropy_exact,
    model::ChainModel,
    symbol::SymbolData,
};
use num_complex::Complex64 as C64;

fn main() -> fermion_entropy::error::Result<()> {
    let genus3 = [C64::from_polar(0.79, 0.3), C64::from_polar(0.79, -0.3), C64::new(1.25, 0.0), C64::new(2.2, 0.0)];
    for model in [ChainModel::xy(0.8, 0.5)?, ChainModel::from_roots(&genus3)?] {
        let sym = SymbolData::new(&model)?;
        let curve = CurveData::new(&sym)?;
        let ctx = curve.theta_context()?;
        let s = entropy_theta(&curve, &ctx)?;
        let exact = entropy_exact(&sym, 200)?.value;
        let fit = endpoint_fit(&curve, &ctx)?;
        println!("genus {}: S_theta = {:.15}  S_exact(200) = {:.15}", curve.genus, s.value, exact);
        println!("  endpoint coefficient {:.6} vs {:.6}", fit.fitted, fit.expected);
    }
    Ok(())
}
