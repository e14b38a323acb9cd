//! Periodic chain of `M` sites: the block entropy converges to the infinite
//! chain value as `M` grows.
use fermion_entropy::{
    exact_engine::{
        entropy_exact, entropy_from_spectrum, finite_chain_correlation, spectrum_from_coefficients, FourierCoefficients,
    },
    model::ChainModel,
    symbol::SymbolData,
};

fn main() -> fermion_entropy::error::Result<()> {
    let model = ChainModel::xy(0.8, 0.5)?;
    let l = 16;
    let infinite = entropy_exact(&SymbolData::new(&model)?, l)?.value;
    for m in [32, 64, 128, 256] {
        let t = finite_chain_correlation(&model, m)?;
        let k = (l - 1) as i64;
        let g = FourierCoefficients::from_values(
            l - 1,
            (-k..=k).map(|d| t.column[d.rem_euclid(m as i64) as usize]).collect(),
        );
        let s = entropy_from_spectrum(&spectrum_from_coefficients(&g, l));
        println!("M = {m:4}  S_L = {s:.15}  (infinite chain {infinite:.15})");
    }
    Ok(())
}
