//! Entropy growth as a root of `p` approaches the unit circle.
use fermion_entropy::{
    asymptotics::{critical_entropy_estimate, CRITICAL_THRESHOLD},
    exact_engine::entropy_exact,
    model::ChainModel,
    symbol::SymbolData,
};

fn main() -> fermion_entropy::error::Result<()> {
    // XY at γ = 1/2: the root (1 - √(1 - α²(1 - γ²)))/(α(1 - γ)) crosses |z| = 1 at α = 1.
    for alpha in [0.9, 0.95, 0.975, 0.99] {
        let sym = SymbolData::new(&ChainModel::xy(alpha, 0.5)?)?;
        let s = entropy_exact(&sym, 512)?.value;
        let est = critical_entropy_estimate(&sym, CRITICAL_THRESHOLD).map(|e| e.value).unwrap_or(f64::NAN);
        println!("α = {alpha:.3}  d = {:.4}  S(512) = {s:.6}  -Σ ln d / 6 = {est:.6}", sym.crit_distance);
    }
    Ok(())
}
