//! Block entropy of the XY chain from the spectrum of the correlation matrix.
use fermion_entropy::{exact_engine::entropy_scan, model::ChainModel, symbol::SymbolData};

fn main() -> fermion_entropy::error::Result<()> {
    let sym = SymbolData::new(&ChainModel::xy(0.8, 0.5)?)?;
    for (l, s) in entropy_scan(&sym, &[8, 16, 32, 64, 128])? {
        println!("L = {l:4}  S = {s:.15}");
    }
    Ok(())
}
