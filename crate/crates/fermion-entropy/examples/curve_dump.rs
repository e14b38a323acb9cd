//! Branch points, period matrix and Abel-map constants of a hyperelliptic curve.
use fermion_entropy::{cli::curve_json, curve::CurveData, model::ChainModel, symbol::SymbolData};

fn main() -> fermion_entropy::error::Result<()> {
    let sym = SymbolData::new(&ChainModel::xy(1.5, 0.5)?)?;
    let curve = CurveData::new(&sym)?;
    println!("{}", serde_json::to_string_pretty(&curve_json(&curve))?);
    let r = curve.report()?;
    println!("symmetry residual {:.2e}, min Im eigenvalue {:.4}", r.symmetry_residual, r.min_im_eigenvalue);
    println!("odd theta max {:.2e}, even theta min {:.3e}", r.theta_odd_max(), r.theta_even_min());
    Ok(())
}
