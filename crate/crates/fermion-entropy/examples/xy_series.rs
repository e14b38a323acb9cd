//! Closed-form series for the XY entropy against the theta integral.
use fermion_entropy::{
    asymptotics::{entropy_theta, xy_series_for_curve},
    curve::CurveData,
    model::ChainModel,
    symbol::SymbolData,
};

fn main() -> fermion_entropy::error::Result<()> {
    for alpha in [0.8, 1.5] {
        let sym = SymbolData::new(&ChainModel::xy(alpha, 0.5)?)?;
        let curve = CurveData::new(&sym)?;
        let ctx = curve.theta_context()?;
        let series = xy_series_for_curve(&curve, &ctx)?;
        let integral = entropy_theta(&curve, &ctx)?;
        println!(
            "α = {alpha}: series {:.15}  integral {:.15}  σ = {}",
            series.value,
            integral.value,
            series.diagnostics.extra.get("sigma").copied().unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
