//! Predicted Ginibre wave function `√m e^{2h − 2mV²}` against the exact
//! `m^{n+1}|z|^{2n}e^{−m|z|²}/n!` at `τ = 1`.

use droplet::geometry::{build_geometry, GeometryOptions, PotentialSpec};
use droplet::engine::coeffs_via_jets;
use droplet::wavefield::{WaveConfig, WaveModel};
use droplet::Complex64;

fn exact(m: f64, r: f64) -> f64 {
    ((m + 1.0) * m.ln() + 2.0 * m * r.ln() - m * r * r - libm::lgamma(m + 1.0)).exp()
}

fn main() -> droplet::Result<()> {
    let geom = build_geometry(&PotentialSpec::Ginibre, 1.0, GeometryOptions::with_truncation(8, 24)?)?;
    let table = coeffs_via_jets(&geom, 2, 3)?;
    for order in 0..=2 {
        for m in [16u32, 36, 64] {
            let model = WaveModel::from_table(&geom, &table, WaveConfig::new(m, 1.0, geom.opts.sigma_star)?, order)?;
            let err = [1.05, 1.2]
                .iter()
                .map(|&r| {
                    let w = model.predict_wave(Complex64::from_polar(r, 0.7))?;
                    Ok((w / exact(m as f64, r) - 1.0).abs())
                })
                .collect::<droplet::Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            println!("jet order {order}, m = {m:3}: relative error {err:.3e}");
        }
    }
    Ok(())
}
