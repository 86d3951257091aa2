//! Finite-difference check of `Δ𝒰 = √m e^{2h − 2mV²}` on the inner collar
//! for the Ginibre droplet.

use droplet::geometry::{build_geometry, GeometryOptions, PotentialSpec};
use droplet::engine::coeffs_via_jets;
use droplet::wavefield::{check_potential_equation, WaveConfig, WaveModel};

fn main() -> droplet::Result<()> {
    let geom = build_geometry(&PotentialSpec::Ginibre, 1.0, GeometryOptions::with_truncation(8, 24)?)?;
    let table = coeffs_via_jets(&geom, 2, 3)?;
    for m in [36u32, 64, 100] {
        let model = WaveModel::from_table(&geom, &table, WaveConfig::new(m, 1.0, geom.opts.sigma_star)?, 2)?;
        let chk = check_potential_equation(&model, 6, 16)?;
        println!(
            "m = {m:3}: relative residual {:.3e} (difference error {:.1e}, {} points)",
            chk.max_relative, chk.fd_error, chk.points
        );
    }
    Ok(())
}
