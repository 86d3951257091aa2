//! Expansion coefficients extracted from ϑ-jets, compared with their direct
//! closed-form evaluation; for Ginibre `ĥ₀ = −¼ log(2π)`.

use droplet::engine::{coeffs_via_jets, direct_coefficients};
use droplet::geometry::{build_geometry, GeometryOptions, PotentialSpec};
use droplet::series::HarmonicField;
use droplet::Complex64;
use std::f64::consts::PI;

fn main() -> droplet::Result<()> {
    for (name, spec, modes) in [
        ("ginibre", PotentialSpec::Ginibre, 8),
        ("elliptic(0.3)", PotentialSpec::elliptic(0.3)?, 96),
    ] {
        let geom = build_geometry(&spec, 1.0, GeometryOptions::with_truncation(modes, 24)?)?;
        let table = coeffs_via_jets(&geom, 2, 3)?;
        let direct = direct_coefficients(&geom)?;
        let zeta = Complex64::from_polar(1.0, 0.3);
        for (j, (a, b)) in table.hhat.iter().zip(&direct.h).enumerate() {
            let ha = HarmonicField::new(0.0, a.clone()).eval(zeta);
            let hb = HarmonicField::new(0.0, b.clone()).eval(zeta);
            println!("{name}: ĥ_{j}(e^0.3i) jets {ha:+.12e} direct {hb:+.12e}");
        }
        println!("{name}: max |Ê0 jets − direct| = {:.2e}", table.ehat[0].max_diff(&direct.e0));
    }
    let geom = build_geometry(&PotentialSpec::Ginibre, 1.0, GeometryOptions::with_truncation(8, 24)?)?;
    let h0 = HarmonicField::new(0.0, direct_coefficients(&geom)?.h[0].clone()).eval(Complex64::new(1.0, 0.0));
    println!("ginibre ĥ0 = {h0:.12}, −¼log(2π) = {:.12}", -0.25 * (2.0 * PI).ln());
    Ok(())
}
