//! Berezin density of the elliptic ensemble at an off-spectral point: mass,
//! norm of `q`, far-field decay of `𝒜` and the zeros of `k(·, z)`.

use droplet::geometry::{build_geometry, GeometryOptions, PotentialSpec};
use droplet::oracle::{build_quadrature, inside_droplet, orthonormalize, verify_berezin_system, QuadratureOptions};
use droplet::Complex64;

fn main() -> droplet::Result<()> {
    let (t, tau, m) = (0.3, 0.15, 60u32);
    let n = 9;
    let spec = PotentialSpec::elliptic(t)?;
    let rule = build_quadrature(&spec, m, &QuadratureOptions { digits: 50, n_max: n, ..Default::default() })?;
    let basis = orthonormalize(&rule, n)?;
    let geom = build_geometry(&spec, tau, GeometryOptions::with_truncation(96, 24)?)?;
    let z = geom.chart.psi(Complex64::new(1.5, 0.4));
    let rep = verify_berezin_system(&basis, &rule, n, z)?;
    println!("source z = {z:.6}");
    println!("∫B dA − 1 = {:.3e}, ‖q‖ − 1 = {:.3e}", rep.mass - 1.0, rep.q_norm - 1.0);
    for (r, v) in &rep.decay {
        println!("|w| = {r:4}: |w|·|𝒜(z,w)| = {v:.6}");
    }
    for w in &rep.zeros.roots {
        println!("zero {:+.6} {:+.6}i inside: {}", w.re, w.im, inside_droplet(&geom, *w, 2048, 0.0));
    }
    Ok(())
}
