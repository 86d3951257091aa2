//! Droplet of the elliptic potential: boundary curve, axes, the obstacle
//! root `V` across `Γ` and the validation report.

use droplet::geometry::{build_geometry, elliptic_axes, validate_droplet, GeometryOptions, PotentialSpec};
use droplet::Complex64;

fn main() -> droplet::Result<()> {
    let (t, tau) = (0.3, 0.25);
    let spec = PotentialSpec::elliptic(t)?;
    let geom = build_geometry(&spec, tau, GeometryOptions::with_truncation(96, 24)?)?;
    let (a, b) = elliptic_axes(t, tau);
    println!("semi-axes a = {a:.6}, b = {b:.6}");
    for (th, z) in geom.boundary_samples(8) {
        println!("θ = {th:.4}  ψ(e^iθ) = {:+.6} {:+.6}i", z.re, z.im);
    }
    for (r, v) in geom.ray_samples(7) {
        println!("|ζ| = {r:.4}  V = {v:+.6e}");
    }
    let z = Complex64::new(a * 1.1, 0.0);
    println!("φ({:.4}) = {:.6}", z.re, geom.invert_map(z)?);
    print!("{}", validate_droplet(&geom));
    Ok(())
}
