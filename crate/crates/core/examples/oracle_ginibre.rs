//! Extended-precision Ginibre oracle: moments `j!/m^{j+1}`, `κ₂² = 2/m³` and
//! the orthonormality residual on a refined rule.

use droplet::geometry::PotentialSpec;
use droplet::oracle::{build_quadrature, orthonormalize, QuadratureOptions};

fn main() -> droplet::Result<()> {
    let m = 10;
    let opts = QuadratureOptions { digits: 50, n_max: 8, ..Default::default() };
    let rule = build_quadrature(&PotentialSpec::Ginibre, m, &opts)?;
    println!("R = {:.4}, N_θ = {}, {} nodes, relative tail 1e{:.1}", rule.radius, rule.n_theta, rule.len(), rule.log10_tail);
    let basis = orthonormalize(&rule, 8)?;
    for j in 0..=8usize {
        let fact: f64 = (1..=j).map(|i| i as f64).product();
        let want = fact / (m as f64).powi(j as i32 + 1);
        let got = basis.gram[j][j].real().to_f64();
        println!("<z^{j}, z^{j}> = {got:.15e}  (j!/m^(j+1) = {want:.15e})");
    }
    println!("κ₂² m³/2 = {:.15}", basis.kappa_f64(2).powi(2) * (m as f64).powi(3) / 2.0);
    let check = build_quadrature(&PotentialSpec::Ginibre, m, &opts.refined(&rule))?;
    println!("orthonormality residual on refined rule: {:.3e}", basis.orthonormality_residual(&check.gram(8)?));
    Ok(())
}
