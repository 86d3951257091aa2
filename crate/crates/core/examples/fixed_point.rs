//! The iteration `E_{j+1} = T[E_j]` at `ϑ = 1/100` for the Ginibre droplet,
//! with residuals against the budget bound `(½C₂ϑk²)^k‖E₀‖`.

use droplet::engine::{iterate, lipschitz_budget, EngineParams, Iterations, NormKind};
use droplet::geometry::{build_geometry, GeometryOptions, PotentialSpec};

fn main() -> droplet::Result<()> {
    let theta = 0.01;
    let geom = build_geometry(&PotentialSpec::Ginibre, 1.0, GeometryOptions::with_truncation(48, 48)?)?;
    let log = iterate(&geom, &EngineParams::numeric(theta, Iterations::Auto)?)?;
    let star = geom.opts.sigma_star;
    let budget = lipschitz_budget(&geom, star, 0.5 * star, theta, 0.05, NormKind::Majorant)?;
    println!("‖E0‖ = {:.4e}, stop: {:?}, best iterate {}", log.e0_norm, log.stop, log.best);
    for (k, r) in log.residuals.iter().enumerate() {
        println!("k = {k:2}  residual {r:.4e}  bound {:.4e}", budget.residual_bound(k, log.e0_norm));
    }
    println!("C2 = {:.4e}, k_cap = {}, admissible: {}", budget.c2, budget.k_cap, budget.theta_admissible());
    Ok(())
}
