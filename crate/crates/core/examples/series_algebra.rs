//! Hermitian-analytic series: products, transposition, division by `1 − ζη`,
//! analytic functions and ϑ-jets.

use droplet::series::{AnalyticFn, Band, Coef, HermitianSeries, Jet, Var};
use droplet::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> droplet::Result<()> {
    let zero = c(0.0, 0.0);
    let n = 4;

    // (1 + ζη)(1 − ζη) = 1 − ζ²η²
    let a = HermitianSeries::from_terms(n, &zero, &[(0, 0, c(1.0, 0.0)), (1, 1, c(1.0, 0.0))])?;
    let b = HermitianSeries::from_terms(n, &zero, &[(0, 0, c(1.0, 0.0)), (1, 1, c(-1.0, 0.0))])?;
    let p = a.multiply(&b)?;
    println!("(1+ζη)(1−ζη): c00 = {}, c22 = {}", p.get(0, 0), p.get(2, 2));

    // Truncation at N = 1 drops ζ² and reports its mass.
    let z1 = HermitianSeries::from_terms(1, &zero, &[(1, 0, c(1.0, 0.0))])?;
    println!("ζ·ζ at N = 1: tail mass {:.4}", z1.multiply(&z1)?.tail());

    let f = HermitianSeries::from_terms(n, &zero, &[(2, 1, c(2.0, 3.0))])?;
    println!("transpose of (2+3i)ζ²η: c12 = {}", f.hermitian_transpose().get(1, 2));

    let g = b.multiply(&HermitianSeries::from_terms(n, &zero, &[(1, 0, c(1.0, 0.0))])?)?;
    println!("(1−ζη)ζ / (1−ζη): c10 = {}", g.diag_divide()?.get(1, 0));
    let bad = HermitianSeries::from_terms(n, &zero, &[(1, 0, c(1.0, 0.0)), (0, 1, c(-1.0, 0.0))])?;
    println!("(ζ − η) / (1−ζη): {}", bad.diag_divide().unwrap_err());

    let x = HermitianSeries::from_terms(8, &zero, &[(0, 0, c(2.0, 0.0)), (1, 1, c(0.1, 0.0))])?;
    let back = x.analytic_apply(AnalyticFn::Log)?.analytic_apply(AnalyticFn::Exp)?;
    println!("exp(log(2 + ζη/10)) − (2 + ζη/10): majorant {:.2e}", back.sub(&x)?.majorant_norm(Band::reference()));

    let d = HermitianSeries::from_terms(n, &zero, &[(2, 1, c(1.0, 0.0))])?.differentiate(Var::Zeta);
    println!("∂_ζ(ζ²η): c11 = {}", d.get(1, 1));

    let band = Band::new(0.1)?;
    let zeta = HermitianSeries::from_terms(n, &zero, &[(1, 0, c(1.0, 0.0))])?;
    println!("‖ζ‖ majorant at ρ = {:.4}: {:.4}", band.rho, zeta.majorant_norm(band));

    // Jets: (1 + ϑ)^{-1} = 1 − ϑ + ϑ² mod ϑ³.
    let theta = Jet::theta(2)?;
    let one = Jet::constant(2, c(1.0, 0.0))?;
    let inv = one.add(&theta).recip()?;
    println!("1/(1+ϑ) = {inv:?}");
    Ok(())
}
