use droplet::engine::{coeffs_via_jets, ExpansionTable};
use droplet::geometry::{build_geometry, DropletGeometry, GeometryOptions, PotentialSpec};
use droplet::series::{CircleSeries, HarmonicField};
use droplet::wavefield::{erf_paper, harmonic_conjugate, Variant, WaveConfig, WaveModel};
use droplet::Complex64;
use std::f64::consts::PI;

fn ginibre(tau: f64) -> (DropletGeometry, ExpansionTable) {
    let geom = build_geometry(&PotentialSpec::Ginibre, tau, GeometryOptions::with_truncation(8, 24).unwrap()).unwrap();
    let table = coeffs_via_jets(&geom, 2, 3).unwrap();
    (geom, table)
}

fn elliptic() -> (DropletGeometry, ExpansionTable) {
    let spec = PotentialSpec::elliptic(0.3).unwrap();
    let geom = build_geometry(&spec, 0.25, GeometryOptions::with_truncation(96, 24).unwrap()).unwrap();
    let table = coeffs_via_jets(&geom, 2, 3).unwrap();
    (geom, table)
}

fn model<'g>(geom: &'g DropletGeometry, table: &ExpansionTable, m: u32, order: usize) -> WaveModel<'g> {
    let cfg = WaveConfig::new(m, geom.tau, geom.opts.sigma_star).unwrap();
    WaveModel::from_table(geom, table, cfg, order).unwrap()
}

/// `m^{(n+1)/2} zⁿ / √(n!)`.
fn exact_ginibre_p(m: f64, n: u32, z: Complex64) -> Complex64 {
    let log_mod = 0.5 * (n as f64 + 1.0) * m.ln() - 0.5 * libm::lgamma(n as f64 + 1.0) + n as f64 * z.norm().ln();
    Complex64::from_polar(log_mod.exp(), n as f64 * z.arg())
}

#[test]
fn erf_normalisation() {
    assert_eq!(erf_paper(0.0), 0.5);
    for x in [0.3, 1.0, 5.0] {
        assert!((erf_paper(x) + erf_paper(-x) - 1.0).abs() < 1e-15);
    }
    let lower = 1.0 - (2.0 * PI).powf(-0.5) / 3.0 * (-4.5f64).exp();
    let e3 = erf_paper(3.0);
    assert!(lower < e3 && e3 < 1.0);
}

#[test]
fn conjugate_examples() {
    let c = |x: f64| Complex64::new(x, 0.0);
    let h = HarmonicField::new(0.0, CircleSeries::from_coeffs(vec![c(0.5), c(0.0), c(0.5)]).unwrap());
    let hs = harmonic_conjugate(&h).unwrap();
    for zeta in [Complex64::new(1.2, 0.5), Complex64::new(-0.3, 2.0)] {
        assert!((h.eval(zeta) - zeta.inv().re).abs() < 1e-15);
        assert!((hs.eval(zeta) - zeta.inv().im).abs() < 1e-15);
    }
    let constant = HarmonicField::new(0.0, CircleSeries::constant(1, c(2.0)));
    assert_eq!(harmonic_conjugate(&constant).unwrap().eval(Complex64::new(1.5, 0.5)), 0.0);
    let log = HarmonicField::new(1.0, CircleSeries::constant(1, c(0.0)));
    assert_eq!(harmonic_conjugate(&log).unwrap_err().exit_code(), 2);
}

#[test]
fn conjugate_satisfies_cauchy_riemann() {
    let (geom, table) = elliptic();
    let model = model(&geom, &table, 40, 2);
    let g = |zeta: Complex64| Complex64::new(model.h.eval(zeta), model.hstar.eval(zeta));
    let h = 1e-5;
    for i in 0..8 {
        let zeta = Complex64::from_polar(1.05, 0.8 * i as f64);
        let dx = (g(zeta + h) - g(zeta - h)) / (2.0 * h);
        let dy = (g(zeta + Complex64::new(0.0, h)) - g(zeta - Complex64::new(0.0, h))) / (2.0 * h);
        let dbar = 0.5 * (dx + Complex64::i() * dy);
        assert!(dbar.norm() < 1e-7 * (1.0 + dx.norm()), "∂̄ = {dbar}");
    }
    let inf = model.hstar.eval(Complex64::new(1e4, 0.0));
    assert!(inf.abs() < 1e-3, "h*(∞) = {inf}");
}

#[test]
fn ginibre_polynomial_constant() {
    let (geom, table) = ginibre(1.0);
    let m = model(&geom, &table, 16, 2);
    let z = Complex64::new(1.2, 0.0);
    let ratio = m.predict_p(z).unwrap() / exact_ginibre_p(16.0, 16, z);
    assert!((ratio - 1.0).norm() < 0.03, "{ratio}");
    let mut s8 = m.clone();
    s8.cfg.variant = Variant::Section8;
    assert!((s8.predict_p(z).unwrap() - m.predict_p(z).unwrap()).norm() < 1e-12 * m.predict_p(z).unwrap().norm());
}

#[test]
fn variant_constant_at_quarter_filling() {
    let (geom, table) = ginibre(0.25);
    let shift = 0.25f64.powf(-0.25);
    let mut previous = f64::INFINITY;
    for mm in [64u32, 256] {
        let thm = model(&geom, &table, mm, 2);
        let mut s8 = thm.clone();
        s8.cfg.variant = Variant::Section8;
        let z = geom.chart.psi(Complex64::from_polar(1.1, 0.6));
        let exact = exact_ginibre_p(mm as f64, thm.cfg.n, z);
        let err = (thm.predict_p(z).unwrap() / exact - 1.0).norm();
        assert!(err < 0.03 && err < previous, "m = {mm}: {err}");
        previous = err;
        let r = s8.predict_p(z).unwrap() / thm.predict_p(z).unwrap();
        assert!((r - shift).norm() < 1e-12, "{r}");
    }
}

#[test]
fn wave_is_the_weighted_modulus() {
    let (geom, table) = elliptic();
    let model = model(&geom, &table, 40, 2);
    for s in [1.0, 1.05, 1.2] {
        for i in 0..8 {
            let z = geom.chart.psi(Complex64::from_polar(s, 0.7 * i as f64 + 0.1));
            let p = model.predict_p(z).unwrap();
            let want = p.norm_sqr() * (-2.0 * 40.0 * geom.spec.q_value(z)).exp();
            let got = model.predict_wave(z).unwrap();
            assert!((got - want).abs() <= 1e-9 * want, "{got} vs {want}");
        }
    }
}

#[test]
fn ginibre_wave_on_gamma() {
    let (geom, table) = ginibre(1.0);
    let model = model(&geom, &table, 100, 0);
    let w = model.predict_wave(Complex64::new(0.0, 1.0)).unwrap();
    assert!((w - (100.0 / (2.0 * PI)).sqrt()).abs() < 1e-9);
    assert!((w - 3.9894).abs() < 1e-4);
}

#[test]
fn wave_decays_off_gamma() {
    let (geom, table) = elliptic();
    let m = 400.0;
    let model = model(&geom, &table, 400, 2);
    for theta in [0.0, 1.0, 2.5] {
        let at = |s: f64| Complex64::from_polar(s, theta);
        for (a, b) in [(1.05, 1.1), (1.1, 1.2)] {
            let measured = (model.wave_at(at(b)) / model.wave_at(at(a))).ln();
            let want = -2.0 * m * (geom.v2_at(at(b)) - geom.v2_at(at(a)));
            assert!((measured / want - 1.0).abs() < 0.05, "{measured} vs {want}");
        }
    }
}

#[test]
fn potential_structure() {
    let (geom, table) = ginibre(1.0);
    let m = 64.0;
    let model = model(&geom, &table, 64, 2);
    assert_eq!(model.potential_at(Complex64::new(0.5, 0.0)), 0.0);
    assert_eq!(model.predict_p(Complex64::new(0.3, 0.1)).unwrap(), Complex64::new(0.0, 0.0));
    for i in 0..8 {
        let zeta = Complex64::from_polar(1.0, 0.8 * i as f64);
        let want = 0.5 * model.big_h.eval(zeta) + model.big_g.realize0(zeta).re / (2.0 * PI * m).sqrt();
        assert!((model.potential_at(zeta) - want).abs() < 1e-12);
    }
    let far: Vec<f64> = [10.0, 20.0, 40.0]
        .iter()
        .map(|&r: &f64| model.potential(Complex64::from_polar(r, 0.3)).unwrap() - (r * r).ln())
        .collect();
    assert!(far.iter().all(|v| v.abs() <= 2.0 * far[0].abs() + 1e-6), "{far:?}");
}

#[test]
fn prediction_is_holomorphic_outside() {
    let (geom, table) = elliptic();
    let model = model(&geom, &table, 40, 2);
    let h = 1e-5;
    for i in 0..8 {
        let z = geom.chart.psi(Complex64::from_polar(1.1, 0.8 * i as f64));
        let p = |w: Complex64| model.predict_p(w).unwrap();
        let dx = (p(z + h) - p(z - h)) / (2.0 * h);
        let dy = (p(z + Complex64::new(0.0, h)) - p(z - Complex64::new(0.0, h))) / (2.0 * h);
        let dbar = 0.5 * (dx + Complex64::i() * dy);
        assert!(dbar.norm() < 1e-6 * dx.norm(), "|∂̄P| / |∂P| = {}", dbar.norm() / dx.norm());
    }
}
