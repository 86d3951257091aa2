use droplet::engine::budget::{k_cap, m0_shape, poisson_bound};
use droplet::engine::{
    coeffs_via_jets, h_approx, iterate, lipschitz_budget, taylor_bound, truncate_h, EngineParams, Iterations, NormKind,
    Operators,
};
use droplet::geometry::{build_geometry, DropletGeometry, GeometryOptions, PotentialSpec};
use droplet::series::{Band, CollarSeries, HermitianSeries, Jet};
use droplet::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn ginibre() -> DropletGeometry {
    build_geometry(&PotentialSpec::Ginibre, 1.0, GeometryOptions::with_truncation(8, 24).unwrap()).unwrap()
}

fn elliptic() -> DropletGeometry {
    let spec = PotentialSpec::elliptic(0.3).unwrap();
    build_geometry(&spec, 0.25, GeometryOptions::with_truncation(96, 24).unwrap()).unwrap()
}

fn flat(geom: &DropletGeometry) -> Operators<'_> {
    Operators::new(geom, Jet::zero(0).unwrap()).unwrap()
}

fn random_collar(geom: &DropletGeometry, rng: &mut ChaCha8Rng) -> CollarSeries {
    let terms: Vec<(i64, i64, Complex64)> = (-3..=3)
        .flat_map(|j| (-3..=3).map(move |k| (j, k)))
        .map(|(j, k)| (j, k, Complex64::new(rng.gen_range(-0.1..0.1), rng.gen_range(-0.1..0.1))))
        .collect();
    let h = HermitianSeries::from_terms(6, &Complex64::new(0.0, 0.0), &terms).unwrap();
    CollarSeries::from_hermitian(&h, geom.shape())
}

fn on_gamma(i: usize, count: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * i as f64 / count as f64)
}

/// Radial Ginibre profile at `τ = 1`: `V`, `V′`, `V″` at `r`.
fn radial_v(r: f64) -> (f64, f64, f64) {
    let x = r - 1.0;
    let v2 = 0.5 * (2.0 * x + x * x - 2.0 * x.ln_1p());
    let v = v2.sqrt().copysign(x);
    let dv = (r - 1.0 / r) / (2.0 * v);
    let ddv = (1.0 + 1.0 / (r * r) - 2.0 * dv * dv) / (2.0 * v);
    (v, dv, ddv)
}

#[test]
fn s_is_linear_and_fixes_constants() {
    let geom = elliptic();
    let ops = flat(&geom);
    let zero = ops.op_s(&ops.zero()).unwrap();
    assert_eq!(zero.majorant(Band::reference()), 0.0);
    let c = 0.7;
    let s = ops.op_s(&CollarSeries::constant(geom.shape(), c)).unwrap();
    let want = geom.lapv.scale(c);
    for i in 0..16 {
        let zeta = Complex64::from_polar(1.01, 0.4 * i as f64);
        assert!((s.realize0(zeta) - want.realize0(zeta)).norm() < 1e-12);
    }
}

#[test]
fn s_matches_the_radial_profile() {
    let geom = ginibre();
    let ops = flat(&geom);
    let f = CollarSeries::constant(geom.shape(), 1.0).sub(&CollarSeries::transversal(geom.shape())).unwrap();
    let s = ops.op_s(&f).unwrap();
    for r in [0.98, 0.99, 1.01, 1.02] {
        let (v, dv, ddv) = radial_v(r);
        let want = dv * r + r * r * 0.25 * (ddv + dv / r) + 0.25 * dv * dv * (1.0 - r * r) / v;
        for i in 0..4 {
            let got = s.realize0(Complex64::from_polar(r, 1.3 * i as f64));
            assert!((got - want).norm() < 1e-9, "r = {r}: {got} vs {want}");
        }
    }
}

#[test]
fn t_at_zero_theta_ignores_its_argument() {
    let geom = elliptic();
    let ops = flat(&geom);
    let t0 = ops.op_t(&ops.zero()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let t = ops.op_t(&random_collar(&geom, &mut rng)).unwrap();
        for i in 0..16 {
            let zeta = on_gamma(i, 16);
            assert!((t.realize0(zeta) - t0.realize0(zeta)).norm() < 1e-12);
        }
    }
}

#[test]
fn t_of_zero_matches_the_radial_limit() {
    let geom = ginibre();
    let ops = flat(&geom);
    let t0 = ops.op_t(&ops.zero()).unwrap();
    let e0 = |r: f64| {
        let (v, dv, _) = radial_v(r);
        (dv * dv * r.ln() / (2.0 * v) - 0.5) / (v * dv * dv)
    };
    let mean = |d: f64| 0.5 * (e0(1.0 + d) + e0(1.0 - d));
    let (a, b, c) = (mean(4e-3), mean(2e-3), mean(1e-3));
    let want = (16.0 * (4.0 * c - b) / 3.0 - (4.0 * b - a) / 3.0) / 15.0;
    for i in 0..8 {
        let got = t0.realize0(on_gamma(i, 8));
        assert!((got - want).norm() < 1e-9, "{got} vs {want}");
    }
}

#[test]
fn bracket_vanishes_on_gamma() {
    for geom in [ginibre(), elliptic()] {
        let ops = Operators::new(&geom, Jet::constant(0, Complex64::new(0.01, 0.0)).unwrap()).unwrap();
        let e0 = ops.op_t(&ops.zero()).unwrap();
        let (b, x) = ops.bracket(&e0).unwrap();
        assert!(b.diag_max() <= 1e-9 * x.diag_max(), "{}", b.diag_max());
    }
}

#[test]
fn first_iterate_is_t_of_zero() {
    let geom = elliptic();
    let log = iterate(&geom, &EngineParams::numeric(0.02, Iterations::Fixed(0)).unwrap()).unwrap();
    let ops = Operators::new(&geom, Jet::constant(0, Complex64::new(0.02, 0.0)).unwrap()).unwrap();
    assert_eq!(log.iterates.len(), 1);
    assert!(log.iterates[0].max_diff(&ops.op_t(&ops.zero()).unwrap()) == 0.0);
}

#[test]
fn residuals_halve_until_the_plateau() {
    let geom = build_geometry(&PotentialSpec::Ginibre, 1.0, GeometryOptions::with_order(24).unwrap()).unwrap();
    let log = iterate(&geom, &EngineParams::numeric(0.01, Iterations::Auto).unwrap()).unwrap();
    assert!(log.best >= 3, "{:?}", log.residuals);
    for j in 0..log.best {
        assert!(log.residuals[j + 1] <= 0.5 * log.residuals[j], "{:?}", log.residuals);
    }
}

#[test]
fn jet_order_is_limited_by_iterations() {
    assert!(coeffs_via_jets(&ginibre(), 3, 2).is_err());
}

#[test]
fn fields_at_zero_theta() {
    let geom = ginibre();
    let ops = flat(&geom);
    let e0 = ops.op_t(&ops.zero()).unwrap();
    let f = h_approx(&geom, 0.0, &e0).unwrap();
    let h0 = -0.25 * (2.0 * PI).ln();
    for i in 0..8 {
        let zeta = on_gamma(i, 8);
        assert!((f.big_g.realize0(zeta) - 1.0).norm() < 1e-9);
        assert!((f.h.eval(zeta) - h0).abs() < 1e-9);
        assert!((f.h.eval(zeta * 1.3) - h0).abs() < 1e-9);
        assert!((f.big_h.eval(zeta * 1.3) - (1.69f64).ln()).abs() < 1e-12);
    }
}

#[test]
fn truncation_examples() {
    let g = 1.0 + (4.0f64 / 3.0).ln() / PI;
    assert!((taylor_bound(1.0, 0.5, 1) - 0.25 * g).abs() < 1e-15);
    assert!((taylor_bound(1.0, 0.5, 2) - 0.125 * g).abs() < 1e-15);
    assert!((0.125 * g - 0.136446).abs() < 1e-6);
    let geom = ginibre();
    let table = coeffs_via_jets(&geom, 2, 3).unwrap();
    let full = truncate_h(&table, 2, 0.01, 0.05);
    assert_eq!(full.remainder, 0.0);
    let lowest = truncate_h(&table, 0, 0.01, 0.05);
    assert_eq!(lowest.data, table.hhat[0]);
    assert!(lowest.remainder > 0.0);
}

#[test]
fn budget_examples() {
    assert_eq!(k_cap(1.0 / 400.0, 4.0), 10);
    let geom = ginibre();
    let budget = lipschitz_budget(&geom, 0.2, 0.1, 0.0, 0.05, NormKind::Majorant).unwrap();
    assert!((budget.m0 - 100.0 * budget.c0).abs() <= 1e-12 * budget.m0);
    assert_eq!(budget.m0, m0_shape(budget.c0, 0.2, 0.1, 0.0));
    assert_eq!(budget.k_cap, k_cap(0.0, budget.c2));
}

#[test]
fn poisson_extension_respects_its_bound() {
    let geom = ginibre();
    let ops = flat(&geom);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for sigma in [0.05, 0.1, 0.2] {
        let band = Band::new(sigma).unwrap();
        for _ in 0..20 {
            let f = random_collar(&geom, &mut rng);
            let (out, inp) = (ops.poisson(&f).sampled_sup(band), f.sampled_sup(band));
            assert!(out <= poisson_bound(sigma) * inp, "σ = {sigma}: {out} > 6/σ · {inp}");
        }
    }
}
