//! Predicted orthogonal polynomials, wave densities and the approximate
//! potential `𝒰` with a finite-difference check of its Laplacian.

use crate::engine::{coeffs_via_jets, h_and_g, h_approx, ExpansionTable};
use crate::error::{Error, Result};
use crate::geometry::DropletGeometry;
use crate::series::{CollarSeries, HarmonicConjugate, HarmonicField};
use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};

/// The standard normal distribution function
/// `(2π)^{−1/2} ∫_{−∞}^x e^{−t²/2} dt`.
pub fn erf_paper(x: f64) -> f64 {
    0.5 * libm::erfc(-x / SQRT_2)
}

/// `h*` with `h + ih*` holomorphic on the exterior disk and `h*(∞) = 0`.
///
/// Rounding in the higher jet coefficients leaves a Hermitian asymmetry that
/// grows with the order (about `1e−5` for `ĥ₃`); only the `ζ^{−d}` half is
/// used, so the check only rejects data that is not real at all.
pub fn harmonic_conjugate(h: &HarmonicField) -> Result<HarmonicConjugate> {
    let scale = h.data.max_abs().max(1.0);
    h.conjugate(1e-6 * scale)
}

/// Which prefactor multiplies `φⁿ e^{h + ih* + m𝒬}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `m^{1/4}`.
    ThmMain,
    /// `m^{1/4}(φ′)^{1/2}`.
    Section8,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "thm-main" => Ok(Variant::ThmMain),
            "section-8" => Ok(Variant::Section8),
            _ => Err(Error::config("variant", format!("unknown variant '{s}' (thm-main | section-8)"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::ThmMain => "thm-main",
            Variant::Section8 => "section-8",
        }
    }
}

/// `x ↦ 6x⁵ − 15x⁴ + 10x³` clamped to `[0, 1]`.
pub fn smoothstep(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    x * x * x * (x * (6.0 * x - 15.0) + 10.0)
}

/// Radial cut-offs in `ℓ = log|ζ|`.
///
/// `χ₁` equals 1 on `|ℓ| ≤ prime` (the annulus `𝒩′`) and 0 on
/// `|ℓ| ≥ outer` (outside `𝒩`). `χ₂` equals 1 on `ℓ ≥ 0` and ramps down on
/// the inner side between `chi2_inner.0` and `chi2_inner.1`, which by default
/// coincide with the ramp of `χ₁`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cutoffs {
    pub prime: f64,
    pub outer: f64,
    pub chi2_inner: (f64, f64),
}

impl Cutoffs {
    /// `𝒩′ = φ^{−1}(𝔸(σ*/3))`, `𝒩 = φ^{−1}(𝔸(σ*/2))`.
    pub fn from_sigma_star(sigma_star: f64) -> Self {
        let prime = (sigma_star / 3.0).asinh();
        let outer = (sigma_star / 2.0).asinh();
        Cutoffs {
            prime,
            outer,
            chi2_inner: (prime, outer),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.prime && self.prime < self.outer) {
            return Err(Error::config("cutoff", "need 0 < inner band < outer band"));
        }
        let (a, b) = self.chi2_inner;
        if !(0.0 <= a && a < b) {
            return Err(Error::config("chi2_inner", "need 0 ≤ start < end"));
        }
        Ok(())
    }

    fn ramp(a: f64, b: f64, x: f64) -> f64 {
        1.0 - smoothstep((x - a) / (b - a))
    }

    pub fn chi1(&self, zeta: Complex64) -> f64 {
        Cutoffs::ramp(self.prime, self.outer, zeta.norm().ln().abs())
    }

    /// `χ₂` as used in `𝒰`: 1 outside, `χ₁` inside.
    pub fn chi2(&self, zeta: Complex64) -> f64 {
        let l = zeta.norm().ln();
        if l >= 0.0 {
            1.0
        } else {
            Cutoffs::ramp(self.prime, self.outer, -l)
        }
    }

    /// `χ₂` as applied to the predicted polynomial.
    pub fn chi2_p(&self, zeta: Complex64) -> f64 {
        let l = zeta.norm().ln();
        if l >= 0.0 {
            1.0
        } else {
            Cutoffs::ramp(self.chi2_inner.0, self.chi2_inner.1, -l)
        }
    }
}

/// `m`, `n = τm` and the choices made when assembling predictions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveConfig {
    pub m: u32,
    pub n: u32,
    pub variant: Variant,
    pub cutoffs: Cutoffs,
}

impl WaveConfig {
    /// Checks that `τm` is an integer.
    pub fn new(m: u32, tau: f64, sigma_star: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::config("m", "must be positive"));
        }
        let tm = tau * m as f64;
        let n = tm.round();
        if (tm - n).abs() > 1e-9 || n < 1.0 {
            return Err(Error::config("m", format!("τm = {tm} is not a positive integer")));
        }
        Ok(WaveConfig {
            m,
            n: n as u32,
            variant: Variant::ThmMain,
            cutoffs: Cutoffs::from_sigma_star(sigma_star),
        })
    }

    pub fn theta(&self) -> f64 {
        1.0 / self.m as f64
    }
}

/// Everything needed to evaluate predictions at points of the chart.
#[derive(Clone, Debug)]
pub struct WaveModel<'g> {
    pub geom: &'g DropletGeometry,
    pub cfg: WaveConfig,
    pub h: HarmonicField,
    pub hstar: HarmonicConjugate,
    pub big_h: HarmonicField,
    pub big_g: CollarSeries,
}

impl<'g> WaveModel<'g> {
    /// Truncated expansions `h = Σ_{j≤K} ϑ^j ĥ_j`, `E = Σ_{j≤K} ϑ^j Ê_j`.
    pub fn from_table(geom: &'g DropletGeometry, table: &ExpansionTable, cfg: WaveConfig, order: usize) -> Result<Self> {
        if order > table.order() {
            return Err(Error::Usage(format!(
                "jet order {order} exceeds the table order {}",
                table.order()
            )));
        }
        let theta = cfg.theta();
        let h = HarmonicField::new(0.0, table.h_sum(theta, order));
        let e = table.e_sum(theta, order)?;
        let (big_h, big_g) = h_and_g(geom, theta, &e)?;
        WaveModel::assemble(geom, cfg, h, big_h, big_g)
    }

    /// Runs the jet iteration with `K = order` and `k = order + 1` steps.
    pub fn from_jets(geom: &'g DropletGeometry, cfg: WaveConfig, order: usize) -> Result<Self> {
        let table = coeffs_via_jets(geom, order, order + 1)?;
        WaveModel::from_table(geom, &table, cfg, order)
    }

    /// Uses an approximate solution `E` at the numerical `ϑ = 1/m`.
    pub fn from_solution(geom: &'g DropletGeometry, e: &CollarSeries, cfg: WaveConfig) -> Result<Self> {
        let f = h_approx(geom, cfg.theta(), e)?;
        WaveModel::assemble(geom, cfg, f.h, f.big_h, f.big_g)
    }

    fn assemble(
        geom: &'g DropletGeometry,
        cfg: WaveConfig,
        h: HarmonicField,
        big_h: HarmonicField,
        big_g: CollarSeries,
    ) -> Result<Self> {
        cfg.cutoffs.validate()?;
        let hstar = harmonic_conjugate(&h)?;
        Ok(WaveModel {
            geom,
            cfg,
            h,
            hstar,
            big_h,
            big_g,
        })
    }

    /// `ζ = φ(z)`.
    pub fn chart(&self, z: Complex64) -> Result<Complex64> {
        self.geom.invert_map(z)
    }

    /// `m^{1/4}φⁿ e^{h + ih* + m𝒬}` (times `(φ′)^{1/2}` for the second
    /// variant), without the cut-off.
    pub fn formula_at(&self, zeta: Complex64) -> Complex64 {
        let m = self.cfg.m as f64;
        let g = Complex64::new(self.h.eval(zeta), self.hstar.eval(zeta));
        let q = self.geom.scr_q_at(zeta);
        let mut p = m.powf(0.25) * (g + q * m + zeta.ln() * self.cfg.n as f64).exp();
        if self.cfg.variant == Variant::Section8 {
            p *= (1.0 / self.geom.chart.dpsi(zeta)).sqrt();
        }
        p
    }

    /// Predicted `P_{m,n}(z)` with the cut-off `χ₂`.
    pub fn predict_p(&self, z: Complex64) -> Result<Complex64> {
        let zeta = match self.chart(z) {
            Ok(zeta) => zeta,
            Err(_) if self.geom.contains(z) => return Ok(Complex64::new(0.0, 0.0)),
            Err(e) => return Err(e),
        };
        let chi = self.cfg.cutoffs.chi2_p(zeta);
        if chi == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.formula_at(zeta) * chi)
    }

    /// `√m e^{2h − 2mV²}`.
    pub fn predict_wave(&self, z: Complex64) -> Result<f64> {
        let zeta = self.chart(z)?;
        Ok(self.wave_at(zeta))
    }

    pub fn wave_at(&self, zeta: Complex64) -> f64 {
        let m = self.cfg.m as f64;
        let v2 = self.geom.v2_at(zeta);
        m.sqrt() * (2.0 * self.h.eval(zeta) - 2.0 * m * v2).exp()
    }

    /// `𝒰 = χ₁(H Φ(2√m V) + G e^{−2mV²}/√(2πm)) + (χ₂ − χ₁)H` at `ζ`.
    pub fn potential_at(&self, zeta: Complex64) -> f64 {
        let c = &self.cfg.cutoffs;
        let chi1 = c.chi1(zeta);
        let chi2 = c.chi2(zeta);
        if chi2 == 0.0 {
            return 0.0;
        }
        let hh = self.big_h.eval(zeta);
        let mut u = (chi2 - chi1) * hh;
        if chi1 > 0.0 {
            let m = self.cfg.m as f64;
            let v = self.geom.v_at(zeta);
            let g = self.big_g.realize0(zeta).re;
            u += chi1 * (hh * erf_paper(2.0 * m.sqrt() * v) + g * (-2.0 * m * v * v).exp() / (2.0 * PI * m).sqrt());
        }
        u
    }

    pub fn potential(&self, z: Complex64) -> Result<f64> {
        Ok(self.potential_at(self.chart(z)?))
    }

    /// Every field at one point.
    pub fn sample(&self, z: Complex64) -> Result<FieldSample> {
        let zeta = self.chart(z)?;
        let p = self.formula_at(zeta) * self.cfg.cutoffs.chi2_p(zeta);
        Ok(FieldSample {
            z,
            v: self.geom.v_at(zeta),
            h: self.h.eval(zeta),
            hstar: self.hstar.eval(zeta),
            wave: self.wave_at(zeta),
            p,
            u: self.potential_at(zeta),
        })
    }

    /// Coefficients `c_0..c_n` of the polynomial part of the exterior
    /// formula at infinity, from the Cauchy integral over `ψ(ρ e^{iθ})`.
    pub fn predicted_polynomial(&self, rho: f64, samples: usize) -> Result<Vec<Complex64>> {
        if rho < 1.0 {
            return Err(Error::Usage("contour must lie in the exterior (ρ ≥ 1)".into()));
        }
        let n = self.cfg.n as usize;
        let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
        for i in 0..samples {
            let zeta = Complex64::from_polar(rho, 2.0 * PI * i as f64 / samples as f64);
            let z = self.geom.chart.psi(zeta);
            let w = self.formula_at(zeta) * self.geom.chart.dpsi(zeta) * zeta / z / samples as f64;
            let zi = z.inv();
            let mut zk = Complex64::new(1.0, 0.0);
            for ck in c.iter_mut() {
                *ck += w * zk;
                zk *= zi;
            }
        }
        Ok(c)
    }
}

/// Realised fields at a physical point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldSample {
    pub z: Complex64,
    pub v: f64,
    pub h: f64,
    pub hstar: f64,
    pub wave: f64,
    pub p: Complex64,
    pub u: f64,
}

/// Finite-difference check of `Δ𝒰 = √m e^{2h − 2mV²}` on `𝒩′`.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialCheck {
    /// Largest relative residual over the grid.
    pub max_relative: f64,
    /// Largest estimated discretisation error, relative.
    pub fd_error: f64,
    pub step: f64,
    pub points: usize,
    /// The discretisation estimate exceeded the residual.
    pub inconclusive: bool,
}

/// `¼(∂²_x + ∂²_y)` by the five-point stencil.
fn five_point(f: &dyn Fn(Complex64) -> f64, z: Complex64, h: f64) -> f64 {
    let e1 = Complex64::new(h, 0.0);
    let e2 = Complex64::new(0.0, h);
    (f(z + e1) + f(z - e1) + f(z + e2) + f(z - e2) - 4.0 * f(z)) / (4.0 * h * h)
}

/// Compares the Richardson-extrapolated five-point Laplacian of `𝒰` with
/// `√m e^{2h − 2mV²}` on a polar grid of `𝒩′` (`radial × angular` points).
/// The base step is `10⁻³·diam(𝒩)`; steps `h/2` and `h/4` give the
/// extrapolated value and its error estimate.
pub fn check_potential_equation(model: &WaveModel<'_>, radial: usize, angular: usize) -> Result<PotentialCheck> {
    let c = model.cfg.cutoffs;
    let outer = c.outer.exp();
    let diam = (0..64)
        .map(|i| model.geom.chart.psi(Complex64::from_polar(outer, 2.0 * PI * i as f64 / 64.0)).norm())
        .fold(0.0, f64::max)
        * 2.0;
    let step = 1e-3 * diam;
    let f = |z: Complex64| model.potential(z).unwrap_or(f64::NAN);
    let mut worst: f64 = 0.0;
    let mut fd: f64 = 0.0;
    let mut points = 0;
    for ir in 0..radial {
        let l = -c.prime + 2.0 * c.prime * (ir as f64 + 0.5) / radial as f64;
        for ia in 0..angular {
            let zeta = Complex64::from_polar(l.exp(), 2.0 * PI * (ia as f64 + 0.25) / angular as f64);
            let z = model.geom.chart.psi(zeta);
            let l1 = five_point(&f, z, step);
            let l2 = five_point(&f, z, 0.5 * step);
            let l3 = five_point(&f, z, 0.25 * step);
            let coarse = (4.0 * l2 - l1) / 3.0;
            let lap = (4.0 * l3 - l2) / 3.0;
            let want = model.wave_at(zeta);
            if !lap.is_finite() {
                return Err(Error::Domain(format!("𝒰 not finite near z = {z}")));
            }
            worst = worst.max((lap - want).abs() / want);
            fd = fd.max((lap - coarse).abs() / 15.0 / want);
            points += 1;
        }
    }
    Ok(PotentialCheck {
        max_relative: worst,
        fd_error: fd,
        step,
        points,
        inconclusive: fd > worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erf_normalisation() {
        assert_eq!(erf_paper(0.0), 0.5);
        for x in [0.3, 1.0, 5.0] {
            assert!((erf_paper(x) + erf_paper(-x) - 1.0).abs() < 1e-15);
        }
        let lo = 1.0 - (2.0 * PI).powf(-0.5) / 3.0 * (-4.5f64).exp();
        let v = erf_paper(3.0);
        assert!(v > lo && v < 1.0);
    }

    #[test]
    fn cutoff_profiles() {
        let c = Cutoffs::from_sigma_star(0.3);
        assert_eq!(c.chi1(Complex64::new(1.0, 0.0)), 1.0);
        assert_eq!(c.chi1(Complex64::new(2.0, 0.0)), 0.0);
        assert_eq!(c.chi2(Complex64::new(2.0, 0.0)), 1.0);
        assert_eq!(c.chi2(Complex64::new(0.5, 0.0)), 0.0);
        assert!((smoothstep(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn n_must_be_integral() {
        assert!(WaveConfig::new(10, 0.25, 0.3).is_err());
        assert_eq!(WaveConfig::new(40, 0.25, 0.3).unwrap().n, 10);
    }
}
