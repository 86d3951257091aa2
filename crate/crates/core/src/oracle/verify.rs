//! Residual reports: exact potential, Berezin system, prediction comparison.

use super::basis::{horner, OrthonormalBasis};
use super::berezin::{integrate_about, polynomial_roots, Berezin, ZeroSet};
use super::quadrature::QuadratureRule;
use crate::error::{Error, Result};
use crate::geometry::DropletGeometry;
use crate::wavefield::WaveModel;
use num_complex::Complex64;
use rug::{Complex, Float};

/// Radii at which far-field decay is sampled.
pub const FAR_RADII: [f64; 3] = [10.0, 20.0, 40.0];

/// Direction of the far-field samples.
const FAR_ANGLE: f64 = 0.3;

/// Scaled far-field values `r·|f(r e^{iα})|` stay bounded when none exceeds
/// twice the first plus an absolute floor.
pub fn bounded(scaled: &[(f64, f64)], floor: f64) -> bool {
    let first = scaled.first().map(|p| p.1).unwrap_or(0.0);
    scaled.iter().all(|(_, v)| v.is_finite() && *v <= 2.0 * first + floor)
}

/// Residuals of the exact logarithmic potential of `|π_n|² e^{−2mQ}`.
#[derive(Clone, Debug)]
pub struct ExactPotentialReport {
    pub n: usize,
    /// `max_{j<n} |⟨z^j, π_n⟩| / (‖z^j‖ κ_n)` with the check rule's moments.
    pub orthogonality: f64,
    /// `κ_n²` from the basis.
    pub kappa_sq: f64,
    /// `‖π_n‖²` re-quadratured on the check rule.
    pub kappa_sq_requad: f64,
    /// `(r, r·|𝒰₀ − κ² log r²|/κ²)`.
    pub far_field: Vec<(f64, f64)>,
    pub far_bounded: bool,
    /// `(δ, π_n^{−1} ∂𝒰₀, ∫ conj(π_n)/(z − ξ) e^{−2mQ} dA)` at `z = z₀ + δ`
    /// next to a zero `z₀` of `π_n`.
    pub smooth_probe: Vec<(f64, Complex64, Complex64)>,
}

impl ExactPotentialReport {
    /// Largest relative mismatch between the two forms of `π^{−1}∂𝒰₀`.
    pub fn smooth_mismatch(&self) -> f64 {
        self.smooth_probe.iter().map(|(_, a, b)| (a - b).norm() / b.norm()).fold(0.0, f64::max)
    }
}

/// Checks orthogonality, the norm identity, far-field decay and smoothness
/// of `π^{−1}∂𝒰₀` for the monic `π_n`, integrating on `rule`.
pub fn verify_exact_potential(basis: &OrthonormalBasis, rule: &QuadratureRule, n: usize) -> Result<ExactPotentialReport> {
    if n > basis.n_max || n > rule.n_max {
        return Err(Error::Usage(format!("n = {n} exceeds n_max = {}", basis.n_max.min(rule.n_max))));
    }
    let gram = rule.gram(n)?;
    let prec = basis.prec();
    let c = &basis.coeffs[n];
    let kappa = basis.kappa_f64(n);
    let mut orth: f64 = 0.0;
    for j in 0..n {
        let mut s = Complex::new(prec);
        for k in 0..=n {
            s += Complex::with_val(prec, &gram[j][k] * Complex::with_val(prec, c[k].conj_ref()));
        }
        let v = Float::with_val(prec, s.abs_ref()).to_f64();
        orth = orth.max(v / gram[j][j].real().to_f64().sqrt());
    }
    let mut norm2 = Complex::new(prec);
    for j in 0..=n {
        for k in 0..=n {
            norm2 += Complex::with_val(prec, &c[j] * &gram[j][k]) * Complex::with_val(prec, c[k].conj_ref());
        }
    }
    let kappa_sq = kappa * kappa;
    let kappa_sq_requad = norm2.real().to_f64() * kappa_sq;

    let pi: Vec<Complex64> = basis.coeffs_c64(n).iter().map(|a| a * kappa).collect();
    let far_field: Vec<(f64, f64)> = FAR_RADII
        .iter()
        .map(|&r| {
            let z = Complex64::from_polar(r, FAR_ANGLE);
            let u0 = rule
                .measure()
                .iter()
                .map(|(xi, w)| horner(&pi, *xi).norm_sqr() * (z - xi).norm_sqr().ln() * w)
                .sum::<f64>();
            (r, r * (u0 - kappa_sq * (r * r).ln()).abs() / kappa_sq)
        })
        .collect();
    let far_bounded = bounded(&far_field, 1e-6);

    let roots = polynomial_roots(&pi)?;
    let z0 = roots
        .iter()
        .copied()
        .min_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or(Complex64::new(0.0, 0.0));
    let dir = Complex64::from_polar(1.0, 0.7);
    let smooth_probe = [1e-1, 3e-2, 1e-2]
        .iter()
        .map(|&d| {
            let z = z0 + dir * d;
            let du0 = integrate_about(
                rule,
                z,
                |xi| Complex64::new(horner(&pi, xi).norm_sqr(), 0.0),
                |rho, e| -e.conj() / rho,
            );
            let cauchy = integrate_about(rule, z, |xi| horner(&pi, xi).conj(), |rho, e| -e.conj() / rho);
            (d, du0 / horner(&pi, z), cauchy)
        })
        .collect();
    Ok(ExactPotentialReport {
        n,
        orthogonality: orth,
        kappa_sq,
        kappa_sq_requad,
        far_field,
        far_bounded,
        smooth_probe,
    })
}

/// Residuals of the Berezin system for a nonsingular source.
#[derive(Clone, Debug)]
pub struct BerezinSystemReport {
    pub z: Complex64,
    /// `q(z)`, expected real and equal to `k(z,z)^{1/2}`.
    pub q_at_z: Complex64,
    pub kzz_sqrt: f64,
    /// `∫ B(z, ·) dA`.
    pub mass: f64,
    /// `‖q‖_{2mQ}`.
    pub q_norm: f64,
    /// `(r, r·|𝒜(z, r e^{iα})|)`.
    pub decay: Vec<(f64, f64)>,
    pub decay_bounded: bool,
    /// `(r, r·|𝔅(z, r e^{iα}) − log r²|)`.
    pub far_field: Vec<(f64, f64)>,
    /// Leading coefficient `η₀` of `q`.
    pub eta0: Complex64,
    pub zeros: ZeroSet,
}

/// Builds `q = k(z,z)^{−1/2} k(·, z)` and checks the Berezin system.
pub fn verify_berezin_system(basis: &OrthonormalBasis, rule: &QuadratureRule, n: usize, z: Complex64) -> Result<BerezinSystemReport> {
    let b = Berezin::new(basis, rule, n, z)?;
    let zeros = b.zeros()?;
    if zeros.singular {
        return Err(Error::Domain(format!("singular source: P_{}(z) = 0 at z = {z}", n - 1)));
    }
    let dir = Complex64::from_polar(1.0, FAR_ANGLE);
    let decay: Vec<(f64, f64)> = FAR_RADII.iter().map(|&r| (r, r * b.a_potential(dir * r).abs())).collect();
    let far_field = FAR_RADII
        .iter()
        .map(|&r| (r, r * (b.potential(dir * r) - (r * r).ln()).abs()))
        .collect();
    let mass = b.mass();
    Ok(BerezinSystemReport {
        z,
        q_at_z: b.q(z),
        kzz_sqrt: b.kzz.sqrt(),
        mass,
        q_norm: b.q_norm_sqr().sqrt(),
        decay_bounded: bounded(&decay, 1e-6),
        decay,
        far_field,
        eta0: b.slice[n - 1] / b.kzz.sqrt(),
        zeros,
    })
}

/// `(w, ∂_w𝔅 by finite differences, Cauchy transform of B)`.
pub fn derivative_probe(b: &Berezin<'_>, points: &[Complex64], h: f64) -> Vec<(Complex64, Complex64, Complex64)> {
    points.iter().map(|&w| (w, b.potential_derivative_fd(w, h), b.cauchy(w))).collect()
}

/// `(δ, combination, ∫ k(z,ξ)/(w−ξ) e^{−2mQ} dA)` at `w = z + δ e^{iα}`.
pub fn smooth_combination_probe(b: &Berezin<'_>, deltas: &[f64]) -> Vec<(f64, Complex64, Complex64)> {
    let dir = Complex64::from_polar(1.0, 1.1);
    deltas
        .iter()
        .map(|&d| {
            let w = b.z + dir * d;
            (d, b.smooth_combination(w), b.kernel_cauchy(w))
        })
        .collect()
}

/// Whether `z` lies inside `Γ` sampled at `count` points and at least
/// `margin` away from it.
pub fn inside_droplet(geom: &DropletGeometry, z: Complex64, count: usize, margin: f64) -> bool {
    let (inside, dist) = geom.locate(z, count);
    inside && dist > margin
}

/// Distance from `z` to the droplet, zero inside.
pub fn distance_to_droplet(geom: &DropletGeometry, z: Complex64, count: usize) -> f64 {
    let (inside, dist) = geom.locate(z, count);
    if inside {
        0.0
    } else {
        dist
    }
}

/// One probe of `compare_prediction`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComparisonRow {
    pub z: Complex64,
    pub p_oracle: Complex64,
    pub p_pred: Complex64,
    /// `||P| − |P̂|| / |P|`.
    pub modulus_err: f64,
    /// `|P − cP̂| / |P|` with the fitted unimodular constant `c`.
    pub phase_err: f64,
    pub wave_oracle: f64,
    pub wave_pred: f64,
    pub wave_err: f64,
    pub in_band: bool,
}

/// Predicted versus oracle values over a probe set.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    /// Global unimodular constant fitted to the phases.
    pub phase: Complex64,
    /// Band half-width `δ m^{−1/4}`.
    pub band: f64,
    pub sup_modulus: f64,
    pub sup_phase: f64,
    pub sup_wave: f64,
}

/// Compares `P_{m,n}` and `|P_{m,n}|² e^{−2mQ}` with the prediction at every
/// probe; suprema are over probes with `dist(z, Ω) ≤ δ m^{−1/4}`.
pub fn compare_prediction(basis: &OrthonormalBasis, model: &WaveModel<'_>, probes: &[Complex64], delta: f64) -> Result<Comparison> {
    let n = model.cfg.n as usize;
    if model.cfg.m != basis.m || n > basis.n_max || basis.spec != model.geom.spec {
        return Err(Error::Usage(format!(
            "prediction (m = {}, n = {n}, {}) does not match the oracle basis (m = {}, n_max = {}, {})",
            model.cfg.m,
            model.geom.spec.name(),
            basis.m,
            basis.n_max,
            basis.spec.name()
        )));
    }
    let m = basis.m as f64;
    let band = delta * m.powf(-0.25);
    let mut pairs = Vec::with_capacity(probes.len());
    let mut fit = Complex64::new(0.0, 0.0);
    for &z in probes {
        let po = basis.eval(n, z);
        let pp = model.predict_p(z)?;
        let in_band = distance_to_droplet(model.geom, z, 2048) <= band;
        if in_band {
            fit += po * pp.conj() / (po.norm() * pp.norm());
        }
        pairs.push((z, po, pp, in_band));
    }
    let phase = if fit.norm() > 0.0 { fit / fit.norm() } else { Complex64::new(1.0, 0.0) };
    let rows: Vec<ComparisonRow> = pairs
        .into_iter()
        .map(|(z, po, pp, in_band)| {
            let w = (-2.0 * m * basis.spec.q_value(z)).exp();
            let wave_oracle = po.norm_sqr() * w;
            let wave_pred = pp.norm_sqr() * w;
            ComparisonRow {
                z,
                p_oracle: po,
                p_pred: pp,
                modulus_err: (po.norm() - pp.norm()).abs() / po.norm(),
                phase_err: (po - phase * pp).norm() / po.norm(),
                wave_oracle,
                wave_pred,
                wave_err: (wave_oracle - wave_pred).abs() / wave_oracle,
                in_band,
            }
        })
        .collect();
    let sup = |f: fn(&ComparisonRow) -> f64| rows.iter().filter(|r| r.in_band).map(f).fold(0.0, f64::max);
    Ok(Comparison {
        sup_modulus: sup(|r| r.modulus_err),
        sup_phase: sup(|r| r.phase_err),
        sup_wave: sup(|r| r.wave_err),
        rows,
        phase,
        band,
    })
}
