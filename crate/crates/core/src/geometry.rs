//! Droplet data for a potential `Q` at filling `τ`.
//!
//! The exterior of the droplet is parametrised by `z = ψ(ζ)`, `|ζ| > 1`,
//! with `ψ = φ^{−1}` a Laurent polynomial. Every real-analytic quantity near
//! the boundary curve is stored as a [`CollarSeries`] in the polarisation
//! variables `(ζ, η)`; realised values at physical points use closed forms
//! where one is available.

use crate::error::{Error, Result};
use crate::series::{AnalyticFn, CircleSeries, CollarSeries, CollarShape, Jet};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// The potential `Q(z) = Σ q_ab z^a conj(z)^b` together with its droplet chart.
#[derive(Clone, Debug, PartialEq)]
pub enum PotentialSpec {
    /// `Q = ½|z|²`.
    Ginibre,
    /// `Q = ½|z|² + (t/2) Re z²`, `|t| < 1`.
    Elliptic { t: f64 },
    /// A user-supplied polarised potential and exterior map.
    Custom {
        /// Terms `(a, b, q_ab)` of `Σ q_ab z^a conj(z)^b`.
        q: Vec<(u32, u32, Complex64)>,
        /// Laurent coefficients `(d, ψ_d)`, `d ≤ 1`, of `ψ`.
        psi: Vec<(i64, Complex64)>,
    },
}

impl PotentialSpec {
    pub fn elliptic(t: f64) -> Result<Self> {
        if !(t.abs() < 1.0) {
            return Err(Error::config(
                "t",
                format!("elliptic potential needs |t| < 1 for growth, got {t}"),
            ));
        }
        Ok(PotentialSpec::Elliptic { t })
    }

    pub fn name(&self) -> &'static str {
        match self {
            PotentialSpec::Ginibre => "ginibre",
            PotentialSpec::Elliptic { .. } => "elliptic",
            PotentialSpec::Custom { .. } => "custom",
        }
    }

    /// Terms of the polarised potential.
    pub fn q_terms(&self) -> Vec<(u32, u32, Complex64)> {
        let c = |x: f64| Complex64::new(x, 0.0);
        match self {
            PotentialSpec::Ginibre => vec![(1, 1, c(0.5))],
            PotentialSpec::Elliptic { t } => {
                vec![(1, 1, c(0.5)), (2, 0, c(t / 4.0)), (0, 2, c(t / 4.0))]
            }
            PotentialSpec::Custom { q, .. } => q.clone(),
        }
    }

    /// `Q(z)`.
    pub fn q_value(&self, z: Complex64) -> f64 {
        let zb = z.conj();
        self.q_terms()
            .iter()
            .map(|(a, b, q)| q * z.powu(*a) * zb.powu(*b))
            .sum::<Complex64>()
            .re
    }

    /// Laurent coefficients of the exterior map `ψ` at filling `τ`.
    pub fn psi(&self, tau: f64) -> Vec<(i64, Complex64)> {
        let c = |x: f64| Complex64::new(x, 0.0);
        match self {
            PotentialSpec::Ginibre => vec![(1, c(tau.sqrt()))],
            PotentialSpec::Elliptic { t } => {
                let (a, b) = elliptic_axes(*t, tau);
                vec![(1, c(0.5 * (a + b))), (-1, c(0.5 * (a - b)))]
            }
            PotentialSpec::Custom { psi, .. } => psi.clone(),
        }
    }
}

/// Semi-axes `(A, B)` of the elliptic droplet: `B/A = (1+t)/(1−t)`, `AB = τ`.
pub fn elliptic_axes(t: f64, tau: f64) -> (f64, f64) {
    (
        (tau * (1.0 - t) / (1.0 + t)).sqrt(),
        (tau * (1.0 + t) / (1.0 - t)).sqrt(),
    )
}

/// The exterior map `ψ(ζ) = Σ_{d ≤ 1} ψ_d ζ^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    pub coeffs: Vec<(i64, Complex64)>,
}

impl Chart {
    pub fn new(coeffs: Vec<(i64, Complex64)>) -> Result<Self> {
        let lead = coeffs
            .iter()
            .filter(|(d, _)| *d == 1)
            .map(|(_, c)| *c)
            .sum::<Complex64>();
        if coeffs.iter().any(|(d, _)| *d > 1) {
            return Err(Error::config("psi", "exterior map has powers above ζ¹"));
        }
        if !(lead.re > 0.0 && lead.im.abs() <= 1e-14 * lead.re) {
            return Err(Error::config("psi", "leading coefficient ψ₁ must be positive"));
        }
        Ok(Chart { coeffs })
    }

    /// `ψ₁ > 0`, the capacity of the droplet.
    pub fn lead(&self) -> f64 {
        self.coeffs
            .iter()
            .filter(|(d, _)| *d == 1)
            .map(|(_, c)| c.re)
            .sum()
    }

    pub fn psi(&self, zeta: Complex64) -> Complex64 {
        self.coeffs.iter().map(|(d, c)| c * zeta.powi(*d as i32)).sum()
    }

    pub fn dpsi(&self, zeta: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .filter(|(d, _)| *d != 0)
            .map(|(d, c)| c * (*d as f64) * zeta.powi(*d as i32 - 1))
            .sum()
    }

    /// Most negative power in `ψ`.
    pub fn depth(&self) -> usize {
        self.coeffs.iter().map(|(d, _)| (1 - d) as usize).max().unwrap_or(0)
    }

    /// Solves `ψ(ζ) = z` by Newton's method from `z/ψ₁`.
    pub fn invert(&self, z: Complex64) -> Result<Complex64> {
        let tol = 1e-12 * (1.0 + z.norm());
        let mut zeta = z / self.lead();
        if zeta.norm() < 1e-3 {
            zeta = Complex64::new(1.0, 0.0);
        }
        for _ in 0..50 {
            let r = self.psi(zeta) - z;
            if r.norm() <= tol {
                return Ok(zeta);
            }
            let dp = self.dpsi(zeta);
            if dp.norm() == 0.0 {
                break;
            }
            zeta -= r / dp;
        }
        let r = self.psi(zeta) - z;
        if r.norm() <= tol {
            return Ok(zeta);
        }
        Err(Error::Domain(format!(
            "point {z} is outside the chart of the exterior map (residual {:.2e})",
            r.norm()
        )))
    }
}

/// Truncation and tolerance parameters for building a geometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeometryOptions {
    pub shape: CollarShape,
    /// Relative tolerance for division by `1 − ζη`.
    pub vanish_tol: f64,
    /// Half-width `σ*` of the working annulus (`|log|ζ|| ≤ asinh σ*`).
    pub sigma_star: f64,
}

impl GeometryOptions {
    /// Options for series order `N`: `2N` Fourier modes and `2N` transversal orders.
    pub fn with_order(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::config("N", "series order must be at least 1"));
        }
        GeometryOptions::with_truncation(2 * n, 2 * n)
    }

    /// Options with `modes` Fourier modes and `order` transversal orders.
    pub fn with_truncation(modes: usize, order: usize) -> Result<Self> {
        if order < 4 {
            return Err(Error::config("order", "need at least 4 transversal orders"));
        }
        Ok(GeometryOptions {
            shape: CollarShape::new(modes, order, 0)?,
            vanish_tol: 1e-9,
            sigma_star: 0.3,
        })
    }
}

/// Everything attached to `(Q, τ)` near the boundary curve `Γ`.
#[derive(Clone, Debug)]
pub struct DropletGeometry {
    pub spec: PotentialSpec,
    pub tau: f64,
    pub chart: Chart,
    pub opts: GeometryOptions,
    /// `Q|_Γ` as circle data.
    pub boundary: CircleSeries<Complex64>,
    /// Coefficients of `𝒬(ζ) = Σ_{d ≤ 0} g_d ζ^d` (stored at indices `d ≤ 0`).
    pub scr_q: CircleSeries<Complex64>,
    /// `Q ∘ ψ` polarised.
    pub qpol: CollarSeries,
    /// `V² = Q − Q̆`.
    pub v2: CollarSeries,
    /// `√(V²/u²)`, positive on `Γ`.
    pub sqrt_w: CollarSeries,
    pub v: CollarSeries,
    /// The unit `u/V = −1/√(V²/u²)`.
    pub unit: CollarSeries,
    /// `φ′ ∘ ψ` (a function of `ζ` alone) and its conjugate (of `η` alone).
    pub phip: CollarSeries,
    pub phipbar: CollarSeries,
    /// `|φ′|²`, the Jacobian factor of `Δ`.
    pub jac: CollarSeries,
    pub dv: CollarSeries,
    pub dvbar: CollarSeries,
    pub absdv2: CollarSeries,
    pub lapv: CollarSeries,
    /// `log|φ|/V`.
    pub lpv: CollarSeries,
    /// `L̂₀ = 2|∂V|² log|φ|/V` and `L̂₁ = ½Δ(log|φ|/V)`.
    pub l0: CollarSeries,
    pub l1: CollarSeries,
}

/// Builds and validates the droplet geometry.
pub fn build_geometry(spec: &PotentialSpec, tau: f64, opts: GeometryOptions) -> Result<DropletGeometry> {
    let geom = DropletGeometry::assemble(spec, tau, opts)?;
    let report = validate_droplet(&geom);
    if !report.all_pass() {
        return Err(Error::Geometry(format!("droplet validation failed:\n{report}")));
    }
    Ok(geom)
}

impl DropletGeometry {
    /// Computes all fields without validating the droplet. Divisions by
    /// `1 − ζη` are performed unconditionally; [`validate_droplet`] reports
    /// whether they were legitimate.
    pub fn assemble(spec: &PotentialSpec, tau: f64, opts: GeometryOptions) -> Result<Self> {
        if !(tau > 0.0 && tau <= 1.0) {
            return Err(Error::config("tau", format!("τ = {tau} not in (0, 1]")));
        }
        if let PotentialSpec::Elliptic { t } = spec {
            PotentialSpec::elliptic(*t)?;
        }
        let shape = opts.shape.with_jet(0)?;
        let chart = Chart::new(spec.psi(tau))?;
        let dmax = shape.modes;
        if chart.depth() > dmax {
            return Err(Error::config("N", "series order too small for the exterior map"));
        }

        let laurent = |coeffs: &[(i64, Complex64)]| {
            let mut b = CircleSeries::zeros(dmax, &ZERO);
            for (d, c) in coeffs {
                if d.unsigned_abs() as usize <= dmax {
                    b.set(*d, b.get(*d).copied().unwrap_or(ZERO) + c);
                }
            }
            b
        };
        let conj_laurent = |b: &CircleSeries<Complex64>| {
            CircleSeries::from_coeffs(b.coeffs().iter().map(|c| c.conj()).collect()).expect("odd")
        };

        let psi_b = laurent(&chart.coeffs);
        let psi_z = CollarSeries::from_zeta(shape, &psi_b);
        let psi_e = CollarSeries::from_eta(shape, &conj_laurent(&psi_b));

        let mut qpol = CollarSeries::zeros(shape);
        for (a, b, q) in spec.q_terms() {
            let mut term = CollarSeries::constant(shape, 1.0).scale_c(q);
            for _ in 0..a {
                term = term.mul(&psi_z)?;
            }
            for _ in 0..b {
                term = term.mul(&psi_e)?;
            }
            qpol = qpol.add(&term)?;
        }

        let boundary = circle_c64(&qpol.diag_restrict());
        let scale = boundary.max_abs().max(1.0);
        let scr_q = boundary.holomorphic_extension(1e-10 * scale)?;
        let re_scr = CollarSeries::from_zeta(shape, &scr_q)
            .add(&CollarSeries::from_eta(shape, &conj_laurent(&scr_q)))?
            .scale(0.5);
        let v2 = qpol
            .sub(&CollarSeries::log_zeta_eta(shape).scale(0.5 * tau))?
            .sub(&re_scr)?;

        let w = v2.shift_down().shift_down();
        let w_min = circle_values(&w).iter().map(|c| c.re).fold(f64::INFINITY, f64::min);
        if !(w_min > 0.0) {
            return Err(Error::Geometry(format!(
                "V²/(1−ζη)² is not positive on Γ (min {w_min:.3e}); the obstacle root has no real branch"
            )));
        }
        let sqrt_w = w.apply(AnalyticFn::Sqrt)?;
        let v = sqrt_w.mul_u().scale(-1.0);
        let unit = sqrt_w.apply(AnalyticFn::Reciprocal)?.scale(-1.0);

        let mut dpsi = CircleSeries::zeros(dmax, &ZERO);
        for (d, c) in &chart.coeffs {
            if *d != 0 && (d - 1).unsigned_abs() as usize <= dmax {
                dpsi.set(d - 1, dpsi.get(d - 1).copied().unwrap_or(ZERO) + c * (*d as f64));
            }
        }
        let phip = CollarSeries::from_zeta(shape, &dpsi).apply(AnalyticFn::Reciprocal)?;
        let phipbar = phip.transpose();
        let jac = phip.mul(&phipbar)?;

        let dv = phip.mul(&v.d_zeta())?;
        let dvbar = phipbar.mul(&v.d_eta())?;
        let absdv2 = dv.mul(&dvbar)?;
        let lapv = jac.mul(&v.d_zeta().d_eta())?;

        // log|φ|/V = ½ [−log(1−u)/u] / √W.
        let mut mlog_over_u = CollarSeries::zeros(shape);
        for p in 0..=shape.order {
            let mut c = Jet::zero(0)?;
            c.set_coeff(0, Complex64::new(1.0 / (p as f64 + 1.0), 0.0));
            mlog_over_u.set_coeff(0, p, &c);
        }
        let lpv = mlog_over_u.mul(&unit)?.scale(-0.5);
        let l0 = absdv2.mul(&lpv)?.scale(2.0);
        let l1 = jac.mul(&lpv.d_zeta().d_eta())?.scale(0.5);

        Ok(DropletGeometry {
            spec: spec.clone(),
            tau,
            chart,
            opts: GeometryOptions { shape, ..opts },
            boundary,
            scr_q,
            qpol,
            v2,
            sqrt_w,
            v,
            unit,
            phip,
            phipbar,
            jac,
            dv,
            dvbar,
            absdv2,
            lapv,
            lpv,
            l0,
            l1,
        })
    }

    pub fn shape(&self) -> CollarShape {
        self.opts.shape
    }

    /// Relative vanishing tolerance used for divisions by `1 − ζη`.
    pub fn vanish_tol(&self) -> f64 {
        self.opts.vanish_tol
    }

    /// Half-width of the working annulus in `log|ζ|`.
    pub fn working_width(&self) -> f64 {
        self.opts.sigma_star.asinh()
    }

    /// `𝒬(ζ)`.
    pub fn scr_q_at(&self, zeta: Complex64) -> Complex64 {
        self.scr_q.eval(zeta)
    }

    /// Realised `V² = Q(ψ(ζ)) − τ log|ζ| − Re 𝒬(ζ)`.
    pub fn v2_at(&self, zeta: Complex64) -> f64 {
        self.spec.q_value(self.chart.psi(zeta)) - self.tau * zeta.norm().ln() - self.scr_q_at(zeta).re
    }

    /// Realised `V`, positive outside `Γ`.
    pub fn v_at(&self, zeta: Complex64) -> f64 {
        let s = self.v2_at(zeta).max(0.0).sqrt();
        if zeta.norm() >= 1.0 {
            s
        } else {
            -s
        }
    }

    /// `ζ = φ(z)`.
    pub fn invert_map(&self, z: Complex64) -> Result<Complex64> {
        self.chart.invert(z)
    }

    /// `L = L̂₀ + ϑ L̂₁` for a scalar or formal `ϑ`.
    pub fn compute_l(&self, theta: &Jet) -> Result<CollarSeries> {
        let k = theta.order();
        Ok(self.l0.promote(k)?.add(&self.l1.promote(k)?.mul_jet(theta))?)
    }

    /// Points `ψ(e^{iθ})` of `Γ`.
    pub fn boundary_samples(&self, count: usize) -> Vec<(f64, Complex64)> {
        (0..count)
            .map(|i| {
                let th = 2.0 * PI * i as f64 / count as f64;
                (th, self.chart.psi(Complex64::from_polar(1.0, th)))
            })
            .collect()
    }

    /// Whether `z` lies inside `Γ` sampled at `count` points, together with
    /// its distance to the sampled curve.
    pub fn locate(&self, z: Complex64, count: usize) -> (bool, f64) {
        let pts: Vec<Complex64> = self.boundary_samples(count).into_iter().map(|(_, p)| p).collect();
        let mut inside = false;
        let mut dist = f64::INFINITY;
        for i in 0..pts.len() {
            let (a, b) = (pts[i], pts[(i + 1) % pts.len()]);
            if (a.im > z.im) != (b.im > z.im) {
                let x = a.re + (z.im - a.im) / (b.im - a.im) * (b.re - a.re);
                if z.re < x {
                    inside = !inside;
                }
            }
            let ab = b - a;
            let t = (((z - a) * ab.conj()).re / ab.norm_sqr()).clamp(0.0, 1.0);
            dist = dist.min((z - a - ab * t).norm());
        }
        (inside, dist)
    }

    /// Whether `z` lies strictly inside the droplet.
    pub fn contains(&self, z: Complex64) -> bool {
        self.locate(z, 1024).0
    }

    /// `(r, V(ψ(r)))` along the positive real ray across the working annulus.
    pub fn ray_samples(&self, count: usize) -> Vec<(f64, f64)> {
        let w = self.working_width();
        (0..count)
            .map(|i| {
                let s = -w + 2.0 * w * i as f64 / (count.max(2) - 1) as f64;
                let r = s.exp();
                (r, self.v_at(Complex64::new(r, 0.0)))
            })
            .collect()
    }
}

/// Converts plain jets to complex numbers.
pub fn circle_c64(b: &CircleSeries<Jet>) -> CircleSeries<Complex64> {
    CircleSeries::from_coeffs(b.coeffs().iter().map(|j| j.coeff(0)).collect()).expect("odd")
}

/// Values of the circle restriction on an equispaced grid of `4D` angles.
fn circle_values(f: &CollarSeries) -> Vec<Complex64> {
    let n = 4 * f.shape().modes.max(8);
    (0..n)
        .map(|i| f.realize0(Complex64::from_polar(1.0, 2.0 * PI * i as f64 / n as f64)))
        .collect()
}

/// One line of a validation report.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    /// Measured quantity and the threshold it is compared with.
    pub value: f64,
    pub threshold: f64,
}

/// Outcome of [`validate_droplet`].
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} = {} (value {:.6e}, threshold {:.6e})",
                c.name,
                if c.pass { "pass" } else { "fail" },
                c.value,
                c.threshold
            )?;
        }
        Ok(())
    }
}

/// Checks the obstacle conditions: second-order vanishing of `V²` on `Γ`,
/// `Q ≥ Q̆` across the working annulus, `ψ′ ≠ 0` and `|∂V|² > 0` on `Γ`.
pub fn validate_droplet(geom: &DropletGeometry) -> ValidationReport {
    let mut checks = Vec::new();
    let scale = geom.boundary.max_abs().max(1.0);
    let tol = geom.vanish_tol() * scale;

    let v2_0 = geom.v2.diag_max();
    let v2_1 = geom.v2.shift_down().diag_max();
    let worst = v2_0.max(v2_1);
    checks.push(Check {
        name: "second_order_vanishing",
        pass: worst <= tol,
        value: worst,
        threshold: tol,
    });

    let width = geom.working_width();
    let na = 4 * geom.shape().modes.max(16);
    let mut min_gap = f64::INFINITY;
    let mut min_dpsi = f64::INFINITY;
    for k in 1..=6 {
        for sign in [-1.0, 1.0] {
            let r = (sign * width * k as f64 / 6.0).exp();
            for i in 0..na {
                let zeta = Complex64::from_polar(r, 2.0 * PI * i as f64 / na as f64);
                min_gap = min_gap.min(geom.v2_at(zeta));
                min_dpsi = min_dpsi.min(geom.chart.dpsi(zeta).norm());
            }
        }
    }
    checks.push(Check {
        name: "obstacle_gap_nonnegative",
        pass: min_gap >= -tol,
        value: min_gap,
        threshold: -tol,
    });
    checks.push(Check {
        name: "map_derivative_nonzero",
        pass: min_dpsi > 1e-8,
        value: min_dpsi,
        threshold: 1e-8,
    });

    let min_dv2 = circle_values(&geom.absdv2)
        .iter()
        .map(|c| c.re)
        .fold(f64::INFINITY, f64::min);
    checks.push(Check {
        name: "gradient_nonvanishing",
        pass: min_dv2 > 1e-8,
        value: min_dv2,
        threshold: 1e-8,
    });
    ValidationReport { checks }
}
