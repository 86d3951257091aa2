//! Computable surrogates of the operator-estimate constants.
//!
//! Every norm is measured on the series with the chosen [`NormKind`]; the
//! constants are then assembled exactly as in the displayed bounds. The
//! result diagnoses whether the hypotheses (`|ϑ| ≤ ϱ₀`, `k ≤ k_cap`) hold for
//! the measured numbers; it is not a certified enclosure.

use super::iterate::NormKind;
use super::ops::Operators;
use crate::error::{Error, Result};
use crate::geometry::DropletGeometry;
use crate::series::{AnalyticFn, Band, CollarSeries, Jet};
use num_complex::Complex64;
use std::fmt;

/// Norms of the geometry quantities at one band.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandNorms {
    pub sigma: f64,
    pub dv: f64,
    pub absdv2: f64,
    pub inv_absdv2: f64,
    pub u_over_v: f64,
    pub phip: f64,
    pub lapv: f64,
    pub inv_l: f64,
    pub p_log_l: f64,
}

/// `‖𝐏_Ω‖_{σ→σ} ≤ 6/σ`.
pub fn poisson_bound(sigma: f64) -> f64 {
    6.0 / sigma
}

/// Budget diagnostics for `(σ, σ′, ϑ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Budget {
    pub sigma: f64,
    pub sigma_prime: f64,
    pub sigma_star: f64,
    pub theta: f64,
    pub eps0: f64,
    pub norm: NormKind,
    pub at_sigma: BandNorms,
    pub at_sigma_prime: BandNorms,
    pub c0: f64,
    pub m0: f64,
    pub lipschitz_c: f64,
    pub m1: f64,
    pub c1: f64,
    pub c2: f64,
    pub k_cap: usize,
    pub r0: f64,
    pub n0: f64,
    pub n1: f64,
    pub c3: f64,
    pub rho0: f64,
}

impl Budget {
    /// Whether `|ϑ| ≤ ϱ₀`.
    pub fn theta_admissible(&self) -> bool {
        self.theta.abs() <= self.rho0
    }

    /// `(½C₂|ϑ|k²)^k ‖E₀‖`.
    pub fn residual_bound(&self, k: usize, e0_norm: f64) -> f64 {
        if k == 0 {
            return e0_norm;
        }
        let k = k as f64;
        (0.5 * self.c2 * self.theta.abs() * k * k).powf(k) * e0_norm
    }

    /// Key-value lines for `budget.txt`.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        };
        kv("norm", format!("{:?}", self.norm).to_lowercase());
        kv("theta", format!("{:e}", self.theta));
        kv("sigma", format!("{}", self.sigma));
        kv("sigma_prime", format!("{}", self.sigma_prime));
        kv("sigma_star", format!("{}", self.sigma_star));
        kv("eps0", format!("{}", self.eps0));
        for (tag, n) in [("sigma", &self.at_sigma), ("sigma_prime", &self.at_sigma_prime)] {
            kv(&format!("norm_dv@{tag}"), format!("{:e}", n.dv));
            kv(&format!("norm_absdv2@{tag}"), format!("{:e}", n.absdv2));
            kv(&format!("norm_inv_absdv2@{tag}"), format!("{:e}", n.inv_absdv2));
            kv(&format!("norm_u_over_v@{tag}"), format!("{:e}", n.u_over_v));
            kv(&format!("norm_phip@{tag}"), format!("{:e}", n.phip));
            kv(&format!("norm_lapv@{tag}"), format!("{:e}", n.lapv));
            kv(&format!("norm_inv_l@{tag}"), format!("{:e}", n.inv_l));
            kv(&format!("norm_p_log_l@{tag}"), format!("{:e}", n.p_log_l));
        }
        kv("C0", format!("{:e}", self.c0));
        kv("M0", format!("{:e}", self.m0));
        kv("C_lipschitz", format!("{:e}", self.lipschitz_c));
        kv("M1", format!("{:e}", self.m1));
        kv("C1", format!("{:e}", self.c1));
        kv("C2", format!("{:e}", self.c2));
        kv("k_cap", format!("{}", self.k_cap));
        kv("r0", format!("{:e}", self.r0));
        kv("m0", format!("{:e}", self.n0));
        kv("m1", format!("{:e}", self.n1));
        kv("C3", format!("{:e}", self.c3));
        kv("rho0", format!("{:e}", self.rho0));
        kv("theta_admissible", format!("{}", self.theta_admissible()));
        s
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_kv())
    }
}

/// `M₀ = C₀(1/((σ−σ′)σ′) + |ϑ|/((σ−σ′)³σ′))`.
pub fn m0_shape(c0: f64, sigma: f64, sigma_prime: f64, theta: f64) -> f64 {
    let g = sigma - sigma_prime;
    c0 * (1.0 / (g * sigma_prime) + theta.abs() / (g.powi(3) * sigma_prime))
}

/// Longest band ladder evaluated for `C₃`; longer ladders (small `ϑ`, where
/// the cap is huge or infinite) are evaluated at this length.
const MAX_LADDER: usize = 256;

/// `⌊|ϑ|^{−1/2} C₂^{−1/2}⌋`, saturating at `usize::MAX` for `ϑ = 0`.
pub fn k_cap(theta: f64, c2: f64) -> usize {
    (1.0 / (theta.abs() * c2).sqrt()).floor() as usize
}

/// `C₂ = 2 max{1, C₁(16/σ*⁴ + 64/σ*⁶)}`.
pub fn c2_from_c1(c1: f64, sigma_star: f64) -> f64 {
    2.0 * f64::max(1.0, c1 * (16.0 / sigma_star.powi(4) + 64.0 / sigma_star.powi(6)))
}

struct Measured<'a> {
    geom: &'a DropletGeometry,
    norm: NormKind,
    inv_absdv2: CollarSeries,
    inv_l: Vec<CollarSeries>,
    p_log_l: Vec<CollarSeries>,
}

impl Measured<'_> {
    fn at(&self, sigma: f64) -> Result<BandNorms> {
        let band = Band::new(sigma)?;
        let n = |f: &CollarSeries| self.norm.eval(f, band);
        let sup = |fs: &[CollarSeries]| fs.iter().map(|f| self.norm.eval(f, band)).fold(0.0, f64::max);
        let g = self.geom;
        Ok(BandNorms {
            sigma,
            dv: n(&g.dv),
            absdv2: n(&g.absdv2),
            inv_absdv2: n(&self.inv_absdv2),
            u_over_v: n(&g.unit),
            phip: n(&g.phip),
            lapv: n(&g.lapv),
            inv_l: sup(&self.inv_l),
            p_log_l: sup(&self.p_log_l),
        })
    }

    fn c0(&self, b: &BandNorms, sigma: f64, sigma_prime: f64) -> f64 {
        let x = 12.0 * sigma_prime * b.dv * b.phip + 42.0 * b.absdv2 * b.u_over_v;
        let y = 10206.0 * b.phip * b.phip * b.u_over_v;
        f64::max(x + b.lapv * (sigma - sigma_prime) * sigma_prime, y)
    }

    fn m0(&self, sigma: f64, sigma_prime: f64, theta: f64) -> Result<(f64, f64)> {
        let b = self.at(sigma)?;
        let c0 = self.c0(&b, sigma, sigma_prime);
        Ok((c0, m0_shape(c0, sigma, sigma_prime, theta)))
    }
}

/// Assembles the budget at `0 < σ′ < σ ≤ σ*`. The suprema over
/// `|ϑ| ≤ ε₀` are taken over `ϑ ∈ {0, ε₀, −ε₀, ϑ}`.
pub fn lipschitz_budget(
    geom: &DropletGeometry,
    sigma: f64,
    sigma_prime: f64,
    theta: f64,
    eps0: f64,
    norm: NormKind,
) -> Result<Budget> {
    let sigma_star = geom.opts.sigma_star;
    if !(0.0 < sigma_prime && sigma_prime < sigma && sigma <= sigma_star) {
        return Err(Error::config(
            "sigma",
            format!("need 0 < σ′ < σ ≤ σ* (got σ′={sigma_prime}, σ={sigma}, σ*={sigma_star})"),
        ));
    }
    if !(eps0 > 0.0) {
        return Err(Error::config("eps0", "must be positive"));
    }
    let mut thetas = vec![0.0, eps0, -eps0];
    if theta != 0.0 {
        thetas.push(theta);
    }
    let mut inv_l = Vec::new();
    let mut p_log_l = Vec::new();
    let mut e0s = Vec::new();
    for &t in &thetas {
        let th = Jet::constant(0, Complex64::new(t, 0.0))?;
        let l = geom.compute_l(&th)?;
        inv_l.push(l.apply(AnalyticFn::Reciprocal)?);
        p_log_l.push(CollarSeries::poisson_extend(
            &l.truncated(1).apply(AnalyticFn::Log)?.diag_restrict(),
            l.shape(),
        ));
        let ops = Operators::new(geom, th)?;
        e0s.push(ops.op_t(&ops.zero())?);
    }
    let meas = Measured {
        geom,
        norm,
        inv_absdv2: geom.absdv2.apply(AnalyticFn::Reciprocal)?,
        inv_l,
        p_log_l,
    };
    let star = Band::new(sigma_star)?;
    let r0 = 2.0 * e0s.iter().map(|e| norm.eval(e, star)).fold(0.0, f64::max);

    let at_sigma = meas.at(sigma)?;
    let at_sigma_prime = meas.at(sigma_prime)?;
    let (c0, m0) = meas.m0(sigma, sigma_prime, theta)?;

    let sigma_mid = 0.5 * (sigma + sigma_prime);
    let at_mid = meas.at(sigma_mid)?;
    let lipschitz_c = 3.0 * at_sigma_prime.inv_absdv2 * at_sigma_prime.u_over_v / (2.0 * (sigma_mid - sigma_prime))
        * (1.0 + 6.0 * poisson_bound(sigma_mid) * at_mid.inv_l * at_sigma.p_log_l.exp());
    let (_, m0_mid) = meas.m0(sigma, sigma_mid, theta)?;
    let m1 = lipschitz_c * m0_mid;
    let g = sigma - sigma_prime;
    let sp2 = sigma_prime * sigma_prime;
    let c1 = m1 / (1.0 / (sp2 * g * g) + theta.abs() / (sp2 * g.powi(4)));
    let c2 = c2_from_c1(c1, sigma_star);
    let cap = k_cap(theta, c2);

    let n0 = f64::max(1.0 / eps0, 4.0 * m0 * at_sigma_prime.inv_l * r0);
    let n1 = f64::max(n0, 2.0 * poisson_bound(sigma_prime) * m0 * at_sigma_prime.inv_l * r0);

    let k = cap.clamp(1, MAX_LADDER);
    let kf = k as f64;
    let mut c3: f64 = 0.0;
    for j in 0..k {
        let sj = sigma_star * (1.0 - j as f64 / (2.0 * kf));
        let sj1 = sigma_star * (1.0 - (j + 1) as f64 / (2.0 * kf));
        let (_, m0j) = meas.m0(sj, sj1, theta)?;
        let bj = meas.at(sj1)?;
        let m1j = m0j * bj.inv_l * f64::max(2.0, poisson_bound(sj1)) * r0;
        c3 = c3.max(m1j / (kf + kf.powi(3) * theta.abs()));
    }
    let rho0 = c2 / (c3 * c3) / (1.0 + 1.0 / c2).powi(2);

    Ok(Budget {
        sigma,
        sigma_prime,
        sigma_star,
        theta,
        eps0,
        norm,
        at_sigma,
        at_sigma_prime,
        c0,
        m0,
        lipschitz_c,
        m1,
        c1,
        c2,
        k_cap: cap,
        r0,
        n0,
        n1,
        c3,
        rho0,
    })
}
