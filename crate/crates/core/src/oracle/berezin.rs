//! Polynomial Bergman kernel, Berezin density and potential, zero sets.

use super::basis::{horner, OrthonormalBasis};
use super::quadrature::{gauss_legendre, QuadratureRule};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// `k_{m,n}(z,w)`, the weighted kernel `K` and the Berezin density `B`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelValue {
    pub k: Complex64,
    pub big_k: Complex64,
    pub b: f64,
}

/// Kernel values at `(z, w)` for `k_{m,n} = Σ_{k<n} P_k(z) conj(P_k(w))`.
pub fn eval_kernel(basis: &OrthonormalBasis, n: usize, z: Complex64, w: Complex64) -> Result<KernelValue> {
    basis.check_n(n)?;
    let kzz: f64 = (0..n).map(|k| basis.eval(k, z).norm_sqr()).sum();
    if !(kzz > 0.0) {
        return Err(Error::Domain(format!("degenerate source: K({z}, {z}) = 0")));
    }
    let k: Complex64 = (0..n).map(|k| basis.eval(k, z) * basis.eval(k, w).conj()).sum();
    let qz = basis.spec.q_value(z);
    let qw = basis.spec.q_value(w);
    let m = basis.m as f64;
    let big_k = k * (-m * (qz + qw)).exp();
    let b = k.norm_sqr() * (-2.0 * m * qw).exp() / kzz;
    Ok(KernelValue { k, big_k, b })
}

/// Area rule in polar coordinates about `center`, graded towards the centre,
/// restricted to `|ξ| ≤ cutoff`.
#[derive(Clone, Debug)]
pub struct PolarRule {
    pub center: Complex64,
    pub cutoff: f64,
    /// `(ρ, area weight per direction)`.
    pub radial: Vec<(f64, f64)>,
    /// Unit directions `e^{iα}`.
    pub dirs: Vec<Complex64>,
}

impl PolarRule {
    /// `scale` is the length on which integrands vary (`~ m^{−1/2}`).
    pub fn new(center: Complex64, cutoff: f64, scale: f64) -> Self {
        let outer = center.norm() + cutoff;
        let (gx, gw) = gauss_legendre(16, 64);
        let mut edges = vec![0.0];
        for k in (0..=24).rev() {
            edges.push(scale * 0.5f64.powi(k));
        }
        let panels = ((outer - scale) / scale).ceil().max(0.0) as usize;
        for p in 1..=panels {
            edges.push(scale * (1 + p) as f64);
        }
        let n_alpha = ((16.0 * PI * outer / scale).ceil() as usize).max(256).next_multiple_of(64);
        let dirs = (0..n_alpha)
            .map(|l| Complex64::from_polar(1.0, 2.0 * PI * l as f64 / n_alpha as f64))
            .collect();
        let mut radial = Vec::new();
        for e in edges.windows(2) {
            let (mid, half) = (0.5 * (e[0] + e[1]), 0.5 * (e[1] - e[0]));
            for (x, w) in gx.iter().zip(&gw) {
                let rho = mid + half * x.to_f64();
                radial.push((rho, half * w.to_f64() * rho * 2.0 / n_alpha as f64));
            }
        }
        PolarRule { center, cutoff, radial, dirs }
    }

    /// `Σ f(ξ, ρ, e^{iα}) · weight` over nodes with `|ξ| ≤ cutoff`.
    pub fn sum<F: Fn(Complex64, f64, Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        let c2 = self.cutoff * self.cutoff;
        let mut acc = Complex64::new(0.0, 0.0);
        for (rho, wt) in &self.radial {
            let mut ring = Complex64::new(0.0, 0.0);
            for d in &self.dirs {
                let xi = self.center + d * rho;
                if xi.norm_sqr() <= c2 {
                    ring += f(xi, *rho, *d);
                }
            }
            acc += ring * wt;
        }
        acc
    }
}

/// Zero set `𝔷(z)` of `w ↦ k_{m,n}(w, z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    pub roots: Vec<Complex64>,
    /// `P_{n−1}(z) = 0`: the degree dropped below `n − 1`.
    pub singular: bool,
    pub degree: usize,
}

/// Roots of a polynomial from the eigenvalues of its companion matrix,
/// polished by Newton steps.
pub fn polynomial_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = c.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = c[deg];
    let mut comp = DMatrix::<Complex64>::zeros(deg, deg);
    for j in 0..deg {
        comp[(0, j)] = -c[deg - 1 - j] / lead;
        if j + 1 < deg {
            comp[(j + 1, j)] = Complex64::new(1.0, 0.0);
        }
    }
    let eig = comp
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::Numerical("companion matrix Schur form did not converge".into()))?;
    let dc: Vec<Complex64> = (1..=deg).map(|j| c[j] * j as f64).collect();
    Ok(eig
        .iter()
        .map(|&r0| {
            let mut r = r0;
            for _ in 0..4 {
                let d = horner(&dc, r);
                if d.norm() == 0.0 {
                    break;
                }
                let step = horner(c, r) / d;
                if !step.is_finite() {
                    break;
                }
                r -= step;
            }
            r
        })
        .collect())
}

/// `∫ f(ξ) g(|ξ − w|, (ξ − w)/|ξ − w|) e^{−2mQ(ξ)} dA(ξ)` where `g` may be
/// singular at `w`. Far from the support the global rule is used; otherwise a
/// polar rule about `w` whose Jacobian absorbs the singularity.
pub fn integrate_about<F, G>(rule: &QuadratureRule, w: Complex64, f: F, g: G) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
    G: Fn(f64, Complex64) -> Complex64,
{
    let cutoff = rule.radius;
    if w.norm() > cutoff + 1.0 {
        return rule
            .measure()
            .iter()
            .map(|(xi, wt)| {
                let d = xi - w;
                f(*xi) * g(d.norm(), d / d.norm()) * *wt
            })
            .sum();
    }
    let m = rule.m as f64;
    let polar = PolarRule::new(w, cutoff, 0.5 / m.sqrt());
    polar.sum(|xi, rho, dir| f(xi) * (-2.0 * m * rule.spec.q_value(xi)).exp() * g(rho, dir))
}

/// Berezin objects for a fixed source `z`.
#[derive(Clone, Debug)]
pub struct Berezin<'b> {
    pub basis: &'b OrthonormalBasis,
    pub rule: &'b QuadratureRule,
    pub n: usize,
    pub z: Complex64,
    /// `k(z, z)`.
    pub kzz: f64,
    /// Coefficients of `w ↦ k(w, z)`.
    pub slice: Vec<Complex64>,
}

impl<'b> Berezin<'b> {
    pub fn new(basis: &'b OrthonormalBasis, rule: &'b QuadratureRule, n: usize, z: Complex64) -> Result<Self> {
        let slice = basis.kernel_slice(n, z)?;
        let kzz = horner(&slice, z).re;
        if !(kzz > 0.0) {
            return Err(Error::Domain(format!("degenerate source: K({z}, {z}) = 0")));
        }
        Ok(Berezin { basis, rule, n, z, kzz, slice })
    }

    /// `k(w, z)`.
    pub fn k_wz(&self, w: Complex64) -> Complex64 {
        horner(&self.slice, w)
    }

    /// `q(w) = k(w, z)/k(z, z)^{1/2}`.
    pub fn q(&self, w: Complex64) -> Complex64 {
        self.k_wz(w) / self.kzz.sqrt()
    }

    fn weight(&self, xi: Complex64) -> f64 {
        (-2.0 * self.rule.m as f64 * self.rule.spec.q_value(xi)).exp()
    }

    /// `B(z, ξ)`.
    pub fn density(&self, xi: Complex64) -> f64 {
        self.k_wz(xi).norm_sqr() * self.weight(xi) / self.kzz
    }

    /// `∫ B(z, ·) dA` on the global rule.
    pub fn mass(&self) -> f64 {
        self.rule.measure().iter().map(|(xi, w)| self.k_wz(*xi).norm_sqr() * w).sum::<f64>() / self.kzz
    }

    /// `‖q‖²_{2mQ}` on the global rule.
    pub fn q_norm_sqr(&self) -> f64 {
        self.mass()
    }

    fn integrate_about<F, G>(&self, w: Complex64, f: F, g: G) -> Complex64
    where
        F: Fn(Complex64) -> Complex64,
        G: Fn(f64, Complex64) -> Complex64,
    {
        integrate_about(self.rule, w, f, g)
    }

    /// `𝔅(z, w) = ∫ B(z, ξ) log|w − ξ|² dA(ξ)`.
    pub fn potential(&self, w: Complex64) -> f64 {
        let kzz = self.kzz;
        self.integrate_about(
            w,
            |xi| Complex64::new(self.k_wz(xi).norm_sqr() / kzz, 0.0),
            |rho, _| Complex64::new(2.0 * rho.ln(), 0.0),
        )
        .re
    }

    /// `∫ B(z, ξ)/(w − ξ) dA(ξ)`.
    pub fn cauchy(&self, w: Complex64) -> Complex64 {
        let kzz = self.kzz;
        self.integrate_about(
            w,
            |xi| Complex64::new(self.k_wz(xi).norm_sqr() / kzz, 0.0),
            |rho, dir| -dir.conj() / rho,
        )
    }

    /// `∫ k(z, ξ)/(w − ξ) e^{−2mQ(ξ)} dA(ξ)`.
    pub fn kernel_cauchy(&self, w: Complex64) -> Complex64 {
        self.integrate_about(w, |xi| self.k_wz(xi).conj(), |rho, dir| -dir.conj() / rho)
    }

    /// `∂_w 𝔅` by central differences of step `h`.
    pub fn potential_derivative_fd(&self, w: Complex64, h: f64) -> Complex64 {
        let dx = (self.potential(w + h) - self.potential(w - h)) / (2.0 * h);
        let i = Complex64::new(0.0, 1.0);
        let dy = (self.potential(w + i * h) - self.potential(w - i * h)) / (2.0 * h);
        Complex64::new(0.5 * dx, -0.5 * dy)
    }

    /// `(k(z,z)/k(w,z))(∂_w𝔅 − 1/(w−z)) + 1/(w−z)`, with `∂_w𝔅` as a Cauchy transform.
    pub fn smooth_combination(&self, w: Complex64) -> Complex64 {
        let c = (w - self.z).inv();
        self.kzz / self.k_wz(w) * (self.cauchy(w) - c) + c
    }

    /// `𝒜(z, w) = 𝔅(z, w) − log|z − w|²`.
    pub fn a_potential(&self, w: Complex64) -> f64 {
        self.potential(w) - (self.z - w).norm_sqr().ln()
    }

    /// Zero set of `w ↦ k(w, z)`, with the degree drop reported.
    pub fn zeros(&self) -> Result<ZeroSet> {
        let scale = self.slice.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut deg = self.slice.len() - 1;
        let singular = self.slice[deg].norm() <= 1e-12 * scale;
        while deg > 0 && self.slice[deg].norm() <= 1e-12 * scale {
            deg -= 1;
        }
        let roots = polynomial_roots(&self.slice[..=deg])?;
        Ok(ZeroSet { roots, singular, degree: deg })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_cubic() {
        let want = [Complex64::new(1.0, 0.5), Complex64::new(-2.0, 0.0), Complex64::new(0.0, -1.0)];
        // (w − a)(w − b)(w − c)
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for a in want {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (j, cj) in c.iter().enumerate() {
                next[j + 1] += cj;
                next[j] -= cj * a;
            }
            c = next;
        }
        let roots = polynomial_roots(&c).unwrap();
        for a in want {
            assert!(roots.iter().any(|r| (r - a).norm() < 1e-12));
        }
    }
}
