//! Orthonormal polynomials by Cholesky factorisation of the moment matrix.

use super::quadrature::QuadratureRule;
use crate::error::{Error, Result};
use crate::geometry::PotentialSpec;
use num_complex::Complex64;
use rug::{Complex, Float};

/// `P_{m,k} = Σ_j c_kj z^j`, `k = 0..=n_max`, with `G = LL*`, `C = L^{−1}`
/// and `κ_k = L_kk`.
#[derive(Clone, Debug)]
pub struct OrthonormalBasis {
    pub spec: PotentialSpec,
    pub m: u32,
    pub n_max: usize,
    pub digits: u32,
    /// `⟨z^j, z^k⟩_{2mQ}`.
    pub gram: Vec<Vec<Complex>>,
    /// Row `k` holds the monomial coefficients of `P_k`.
    pub coeffs: Vec<Vec<Complex>>,
    /// `κ_k = ‖π_k‖`.
    pub kappa: Vec<Float>,
    /// `log10` of the largest diagonal moment over the smallest squared pivot.
    pub log10_condition: f64,
    coeffs_c64: Vec<Vec<Complex64>>,
}

/// Orthonormalises `1, z, …, z^{n_max}` against the rule.
pub fn orthonormalize(rule: &QuadratureRule, n_max: usize) -> Result<OrthonormalBasis> {
    let gram = rule.gram(n_max)?;
    from_gram(rule.spec.clone(), rule.m, rule.digits, gram)
}

/// Cholesky factorisation and triangular inversion of a moment matrix.
pub fn from_gram(spec: PotentialSpec, m: u32, digits: u32, gram: Vec<Vec<Complex>>) -> Result<OrthonormalBasis> {
    let n = gram.len();
    let prec = gram[0][0].prec().0;
    let mut l = vec![vec![Complex::new(prec); n]; n];
    let mut kappa = Vec::with_capacity(n);
    let floor = 10f64.powi(-(digits as i32) + 8);
    let mut worst = f64::INFINITY;
    for j in 0..n {
        let mut d = gram[j][j].real().clone();
        for k in 0..j {
            d -= Float::with_val(prec, l[j][k].abs_ref()).square();
        }
        let rel = Float::with_val(prec, &d / gram[j][j].real()).to_f64();
        worst = worst.min(rel);
        if !(rel > floor) {
            return Err(Error::Precision(format!(
                "moment matrix is not positive definite at working precision (pivot {j}, relative size {rel:.3e}); raise digits"
            )));
        }
        let ljj = d.sqrt();
        for i in j + 1..n {
            let mut s = gram[i][j].clone();
            for k in 0..j {
                s -= Complex::with_val(prec, &l[i][k] * Complex::with_val(prec, l[j][k].conj_ref()));
            }
            l[i][j] = s / &ljj;
        }
        l[j][j] = Complex::with_val(prec, (&ljj, 0));
        kappa.push(ljj);
    }
    let mut c = vec![vec![Complex::new(prec); n]; n];
    for i in 0..n {
        c[i][i] = Complex::with_val(prec, (Float::with_val(prec, 1) / &kappa[i], 0));
        for j in (0..i).rev() {
            let mut s = Complex::new(prec);
            for k in j..i {
                s += &l[i][k] * &c[k][j];
            }
            c[i][j] = Complex::with_val(prec, -s / &kappa[i]);
        }
    }
    let coeffs_c64 = c.iter().map(|row| row.iter().map(to_c64).collect()).collect();
    let gmax = (0..n).map(|j| gram[j][j].real().to_f64()).fold(0.0, f64::max);
    let pmin = kappa.iter().map(|k| k.to_f64().powi(2)).fold(f64::INFINITY, f64::min);
    Ok(OrthonormalBasis {
        spec,
        m,
        n_max: n - 1,
        digits,
        gram,
        coeffs: c,
        kappa,
        log10_condition: (gmax / pmin).log10().max(-worst.log10()),
        coeffs_c64,
    })
}

pub(crate) fn to_c64(z: &Complex) -> Complex64 {
    Complex64::new(z.real().to_f64(), z.imag().to_f64())
}

impl OrthonormalBasis {
    pub fn prec(&self) -> u32 {
        self.gram[0][0].prec().0
    }

    /// Monomial coefficients of `P_k` in double precision.
    pub fn coeffs_c64(&self, k: usize) -> &[Complex64] {
        &self.coeffs_c64[k][..=k]
    }

    pub fn kappa_f64(&self, k: usize) -> f64 {
        self.kappa[k].to_f64()
    }

    /// `P_k(z)`.
    pub fn eval(&self, k: usize, z: Complex64) -> Complex64 {
        horner(self.coeffs_c64(k), z)
    }

    /// `π_k(z) = κ_k P_k(z)`.
    pub fn eval_monic(&self, k: usize, z: Complex64) -> Complex64 {
        self.eval(k, z) * self.kappa_f64(k)
    }

    /// Coefficients `a_j` of `w ↦ k_{m,n}(w, z) = Σ_{k<n} P_k(w) conj(P_k(z))`.
    pub fn kernel_slice(&self, n: usize, z: Complex64) -> Result<Vec<Complex64>> {
        self.check_n(n)?;
        let mut a = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            let pk = self.eval(k, z).conj();
            for (j, c) in self.coeffs_c64(k).iter().enumerate() {
                a[j] += pk * c;
            }
        }
        Ok(a)
    }

    pub(crate) fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.n_max + 1 {
            return Err(Error::Usage(format!(
                "kernel order n = {n} needs 1 ≤ n ≤ n_max + 1 = {}",
                self.n_max + 1
            )));
        }
        Ok(())
    }

    /// `max_{j,k} |⟨P_j, P_k⟩ − δ_jk|` with the moments of another rule.
    pub fn orthonormality_residual(&self, gram: &[Vec<Complex>]) -> f64 {
        let n = self.n_max + 1;
        let prec = self.prec();
        // H = C G' C*.
        let mut cg = vec![vec![Complex::new(prec); n]; n];
        for a in 0..n {
            for k in 0..n {
                let mut s = Complex::new(prec);
                for j in 0..=a {
                    s += &self.coeffs[a][j] * &gram[j][k];
                }
                cg[a][k] = s;
            }
        }
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let mut s = Complex::new(prec);
                for k in 0..=b {
                    s += Complex::with_val(prec, &cg[a][k] * Complex::with_val(prec, self.coeffs[b][k].conj_ref()));
                }
                if a == b {
                    s -= 1u32;
                }
                worst = worst.max(Float::with_val(prec, s.abs_ref()).to_f64());
            }
        }
        worst
    }

    /// `⟨p, z^j⟩ / (‖p‖ ‖z^j‖)` for `j < n`, `p = Σ c_k z^k`, using the stored moments.
    pub fn relative_inner_products(&self, coeffs: &[Complex64], n: usize) -> Result<Vec<f64>> {
        if coeffs.len() > self.n_max + 1 || n > self.n_max + 1 {
            return Err(Error::Usage(format!("degree exceeds n_max = {}", self.n_max)));
        }
        let prec = self.prec();
        let c: Vec<Complex> = coeffs.iter().map(|z| Complex::with_val(prec, (z.re, z.im))).collect();
        let inner = |j: usize| -> Complex {
            let mut s = Complex::new(prec);
            for (k, ck) in c.iter().enumerate() {
                s += ck * &self.gram[k][j];
            }
            s
        };
        let mut norm2 = Complex::new(prec);
        for (k, ck) in c.iter().enumerate() {
            for (l, cl) in c.iter().enumerate() {
                norm2 += Complex::with_val(prec, ck * &self.gram[k][l]) * Complex::with_val(prec, cl.conj_ref());
            }
        }
        let norm = norm2.real().to_f64().max(0.0).sqrt();
        Ok((0..n)
            .map(|j| {
                let v = Float::with_val(prec, inner(j).abs_ref()).to_f64();
                v / (norm * self.gram[j][j].real().to_f64().sqrt())
            })
            .collect())
    }
}

pub(crate) fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::quadrature::{build_quadrature, QuadratureOptions};

    #[test]
    fn ginibre_basis_is_scaled_monomials() {
        let opts = QuadratureOptions { digits: 30, n_max: 4, ..Default::default() };
        let rule = build_quadrature(&PotentialSpec::Ginibre, 5, &opts).unwrap();
        let b = orthonormalize(&rule, 4).unwrap();
        for k in 0..=4usize {
            let fact: f64 = (1..=k).map(|i| i as f64).product();
            let lead = 5f64.powf((k as f64 + 1.0) / 2.0) / fact.sqrt();
            let c = b.coeffs_c64(k);
            assert!((c[k].re / lead - 1.0).abs() < 1e-14);
            for cj in &c[..k] {
                assert!(cj.norm() < 1e-14 * lead);
            }
        }
    }
}
