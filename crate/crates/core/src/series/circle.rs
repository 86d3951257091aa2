//! Fourier–Laurent data on the unit circle and their harmonic extensions.

use super::scalar::Scalar;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Coefficients `b_d`, `d ∈ [−D, D]`, of a function on the unit circle
/// (`e^{idθ} ↔ ζ^d`).
#[derive(Clone, Debug, PartialEq)]
pub struct CircleSeries<S> {
    degree: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> CircleSeries<S> {
    pub fn zeros(degree: usize, like: &S) -> Self {
        CircleSeries {
            degree,
            coeffs: vec![like.zero_like(); 2 * degree + 1],
        }
    }

    /// Series with a single constant term.
    pub fn constant(degree: usize, c: S) -> Self {
        let mut s = CircleSeries::zeros(degree, &c);
        s.coeffs[degree] = c;
        s
    }

    /// Builds a series from `b_{−D}..b_D`.
    pub fn from_coeffs(coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::Usage("circle series needs 2D+1 coefficients".into()));
        }
        Ok(CircleSeries {
            degree: coeffs.len() / 2,
            coeffs,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `b_d`, or `None` outside `[−D, D]`.
    pub fn get(&self, d: i64) -> Option<&S> {
        let i = d + self.degree as i64;
        if i < 0 {
            return None;
        }
        self.coeffs.get(i as usize)
    }

    pub fn set(&mut self, d: i64, v: S) {
        let i = (d + self.degree as i64) as usize;
        self.coeffs[i] = v;
    }

    /// All coefficients from `d = −D` upward.
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Iterator over `(d, b_d)`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &S)> {
        let dd = self.degree as i64;
        self.coeffs.iter().enumerate().map(move |(i, c)| (i as i64 - dd, c))
    }

    pub fn add(&self, o: &Self) -> Self {
        let degree = self.degree.max(o.degree);
        let like = &self.coeffs[0];
        let mut out = CircleSeries::zeros(degree, like);
        for (d, c) in self.iter().chain(o.iter()) {
            let cur = out.get(d).expect("in range").add(c);
            out.set(d, cur);
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        CircleSeries {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Value of `Σ b_d ζ^d` at a point of the punctured plane.
    pub fn eval(&self, zeta: Complex64) -> S {
        let like = &self.coeffs[0];
        let mut acc = like.zero_like();
        for (d, c) in self.iter().filter(|(_, c)| c.abs() != 0.0) {
            acc = acc.add(&c.mul(&like.from_c64_like(zeta.powi(d as i32))));
        }
        acc
    }

    /// Largest component magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max)
    }

    /// Whether `b_{−d} = conj(b_d)` within `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.iter().all(|(d, c)| {
            let mirror = self.get(-d).expect("symmetric range");
            c.sub(&mirror.conj()).abs() <= tol
        })
    }

    /// The holomorphic function `g = b_0 + 2Σ_{d≥1} b_{−d} ζ^{−d}` on the
    /// exterior disk with `Re g = b` on the circle and `Im g(∞) = 0`.
    pub fn holomorphic_extension(&self, tol: f64) -> Result<Self> {
        if !self.is_real(tol) {
            return Err(Error::Usage(
                "holomorphic extension needs real boundary data".into(),
            ));
        }
        let like = &self.coeffs[0];
        let mut out = CircleSeries::zeros(self.degree, like);
        let b0 = self.get(0).expect("constant term");
        let re0 = b0.add(&b0.conj()).scale(0.5);
        out.set(0, re0);
        for d in 1..=self.degree as i64 {
            out.set(-d, self.get(-d).expect("in range").scale(2.0));
        }
        Ok(out)
    }
}

/// A real harmonic function on the exterior disk of the form
/// `λ·log|ζ|² + 𝐏[b](ζ)`, where `𝐏[b]` is the bounded harmonic extension of
/// circle data `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicField {
    pub log_coeff: f64,
    pub data: CircleSeries<Complex64>,
}

impl HarmonicField {
    pub fn new(log_coeff: f64, data: CircleSeries<Complex64>) -> Self {
        HarmonicField { log_coeff, data }
    }

    /// Value at `ζ` (`|ζ| ≥ 1` for the exterior; the formula is used verbatim
    /// in a collar around the circle).
    pub fn eval(&self, zeta: Complex64) -> f64 {
        let eta = zeta.conj();
        let mut acc = Complex64::new(0.0, 0.0);
        for (d, b) in self.data.iter() {
            let term = if d <= 0 {
                zeta.powi(d as i32)
            } else {
                eta.powi(-(d as i32))
            };
            acc += b * term;
        }
        acc.re + self.log_coeff * zeta.norm_sqr().ln()
    }

    /// Harmonic conjugate `h* = Im g`, `g = a_0 + 2Σ_{d≥1} a_{−d} ζ^{−d}`,
    /// normalised by `h*(∞) = 0`.
    pub fn conjugate(&self, tol: f64) -> Result<HarmonicConjugate> {
        if self.log_coeff != 0.0 {
            return Err(Error::Usage(
                "harmonic conjugate of a field with a log|ζ| term is multivalued".into(),
            ));
        }
        let g = self.data.holomorphic_extension(tol)?;
        Ok(HarmonicConjugate { g })
    }
}

/// The imaginary part of a holomorphic function on the exterior disk.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicConjugate {
    pub g: CircleSeries<Complex64>,
}

impl HarmonicConjugate {
    pub fn eval(&self, zeta: Complex64) -> f64 {
        self.g.eval(zeta).im
    }
}
