//! Truncated univariate power series over a coefficient ring.
//!
//! The recurrences below compute `1/a`, `exp a`, `log a` and `√a` for a
//! series `a = a_0 + a_1 x + …` truncated at the length of the input. The
//! constant term is handled by the coefficient ring itself, so nesting (series
//! of jets, jets of complex numbers) composes.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Coefficient ring for truncated power series.
pub trait Coef: Clone {
    /// Additive identity with the same shape as `self`.
    fn zero_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, s: f64) -> Self;
    /// Exact division by a positive integer.
    fn div_int(&self, n: usize) -> Self {
        self.scale(1.0 / n as f64)
    }
    fn recip(&self) -> Result<Self>;
    fn ln(&self) -> Result<Self>;
    fn exp(&self) -> Self;
    fn sqrt(&self) -> Result<Self>;
}

impl Coef for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn recip(&self) -> Result<Self> {
        if self.norm() == 0.0 {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(self.inv())
    }
    fn ln(&self) -> Result<Self> {
        if self.norm() == 0.0 {
            return Err(Error::Domain("logarithm of zero".into()));
        }
        Ok(Complex64::ln(*self))
    }
    fn exp(&self) -> Self {
        Complex64::exp(*self)
    }
    fn sqrt(&self) -> Result<Self> {
        if self.norm() == 0.0 {
            return Err(Error::Domain("square root of zero is not analytic".into()));
        }
        Ok(Complex64::sqrt(*self))
    }
}

/// Cauchy product truncated at `min(a.len(), b.len())` terms.
pub fn mul<T: Coef>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().min(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = a[0].mul(&b[k]);
        for i in 1..=k {
            acc = acc.add(&a[i].mul(&b[k - i]));
        }
        out.push(acc);
    }
    out
}

/// Multiplicative inverse.
pub fn recip<T: Coef>(a: &[T]) -> Result<Vec<T>> {
    let r0 = a[0].recip()?;
    let mut r = vec![r0.clone()];
    for k in 1..a.len() {
        let mut acc = a[1].mul(&r[k - 1]);
        for i in 2..=k {
            acc = acc.add(&a[i].mul(&r[k - i]));
        }
        r.push(r0.mul(&acc).scale(-1.0));
    }
    Ok(r)
}

/// Exponential.
pub fn exp<T: Coef>(a: &[T]) -> Vec<T> {
    let mut g = vec![a[0].exp()];
    for k in 1..a.len() {
        let mut acc = a[1].mul(&g[k - 1]);
        for i in 2..=k {
            acc = acc.add(&a[i].mul(&g[k - i]).scale(i as f64));
        }
        g.push(acc.div_int(k));
    }
    g
}

/// Principal logarithm (branch chosen by the constant term).
pub fn ln<T: Coef>(a: &[T]) -> Result<Vec<T>> {
    let inv0 = a[0].recip()?;
    let mut g = vec![a[0].ln()?];
    for k in 1..a.len() {
        let mut acc = a[k].clone();
        if k > 1 {
            let mut s = g[1].mul(&a[k - 1]);
            for i in 2..k {
                s = s.add(&g[i].mul(&a[k - i]).scale(i as f64));
            }
            acc = acc.sub(&s.div_int(k));
        }
        g.push(acc.mul(&inv0));
    }
    Ok(g)
}

/// Principal square root (branch chosen by the constant term).
pub fn sqrt<T: Coef>(a: &[T]) -> Result<Vec<T>> {
    let s0 = a[0].sqrt()?;
    let half_inv = s0.scale(2.0).recip()?;
    let mut s = vec![s0];
    for k in 1..a.len() {
        let mut acc = a[k].clone();
        for i in 1..k {
            acc = acc.sub(&s[i].mul(&s[k - i]));
        }
        s.push(acc.mul(&half_inv));
    }
    Ok(s)
}

/// The four analytic functions supported by `analytic_apply`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnalyticFn {
    Log,
    Exp,
    Sqrt,
    Reciprocal,
}

impl AnalyticFn {
    /// Applies the function to a truncated series.
    pub fn apply<T: Coef>(self, a: &[T]) -> Result<Vec<T>> {
        match self {
            AnalyticFn::Log => ln(a),
            AnalyticFn::Exp => Ok(exp(a)),
            AnalyticFn::Sqrt => sqrt(a),
            AnalyticFn::Reciprocal => recip(a),
        }
    }

    /// Whether the function has a branch cut on the negative real axis.
    pub fn has_branch_cut(self) -> bool {
        matches!(self, AnalyticFn::Log | AnalyticFn::Sqrt)
    }

    pub fn name(self) -> &'static str {
        match self {
            AnalyticFn::Log => "log",
            AnalyticFn::Exp => "exp",
            AnalyticFn::Sqrt => "sqrt",
            AnalyticFn::Reciprocal => "reciprocal",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn exp_of_x_is_factorial_series() {
        let a = vec![c(0.0), c(1.0), c(0.0), c(0.0), c(0.0)];
        let g = exp(&a);
        let want = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0];
        for (x, w) in g.iter().zip(want) {
            assert!((x.re - w).abs() < 1e-15);
        }
    }

    #[test]
    fn log_of_one_plus_x() {
        let a = vec![c(1.0), c(1.0), c(0.0), c(0.0), c(0.0)];
        let g = ln(&a).unwrap();
        let want = [0.0, 1.0, -0.5, 1.0 / 3.0, -0.25];
        for (x, w) in g.iter().zip(want) {
            assert!((x.re - w).abs() < 1e-15);
        }
    }

    #[test]
    fn sqrt_squares_back_and_recip_inverts() {
        let a = vec![c(4.0), c(1.0), c(-2.0), c(0.5), c(0.25), c(3.0)];
        let s = sqrt(&a).unwrap();
        let back = mul(&s, &s);
        let r = recip(&a).unwrap();
        let one = mul(&a, &r);
        for k in 0..a.len() {
            assert!((back[k] - a[k]).norm() < 1e-13);
            let want = if k == 0 { 1.0 } else { 0.0 };
            assert!((one[k] - c(want)).norm() < 1e-13);
        }
    }
}
