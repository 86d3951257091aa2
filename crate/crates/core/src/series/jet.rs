//! ϑ-jets: truncated polynomials in the formal variable ϑ with complex
//! coefficients, i.e. arithmetic modulo ϑ^{K+1}.

use super::power::{self, Coef};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt;

/// Largest supported jet order `K`.
pub const MAX_JET_ORDER: usize = 7;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Element of `ℂ[ϑ]/(ϑ^{K+1})`.
#[derive(Clone, Copy, PartialEq)]
pub struct Jet {
    order: usize,
    c: [Complex64; MAX_JET_ORDER + 1],
}

impl Jet {
    /// Zero jet of order `order`.
    pub fn zero(order: usize) -> Result<Self> {
        if order > MAX_JET_ORDER {
            return Err(Error::Usage(format!(
                "jet order {order} exceeds the supported maximum {MAX_JET_ORDER}"
            )));
        }
        Ok(Jet {
            order,
            c: [ZERO; MAX_JET_ORDER + 1],
        })
    }

    /// Constant jet.
    pub fn constant(order: usize, z: Complex64) -> Result<Self> {
        let mut j = Jet::zero(order)?;
        j.c[0] = z;
        Ok(j)
    }

    /// The generator ϑ itself (zero when `order == 0`).
    pub fn theta(order: usize) -> Result<Self> {
        let mut j = Jet::zero(order)?;
        if order >= 1 {
            j.c[1] = Complex64::new(1.0, 0.0);
        }
        Ok(j)
    }

    /// Jet from its coefficient list, truncated or zero-padded to `order`.
    pub fn from_coeffs(order: usize, coeffs: &[Complex64]) -> Result<Self> {
        let mut j = Jet::zero(order)?;
        for (k, z) in coeffs.iter().enumerate().take(order + 1) {
            j.c[k] = *z;
        }
        Ok(j)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficients `c_0..c_K`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.c[..=self.order]
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        if k <= self.order {
            self.c[k]
        } else {
            ZERO
        }
    }

    pub fn set_coeff(&mut self, k: usize, z: Complex64) {
        if k <= self.order {
            self.c[k] = z;
        }
    }

    /// Value of the polynomial at a numerical ϑ.
    pub fn eval(&self, theta: f64) -> Complex64 {
        let mut acc = ZERO;
        for k in (0..=self.order).rev() {
            acc = acc * theta + self.c[k];
        }
        acc
    }

    pub fn conj(&self) -> Self {
        let mut out = *self;
        for k in 0..=self.order {
            out.c[k] = self.c[k].conj();
        }
        out
    }

    pub fn scale_c(&self, s: Complex64) -> Self {
        let mut out = *self;
        for k in 0..=self.order {
            out.c[k] = self.c[k] * s;
        }
        out
    }

    /// Sum of coefficient magnitudes.
    pub fn abs_sum(&self) -> f64 {
        self.coeffs().iter().map(|z| z.norm()).sum()
    }

    fn same_order(&self, o: &Self) -> usize {
        debug_assert_eq!(self.order, o.order, "jet order mismatch");
        self.order.min(o.order)
    }

    fn lift(&self, f: impl Fn(&[Complex64]) -> Result<Vec<Complex64>>) -> Result<Self> {
        let v = f(self.coeffs())?;
        Jet::from_coeffs(self.order, &v)
    }
}

impl Coef for Jet {
    fn zero_like(&self) -> Self {
        Jet {
            order: self.order,
            c: [ZERO; MAX_JET_ORDER + 1],
        }
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.same_order(o);
        let mut out = *self;
        for k in 0..=n {
            out.c[k] += o.c[k];
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        let n = self.same_order(o);
        let mut out = *self;
        for k in 0..=n {
            out.c[k] -= o.c[k];
        }
        out
    }
    fn mul(&self, o: &Self) -> Self {
        let n = self.same_order(o);
        let mut out = self.zero_like();
        for i in 0..=n {
            if self.c[i] == ZERO {
                continue;
            }
            for j in 0..=(n - i) {
                out.c[i + j] += self.c[i] * o.c[j];
            }
        }
        out
    }
    fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for k in 0..=self.order {
            out.c[k] *= s;
        }
        out
    }
    fn recip(&self) -> Result<Self> {
        self.lift(power::recip)
    }
    fn ln(&self) -> Result<Self> {
        self.lift(power::ln)
    }
    fn exp(&self) -> Self {
        self.lift(|a| Ok(power::exp(a))).expect("exp is total")
    }
    fn sqrt(&self) -> Result<Self> {
        self.lift(power::sqrt)
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet{:?}", self.coeffs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cz(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn theta_is_nilpotent_at_order_plus_one() {
        let t = Jet::theta(2).unwrap();
        let t2 = t.mul(&t);
        let t3 = t2.mul(&t);
        assert_eq!(t2.coeff(2), cz(1.0));
        assert_eq!(t3.abs_sum(), 0.0);
    }

    #[test]
    fn log_exp_roundtrip() {
        let a = Jet::from_coeffs(3, &[cz(2.0), cz(0.5), cz(-1.0), cz(0.25)]).unwrap();
        let b = a.ln().unwrap().exp();
        assert!(b.sub(&a).abs_sum() < 1e-14);
    }

    #[test]
    fn eval_matches_horner() {
        let a = Jet::from_coeffs(2, &[cz(1.0), cz(2.0), cz(3.0)]).unwrap();
        assert!((a.eval(0.1) - cz(1.23)).norm() < 1e-15);
    }

    #[test]
    fn order_above_maximum_is_rejected() {
        assert!(Jet::zero(MAX_JET_ORDER + 1).is_err());
    }
}
