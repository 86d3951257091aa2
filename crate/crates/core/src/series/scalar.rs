//! Pluggable scalar rings for series coefficients.

use super::big::BigComplex;
use super::jet::Jet;
use super::power::Coef;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt;

/// Which scalar ring a series is built over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    ComplexDouble,
    /// Truncated polynomials in ϑ modulo ϑ^{K+1}.
    ThetaJet(usize),
    /// Extended-precision complex numbers with the given decimal digits.
    BigComplex(u32),
}

impl RingKind {
    /// Relative rounding unit of the ring.
    pub fn epsilon(self) -> f64 {
        match self {
            RingKind::ComplexDouble | RingKind::ThetaJet(_) => f64::EPSILON,
            RingKind::BigComplex(d) => 10f64.powi(-(d as i32)),
        }
    }

    /// Parses the textual form produced by `Display`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "complex-double" {
            return Ok(RingKind::ComplexDouble);
        }
        let inner = |p: &str| s.strip_prefix(p).and_then(|r| r.strip_suffix(')'));
        if let Some(k) = inner("theta-jet(") {
            return k
                .parse()
                .map(RingKind::ThetaJet)
                .map_err(|_| Error::Usage(format!("bad jet order in `{s}`")));
        }
        if let Some(d) = inner("big-complex(") {
            return d
                .parse()
                .map(RingKind::BigComplex)
                .map_err(|_| Error::Usage(format!("bad digits in `{s}`")));
        }
        Err(Error::Usage(format!("unknown ring `{s}`")))
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::ComplexDouble => write!(f, "complex-double"),
            RingKind::ThetaJet(k) => write!(f, "theta-jet({k})"),
            RingKind::BigComplex(d) => write!(f, "big-complex({d})"),
        }
    }
}

/// Scalar ring element usable as a series coefficient.
pub trait Scalar: Coef + fmt::Debug + Send + Sync {
    fn ring(&self) -> RingKind;
    /// Embeds a complex double into the ring of `self`.
    fn from_c64_like(&self, z: Complex64) -> Self;
    fn one_like(&self) -> Self {
        self.from_c64_like(Complex64::new(1.0, 0.0))
    }
    fn neg(&self) -> Self {
        self.scale(-1.0)
    }
    fn conj(&self) -> Self;
    /// Magnitudes of the components (one for plain rings, one per ϑ-power for jets).
    fn abs_parts(&self) -> Vec<f64>;
    /// Sum of component magnitudes.
    fn abs(&self) -> f64 {
        self.abs_parts().iter().sum()
    }
    /// The ϑ-free value as a complex double.
    fn center(&self) -> Complex64;
    /// Decimal text of the real and imaginary parts at full working precision.
    fn to_text(&self) -> (String, String);
    /// Inverse of `to_text` in the ring of `self`.
    fn from_text_like(&self, re: &str, im: &str) -> Result<Self>;
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Usage(format!("cannot parse `{s}` as a number")))
}

impl Scalar for Complex64 {
    fn ring(&self) -> RingKind {
        RingKind::ComplexDouble
    }
    fn from_c64_like(&self, z: Complex64) -> Self {
        z
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn abs_parts(&self) -> Vec<f64> {
        vec![self.norm()]
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
    fn center(&self) -> Complex64 {
        *self
    }
    fn to_text(&self) -> (String, String) {
        (format!("{:e}", self.re), format!("{:e}", self.im))
    }
    fn from_text_like(&self, re: &str, im: &str) -> Result<Self> {
        Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?))
    }
}

impl Scalar for Jet {
    fn ring(&self) -> RingKind {
        RingKind::ThetaJet(self.order())
    }
    fn from_c64_like(&self, z: Complex64) -> Self {
        Jet::constant(self.order(), z).expect("order already validated")
    }
    fn conj(&self) -> Self {
        Jet::conj(self)
    }
    fn abs_parts(&self) -> Vec<f64> {
        self.coeffs().iter().map(|z| z.norm()).collect()
    }
    fn abs(&self) -> f64 {
        self.abs_sum()
    }
    fn center(&self) -> Complex64 {
        self.coeff(0)
    }
    /// Components joined by `;` (ϑ^0 first).
    fn to_text(&self) -> (String, String) {
        let re: Vec<String> = self.coeffs().iter().map(|z| format!("{:e}", z.re)).collect();
        let im: Vec<String> = self.coeffs().iter().map(|z| format!("{:e}", z.im)).collect();
        (re.join(";"), im.join(";"))
    }
    fn from_text_like(&self, re: &str, im: &str) -> Result<Self> {
        let re: Vec<&str> = re.split(';').collect();
        let im: Vec<&str> = im.split(';').collect();
        if re.len() != self.order() + 1 || im.len() != re.len() {
            return Err(Error::Usage(format!(
                "expected {} jet components",
                self.order() + 1
            )));
        }
        let mut v = Vec::with_capacity(re.len());
        for (r, i) in re.iter().zip(&im) {
            v.push(Complex64::new(parse_f64(r)?, parse_f64(i)?));
        }
        Jet::from_coeffs(self.order(), &v)
    }
}

impl Scalar for BigComplex {
    fn ring(&self) -> RingKind {
        RingKind::BigComplex(self.digits())
    }
    fn from_c64_like(&self, z: Complex64) -> Self {
        BigComplex::from_c64(self.digits(), z)
    }
    fn conj(&self) -> Self {
        BigComplex::conj(self)
    }
    fn abs_parts(&self) -> Vec<f64> {
        vec![self.abs_f64()]
    }
    fn abs(&self) -> f64 {
        self.abs_f64()
    }
    fn center(&self) -> Complex64 {
        self.to_c64()
    }
    fn to_text(&self) -> (String, String) {
        self.to_decimal()
    }
    fn from_text_like(&self, re: &str, im: &str) -> Result<Self> {
        BigComplex::parse(self.digits(), re, im)
    }
}
