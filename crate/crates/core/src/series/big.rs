//! Extended-precision complex scalars backed by MPFR/MPC.

use super::power::Coef;
use crate::error::{Error, Result};
use num_complex::Complex64;
use rug::{Complex, Float};
use std::fmt;

/// Binary precision used for `digits` decimal digits, with guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

/// Complex number carried at a declared decimal precision.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    digits: u32,
    z: Complex,
}

impl BigComplex {
    /// Smallest precision accepted for the extended ring.
    pub const MIN_DIGITS: u32 = 30;

    pub fn new(digits: u32, re: f64, im: f64) -> Self {
        BigComplex {
            digits,
            z: Complex::with_val(bits_for_digits(digits), (re, im)),
        }
    }

    pub fn from_c64(digits: u32, z: Complex64) -> Self {
        BigComplex::new(digits, z.re, z.im)
    }

    /// Wraps an MPC value, rounding it to the precision for `digits`.
    pub fn from_complex(digits: u32, z: &Complex) -> Self {
        BigComplex {
            digits,
            z: Complex::with_val(bits_for_digits(digits), z),
        }
    }

    /// Parses decimal text for the real and imaginary parts.
    pub fn parse(digits: u32, re: &str, im: &str) -> Result<Self> {
        let prec = bits_for_digits(digits);
        let p = |s: &str| -> Result<Float> {
            Float::parse(s.trim())
                .map(|v| Float::with_val(prec, v))
                .map_err(|e| Error::Usage(format!("cannot parse `{s}` as a decimal: {e}")))
        };
        Ok(BigComplex {
            digits,
            z: Complex::with_val(prec, (p(re)?, p(im)?)),
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn inner(&self) -> &Complex {
        &self.z
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.z.real().to_f64(), self.z.imag().to_f64())
    }

    pub fn abs_f64(&self) -> f64 {
        Float::with_val(self.z.prec().0, self.z.abs_ref()).to_f64()
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            digits: self.digits,
            z: self.z.clone().conj(),
        }
    }

    /// Decimal text of the real and imaginary parts with `digits + 5`
    /// significant digits, enough to round-trip at the declared precision.
    pub fn to_decimal(&self) -> (String, String) {
        let n = Some(self.digits as usize + 5);
        (
            self.z.real().to_string_radix(10, n),
            self.z.imag().to_string_radix(10, n),
        )
    }

    fn prec(&self) -> u32 {
        bits_for_digits(self.digits)
    }

    fn wrap(&self, z: Complex) -> Self {
        BigComplex {
            digits: self.digits,
            z,
        }
    }
}

impl Coef for BigComplex {
    fn zero_like(&self) -> Self {
        self.wrap(Complex::new(self.prec()))
    }
    fn add(&self, o: &Self) -> Self {
        self.wrap(Complex::with_val(self.prec(), &self.z + &o.z))
    }
    fn sub(&self, o: &Self) -> Self {
        self.wrap(Complex::with_val(self.prec(), &self.z - &o.z))
    }
    fn mul(&self, o: &Self) -> Self {
        self.wrap(Complex::with_val(self.prec(), &self.z * &o.z))
    }
    fn scale(&self, s: f64) -> Self {
        self.wrap(Complex::with_val(self.prec(), &self.z * s))
    }
    fn div_int(&self, n: usize) -> Self {
        self.wrap(Complex::with_val(self.prec(), &self.z / n as u64))
    }
    fn recip(&self) -> Result<Self> {
        if self.z.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(self.wrap(Complex::with_val(self.prec(), self.z.recip_ref())))
    }
    fn ln(&self) -> Result<Self> {
        if self.z.is_zero() {
            return Err(Error::Domain("logarithm of zero".into()));
        }
        Ok(self.wrap(Complex::with_val(self.prec(), self.z.ln_ref())))
    }
    fn exp(&self) -> Self {
        self.wrap(Complex::with_val(self.prec(), self.z.exp_ref()))
    }
    fn sqrt(&self) -> Result<Self> {
        if self.z.is_zero() {
            return Err(Error::Domain("square root of zero is not analytic".into()));
        }
        Ok(self.wrap(Complex::with_val(self.prec(), self.z.sqrt_ref())))
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_decimal();
        write!(f, "BigComplex({re}, {im})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_text_round_trips() {
        let third = BigComplex::new(50, 1.0, 0.0)
            .mul(&BigComplex::new(50, 3.0, 0.0).recip().unwrap());
        let (re, im) = third.to_decimal();
        let back = BigComplex::parse(50, &re, &im).unwrap();
        let diff = back.sub(&third).abs_f64();
        assert!(diff < 1e-50, "diff {diff}");
        assert!(re.starts_with("3.33333333333333333333333333333333333333333333333"));
    }

    #[test]
    fn exp_log_identity_at_high_precision() {
        let z = BigComplex::new(60, 1.5, -0.25);
        let back = z.ln().unwrap().exp();
        assert!(back.sub(&z).abs_f64() < 1e-58);
    }
}
