//! Asymptotics of planar orthogonal polynomials by a potential-theoretic
//! fixed-point iteration, checked against a brute-force quadrature oracle.
//!
//! The crate is organised as follows.
//!
//! - [`series`]: truncated Hermitian-analytic series near the unit circle,
//!   over complex doubles, ϑ-jets or extended-precision complex numbers.
//! - [`geometry`]: droplet data for a potential `Q`: exterior map, the
//!   obstacle root `V`, its derivatives and the holomorphic function 𝒬.
//! - [`engine`]: the operators `S` and `T`, the iteration `E_k = T^{k+1}[0]`,
//!   ϑ-jet extraction of the expansion coefficients and budget diagnostics.
//! - [`wavefield`]: predicted orthogonal polynomials, wave densities and the
//!   approximate potential `U` together with its Laplacian check.
//! - [`oracle`]: quadrature, extended-precision orthonormalisation, Bergman
//!   kernels and Berezin objects.
//! - [`cli`]: configuration files, CSV artifacts and subcommand dispatch.
//!
//! Conventions: `Δ = ∂∂̄ = ¼(∂²_x + ∂²_y)`, area measure `dA = dx dy / π`
//! (unit disk has area one), and [`wavefield::erf_paper`] is the standard
//! normal distribution function.

pub mod error;
pub mod engine;
pub mod cli;
pub mod geometry;
pub mod series;
pub mod oracle;
pub mod wavefield;

pub use error::{Error, Result};
pub use num_complex::Complex64;
