//! Brute-force ground truth: extended-precision quadrature, orthonormal
//! polynomials, polynomial Bergman kernels, Berezin densities, potentials
//! and zero sets, and residual reports for the exact-potential and Berezin
//! systems.

pub mod basis;
pub mod berezin;
pub mod quadrature;
pub mod verify;

pub use basis::{from_gram, orthonormalize, OrthonormalBasis};
pub use berezin::{eval_kernel, integrate_about, polynomial_roots, Berezin, KernelValue, PolarRule, ZeroSet};
pub use quadrature::{build_quadrature, choose_radius, gauss_legendre, QuadratureOptions, QuadratureRule};
pub use verify::{
    bounded, compare_prediction, derivative_probe, distance_to_droplet, inside_droplet, smooth_combination_probe,
    verify_berezin_system, verify_exact_potential, BerezinSystemReport, Comparison, ComparisonRow,
    ExactPotentialReport, FAR_RADII,
};
