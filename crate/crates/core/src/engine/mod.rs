//! The fixed-point machinery: operators `S` and `T`, the iteration, jet
//! extraction of `Ê_j` and `ĥ_j`, truncation in `ϑ` and budget diagnostics.

pub mod budget;
pub mod coeffs;
pub mod iterate;
pub mod ops;
pub mod truncate;

pub use budget::{lipschitz_budget, Budget, BandNorms};
pub use coeffs::{hhat_values, coeffs_via_jets, direct_coefficients, h_and_g, h_approx, h_offset, DirectCoefficients, ExpansionTable, Fields};
pub use iterate::{iterate, iterate_with, EngineParams, IterationLog, Iterations, NormKind, StopReason};
pub use ops::Operators;
pub use truncate::{taylor_bound, truncate_h, Truncation};
