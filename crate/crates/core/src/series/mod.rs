//! Series algebra: scalar rings, circle data, dense Hermitian-Laurent series
//! and collar series.

pub mod band;
pub mod big;
pub mod circle;
pub mod collar;
pub mod hermitian;
pub mod jet;
pub mod power;
pub mod scalar;

pub use band::Band;
pub use big::BigComplex;
pub use circle::{CircleSeries, HarmonicConjugate, HarmonicField};
pub use collar::{CollarSeries, CollarShape};
pub use hermitian::{HermitianSeries, Var};
pub use jet::Jet;
pub use power::{AnalyticFn, Coef};
pub use scalar::{RingKind, Scalar};
