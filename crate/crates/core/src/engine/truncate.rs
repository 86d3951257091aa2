//! Taylor truncation in `ϑ` with the remainder bound for bounded holomorphic
//! functions on the unit disk.

use super::coeffs::ExpansionTable;
use crate::series::CircleSeries;
use num_complex::Complex64;
use std::f64::consts::PI;

/// `|z|^{k+1}(1 + (1/π)log(1/(1−|z|²)))·‖f‖`, the error of the degree-`k`
/// Taylor polynomial of `f` bounded by `‖f‖` on the unit disk. Infinite for
/// `|z| ≥ 1`.
pub fn taylor_bound(norm: f64, z: f64, k: usize) -> f64 {
    let a = z.abs();
    if a >= 1.0 {
        return f64::INFINITY;
    }
    a.powi(k as i32 + 1) * (1.0 + (-(1.0 - a * a).ln()) / PI) * norm
}

/// Truncated `𝔥 = Σ_{j≤k′} ϑ^j ĥ_j` with its remainder bound.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub order: usize,
    pub data: CircleSeries<Complex64>,
    /// Bound on the dropped part, from [`taylor_bound`] with `z = ϑ/ϑ_max`.
    pub remainder: f64,
}

/// Truncates the jet data at order `k′ ≤ K` and bounds the remainder. The
/// function `ϑ ↦ Σ_j ϑ^j ĥ_j` is bounded on `|ϑ| ≤ ϑ_max` by the sum of
/// `ϑ_max^j·max|ĥ_j|`; when `k′ = K` the polynomial part is exact and the
/// remainder is `0`.
pub fn truncate_h(table: &ExpansionTable, order: usize, theta: f64, theta_max: f64) -> Truncation {
    let k = order.min(table.order());
    let data = table.h_sum(theta, k);
    let remainder = if k == table.order() {
        0.0
    } else {
        let norm: f64 = table
            .hhat
            .iter()
            .enumerate()
            .map(|(j, h)| theta_max.powi(j as i32) * coeff_sum(h))
            .sum();
        taylor_bound(norm, theta / theta_max, k)
    };
    Truncation { order: k, data, remainder }
}

fn coeff_sum(h: &CircleSeries<Complex64>) -> f64 {
    h.coeffs().iter().map(|c| c.norm()).sum()
}
