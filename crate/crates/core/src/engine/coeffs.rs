//! Expansion coefficients `Ê_j`, `ĥ_j` and the fields `h`, `H`, `G`.

use super::iterate::{iterate_with, EngineParams, IterationLog, Iterations};
use super::ops::Operators;
use crate::error::{Error, Result};
use crate::geometry::{circle_c64, DropletGeometry};
use crate::series::{AnalyticFn, CircleSeries, CollarSeries, HarmonicField, Jet};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `¼ log(π/2)`.
pub fn h_offset() -> f64 {
    0.25 * (PI / 2.0).ln()
}

/// Output of the jet iteration: iterates, coefficient functions and the
/// Poisson data of `ĥ_j`.
#[derive(Clone, Debug)]
pub struct ExpansionTable {
    pub log: IterationLog,
    /// `Ê_0, …, Ê_K`.
    pub ehat: Vec<CollarSeries>,
    /// Circle data of `ĥ_0, …, ĥ_K`; `ĥ_j = 𝐏_Ω[data]`.
    pub hhat: Vec<CircleSeries<Complex64>>,
}

impl ExpansionTable {
    pub fn order(&self) -> usize {
        self.ehat.len() - 1
    }

    /// `Σ_{j≤k} ϑ^j Ê_j` as a plain series.
    pub fn e_sum(&self, theta: f64, k: usize) -> Result<CollarSeries> {
        let mut out = self.ehat[0].clone();
        let mut w = 1.0;
        for e in self.ehat.iter().take(k + 1).skip(1) {
            w *= theta;
            out = out.add(&e.scale(w))?;
        }
        Ok(out)
    }

    /// Circle data of `Σ_{j≤k} ϑ^j ĥ_j`.
    pub fn h_sum(&self, theta: f64, k: usize) -> CircleSeries<Complex64> {
        let mut out = self.hhat[0].clone();
        let mut w = 1.0;
        for h in self.hhat.iter().take(k + 1).skip(1) {
            w *= theta;
            out = out.add(&h.scale(w));
        }
        out
    }
}

/// Runs `k` iterations over jets of order `K ≤ k` and extracts `Ê_j`, `ĥ_j`.
pub fn coeffs_via_jets(geom: &DropletGeometry, order: usize, iterations: usize) -> Result<ExpansionTable> {
    if order > iterations {
        return Err(Error::Usage(format!(
            "jet order {order} exceeds the iteration count {iterations}; higher coefficients would not be stable"
        )));
    }
    let params = EngineParams::formal(order, Iterations::Fixed(iterations))?;
    let ops = Operators::new(geom, params.theta)?;
    let log = iterate_with(&ops, &params)?;
    let e = log.last().clone();
    let x = ops.argument(&e)?;
    let logb = ops.log_on_circle(&x)?;
    let mut ehat = Vec::new();
    let mut hhat = Vec::new();
    for j in 0..=order {
        ehat.push(e.component(j)?);
        let mut h = CircleSeries::from_coeffs(logb.coeffs().iter().map(|c| c.coeff(j) * 0.5).collect())?;
        if j == 0 {
            let h0 = *h.get(0).expect("constant") - h_offset();
            h.set(0, h0);
        }
        hhat.push(h);
    }
    Ok(ExpansionTable { log, ehat, hhat })
}

/// `Ê_0, Ê_1, ĥ_0, ĥ_1, ĥ_2` from their explicit formulas.
#[derive(Clone, Debug)]
pub struct DirectCoefficients {
    pub e0: CollarSeries,
    pub e1: CollarSeries,
    pub h: [CircleSeries<Complex64>; 3],
}

/// Evaluates the explicit formulas
/// `Ê_0 = (L̂₀ − e^{𝐏 log L̂₀})/(4V|∂V|²)`,
/// `Ê_1 = (X₁ − e^{𝐏 log L̂₀} 𝐏[X₁/L̂₀])/(4V|∂V|²)` with `X₁ = L̂₁ + Ŝ₀[Ê₀]`,
/// `ĥ_0 = ½ log L̂₀ − ¼ log(π/2)`, `ĥ_1 = ½ a₁`, `ĥ_2 = ½(a₂ − ½a₁²)` on `Γ`,
/// where `a₁ = X₁/L̂₀` and `a₂ = (Ŝ₁[Ê₀] + Ŝ₀[Ê₁])/L̂₀`.
pub fn direct_coefficients(geom: &DropletGeometry) -> Result<DirectCoefficients> {
    let ops = Operators::new(geom, Jet::zero(0)?)?;
    let l0 = &geom.l0;
    let tol = geom.vanish_tol();
    let inv = geom.absdv2.scale(4.0).apply(AnalyticFn::Reciprocal)?;
    let over_4vdv2 = |b: &CollarSeries, scale: f64| -> Result<CollarSeries> {
        b.diag_divide(tol * scale.max(1.0))?.mul(&geom.unit)?.mul(&inv)
    };
    let log_l0 = l0.truncated(1).apply(AnalyticFn::Log)?;
    let ep = ops.poisson(&log_l0).apply(AnalyticFn::Exp)?;
    let e0 = over_4vdv2(&l0.sub(&ep)?, l0.diag_max())?;

    let x1 = geom.l1.add(&ops.op_s0(&e0)?)?;
    let inv_l0 = l0.apply(AnalyticFn::Reciprocal)?;
    let a1 = x1.mul(&inv_l0)?;
    let e1 = over_4vdv2(&x1.sub(&ep.mul(&ops.poisson(&a1))?)?, x1.diag_max())?;

    let a2 = ops.op_s1(&e0)?.add(&ops.op_s0(&e1)?)?.mul(&inv_l0)?;
    let circle = |f: &CollarSeries| circle_c64(&f.diag_restrict());
    let h0 = {
        let mut h = circle(&log_l0).scale(0.5);
        let c = *h.get(0).expect("constant") - h_offset();
        h.set(0, c);
        h
    };
    let h1 = circle(&a1).scale(0.5);
    let a1sq = a1.truncated(1).mul(&a1.truncated(1))?;
    let h2 = circle(&a2.sub(&a1sq.scale(0.5))?).scale(0.5);
    Ok(DirectCoefficients { e0, e1, h: [h0, h1, h2] })
}

/// The fields `h`, `H = log|φ|² + ϑ𝐏_Ω[E]` and `G = (H − ϑE)/(2V)` for a given
/// (numerical) `ϑ` and approximate solution `E`.
#[derive(Clone, Debug)]
pub struct Fields {
    pub h: HarmonicField,
    pub big_h: HarmonicField,
    pub big_g: CollarSeries,
}

/// Builds `h = ½𝐏_Ω[log(L + ϑS[E])] − ¼log(π/2)`, `H` and `G`.
pub fn h_approx(geom: &DropletGeometry, theta: f64, e: &CollarSeries) -> Result<Fields> {
    let ops = Operators::new(geom, Jet::constant(0, Complex64::new(theta, 0.0))?)?;
    let x = ops.argument(e)?;
    let logb = circle_c64(&ops.log_on_circle(&x)?);
    let mut hdata = logb.scale(0.5);
    let c = *hdata.get(0).expect("constant") - h_offset();
    hdata.set(0, c);
    let (big_h, big_g) = h_and_g(geom, theta, e)?;
    Ok(Fields {
        h: HarmonicField::new(0.0, hdata),
        big_h,
        big_g,
    })
}

/// `H` as a harmonic field and `G` as a collar series.
pub fn h_and_g(geom: &DropletGeometry, theta: f64, e: &CollarSeries) -> Result<(HarmonicField, CollarSeries)> {
    let shape = geom.shape();
    let e = if e.shape().jet == 0 { e.clone() } else { e.component(0)? };
    let edata = circle_c64(&e.diag_restrict());
    let big_h = HarmonicField::new(1.0, edata.scale(theta));
    let pe = CollarSeries::poisson_extend(&e.diag_restrict(), shape);
    let num = pe
        .sub(&e)?
        .scale(theta)
        .add(&CollarSeries::log_zeta_eta(shape))?;
    let big_g = num
        .diag_divide(geom.vanish_tol() * e.diag_max().max(1.0))?
        .mul(&geom.unit)?
        .scale(0.5);
    Ok((big_h, big_g))
}

/// Jet-extracted `ĥ_j` at `Γ` as plain circle data, for convenience.
pub fn hhat_values(table: &ExpansionTable, zeta: Complex64) -> Vec<f64> {
    table
        .hhat
        .iter()
        .map(|h| HarmonicField::new(0.0, h.clone()).eval(zeta))
        .collect()
}
