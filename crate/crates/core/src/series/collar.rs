//! Series on a collar of the unit circle.
//!
//! A polarised function is stored as
//! `F(ζ,η) = Σ_{d,p,j} a_{d,p,j} ζ^d u^p ϑ^j` with `u = 1 − ζη`,
//! `|d| ≤ D`, `p ≤ P`, `j ≤ K`. On the physical slice `η = conj ζ` the
//! variable `u = 1 − |ζ|²` is the transversal coordinate, so the `p`-index is
//! a Taylor expansion off the circle and `d` a Fourier index along it.
//!
//! Products and analytic functions are evaluated pointwise in the angle
//! (FFT synthesis and analysis); at each angle the `(u, ϑ)` part is a nilpotent
//! perturbation of its constant term, so `log`, `exp`, `√` and `1/·` are exact
//! truncated power series there. Division by `u` and differentiation lower the
//! number of reliable `u`-orders by one; this is tracked in [`CollarSeries::valid`].

use super::band::Band;
use super::circle::CircleSeries;
use super::hermitian::HermitianSeries;
use super::jet::Jet;
use super::power::AnalyticFn;
use crate::error::{Error, Result};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::sync::Arc;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative size below which transform output is treated as rounding noise.
/// Such noise would otherwise be amplified by the binomial re-expansions in
/// `transpose` and `poisson_extend`.
const CHOP: f64 = 4.0 * f64::EPSILON;

/// Truncation parameters of a collar series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CollarShape {
    /// Fourier modes `D`.
    pub modes: usize,
    /// Transversal order `P`.
    pub order: usize,
    /// Jet order `K` (0 for plain complex doubles).
    pub jet: usize,
}

impl CollarShape {
    pub fn new(modes: usize, order: usize, jet: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Usage("transversal order must be at least 1".into()));
        }
        Jet::zero(jet)?;
        Ok(CollarShape { modes, order, jet })
    }

    /// Same truncation with another jet order.
    pub fn with_jet(self, jet: usize) -> Result<Self> {
        CollarShape::new(self.modes, self.order, jet)
    }

    fn width(&self) -> usize {
        2 * self.modes + 1
    }

    fn jw(&self) -> usize {
        self.jet + 1
    }

    fn len(&self) -> usize {
        (self.order + 1) * self.width() * self.jw()
    }

    /// FFT length used for pointwise products (alias-free for one product).
    pub fn fft_len(&self) -> usize {
        (4 * self.modes + 2).next_power_of_two().max(8)
    }
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(m: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(m)
        } else {
            p.plan_fft_forward(m)
        }
    })
}

/// Coefficients of `(1 − u)^k` up to `u^n`, for any integer `k`.
pub fn binomial_row(k: i64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = 1.0;
    for p in 0..=n {
        out.push(c);
        c *= (p as f64 - k as f64) / (p as f64 + 1.0);
    }
    out
}

/// Values of a collar series on an equispaced angular grid: for each angle a
/// truncated `(u, ϑ)` series.
struct Values {
    m: usize,
    valid: usize,
    jw: usize,
    v: Vec<Complex64>,
}

impl Values {
    fn at(&self, p: usize, i: usize, j: usize) -> Complex64 {
        self.v[(p * self.m + i) * self.jw + j]
    }
}

/// A truncated polarised function on a collar of the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct CollarSeries {
    shape: CollarShape,
    valid: usize,
    data: Vec<Complex64>,
    tail: f64,
}

impl CollarSeries {
    pub fn zeros(shape: CollarShape) -> Self {
        CollarSeries {
            shape,
            valid: shape.order + 1,
            data: vec![ZERO; shape.len()],
            tail: 0.0,
        }
    }

    pub fn constant(shape: CollarShape, c: f64) -> Self {
        let mut s = CollarSeries::zeros(shape);
        let i = s.idx(0, 0, 0);
        s.data[i] = Complex64::new(c, 0.0);
        s
    }

    pub fn constant_jet(shape: CollarShape, c: &Jet) -> Self {
        let mut s = CollarSeries::zeros(shape);
        s.set_coeff(0, 0, c);
        s
    }

    /// A function of `ζ` alone, `Σ b_d ζ^d`.
    pub fn from_zeta(shape: CollarShape, b: &CircleSeries<Complex64>) -> Self {
        let mut s = CollarSeries::zeros(shape);
        for (d, c) in b.iter() {
            s.add_raw(0, d, 0, *c);
        }
        s
    }

    /// A function of `η` alone, `Σ b_k η^k`, expanded as `η^k = ζ^{−k}(1−u)^k`.
    pub fn from_eta(shape: CollarShape, b: &CircleSeries<Complex64>) -> Self {
        let mut s = CollarSeries::zeros(shape);
        for (k, c) in b.iter() {
            if *c == ZERO {
                continue;
            }
            for (p, w) in binomial_row(k, shape.order).into_iter().enumerate() {
                s.add_raw(p, -k, 0, c * w);
            }
        }
        s
    }

    /// The polarisation `log(ζη) = log(1 − u)` of `log|ζ|²`.
    pub fn log_zeta_eta(shape: CollarShape) -> Self {
        let mut s = CollarSeries::zeros(shape);
        for p in 1..=shape.order {
            s.add_raw(p, 0, 0, Complex64::new(-1.0 / p as f64, 0.0));
        }
        s
    }

    /// The transversal variable `u = 1 − ζη` itself.
    pub fn transversal(shape: CollarShape) -> Self {
        let mut s = CollarSeries::zeros(shape);
        s.add_raw(1, 0, 0, Complex64::new(1.0, 0.0));
        s
    }

    /// Re-expands a dense series: `ζ^j η^k = ζ^{j−k}(1−u)^k`.
    pub fn from_hermitian(h: &HermitianSeries<Complex64>, shape: CollarShape) -> Self {
        let mut s = CollarSeries::zeros(shape);
        for (j, k, c) in h.iter() {
            if *c == ZERO {
                continue;
            }
            for (p, w) in binomial_row(k, shape.order).into_iter().enumerate() {
                s.add_raw(p, j - k, 0, c * w);
            }
        }
        s
    }

    /// Dense form `Σ a ζ^d (1−ζη)^p` over the reliable orders, one series per
    /// ϑ-power. Terms outside `|j|,|k| ≤ N` are dropped.
    pub fn to_hermitian(&self, order: usize, jet_power: usize) -> Result<HermitianSeries<Complex64>> {
        let mut h = HermitianSeries::zeros(order, &ZERO)?;
        let n = order as i64;
        for p in 0..self.valid {
            let row = binomial_row(p as i64, p);
            for d in self.mode_range() {
                let a = self.get(p, d, jet_power);
                if a == ZERO {
                    continue;
                }
                for (i, w) in row.iter().enumerate() {
                    let (j, k) = (d + i as i64, i as i64);
                    if j.abs() <= n && k <= n {
                        let cur = *h.get(j, k) + a * *w;
                        h.set(j, k, cur);
                    }
                }
            }
        }
        Ok(h)
    }

    pub fn shape(&self) -> CollarShape {
        self.shape
    }

    /// Number of reliable transversal orders: coefficients with `p < valid`.
    pub fn valid(&self) -> usize {
        self.valid
    }

    /// Accumulated dropped Fourier mass at the reference band.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    fn mode_range(&self) -> std::ops::RangeInclusive<i64> {
        let d = self.shape.modes as i64;
        -d..=d
    }

    fn idx(&self, p: usize, d: i64, j: usize) -> usize {
        ((p * self.shape.width()) + (d + self.shape.modes as i64) as usize) * self.shape.jw() + j
    }

    fn in_modes(&self, d: i64) -> bool {
        d.unsigned_abs() as usize <= self.shape.modes
    }

    fn add_raw(&mut self, p: usize, d: i64, j: usize, c: Complex64) {
        if p > self.shape.order || j > self.shape.jet {
            return;
        }
        if self.in_modes(d) {
            let i = self.idx(p, d, j);
            self.data[i] += c;
        } else {
            let b = Band::reference();
            self.tail += c.norm() * b.rho.powi(-(d.abs() as i32)) * b.transverse_bound().powi(p as i32);
        }
    }

    /// Coefficient `a_{d,p,j}` (zero outside the stored range).
    pub fn get(&self, p: usize, d: i64, j: usize) -> Complex64 {
        if p >= self.valid || j > self.shape.jet || !self.in_modes(d) {
            return ZERO;
        }
        self.data[self.idx(p, d, j)]
    }

    /// The jet `Σ_j a_{d,p,j} ϑ^j`.
    pub fn coeff(&self, d: i64, p: usize) -> Jet {
        let mut out = Jet::zero(self.shape.jet).expect("validated");
        for j in 0..=self.shape.jet {
            out.set_coeff(j, self.get(p, d, j));
        }
        out
    }

    pub fn set_coeff(&mut self, d: i64, p: usize, c: &Jet) {
        for j in 0..=self.shape.jet {
            let i = self.idx(p, d, j);
            self.data[i] = c.coeff(j);
        }
    }

    fn clear_invalid(&mut self) {
        let start = self.valid * self.shape.width() * self.shape.jw();
        for x in &mut self.data[start..] {
            *x = ZERO;
        }
    }

    /// Copy with at most `valid` reliable orders.
    pub fn truncated(&self, valid: usize) -> Self {
        let mut out = self.clone();
        out.valid = out.valid.min(valid);
        out.clear_invalid();
        out
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.shape != o.shape {
            return Err(Error::Usage(format!(
                "collar shape mismatch: {:?} vs {:?}",
                self.shape, o.shape
            )));
        }
        Ok(())
    }

    fn zip(&self, o: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.check(o)?;
        let mut out = CollarSeries {
            shape: self.shape,
            valid: self.valid.min(o.valid),
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(*a, *b)).collect(),
            tail: self.tail + o.tail,
        };
        out.clear_invalid();
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_c(Complex64::new(s, 0.0))
    }

    pub fn scale_c(&self, s: Complex64) -> Self {
        CollarSeries {
            shape: self.shape,
            valid: self.valid,
            data: self.data.iter().map(|a| a * s).collect(),
            tail: self.tail * s.norm(),
        }
    }

    /// Multiplication by a scalar jet (for instance by ϑ).
    pub fn mul_jet(&self, c: &Jet) -> Self {
        let mut out = CollarSeries::zeros(self.shape);
        out.valid = self.valid;
        out.tail = self.tail * c.abs_sum();
        let kk = self.shape.jet;
        for p in 0..self.valid {
            for d in self.mode_range() {
                for i in 0..=kk {
                    let a = self.get(p, d, i);
                    if a == ZERO {
                        continue;
                    }
                    for j in 0..=(kk - i) {
                        let idx = out.idx(p, d, i + j);
                        out.data[idx] += a * c.coeff(j);
                    }
                }
            }
        }
        out
    }

    pub fn add_constant(&self, c: f64) -> Self {
        let mut out = self.clone();
        let i = out.idx(0, 0, 0);
        out.data[i] += c;
        out
    }

    fn synth(&self, m: usize) -> Values {
        let jw = self.shape.jw();
        let fft = plan(m, true);
        let mut v = vec![ZERO; self.valid * m * jw];
        let mut buf = vec![ZERO; m];
        for p in 0..self.valid {
            for j in 0..jw {
                buf.iter_mut().for_each(|x| *x = ZERO);
                for d in self.mode_range() {
                    buf[d.rem_euclid(m as i64) as usize] = self.data[self.idx(p, d, j)];
                }
                fft.process(&mut buf);
                for i in 0..m {
                    v[(p * m + i) * jw + j] = buf[i];
                }
            }
        }
        Values {
            m,
            valid: self.valid,
            jw,
            v,
        }
    }

    fn analyze(shape: CollarShape, vals: &Values, tail: f64) -> Self {
        let m = vals.m;
        let fft = plan(m, false);
        let mut out = CollarSeries::zeros(shape);
        out.valid = vals.valid;
        out.tail = tail;
        let b = Band::reference();
        let dmax = shape.modes as i64;
        let mut buf = vec![ZERO; m];
        let inv = 1.0 / m as f64;
        for p in 0..vals.valid {
            for j in 0..vals.jw {
                for i in 0..m {
                    buf[i] = vals.at(p, i, j);
                }
                fft.process(&mut buf);
                let floor = CHOP * inv * buf.iter().map(|x| x.norm()).fold(0.0, f64::max);
                for (k, x) in buf.iter().enumerate() {
                    let d = if k <= m / 2 { k as i64 } else { k as i64 - m as i64 };
                    let a = x * inv;
                    if a.norm() <= floor {
                        out.tail += a.norm() * b.rho.powi(-(d.abs() as i32)) * b.transverse_bound().powi(p as i32);
                        continue;
                    }
                    if d.abs() <= dmax {
                        let idx = out.idx(p, d, j);
                        out.data[idx] = a;
                    } else {
                        out.tail += a.norm()
                            * b.rho.powi(-(d.abs() as i32))
                            * b.transverse_bound().powi(p as i32);
                    }
                }
            }
        }
        out
    }

    /// Product, evaluated pointwise in the angle; modes beyond `D` are
    /// dropped into the tail.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let m = self.shape.fft_len();
        let valid = self.valid.min(o.valid);
        let a = self.truncated(valid).synth(m);
        let b = o.truncated(valid).synth(m);
        let jw = self.shape.jw();
        let mut v = vec![ZERO; valid * m * jw];
        for i in 0..m {
            for p in 0..valid {
                for q in 0..=p {
                    for ja in 0..jw {
                        let x = a.at(q, i, ja);
                        if x == ZERO {
                            continue;
                        }
                        for jb in 0..(jw - ja) {
                            v[(p * m + i) * jw + ja + jb] += x * b.at(p - q, i, jb);
                        }
                    }
                }
            }
        }
        let vals = Values { m, valid, jw, v };
        let band = Band::reference();
        let tail = self.tail * (o.majorant(band) + o.tail) + self.majorant(band) * o.tail;
        Ok(CollarSeries::analyze(self.shape, &vals, tail))
    }

    /// Applies an analytic function pointwise in the angle. For `log` and
    /// `√` the constant term must have positive real part at every angle.
    pub fn apply(&self, f: AnalyticFn) -> Result<Self> {
        let m = self.shape.fft_len();
        let vals = self.synth(m);
        let kk = self.shape.jet;
        let mut out = Values {
            m,
            valid: self.valid,
            jw: vals.jw,
            v: vec![ZERO; vals.v.len()],
        };
        let mut series = vec![Jet::zero(kk)?; self.valid];
        for i in 0..m {
            for (p, s) in series.iter_mut().enumerate() {
                for j in 0..=kk {
                    s.set_coeff(j, vals.at(p, i, j));
                }
            }
            let c0 = series[0].coeff(0);
            if f.has_branch_cut() && c0.re <= 0.0 {
                return Err(Error::Numerical(format!(
                    "{} of a function with value {c0} at angle {:.4}: positivity fails",
                    f.name(),
                    2.0 * std::f64::consts::PI * i as f64 / m as f64
                )));
            }
            let g = f.apply(&series)?;
            for (p, s) in g.iter().enumerate() {
                for j in 0..=kk {
                    out.v[(p * m + i) * out.jw + j] = s.coeff(j);
                }
            }
        }
        Ok(CollarSeries::analyze(self.shape, &out, self.tail))
    }

    /// Complex conjugate of the realised function:
    /// `a ζ^d u^p ↦ conj(a) ζ^{−d}(1−u)^d u^p`.
    pub fn transpose(&self) -> Self {
        let mut out = CollarSeries::zeros(self.shape);
        out.valid = self.valid;
        out.tail = self.tail;
        for p in 0..self.valid {
            for d in self.mode_range() {
                let row = binomial_row(d, self.valid - 1 - p);
                for j in 0..=self.shape.jet {
                    let a = self.get(p, d, j).conj();
                    if a == ZERO {
                        continue;
                    }
                    for (q, w) in row.iter().enumerate() {
                        out.add_raw(p + q, -d, j, a * *w);
                    }
                }
            }
        }
        out
    }

    /// Restriction to the circle `u = 0`: the circle data `a_{d,0}`.
    pub fn diag_restrict(&self) -> CircleSeries<Jet> {
        let coeffs = self.mode_range().map(|d| self.coeff(d, 0)).collect();
        CircleSeries::from_coeffs(coeffs).expect("odd length")
    }

    /// Largest magnitude of the restriction to the circle.
    pub fn diag_max(&self) -> f64 {
        self.mode_range()
            .map(|d| self.coeff(d, 0).abs_sum())
            .fold(0.0, f64::max)
    }

    /// Division by `u = 1 − ζη`; the restriction to the circle must be
    /// below `tol` in every mode.
    pub fn diag_divide(&self, tol: f64) -> Result<Self> {
        let worst = self.diag_max();
        if worst > tol {
            return Err(Error::Numerical(format!(
                "division by 1 − ζη: circle restriction {worst:.3e} exceeds tolerance {tol:.3e}"
            )));
        }
        if self.valid < 2 {
            return Err(Error::Numerical(
                "division by 1 − ζη exhausted the transversal order".into(),
            ));
        }
        Ok(self.shift_down())
    }

    /// Drops the circle restriction and divides the rest by `u`, without
    /// checking that the restriction vanishes.
    pub fn shift_down(&self) -> Self {
        let mut out = CollarSeries::zeros(self.shape);
        if self.valid < 2 {
            out.valid = 0;
            return out;
        }
        let stride = self.shape.width() * self.shape.jw();
        out.data[..(self.valid - 1) * stride].copy_from_slice(&self.data[stride..self.valid * stride]);
        out.valid = self.valid - 1;
        out.tail = self.tail;
        out
    }

    /// Multiplication by `u = 1 − ζη`.
    pub fn mul_u(&self) -> Self {
        let mut out = CollarSeries::zeros(self.shape);
        let stride = self.shape.width() * self.shape.jw();
        let keep = self.valid.min(self.shape.order);
        out.data[stride..(keep + 1) * stride].copy_from_slice(&self.data[..keep * stride]);
        out.valid = (self.valid + 1).min(self.shape.order + 1);
        out.tail = self.tail;
        out
    }

    /// Bounded harmonic extension of circle data to the exterior disk.
    pub fn poisson_extend(b: &CircleSeries<Jet>, shape: CollarShape) -> Self {
        let mut s = CollarSeries::zeros(shape);
        for (d, c) in b.iter() {
            for j in 0..=shape.jet.min(c.order()) {
                let a = c.coeff(j);
                if a == ZERO {
                    continue;
                }
                if d <= 0 {
                    s.add_raw(0, d, j, a);
                } else {
                    for (p, w) in binomial_row(-d, shape.order).into_iter().enumerate() {
                        s.add_raw(p, d, j, a * w);
                    }
                }
            }
        }
        s
    }

    /// `∂_ζ`, using `∂_ζ(ζ^d u^p) = (d+p)ζ^{d−1}u^p − pζ^{d−1}u^{p−1}`.
    pub fn d_zeta(&self) -> Self {
        let mut out = CollarSeries::zeros(self.shape);
        out.tail = self.tail;
        for p in 0..self.valid {
            for d in self.mode_range() {
                for j in 0..=self.shape.jet {
                    let a = self.get(p, d, j);
                    if a == ZERO {
                        continue;
                    }
                    out.add_raw(p, d - 1, j, a * (d + p as i64) as f64);
                    if p > 0 {
                        out.add_raw(p - 1, d - 1, j, -a * p as f64);
                    }
                }
            }
        }
        out.valid = self.valid.saturating_sub(1);
        out.clear_invalid();
        out
    }

    /// `∂_η`, using `∂_η(ζ^d u^p) = −pζ^{d+1}u^{p−1}`.
    pub fn d_eta(&self) -> Self {
        let mut out = CollarSeries::zeros(self.shape);
        out.tail = self.tail;
        for p in 1..self.valid {
            for d in self.mode_range() {
                for j in 0..=self.shape.jet {
                    let a = self.get(p, d, j);
                    if a != ZERO {
                        out.add_raw(p - 1, d + 1, j, -a * p as f64);
                    }
                }
            }
        }
        out.valid = self.valid.saturating_sub(1);
        out.clear_invalid();
        out
    }

    /// Coefficient majorant `Σ |a| ρ^{−|d|} (4σ/ρ)^p`, summed over jet
    /// components; an upper bound for the sup over the fattened diagonal.
    pub fn majorant(&self, band: Band) -> f64 {
        self.majorant_parts(band).iter().sum()
    }

    /// Majorant per ϑ-power.
    pub fn majorant_parts(&self, band: Band) -> Vec<f64> {
        let t = band.transverse_bound();
        let mut acc = vec![0.0; self.shape.jw()];
        for p in 0..self.valid {
            let wp = t.powi(p as i32);
            for d in self.mode_range() {
                let w = wp * band.rho.powi(-(d.abs() as i32));
                for (j, a) in acc.iter_mut().enumerate() {
                    *a += self.get(p, d, j).norm() * w;
                }
            }
        }
        acc
    }

    /// Largest sampled value of `|F(z, conj w)|` over points of the fattened
    /// diagonal `{ρ ≤ |z|,|w| ≤ 1/ρ, |z − w| ≤ 2σ}`.
    pub fn sampled_sup(&self, band: Band) -> f64 {
        let mut best: f64 = 0.0;
        let radii = [band.rho, 0.5 * (band.rho + 1.0), 1.0, 0.5 * (1.0 + 1.0 / band.rho), 1.0 / band.rho];
        let na = 4 * self.shape.modes.max(8);
        for &r in &radii {
            for ia in 0..na {
                let z = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * ia as f64 / na as f64);
                for ib in 0..9 {
                    let w = if ib == 0 {
                        z
                    } else {
                        z + Complex64::from_polar(2.0 * band.sigma, std::f64::consts::PI * ib as f64 / 4.0)
                    };
                    let rw = w.norm();
                    if rw < band.rho * (1.0 - 1e-12) || rw > (1.0 + 1e-12) / band.rho {
                        continue;
                    }
                    best = best.max(self.eval(z, w.conj()).abs_sum());
                }
            }
        }
        best
    }

    /// Value at `(ζ, η)` as a jet.
    pub fn eval(&self, zeta: Complex64, eta: Complex64) -> Jet {
        let u = 1.0 - zeta * eta;
        let kk = self.shape.jet;
        let powers: Vec<Complex64> = self.mode_range().map(|d| zeta.powi(d as i32)).collect();
        let mut acc = [ZERO; 8];
        for p in (0..self.valid).rev() {
            for a in acc.iter_mut().take(kk + 1) {
                *a *= u;
            }
            for (i, d) in self.mode_range().enumerate() {
                for (j, a) in acc.iter_mut().enumerate().take(kk + 1) {
                    *a += self.get(p, d, j) * powers[i];
                }
            }
        }
        Jet::from_coeffs(kk, &acc[..=kk]).expect("validated")
    }

    /// Realised value `F(ζ, conj ζ)`.
    pub fn realize(&self, zeta: Complex64) -> Jet {
        self.eval(zeta, zeta.conj())
    }

    /// Realised value of the ϑ⁰ component.
    pub fn realize0(&self, zeta: Complex64) -> Complex64 {
        self.realize(zeta).coeff(0)
    }

    /// The ϑ^j component as a plain series.
    pub fn component(&self, j: usize) -> Result<Self> {
        let shape = self.shape.with_jet(0)?;
        let mut out = CollarSeries::zeros(shape);
        out.valid = self.valid;
        out.tail = self.tail;
        for p in 0..self.valid {
            for d in self.mode_range() {
                let i = out.idx(p, d, 0);
                out.data[i] = self.get(p, d, j);
            }
        }
        Ok(out)
    }

    /// Evaluates the jets at a numerical ϑ.
    pub fn at_theta(&self, theta: f64) -> Result<Self> {
        let mut out = self.component(0)?;
        let mut w = 1.0;
        for j in 1..=self.shape.jet {
            w *= theta;
            out = out.add(&self.component(j)?.scale(w))?;
        }
        Ok(out)
    }

    /// Embeds a plain series into the jet ring of order `jet`.
    pub fn promote(&self, jet: usize) -> Result<Self> {
        if self.shape.jet != 0 {
            return Err(Error::Usage("only plain series can be promoted".into()));
        }
        let shape = self.shape.with_jet(jet)?;
        let mut out = CollarSeries::zeros(shape);
        out.valid = self.valid;
        out.tail = self.tail;
        for p in 0..self.valid {
            for d in self.mode_range() {
                let i = out.idx(p, d, 0);
                out.data[i] = self.get(p, d, 0);
            }
        }
        Ok(out)
    }

    /// Largest coefficient difference over the common reliable orders.
    pub fn max_diff(&self, o: &Self) -> f64 {
        let valid = self.valid.min(o.valid);
        let mut worst: f64 = 0.0;
        for p in 0..valid {
            for d in self.mode_range() {
                for j in 0..=self.shape.jet.min(o.shape.jet) {
                    worst = worst.max((self.get(p, d, j) - o.get(p, d, j)).norm());
                }
            }
        }
        worst
    }
}
