//! Tensor quadrature for `L²(ℂ, e^{−2mQ} dA)` at extended precision.
//!
//! Radius: composite Gauss–Legendre on `[0, R]`. Angle: trapezoid with
//! `N_θ` equispaced nodes. Weights carry the area normalisation `dA = dxdy/π`.

use crate::error::{Error, Result};
use crate::geometry::PotentialSpec;
use crate::series::big::bits_for_digits;
use num_complex::Complex64;
use rug::{Complex, Float};
use std::f64::consts::{LN_10, PI};

/// Guard bits added on top of the declared precision for long sums.
const GUARD_BITS: u32 = 32;

/// Gauss–Legendre nodes and weights on `[−1, 1]` at `prec` bits.
pub fn gauss_legendre(n: usize, prec: u32) -> (Vec<Float>, Vec<Float>) {
    let mut xs = Vec::with_capacity(n);
    let mut ws = Vec::with_capacity(n);
    let tol = Float::with_val(prec, Float::i_exp(1, 8 - prec as i32));
    for i in 0..(n + 1) / 2 {
        let guess = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(prec, guess);
        let mut dp = Float::new(prec);
        for _ in 0..64 {
            let (p, d) = legendre(n, &x);
            let dx = Float::with_val(prec, &p / &d);
            x -= &dx;
            dp = d;
            if dx.abs() < tol {
                dp = legendre(n, &x).1;
                break;
            }
        }
        let one_minus = Float::with_val(prec, 1 - Float::with_val(prec, x.square_ref()));
        let w = Float::with_val(prec, 2 / (one_minus * Float::with_val(prec, dp.square_ref())));
        if 2 * i + 1 == n {
            xs.push(Float::new(prec));
            ws.push(w);
        } else {
            xs.push(Float::with_val(prec, -&x));
            ws.push(w.clone());
            xs.push(x);
            ws.push(w);
        }
    }
    (xs, ws)
}

/// `(P_n(x), P_n′(x))` by the three-term recurrence.
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    if n == 0 {
        return (p0, Float::new(prec));
    }
    for k in 2..=n {
        let a = Float::with_val(prec, x * &p1) * (2 * k - 1) as u32;
        let b = Float::with_val(prec, &p0 * (k - 1) as u32);
        let p2 = Float::with_val(prec, a - b) / k as u32;
        p0 = std::mem::replace(&mut p1, p2);
    }
    let num = Float::with_val(prec, x * &p1) - &p0;
    let den = Float::with_val(prec, x.square_ref()) - 1u32;
    let dp = Float::with_val(prec, num * n as u32) / den;
    (p1, dp)
}

/// Options for `build_quadrature`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureOptions {
    /// Truncation radius; chosen from the tail estimate when `None`.
    pub radius: Option<f64>,
    /// Gauss–Legendre nodes per radial panel.
    pub nodes_r: usize,
    /// Angular nodes; chosen by a doubling test when `None`.
    pub nodes_theta: Option<usize>,
    /// Working precision in decimal digits.
    pub digits: u32,
    /// Highest monomial degree integrated.
    pub n_max: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            radius: None,
            nodes_r: 24,
            nodes_theta: None,
            digits: 50,
            n_max: 16,
        }
    }
}

impl QuadratureOptions {
    pub fn validate(&self) -> Result<()> {
        if !(16..=2000).contains(&self.digits) {
            return Err(Error::config("digits", format!("need 16 ≤ digits ≤ 2000, got {}", self.digits)));
        }
        if self.nodes_r < 4 {
            return Err(Error::config("nodes_r", format!("need at least 4 nodes per panel, got {}", self.nodes_r)));
        }
        if let Some(n) = self.nodes_theta {
            if n < 8 {
                return Err(Error::config("nodes_theta", format!("need at least 8 angular nodes, got {n}")));
            }
        }
        if let Some(r) = self.radius {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::config("radius", format!("radius must be positive, got {r}")));
            }
        }
        Ok(())
    }

    /// An independent, finer rule used for re-quadrature checks.
    pub fn refined(&self, rule: &QuadratureRule) -> Self {
        QuadratureOptions {
            radius: Some(rule.radius * 1.05),
            nodes_r: self.nodes_r + 8,
            nodes_theta: Some(rule.n_theta + rule.n_theta / 2 + 8),
            digits: self.digits,
            n_max: self.n_max,
        }
    }
}

/// Quadrature on the disk `|z| ≤ R` for the weight `e^{−2mQ}`.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub spec: PotentialSpec,
    pub m: u32,
    pub radius: f64,
    pub digits: u32,
    pub n_max: usize,
    pub n_theta: usize,
    /// Radial nodes.
    pub radii: Vec<Float>,
    /// Area weight of every node on the circle `|z| = r_i`, normalised so
    /// that the weights of the unit disk sum to one.
    pub weights: Vec<Float>,
    /// `e^{−2mQ}` at node `(i, l)`, `z = r_i e^{2πil/N_θ}`.
    pub density: Vec<Vec<Float>>,
    /// `log10` of the tail bound `∫_{|z|>R} |z|^{2n_max} e^{−2mQ} dA` relative
    /// to a lower bound of `‖z^{n_max}‖²`.
    pub log10_tail: f64,
    /// Nodes with weights times `e^{−2mQ}`, in double precision.
    measure: Vec<(Complex64, f64)>,
    trig: Vec<Vec<(Float, Float)>>,
}

impl QuadratureRule {
    pub fn prec(&self) -> u32 {
        bits_for_digits(self.digits) + GUARD_BITS
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(node, area weight)` pairs in double precision.
    pub fn nodes(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        self.radii.iter().zip(&self.weights).flat_map(move |(r, w)| {
            let (r, w) = (r.to_f64(), w.to_f64());
            (0..self.n_theta).map(move |l| (Complex64::from_polar(r, self.angle(l)), w))
        })
    }

    /// `(node, area weight · e^{−2mQ(node)})` pairs in double precision.
    pub fn measure(&self) -> &[(Complex64, f64)] {
        &self.measure
    }

    fn angle(&self, l: usize) -> f64 {
        2.0 * PI * l as f64 / self.n_theta as f64
    }

    /// `∫ f e^{−2mQ} dA` in double precision.
    pub fn integrate<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        self.measure.iter().map(|(z, w)| f(*z) * *w).sum()
    }

    /// `∫ e^{−2mQ} dA` at full precision.
    pub fn mass(&self) -> Float {
        let mut acc = Float::new(self.prec());
        for (i, w) in self.weights.iter().enumerate() {
            let mut s = Float::new(self.prec());
            for e in &self.density[i] {
                s += e;
            }
            acc += s * w;
        }
        acc
    }

    /// Moment matrix `G_jk = ⟨z^j, z^k⟩`, `0 ≤ j, k ≤ n`, at full precision.
    pub fn gram(&self, n: usize) -> Result<Vec<Vec<Complex>>> {
        if n > self.n_max {
            return Err(Error::Usage(format!("rule built for degree ≤ {}, asked for {n}", self.n_max)));
        }
        let prec = self.prec();
        // Angular Fourier sums F_d(r_i) = Σ_l e^{−2mQ} e^{idθ_l}, d = 0..n.
        let mut g: Vec<Vec<Complex>> = vec![vec![Complex::new(prec); n + 1]; n + 1];
        for (i, r) in self.radii.iter().enumerate() {
            let row = &self.density[i];
            let mut fourier = Vec::with_capacity(n + 1);
            for d in 0..=n {
                let (mut re, mut im) = (Float::new(prec), Float::new(prec));
                for (e, (c, s)) in row.iter().zip(&self.trig[d]) {
                    re += e * c;
                    im += e * s;
                }
                fourier.push(Complex::with_val(prec, (re, im)));
            }
            let mut pw = vec![Float::with_val(prec, &self.weights[i])];
            for p in 1..=2 * n {
                let next = Float::with_val(prec, &pw[p - 1] * r);
                pw.push(next);
            }
            for j in 0..=n {
                for k in 0..=j {
                    let term = Complex::with_val(prec, &fourier[j - k] * &pw[j + k]);
                    g[j][k] += term;
                }
            }
        }
        for j in 0..=n {
            for k in j + 1..=n {
                g[j][k] = g[k][j].clone().conj();
            }
            let re = g[j][j].real().clone();
            g[j][j] = Complex::with_val(prec, (re, 0));
        }
        Ok(g)
    }
}

/// `(power, Re(q e^{i(a−b)θ_l}))` groups of `Q(r e^{iθ_l}) = Σ_p A_p r^p`.
fn q_table(spec: &PotentialSpec, trig: &[Vec<(Float, Float)>], l: usize, prec: u32) -> Vec<(u32, Float)> {
    let mut out: Vec<(u32, Float)> = Vec::new();
    for (a, b, q) in spec.q_terms() {
        let d = a as i64 - b as i64;
        let (c, s) = &trig[d.unsigned_abs() as usize][l];
        let sin = if d < 0 { Float::with_val(prec, -s) } else { s.clone() };
        let val = Float::with_val(prec, c * q.re) - Float::with_val(prec, sin * q.im);
        let p = a + b;
        match out.iter_mut().find(|(pp, _)| *pp == p) {
            Some((_, acc)) => *acc += val,
            None => out.push((p, val)),
        }
    }
    out
}

fn trig_table(n_theta: usize, d_max: usize, prec: u32) -> Vec<Vec<(Float, Float)>> {
    let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
    (0..=d_max)
        .map(|d| {
            (0..n_theta)
                .map(|l| {
                    let th = Float::with_val(prec, &two_pi * (d * l) as u32) / n_theta as u32;
                    let (s, c) = th.sin_cos(Float::new(prec));
                    (c, s)
                })
                .collect()
        })
        .collect()
}

/// `min_θ Q(R e^{iθ}) / R²` sampled in double precision.
fn growth_rate(spec: &PotentialSpec, r: f64) -> f64 {
    (0..512)
        .map(|l| spec.q_value(Complex64::from_polar(r, 2.0 * PI * l as f64 / 512.0)))
        .fold(f64::INFINITY, f64::min)
        / (r * r)
}

/// `log10` of `2 ∫_R^∞ r^{2n+1} e^{−2mc r²} dr` with `c` the growth rate at `R`.
fn log10_tail(spec: &PotentialSpec, m: u32, n_max: usize, r: f64) -> f64 {
    let c = growth_rate(spec, r);
    if c <= 0.0 {
        return f64::INFINITY;
    }
    let a = 2.0 * m as f64 * c;
    let x = a * r * r;
    let n = n_max as f64;
    if x <= n + 1.0 {
        return f64::INFINITY;
    }
    // Incomplete-gamma tail bounded by its leading term over (1 − n/x).
    let ln = 2.0 * n * r.ln() - x - (2.0 * a).ln() + 2f64.ln() - (1.0 - n / x).ln();
    ln / LN_10
}

/// `log10` of a lower bound for `‖z^n‖² = ∫|z|^{2n}e^{−2mQ}dA`, from
/// `2∫_0^{r_hi} r^{2n+1}e^{−2m max_θ Q(re^{iθ})}dr` by the midpoint rule in log space.
fn log10_moment_floor(spec: &PotentialSpec, m: u32, n: usize, r_hi: f64) -> f64 {
    let steps = 4000;
    let h = r_hi / steps as f64;
    let logs: Vec<f64> = (0..steps)
        .map(|i| {
            let r = (i as f64 + 0.5) * h;
            let qmax = (0..64)
                .map(|l| spec.q_value(Complex64::from_polar(r, 2.0 * PI * l as f64 / 64.0)))
                .fold(f64::NEG_INFINITY, f64::max);
            (2 * n + 1) as f64 * r.ln() - 2.0 * m as f64 * qmax
        })
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs.iter().map(|l| (l - top).exp()).sum();
    (top + (2.0 * h * sum).ln()) / LN_10
}

/// `log10` of the tail beyond `R` relative to the smallest diagonal moment
/// scale `‖z^{n_max}‖²`, the worst case for relative accuracy.
fn log10_relative_tail(spec: &PotentialSpec, m: u32, n_max: usize, r: f64, floor: f64) -> f64 {
    log10_tail(spec, m, n_max, r) - floor
}

fn radius_grid(mut accept: impl FnMut(f64) -> bool) -> Option<f64> {
    let mut r: f64 = 0.5;
    while r < 1e3 {
        if accept(r) {
            return Some(r);
        }
        r *= 1.02;
    }
    None
}

/// Smallest radius on a 2% grid whose tail is below `10^{−digits−3}` relative
/// to `‖z^{n_max}‖²`.
pub fn choose_radius(spec: &PotentialSpec, m: u32, n_max: usize, digits: u32) -> Result<f64> {
    let target = -(digits as f64) - 3.0;
    let not_confining = || {
        Error::config(
            "potential",
            "Q is not confining: no truncation radius makes the weighted tail small",
        )
    };
    let r_abs = radius_grid(|r| log10_tail(spec, m, n_max, r) < target).ok_or_else(not_confining)?;
    let floor = log10_moment_floor(spec, m, n_max, 2.0 * r_abs);
    radius_grid(|r| log10_relative_tail(spec, m, n_max, r, floor) < target).ok_or_else(not_confining)
}

/// Builds the tensor rule with `n_max` and `digits` from `opts`.
pub fn build_quadrature(spec: &PotentialSpec, m: u32, opts: &QuadratureOptions) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::config("m", "m must be at least 1"));
    }
    opts.validate()?;
    let prec = bits_for_digits(opts.digits) + GUARD_BITS;
    let radius = match opts.radius {
        Some(r) => {
            let floor = log10_moment_floor(spec, m, opts.n_max, 2.0 * r);
            let t = log10_relative_tail(spec, m, opts.n_max, r, floor);
            if t >= -(opts.digits as f64) / 2.0 {
                return Err(Error::config(
                    "radius",
                    format!("tail bound 1e{t:.1} at R = {r} exceeds 1e-{}", opts.digits / 2),
                ));
            }
            r
        }
        None => choose_radius(spec, m, opts.n_max, opts.digits)?,
    };
    let d_q = spec.q_terms().iter().map(|(a, b, _)| (*a as i64 - *b as i64).unsigned_abs() as usize).max().unwrap_or(0);
    let d_max = d_q.max(opts.n_max);
    let n_theta = match opts.nodes_theta {
        Some(n) => n,
        None => choose_n_theta(spec, m, radius, d_max, opts.digits, prec)?,
    };
    let trig = trig_table(n_theta, d_max, prec);
    let q_rows: Vec<Vec<(u32, Float)>> = (0..n_theta).map(|l| q_table(spec, &trig, l, prec)).collect();

    let width = 0.5 / (m as f64).sqrt();
    let panels = (radius / width).ceil().max(1.0) as usize;
    let (gx, gw) = gauss_legendre(opts.nodes_r, prec);
    let big_r = Float::with_val(prec, radius);
    let half = Float::with_val(prec, &big_r / (2 * panels) as u32);
    let two_over_n = Float::with_val(prec, 2u32) / n_theta as u32;
    let mut radii = Vec::new();
    let mut weights = Vec::new();
    let mut density = Vec::new();
    let mut measure = Vec::new();
    for p in 0..panels {
        let mid = Float::with_val(prec, &half * (2 * p + 1) as u32);
        for (x, w) in gx.iter().zip(&gw) {
            let r = Float::with_val(prec, &mid + Float::with_val(prec, &half * x));
            let wt = Float::with_val(prec, &half * w) * &r * &two_over_n;
            let row = density_row(&q_rows, &r, m, prec);
            let (rf, wf) = (r.to_f64(), wt.to_f64());
            for (l, e) in row.iter().enumerate() {
                let z = Complex64::from_polar(rf, 2.0 * PI * l as f64 / n_theta as f64);
                measure.push((z, wf * e.to_f64()));
            }
            radii.push(r);
            weights.push(wt);
            density.push(row);
        }
    }
    Ok(QuadratureRule {
        spec: spec.clone(),
        m,
        radius,
        digits: opts.digits,
        n_max: opts.n_max,
        n_theta,
        radii,
        weights,
        density,
        log10_tail: log10_relative_tail(
            spec,
            m,
            opts.n_max,
            radius,
            log10_moment_floor(spec, m, opts.n_max, 2.0 * radius),
        ),
        measure,
        trig,
    })
}

/// `e^{−2mQ(r e^{iθ_l})}` for every angle.
fn density_row(q_rows: &[Vec<(u32, Float)>], r: &Float, m: u32, prec: u32) -> Vec<Float> {
    let p_max = q_rows.iter().flat_map(|row| row.iter().map(|(p, _)| *p)).max().unwrap_or(0);
    let mut pw = vec![Float::with_val(prec, 1)];
    for p in 1..=p_max as usize {
        let next = Float::with_val(prec, &pw[p - 1] * r);
        pw.push(next);
    }
    q_rows
        .iter()
        .map(|row| {
            let mut q = Float::new(prec);
            for (p, a) in row {
                q += a * &pw[*p as usize];
            }
            let e = q * (2 * m) as u32;
            Float::with_val(prec, -e).exp()
        })
        .collect()
}

/// Smallest power of two whose trapezoid sums of `e^{−2mQ} e^{idθ}` on
/// `|z| = R`, `d ≤ d_max`, agree with the doubled rule to the working precision.
fn choose_n_theta(spec: &PotentialSpec, m: u32, radius: f64, d_max: usize, digits: u32, prec: u32) -> Result<usize> {
    let r = Float::with_val(prec, radius);
    let sums = |n: usize| -> Vec<Complex> {
        let trig = trig_table(n, d_max, prec);
        let q_rows: Vec<Vec<(u32, Float)>> = (0..n).map(|l| q_table(spec, &trig, l, prec)).collect();
        let row = density_row(&q_rows, &r, m, prec);
        (0..=d_max)
            .map(|d| {
                let (mut re, mut im) = (Float::new(prec), Float::new(prec));
                for (e, (c, s)) in row.iter().zip(&trig[d]) {
                    re += e * c;
                    im += e * s;
                }
                Complex::with_val(prec, (re / n as u32, im / n as u32))
            })
            .collect()
    };
    let tol = Float::with_val(prec, Float::i_exp(1, -((digits as f64 + 3.0) * std::f64::consts::LOG2_10) as i32));
    let mut n = (4 * d_max + 16).next_power_of_two().max(64);
    let mut cur = sums(n);
    while n <= 1 << 15 {
        let next = sums(2 * n);
        let scale = Float::with_val(prec, next[0].abs_ref());
        let ok = cur.iter().zip(&next).all(|(a, b)| {
            let diff = Float::with_val(prec, Complex::with_val(prec, a - b).abs_ref());
            diff <= Float::with_val(prec, &scale * &tol)
        });
        if ok {
            return Ok(n);
        }
        n *= 2;
        cur = next;
    }
    Err(Error::Precision(format!(
        "angular quadrature did not resolve e^(-2mQ) at R = {radius}; set nodes_theta explicitly"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(7, 200);
        assert_eq!(x.len(), 7);
        for k in 0..14u32 {
            let mut s = Float::new(200);
            for (xi, wi) in x.iter().zip(&w) {
                s += Float::with_val(200, rug::ops::Pow::pow(xi.clone(), k)) * wi;
            }
            let want = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((s.to_f64() - want).abs() < 1e-15, "k={k}");
        }
    }

    #[test]
    fn ginibre_mass_is_one_over_m() {
        let opts = QuadratureOptions { digits: 30, n_max: 4, ..Default::default() };
        let rule = build_quadrature(&PotentialSpec::Ginibre, 10, &opts).unwrap();
        assert!((rule.mass().to_f64() * 10.0 - 1.0).abs() < 1e-25);
    }
}
