//! Shared generators and invariant checks for the series algebra, used by the
//! property suite and by the acceptance run.

#![allow(dead_code)]

use droplet::series::{Band, CircleSeries, HermitianSeries};
use droplet::Complex64;
use proptest::prelude::*;

pub const ORDER: usize = 6;
const ROUNDING: f64 = 1e-12;

/// Dense coefficients `c_{jk}`, `|j|, |k| ≤ band`, each in the unit square.
pub fn series(band: usize) -> impl Strategy<Value = HermitianSeries<Complex64>> {
    let w = 2 * band + 1;
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), w * w).prop_map(move |v| {
        let b = band as i64;
        let terms: Vec<(i64, i64, Complex64)> = v
            .iter()
            .enumerate()
            .map(|(i, (re, im))| ((i / w) as i64 - b, (i % w) as i64 - b, Complex64::new(*re, *im)))
            .collect();
        HermitianSeries::from_terms(ORDER, &Complex64::new(0.0, 0.0), &terms).expect("in range")
    })
}

pub fn circle(degree: usize) -> impl Strategy<Value = CircleSeries<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2 * degree + 1).prop_map(|v| {
        CircleSeries::from_coeffs(v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).expect("odd")
    })
}

pub fn max_diff(a: &HermitianSeries<Complex64>, b: &HermitianSeries<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|((_, _, x), (_, _, y))| (x - y).norm()).fold(0.0, f64::max)
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// `F(ζ, conj ζ)` equals the diagonal restriction at `ζ` on eight circle points.
pub fn evaluation_consistent(f: &HermitianSeries<Complex64>) -> Result<(), String> {
    let b = f.diag_restrict();
    let scale = f.majorant_norm(Band::reference()).max(1.0);
    for i in 0..8 {
        let z = Complex64::from_polar(1.0, 0.4 + std::f64::consts::PI * i as f64 / 4.0);
        let d = (f.realize(z) - b.eval(z)).norm();
        ensure(d <= ROUNDING * scale, || format!("evaluation mismatch {d:e} at {z}"))?;
    }
    Ok(())
}

pub fn multiply_commutes(f: &HermitianSeries<Complex64>, g: &HermitianSeries<Complex64>) -> Result<(), String> {
    let fg = f.multiply(g).map_err(|e| e.to_string())?;
    let gf = g.multiply(f).map_err(|e| e.to_string())?;
    let d = max_diff(&fg, &gf);
    ensure(d <= ROUNDING, || format!("fg − gf = {d:e}"))?;
    evaluation_consistent(&fg)
}

/// Exact associativity for inputs whose products stay inside the order.
pub fn multiply_associates(
    f: &HermitianSeries<Complex64>,
    g: &HermitianSeries<Complex64>,
    h: &HermitianSeries<Complex64>,
) -> Result<(), String> {
    let e = |r: droplet::Result<HermitianSeries<Complex64>>| r.map_err(|e| e.to_string());
    let left = e(e(f.multiply(g))?.multiply(h))?;
    let right = e(f.multiply(&e(g.multiply(h))?))?;
    ensure(left.tail() == 0.0 && right.tail() == 0.0, || "band-limited product was truncated".into())?;
    let d = max_diff(&left, &right);
    ensure(d <= ROUNDING, || format!("(fg)h − f(gh) = {d:e}"))
}

pub fn transpose_involution(f: &HermitianSeries<Complex64>, g: &HermitianSeries<Complex64>) -> Result<(), String> {
    let back = f.hermitian_transpose().hermitian_transpose();
    ensure(max_diff(&back, f) == 0.0, || "transpose is not an involution".into())?;
    let e = |r: droplet::Result<HermitianSeries<Complex64>>| r.map_err(|e| e.to_string());
    let a = e(f.multiply(g))?.hermitian_transpose();
    let b = e(f.hermitian_transpose().multiply(&g.hermitian_transpose()))?;
    let d = max_diff(&a, &b);
    ensure(d <= ROUNDING, || format!("transpose(fg) − transpose(f)transpose(g) = {d:e}"))?;
    let z = Complex64::from_polar(1.0, 1.1);
    let d = (f.hermitian_transpose().realize(z) - f.realize(z).conj()).norm();
    ensure(d <= ROUNDING * f.majorant_norm(Band::reference()), || format!("realisation not conjugated: {d:e}"))
}

/// `diag_restrict(poisson_extend(b)) = b` for `D ≤ N`.
pub fn poisson_restricts(b: &CircleSeries<Complex64>) -> Result<(), String> {
    let f = HermitianSeries::poisson_extend(b, ORDER).map_err(|e| e.to_string())?;
    ensure(f.tail() == 0.0, || "extension truncated".into())?;
    let r = f.diag_restrict();
    for (d, c) in b.iter() {
        let got = r.get(d).copied().unwrap_or_default();
        ensure((got - c).norm() == 0.0, || format!("b_{d}: {got} vs {c}"))?;
    }
    for (d, c) in r.iter() {
        ensure(d.unsigned_abs() as usize <= b.degree() || c.norm() == 0.0, || format!("spurious b_{d}"))?;
    }
    evaluation_consistent(&f)
}

/// `(1 − ζη)·diag_divide(f) = f` for `f = (1 − ζη)g`.
pub fn divide_inverts(g: &HermitianSeries<Complex64>) -> Result<(), String> {
    let zero = Complex64::new(0.0, 0.0);
    let one_minus = HermitianSeries::from_terms(ORDER, &zero, &[(0, 0, Complex64::new(1.0, 0.0)), (1, 1, Complex64::new(-1.0, 0.0))])
        .map_err(|e| e.to_string())?;
    let f = one_minus.multiply(g).map_err(|e| e.to_string())?;
    let q = f.diag_divide().map_err(|e| e.to_string())?;
    let back = one_minus.multiply(&q).map_err(|e| e.to_string())?;
    let scale = f.majorant_norm(Band::reference()).max(1.0);
    let d = max_diff(&back, &f);
    ensure(d <= ROUNDING * scale, || format!("(1−ζη)·(f/(1−ζη)) − f = {d:e}"))?;
    evaluation_consistent(&q)
}

/// `‖fg‖ ≤ ‖f‖‖g‖` up to rounding and the reported tail.
pub fn majorant_submultiplicative(f: &HermitianSeries<Complex64>, g: &HermitianSeries<Complex64>, sigma: f64) -> Result<(), String> {
    let band = Band::new(sigma).map_err(|e| e.to_string())?;
    let fg = f.multiply(g).map_err(|e| e.to_string())?;
    let lhs = fg.majorant_norm(band);
    let rhs = f.majorant_norm(band) * g.majorant_norm(band);
    ensure(lhs <= rhs * (1.0 + ROUNDING) + fg.tail(), || format!("‖fg‖ = {lhs:e} > ‖f‖‖g‖ = {rhs:e}"))
}
