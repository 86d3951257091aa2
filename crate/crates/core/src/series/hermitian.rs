//! Dense truncated two-variable Laurent series `F(ζ,η) = Σ c_{jk} ζ^j η^k`,
//! the polarised form of a real-analytic function near the unit circle.

use super::band::Band;
use super::circle::CircleSeries;
use super::power::AnalyticFn;
use super::scalar::{RingKind, Scalar};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt::Write as _;

/// Default bound on the centred part's majorant in `analytic_apply`.
pub const DEFAULT_SAFETY: f64 = 0.8;
/// Diagonal-vanishing tolerance relative to the majorant norm, in double.
pub const DEFAULT_VANISH_TOL: f64 = 1e-9;
/// Relative tail level above which a series is flagged.
pub const TAIL_FLAG: f64 = 1e-6;

/// Polarisation variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Zeta,
    Eta,
}

/// Coefficients `c_{jk}`, `j,k ∈ [−N, N]`, plus the accumulated majorant
/// mass of terms dropped by truncation (measured at [`Band::reference`]).
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianSeries<S> {
    order: usize,
    coeffs: Vec<S>,
    tail: f64,
}

impl<S: Scalar> HermitianSeries<S> {
    pub fn zeros(order: usize, like: &S) -> Result<Self> {
        if order == 0 {
            return Err(Error::Usage("series order must be at least 1".into()));
        }
        let w = 2 * order + 1;
        Ok(HermitianSeries {
            order,
            coeffs: vec![like.zero_like(); w * w],
            tail: 0.0,
        })
    }

    pub fn constant(order: usize, c: S) -> Result<Self> {
        let mut s = HermitianSeries::zeros(order, &c)?;
        s.set(0, 0, c);
        Ok(s)
    }

    /// Series from `(j, k, c_{jk})` triples with complex-double values
    /// embedded into the ring of `like`.
    pub fn from_terms(order: usize, like: &S, terms: &[(i64, i64, Complex64)]) -> Result<Self> {
        let mut s = HermitianSeries::zeros(order, like)?;
        let n = order as i64;
        for &(j, k, c) in terms {
            if j.abs() > n || k.abs() > n {
                return Err(Error::Usage(format!("term ({j},{k}) exceeds order {order}")));
            }
            let cur = s.get(j, k).add(&like.from_c64_like(c));
            s.set(j, k, cur);
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ring(&self) -> RingKind {
        self.coeffs[0].ring()
    }

    /// Accumulated dropped mass.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// Whether the dropped mass exceeds `1e−6` of the majorant norm.
    pub fn flagged(&self) -> bool {
        self.tail > TAIL_FLAG * self.majorant_norm(Band::reference())
    }

    fn width(&self) -> usize {
        2 * self.order + 1
    }

    fn idx(&self, j: i64, k: i64) -> usize {
        let n = self.order as i64;
        ((j + n) as usize) * self.width() + (k + n) as usize
    }

    fn in_range(&self, j: i64, k: i64) -> bool {
        let n = self.order as i64;
        j.abs() <= n && k.abs() <= n
    }

    pub fn get(&self, j: i64, k: i64) -> &S {
        &self.coeffs[self.idx(j, k)]
    }

    pub fn set(&mut self, j: i64, k: i64, v: S) {
        let i = self.idx(j, k);
        self.coeffs[i] = v;
    }

    fn like(&self) -> &S {
        &self.coeffs[0]
    }

    /// Iterator over `(j, k, c_{jk})` for all stored coefficients.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, &S)> {
        let n = self.order as i64;
        let w = self.width();
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| ((i / w) as i64 - n, (i % w) as i64 - n, c))
    }

    fn nonzero(&self) -> Vec<(i64, i64, &S)> {
        self.iter().filter(|(_, _, c)| c.abs() != 0.0).collect()
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.order != o.order {
            return Err(Error::Usage(format!(
                "series order mismatch: {} vs {}",
                self.order, o.order
            )));
        }
        if self.ring() != o.ring() {
            return Err(Error::Usage(format!(
                "scalar ring mismatch: {} vs {}",
                self.ring(),
                o.ring()
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        Ok(HermitianSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
            tail: self.tail + o.tail,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        Ok(HermitianSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect(),
            tail: self.tail + o.tail,
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        HermitianSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
            tail: self.tail * s.abs(),
        }
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale_by(&self, s: &S) -> Self {
        HermitianSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
            tail: self.tail * s.abs(),
        }
    }

    /// Adds a ring element to the constant term.
    pub fn add_constant(&self, s: &S) -> Self {
        let mut out = self.clone();
        let c = out.get(0, 0).add(s);
        out.set(0, 0, c);
        out
    }

    /// Truncated product; terms with `|j| > N` or `|k| > N` are dropped and
    /// their majorant mass is added to the tail.
    pub fn multiply(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let rho = Band::reference().rho;
        let mut out = HermitianSeries::zeros(self.order, self.like())?;
        let mut dropped = 0.0;
        let a = self.nonzero();
        let b = o.nonzero();
        for &(j1, k1, x) in &a {
            for &(j2, k2, y) in &b {
                let (j, k) = (j1 + j2, k1 + k2);
                let p = x.mul(y);
                if out.in_range(j, k) {
                    let i = out.idx(j, k);
                    out.coeffs[i] = out.coeffs[i].add(&p);
                } else {
                    dropped += p.abs() * rho.powi(-((j.abs() + k.abs()) as i32));
                }
            }
        }
        let band = Band::reference();
        out.tail = dropped
            + self.tail * (o.majorant_norm(band) + o.tail)
            + self.majorant_norm(band) * o.tail;
        Ok(out)
    }

    /// `c_{jk} ↦ conj(c_{kj})`: the realised function is complex-conjugated.
    pub fn hermitian_transpose(&self) -> Self {
        let mut out = self.clone();
        for (j, k, c) in self.iter() {
            let i = out.idx(k, j);
            out.coeffs[i] = c.conj();
        }
        out
    }

    /// Restriction to `ζη = 1`: `b_d = Σ_k c_{d+k,k}`, `D = 2N`.
    pub fn diag_restrict(&self) -> CircleSeries<S> {
        let mut b = CircleSeries::zeros(2 * self.order, self.like());
        for (j, k, c) in self.iter() {
            let cur = b.get(j - k).expect("in range").add(c);
            b.set(j - k, cur);
        }
        b
    }

    /// Vanishing tolerance used by [`Self::diag_divide`].
    pub fn vanish_tol(&self) -> f64 {
        let scale = self.ring().epsilon() / f64::EPSILON;
        DEFAULT_VANISH_TOL * scale * self.majorant_norm(Band::reference())
    }

    /// Division by `1 − ζη` of a series vanishing on the diagonal circle.
    pub fn diag_divide(&self) -> Result<Self> {
        self.diag_divide_tol(self.vanish_tol())
    }

    /// [`Self::diag_divide`] with an explicit absolute tolerance.
    pub fn diag_divide_tol(&self, tol: f64) -> Result<Self> {
        let b = self.diag_restrict();
        for (d, c) in b.iter() {
            if c.abs() > tol {
                return Err(Error::Domain(format!(
                    "diagonal restriction does not vanish: |b_{d}| = {:.3e} > {:.3e}",
                    c.abs(),
                    tol
                )));
            }
        }
        let n = self.order as i64;
        let mut out = HermitianSeries::zeros(self.order, self.like())?;
        // g_{jk} = g_{j+1,k+1} − c_{j+1,k+1}, swept from the top of each diagonal.
        for j in (-n..=n).rev() {
            for k in (-n..=n).rev() {
                if !self.in_range(j + 1, k + 1) {
                    continue;
                }
                let g = out.get(j + 1, k + 1).sub(self.get(j + 1, k + 1));
                out.set(j, k, g);
            }
        }
        out.tail = self.tail;
        Ok(out)
    }

    /// Bounded harmonic extension of circle data to `|ζ| > 1` in polarised
    /// form: `b_d ζ^d` for `d ≤ 0`, `b_d η^{−d}` for `d > 0`.
    pub fn poisson_extend(b: &CircleSeries<S>, order: usize) -> Result<Self> {
        let like = &b.coeffs()[0];
        let mut out = HermitianSeries::zeros(order, like)?;
        let rho = Band::reference().rho;
        for (d, c) in b.iter() {
            if d.unsigned_abs() as usize > order {
                out.tail += c.abs() * rho.powi(-(d.abs() as i32));
                continue;
            }
            if d <= 0 {
                out.set(d, 0, c.clone());
            } else {
                out.set(0, -d, c.clone());
            }
        }
        Ok(out)
    }

    /// Value at `(ζ, η)`.
    pub fn eval(&self, zeta: Complex64, eta: Complex64) -> S {
        let like = self.like();
        let mut acc = like.zero_like();
        for (j, k, c) in self.iter() {
            if c.abs() == 0.0 {
                continue;
            }
            let m = zeta.powi(j as i32) * eta.powi(k as i32);
            acc = acc.add(&c.mul(&like.from_c64_like(m)));
        }
        acc
    }

    /// Realised value `F(ζ, conj ζ)`.
    pub fn realize(&self, zeta: Complex64) -> S {
        self.eval(zeta, zeta.conj())
    }

    /// `fn(f)` through the power series of `fn(c(1+u))` in the centred part
    /// `u = f/c − 1`, where `c = F(1,1)`; `exp` uses `e^c e^u` with `u = f − c`.
    pub fn analytic_apply(&self, f: AnalyticFn) -> Result<Self> {
        self.analytic_apply_with(f, DEFAULT_SAFETY)
    }

    /// [`Self::analytic_apply`] with an explicit bound on the centred majorant.
    pub fn analytic_apply_with(&self, f: AnalyticFn, safety: f64) -> Result<Self> {
        let one = Complex64::new(1.0, 0.0);
        let c = self.eval(one, one);
        if f.has_branch_cut() && c.center().re <= 0.0 {
            return Err(Error::Domain(format!(
                "{}: centre value {} lies on or beyond the branch cut",
                f.name(),
                c.center()
            )));
        }
        // exp is centred additively, the others multiplicatively.
        let u = if f == AnalyticFn::Exp {
            self.add_constant(&c.neg())
        } else {
            self.scale_by(&c.recip()?).add_constant(&c.one_like().neg())
        };
        let nu = u.majorant_norm(Band::reference());
        if nu >= safety {
            return Err(Error::Convergence(format!(
                "{}: centred part has majorant {nu:.4} ≥ {safety}",
                f.name()
            )));
        }
        let eps = self.ring().epsilon() * 0.1;
        let terms = if nu == 0.0 {
            1
        } else {
            ((eps.ln() / nu.ln()).ceil() as usize + 2).clamp(1, 400)
        };
        let mut base = vec![c.zero_like(); terms];
        base[0] = c.clone();
        if terms > 1 {
            base[1] = if f == AnalyticFn::Exp { c.one_like() } else { c.clone() };
        }
        let g = f.apply(&base)?;
        let mut out = HermitianSeries::constant(self.order, g[terms - 1].clone())?;
        for k in (0..terms - 1).rev() {
            out = out.multiply(&u)?.add_constant(&g[k]);
        }
        out.tail += self.tail;
        Ok(out)
    }

    /// Term-by-term derivative in `ζ` or `η`.
    pub fn differentiate(&self, var: Var) -> Self {
        let mut out = HermitianSeries::zeros(self.order, self.like()).expect("order ≥ 1");
        let rho = Band::reference().rho;
        out.tail = self.tail;
        for (j, k, c) in self.iter() {
            let (e, jj, kk) = match var {
                Var::Zeta => (j, j - 1, k),
                Var::Eta => (k, j, k - 1),
            };
            if e == 0 || c.abs() == 0.0 {
                continue;
            }
            let v = c.scale(e as f64);
            if out.in_range(jj, kk) {
                out.set(jj, kk, v);
            } else {
                out.tail += v.abs() * rho.powi(-((jj.abs() + kk.abs()) as i32));
            }
        }
        out
    }

    /// Coefficient majorant `Σ |c_{jk}| ρ^{−|j|−|k|}`; for jets the sum of the
    /// per-component majorants (the value at `|ϑ| = 1`).
    pub fn majorant_norm(&self, band: Band) -> f64 {
        self.majorant_norm_parts(band).iter().sum()
    }

    /// Majorant per ring component (one entry per ϑ-power for jets).
    pub fn majorant_norm_parts(&self, band: Band) -> Vec<f64> {
        let mut acc: Vec<f64> = Vec::new();
        for (j, k, c) in self.iter() {
            let w = band.rho.powi(-((j.abs() + k.abs()) as i32));
            let parts = c.abs_parts();
            if acc.len() < parts.len() {
                acc.resize(parts.len(), 0.0);
            }
            for (a, p) in acc.iter_mut().zip(parts) {
                *a += p * w;
            }
        }
        acc
    }

    /// CSV block: a `# hermitian-series` comment line, the `j,k,re,im`
    /// header and one row per nonzero coefficient.
    pub fn to_csv_string(&self) -> String {
        let mut s = format!("# hermitian-series N={} ring={}\nj,k,re,im\n", self.order, self.ring());
        for (j, k, c) in self.iter() {
            if c.abs() == 0.0 {
                continue;
            }
            let (re, im) = c.to_text();
            writeln!(s, "{j},{k},{re},{im}").expect("writing to a String");
        }
        s
    }

    /// Parses a block written by [`Self::to_csv_string`] into the ring of `like`.
    pub fn from_csv_str(text: &str, like: &S) -> Result<Self> {
        let mut lines = text.lines();
        let head = lines.next().unwrap_or_default();
        let rest = head
            .strip_prefix("# hermitian-series N=")
            .ok_or_else(|| Error::Usage("missing `# hermitian-series` line".into()))?;
        let (n, ring) = rest
            .split_once(" ring=")
            .ok_or_else(|| Error::Usage("missing ring in series header".into()))?;
        let order: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad order `{n}`")))?;
        let ring = RingKind::parse(ring)?;
        if ring != like.ring() {
            return Err(Error::Usage(format!(
                "series ring {ring} does not match requested {}",
                like.ring()
            )));
        }
        if lines.next().map(str::trim) != Some("j,k,re,im") {
            return Err(Error::Usage("expected header `j,k,re,im`".into()));
        }
        let mut s = HermitianSeries::zeros(order, like)?;
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 4 {
                return Err(Error::Usage(format!("bad series row `{line}`")));
            }
            let idx = |t: &str| -> Result<i64> {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad index `{t}`")))
            };
            let (j, k) = (idx(f[0])?, idx(f[1])?);
            if !s.in_range(j, k) {
                return Err(Error::Usage(format!("index ({j},{k}) exceeds order {order}")));
            }
            s.set(j, k, like.from_text_like(f[2], f[3])?);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::big::BigComplex;
    use crate::series::power::Coef;
    use crate::series::jet::Jet;

    const Z: Complex64 = Complex64::new(0.0, 0.0);

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn hs(order: usize, terms: &[(i64, i64, Complex64)]) -> HermitianSeries<Complex64> {
        HermitianSeries::from_terms(order, &Z, terms).unwrap()
    }

    fn close(a: &HermitianSeries<Complex64>, b: &HermitianSeries<Complex64>, tol: f64) -> bool {
        a.iter().zip(b.iter()).all(|((_, _, x), (_, _, y))| (x - y).norm() <= tol)
    }

    #[test]
    fn multiply_examples() {
        let p = hs(3, &[(0, 0, c(1.0)), (1, 1, c(1.0))]);
        let q = hs(3, &[(0, 0, c(1.0)), (1, 1, c(-1.0))]);
        assert!(close(&p.multiply(&q).unwrap(), &hs(3, &[(0, 0, c(1.0)), (2, 2, c(-1.0))]), 0.0));
        let s = hs(3, &[(1, 0, c(1.0)), (0, 1, c(1.0))]);
        let want = hs(3, &[(2, 0, c(1.0)), (1, 1, c(2.0)), (0, 2, c(1.0))]);
        assert!(close(&s.multiply(&s).unwrap(), &want, 0.0));
        let z = hs(1, &[(1, 0, c(1.0))]);
        let zz = z.multiply(&z).unwrap();
        assert_eq!(zz.majorant_norm(Band::reference()), 0.0);
        assert!(zz.tail() > 0.0);
    }

    #[test]
    fn multiply_rejects_mismatch() {
        let a = hs(2, &[(0, 0, c(1.0))]);
        let b = hs(3, &[(0, 0, c(1.0))]);
        assert!(matches!(a.multiply(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn transpose_examples() {
        let i = Complex64::new(0.0, 1.0);
        assert!(close(&hs(2, &[(1, 0, i)]).hermitian_transpose(), &hs(2, &[(0, 1, -i)]), 0.0));
        let real = hs(2, &[(0, 1, c(1.0)), (1, 0, c(1.0))]);
        assert!(close(&real.hermitian_transpose(), &real, 0.0));
        let a = hs(2, &[(2, 1, Complex64::new(2.0, 3.0))]);
        assert!(close(&a.hermitian_transpose(), &hs(2, &[(1, 2, Complex64::new(2.0, -3.0))]), 0.0));
    }

    #[test]
    fn diag_restrict_examples() {
        let b = hs(2, &[(1, 1, c(1.0))]).diag_restrict();
        assert_eq!(*b.get(0).unwrap(), c(1.0));
        let b = hs(2, &[(2, 1, c(1.0))]).diag_restrict();
        assert_eq!(*b.get(1).unwrap(), c(1.0));
        assert_eq!(b.max_abs(), 1.0);
        let b = hs(2, &[(0, 0, c(3.0)), (1, 0, c(1.0)), (0, 1, c(1.0))]).diag_restrict();
        assert_eq!(*b.get(0).unwrap(), c(3.0));
        assert_eq!(*b.get(1).unwrap(), c(1.0));
        assert_eq!(*b.get(-1).unwrap(), c(1.0));
    }

    #[test]
    fn diag_divide_examples() {
        let f = hs(3, &[(0, 0, c(1.0)), (1, 1, c(-1.0))]);
        assert!(close(&f.diag_divide().unwrap(), &hs(3, &[(0, 0, c(1.0))]), 1e-15));
        let f = hs(3, &[(1, 0, c(1.0)), (2, 1, c(-1.0))]);
        assert!(close(&f.diag_divide().unwrap(), &hs(3, &[(1, 0, c(1.0))]), 1e-15));
        let f = hs(3, &[(1, 0, c(1.0)), (0, 1, c(-1.0))]);
        assert!(matches!(f.diag_divide(), Err(Error::Domain(_))));
    }

    #[test]
    fn poisson_extend_examples() {
        let five = CircleSeries::constant(2, c(5.0));
        assert!(close(&HermitianSeries::poisson_extend(&five, 2).unwrap(), &hs(2, &[(0, 0, c(5.0))]), 0.0));
        let b = CircleSeries::from_coeffs(vec![Z, c(1.0), Z, Z, Z, Z, Z]).unwrap();
        assert_eq!(*b.get(-2).unwrap(), c(1.0));
        assert!(close(&HermitianSeries::poisson_extend(&b, 3).unwrap(), &hs(3, &[(-2, 0, c(1.0))]), 0.0));
        let b = CircleSeries::from_coeffs(vec![Z, Z, c(1.0)]).unwrap();
        assert!(close(&HermitianSeries::poisson_extend(&b, 3).unwrap(), &hs(3, &[(0, -1, c(1.0))]), 0.0));
    }

    #[test]
    fn analytic_apply_examples() {
        let zero = hs(3, &[]);
        let e = zero.analytic_apply(AnalyticFn::Exp).unwrap();
        assert!(close(&e, &hs(3, &[(0, 0, c(1.0))]), 1e-15));
        let f = hs(4, &[(0, 0, c(2.0)), (1, 1, c(0.1))]);
        let back = f
            .analytic_apply(AnalyticFn::Log)
            .unwrap()
            .analytic_apply(AnalyticFn::Exp)
            .unwrap();
        assert!(close(&back, &f, 1e-12));
        let g = hs(4, &[(0, 0, c(4.0)), (1, 1, c(0.04))]);
        let r = g.analytic_apply(AnalyticFn::Sqrt).unwrap();
        assert!((r.get(0, 0) - c(2.0)).norm() < 1e-14);
    }

    #[test]
    fn analytic_apply_reports_large_centred_part() {
        let f = hs(3, &[(0, 0, c(1.0)), (1, 0, c(2.0))]);
        match f.analytic_apply(AnalyticFn::Log) {
            Err(Error::Convergence(msg)) => assert!(msg.contains("majorant")),
            other => panic!("unexpected {other:?}"),
        }
        let neg = hs(3, &[(0, 0, c(-1.0))]);
        assert!(matches!(neg.analytic_apply(AnalyticFn::Sqrt), Err(Error::Domain(_))));
    }

    #[test]
    fn differentiate_examples() {
        let f = hs(3, &[(2, 1, c(1.0))]);
        assert!(close(&f.differentiate(Var::Zeta), &hs(3, &[(1, 1, c(2.0))]), 0.0));
        let f = hs(3, &[(1, 0, c(1.0))]);
        assert!(close(&f.differentiate(Var::Eta), &hs(3, &[]), 0.0));
        let f = hs(3, &[(-1, 0, c(1.0))]);
        assert!(close(&f.differentiate(Var::Zeta), &hs(3, &[(-2, 0, c(-1.0))]), 0.0));
    }

    #[test]
    fn majorant_examples() {
        let b = Band { sigma: 0.1, rho: 0.9 };
        assert_eq!(hs(2, &[(0, 0, c(3.0))]).majorant_norm(Band::reference()), 3.0);
        assert!((hs(2, &[(1, 0, c(1.0))]).majorant_norm(b) - 1.0 / 0.9).abs() < 1e-15);
        let s = hs(2, &[(1, 0, c(1.0)), (0, 1, c(1.0))]);
        assert!((s.majorant_norm(b) - 2.0 / 0.9).abs() < 1e-15);
    }

    #[test]
    fn csv_round_trip_in_all_rings() {
        let f = hs(2, &[(1, -1, Complex64::new(0.1, -2.5)), (0, 0, c(1.0 / 3.0))]);
        let back = HermitianSeries::from_csv_str(&f.to_csv_string(), &Z).unwrap();
        assert_eq!(back, f);
        assert!(f.to_csv_string().starts_with("# hermitian-series N=2 ring=complex-double\nj,k,re,im\n"));

        let jz = Jet::zero(2).unwrap();
        let fj = HermitianSeries::from_terms(2, &jz, &[(1, 0, c(0.7))]).unwrap();
        let back = HermitianSeries::from_csv_str(&fj.to_csv_string(), &jz).unwrap();
        assert_eq!(back, fj);

        let bz = BigComplex::new(40, 0.0, 0.0);
        let third = BigComplex::new(40, 1.0, 0.0).mul(&BigComplex::new(40, 3.0, 0.0).recip().unwrap());
        let mut fb = HermitianSeries::zeros(1, &bz).unwrap();
        fb.set(1, 1, third);
        let back = HermitianSeries::from_csv_str(&fb.to_csv_string(), &bz).unwrap();
        assert!(back.get(1, 1).sub(fb.get(1, 1)).abs() < 1e-40);
        assert!(HermitianSeries::from_csv_str(&fb.to_csv_string(), &Z).is_err());
    }

    #[test]
    fn big_complex_ring_log_exp() {
        let bz = BigComplex::new(40, 0.0, 0.0);
        let f = HermitianSeries::from_terms(3, &bz, &[(0, 0, c(2.0)), (1, 1, c(0.1))]).unwrap();
        let back = f
            .analytic_apply(AnalyticFn::Log)
            .unwrap()
            .analytic_apply(AnalyticFn::Exp)
            .unwrap();
        let diff = back.sub(&f).unwrap().majorant_norm(Band::reference());
        assert!(diff < 1e-35, "diff {diff}");
    }
}
