//! The linear operator `S` and the nonlinear operator `T`.

use crate::error::{Error, Result};
use crate::geometry::DropletGeometry;
use crate::series::{AnalyticFn, CircleSeries, CollarSeries, CollarShape, Jet};

/// Transversal orders lost by one application of `T`.
pub const T_ORDER_COST: usize = 4;

/// Geometry quantities lifted to the jet ring of `ϑ`, with the operators
/// built from them.
#[derive(Clone, Debug)]
pub struct Operators<'g> {
    pub geom: &'g DropletGeometry,
    theta: Jet,
    shape: CollarShape,
    dv: CollarSeries,
    dvbar: CollarSeries,
    lapv: CollarSeries,
    absdv2: CollarSeries,
    unit: CollarSeries,
    phip: CollarSeries,
    phipbar: CollarSeries,
    jac: CollarSeries,
    inv4dv2: CollarSeries,
    l: CollarSeries,
}

impl<'g> Operators<'g> {
    /// Operators at a numerical `ϑ` (jet order 0) or a formal one.
    pub fn new(geom: &'g DropletGeometry, theta: Jet) -> Result<Self> {
        let k = theta.order();
        let lift = |f: &CollarSeries| f.promote(k);
        let inv4dv2 = geom.absdv2.scale(4.0).apply(AnalyticFn::Reciprocal)?;
        Ok(Operators {
            geom,
            theta,
            shape: geom.shape().with_jet(k)?,
            dv: lift(&geom.dv)?,
            dvbar: lift(&geom.dvbar)?,
            lapv: lift(&geom.lapv)?,
            absdv2: lift(&geom.absdv2)?,
            unit: lift(&geom.unit)?,
            phip: lift(&geom.phip)?,
            phipbar: lift(&geom.phipbar)?,
            jac: lift(&geom.jac)?,
            inv4dv2: lift(&inv4dv2)?,
            l: geom.compute_l(&theta)?,
        })
    }

    pub fn theta(&self) -> &Jet {
        &self.theta
    }

    pub fn shape(&self) -> CollarShape {
        self.shape
    }

    pub fn zero(&self) -> CollarSeries {
        CollarSeries::zeros(self.shape)
    }

    /// `L = L̂₀ + ϑL̂₁` in the working ring.
    pub fn l(&self) -> &CollarSeries {
        &self.l
    }

    /// Lifts a plain series into the working ring.
    pub fn lift(&self, f: &CollarSeries) -> Result<CollarSeries> {
        if f.shape() == self.shape {
            Ok(f.clone())
        } else {
            f.promote(self.shape.jet)
        }
    }

    fn divide(&self, f: &CollarSeries, scale: f64, what: &str) -> Result<CollarSeries> {
        let tol = self.geom.vanish_tol() * scale.max(1.0);
        f.diag_divide(tol).map_err(|e| match e {
            Error::Numerical(msg) => Error::Numerical(format!("{what}: {msg}")),
            other => other,
        })
    }

    /// `𝐏_Ω[f]`, the bounded harmonic extension of `f|_Γ`.
    pub fn poisson(&self, f: &CollarSeries) -> CollarSeries {
        CollarSeries::poisson_extend(&f.diag_restrict(), f.shape())
    }

    /// `(𝐏_Ω − 𝐈)f / V`.
    pub fn p_minus_i_over_v(&self, f: &CollarSeries) -> Result<CollarSeries> {
        let g = self.poisson(f).sub(f)?;
        let q = self.divide(&g, f.diag_max(), "(P − I)f vanishing on Γ")?;
        q.mul(&self.unit)
    }

    /// `(∂f, ∂̄f)` by the chain rule through `φ′`.
    pub fn wirtinger(&self, f: &CollarSeries) -> Result<(CollarSeries, CollarSeries)> {
        Ok((self.phip.mul(&f.d_zeta())?, self.phipbar.mul(&f.d_eta())?))
    }

    /// `Δf = ∂∂̄f`.
    pub fn laplacian(&self, f: &CollarSeries) -> Result<CollarSeries> {
        self.jac.mul(&f.d_zeta().d_eta())
    }

    /// The `ϑ`-free part `Ŝ₀[f] = ∂V∂̄f + ∂̄V∂f + fΔV + |∂V|²(𝐏−𝐈)f/V`.
    pub fn op_s0(&self, f: &CollarSeries) -> Result<CollarSeries> {
        let q = self.p_minus_i_over_v(f)?;
        self.s0_with(f, &q)
    }

    fn s0_with(&self, f: &CollarSeries, q: &CollarSeries) -> Result<CollarSeries> {
        let (df, dbf) = self.wirtinger(f)?;
        self.dv
            .mul(&dbf)?
            .add(&self.dvbar.mul(&df)?)?
            .add(&f.mul(&self.lapv)?)?
            .add(&self.absdv2.mul(q)?)
    }

    /// `Ŝ₁[f] = ¼Δ((𝐏−𝐈)f/V)`.
    pub fn op_s1(&self, f: &CollarSeries) -> Result<CollarSeries> {
        Ok(self.laplacian(&self.p_minus_i_over_v(f)?)?.scale(0.25))
    }

    /// `S[f] = Ŝ₀[f] + ϑŜ₁[f]`.
    pub fn op_s(&self, f: &CollarSeries) -> Result<CollarSeries> {
        let f = self.lift(f)?;
        let q = self.p_minus_i_over_v(&f)?;
        let s0 = self.s0_with(&f, &q)?;
        let s1 = self.laplacian(&q)?.scale(0.25);
        s0.add(&s1.mul_jet(&self.theta))
    }

    /// `L + ϑS[f]`.
    pub fn argument(&self, f: &CollarSeries) -> Result<CollarSeries> {
        self.l.add(&self.op_s(f)?.mul_jet(&self.theta))
    }

    /// `log X` restricted to `Γ`, for `X` positive there.
    pub fn log_on_circle(&self, x: &CollarSeries) -> Result<CircleSeries<Jet>> {
        let lx = x.truncated(1).apply(AnalyticFn::Log).map_err(|e| match e {
            Error::Numerical(msg) => Error::Numerical(format!("L + ϑS[E] > 0 on Γ: {msg}")),
            other => other,
        })?;
        Ok(lx.diag_restrict())
    }

    /// The bracket `X − exp(𝐏_Ω[log X])` with `X = L + ϑS[f]`, together with `X`.
    pub fn bracket(&self, f: &CollarSeries) -> Result<(CollarSeries, CollarSeries)> {
        let x = self.argument(f)?;
        let logb = self.log_on_circle(&x)?;
        let y = CollarSeries::poisson_extend(&logb, self.shape).apply(AnalyticFn::Exp)?;
        let b = x.sub(&y)?;
        Ok((b, x))
    }

    /// `T[f] = {L + ϑS[f] − exp(𝐏_Ω[log(L + ϑS[f])])} / (4V|∂V|²)`.
    pub fn op_t(&self, f: &CollarSeries) -> Result<CollarSeries> {
        let (b, x) = self.bracket(f)?;
        let q = self.divide(&b, x.diag_max(), "bracket of T vanishing on Γ")?;
        q.mul(&self.unit)?.mul(&self.inv4dv2)
    }
}
