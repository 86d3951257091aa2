//! The iteration `E_0 = T[0]`, `E_{j+1} = T[E_j]`.

use super::ops::{Operators, T_ORDER_COST};
use crate::error::{Error, Result};
use crate::geometry::DropletGeometry;
use crate::series::{Band, CollarSeries, Jet};
use num_complex::Complex64;

/// How many times to apply `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Iterations {
    /// Stop on plateau, cap or exhausted transversal order.
    Auto,
    /// Compute exactly `E_0, …, E_k`.
    Fixed(usize),
}

/// The norm used for residuals and budget diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    /// Coefficient majorant (an upper bound of the sup norm).
    Majorant,
    /// Sup over sample points of the fattened diagonal.
    Sampled,
}

impl NormKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "majorant" => Ok(NormKind::Majorant),
            "sampled" => Ok(NormKind::Sampled),
            _ => Err(Error::config("norm", format!("unknown norm '{s}'"))),
        }
    }

    pub fn eval(self, f: &CollarSeries, band: Band) -> f64 {
        match self {
            NormKind::Majorant => f.majorant(band),
            NormKind::Sampled => f.sampled_sup(band),
        }
    }
}

/// Parameters of [`iterate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EngineParams {
    /// `ϑ = 1/m` (jet order 0) or the formal generator.
    pub theta: Jet,
    pub iterations: Iterations,
    /// Upper bound on the iteration count in auto mode.
    pub cap: Option<usize>,
    /// Consecutive non-improvements that count as a plateau.
    pub plateau: usize,
    pub norm: NormKind,
    /// Band at which residuals are measured.
    pub band: Band,
    /// Smallest acceptable number of reliable transversal orders.
    pub min_valid: usize,
}

impl EngineParams {
    pub fn numeric(theta: f64, iterations: Iterations) -> Result<Self> {
        Ok(EngineParams {
            theta: Jet::constant(0, Complex64::new(theta, 0.0))?,
            iterations,
            cap: None,
            plateau: 3,
            norm: NormKind::Majorant,
            band: Band::reference(),
            min_valid: 4,
        })
    }

    pub fn formal(order: usize, iterations: Iterations) -> Result<Self> {
        Ok(EngineParams {
            theta: Jet::theta(order)?,
            ..EngineParams::numeric(0.0, iterations)?
        })
    }
}

/// Why the iteration stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    Requested,
    Plateau,
    Cap,
    OrderExhausted,
}

/// Iterates and their residuals.
#[derive(Clone, Debug)]
pub struct IterationLog {
    /// `E_0, E_1, …`.
    pub iterates: Vec<CollarSeries>,
    /// `residuals[j] = ‖T[E_j] − E_j‖ = ‖E_{j+1} − E_j‖`.
    pub residuals: Vec<f64>,
    /// Dropped Fourier mass of `E_{j+1}`.
    pub tails: Vec<f64>,
    /// `‖E_0‖` in the residual norm.
    pub e0_norm: f64,
    /// Index of the iterate with the smallest residual.
    pub best: usize,
    pub stop: StopReason,
}

impl IterationLog {
    pub fn last(&self) -> &CollarSeries {
        self.iterates.last().expect("at least E_0")
    }

    pub fn best_iterate(&self) -> &CollarSeries {
        &self.iterates[self.best]
    }
}

/// Runs the fixed-point iteration. Divergence (a residual ten times the best
/// one) is an error.
pub fn iterate(geom: &DropletGeometry, params: &EngineParams) -> Result<IterationLog> {
    let ops = Operators::new(geom, params.theta)?;
    iterate_with(&ops, params)
}

pub fn iterate_with(ops: &Operators<'_>, params: &EngineParams) -> Result<IterationLog> {
    let e0 = ops.op_t(&ops.zero())?;
    let e0_norm = params.norm.eval(&e0, params.band);
    let mut log = IterationLog {
        iterates: vec![e0],
        residuals: Vec::new(),
        tails: Vec::new(),
        e0_norm,
        best: 0,
        stop: StopReason::Requested,
    };
    let mut best = f64::INFINITY;
    let mut stale = 0;
    loop {
        let k = log.iterates.len() - 1;
        match params.iterations {
            Iterations::Fixed(n) if k >= n => {
                log.stop = StopReason::Requested;
                break;
            }
            Iterations::Auto if params.cap.is_some_and(|c| k >= c) => {
                log.stop = StopReason::Cap;
                break;
            }
            _ => {}
        }
        let cur = log.last();
        if cur.valid() < params.min_valid + T_ORDER_COST {
            if let Iterations::Fixed(n) = params.iterations {
                return Err(Error::Usage(format!(
                    "{n} iterations exhaust the transversal order after step {k}; raise N"
                )));
            }
            log.stop = StopReason::OrderExhausted;
            break;
        }
        let next = ops.op_t(cur)?;
        let r = params.norm.eval(&next.sub(cur)?, params.band);
        log.residuals.push(r);
        log.tails.push(next.tail());
        if !r.is_finite() || (r > 10.0 * best && params.iterations == Iterations::Auto) {
            return Err(Error::Iteration(format!(
                "residual diverged at step {k}: {r:.3e} against best {best:.3e}"
            )));
        }
        if r < best {
            best = r;
            log.best = k;
            stale = 0;
        } else {
            stale += 1;
        }
        log.iterates.push(next);
        if params.iterations == Iterations::Auto && stale >= params.plateau {
            log.stop = StopReason::Plateau;
            break;
        }
    }
    Ok(log)
}
