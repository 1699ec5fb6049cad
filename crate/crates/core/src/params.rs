//! Parameter tuples and result records shared by the norm engines.

use crate::cube::DyadicCube;
use crate::error::{Error, Result};

/// The tuple (s, p, u, q, d) indexing a smoothness-Morrey space.
/// `q` may be `f64::INFINITY`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceParams {
    pub s: f64,
    pub p: f64,
    pub u: f64,
    pub q: f64,
    pub d: usize,
}

impl SpaceParams {
    pub fn new(s: f64, p: f64, u: f64, q: f64, d: usize) -> Result<Self> {
        let sp = SpaceParams { s, p, u, q, d };
        sp.validate()?;
        Ok(sp)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s > 0.0 && self.s.is_finite()) {
            return Err(Error::Parameter(format!("smoothness s must be positive, got {}", self.s)));
        }
        if !(self.p >= 1.0 && self.p <= self.u && self.u.is_finite()) {
            return Err(Error::Parameter(format!(
                "need 1 <= p <= u < infinity, got p={}, u={}",
                self.p, self.u
            )));
        }
        if !(self.q >= 1.0) {
            return Err(Error::Parameter(format!("summation exponent q must be >= 1, got {}", self.q)));
        }
        if self.d == 0 {
            return Err(Error::Parameter("dimension must be at least 1".into()));
        }
        Ok(())
    }
}

/// Discretization knobs: log-spaced t-integral on [t_min, t_max], uniform
/// h-ball quadrature resolution, and the dyadic level range of the Morrey
/// supremum family.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub t_count: usize,
    pub h_per_axis: usize,
    pub sup_levels: (i32, i32),
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_min > 0.0 && self.t_min < self.t_max && self.t_max.is_finite()) {
            return Err(Error::Parameter(format!(
                "need 0 < t_min < t_max < infinity, got [{}, {}]",
                self.t_min, self.t_max
            )));
        }
        if self.t_count < 2 {
            return Err(Error::Parameter("t_count must be at least 2".into()));
        }
        if self.h_per_axis < 2 {
            return Err(Error::Parameter("h_per_axis must be at least 2".into()));
        }
        if self.sup_levels.0 > self.sup_levels.1 {
            return Err(Error::EmptyLevelRange);
        }
        Ok(())
    }

    /// Log-midpoint nodes of the t-integral together with the common
    /// log-measure weight d(ln t).
    pub fn t_nodes(&self) -> (Vec<f64>, f64) {
        let lo = self.t_min.ln();
        let hi = self.t_max.ln();
        let dt = (hi - lo) / self.t_count as f64;
        let nodes = (0..self.t_count)
            .map(|i| (lo + (i as f64 + 0.5) * dt).exp())
            .collect();
        (nodes, dt)
    }
}

/// A computed norm with its Morrey-base / difference-part breakdown and the
/// cube witnessing the Morrey supremum of the base part.
#[derive(Debug, Clone)]
pub struct NormResult {
    pub total: f64,
    pub morrey_part: f64,
    pub difference_part: f64,
    pub witness: DyadicCube,
    pub spec: QuadratureSpec,
}
