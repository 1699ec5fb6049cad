//! The truncation operators T⁺f = max(f, 0) and Tf = |f|, acting on samples.

use crate::grid::GridFunction;

/// T⁺: pointwise positive part at every sample.
pub fn truncate_plus(g: &GridFunction) -> GridFunction {
    g.map(|v| v.max(0.0))
}

/// T: pointwise absolute value at every sample.
pub fn truncate_abs(g: &GridFunction) -> GridFunction {
    g.map(f64::abs)
}
