//! Discretized Morrey, Besov-Morrey and Triebel-Lizorkin-Morrey norms of
//! sampled functions, the truncation operators T⁺f = max(f,0) and Tf = |f|,
//! and desk-scale experiments probing their boundedness borders, the failure
//! of the Fubini property, a Hardy-type inequality, and the dyadic covering
//! law for zero sets of analytic functions.

// Parameter guards are written as negated comparisons (`!(p <= u)`) on
// purpose: they reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cube;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod norms_diff;
pub mod norms_spectral;
pub mod params;
pub mod testbank;
pub mod truncation;
pub mod util;
pub mod zeroset;

pub use cube::{cubes_at_level, DyadicCube};
pub use error::{Error, Result};
pub use grid::{sample, GridBox, GridFunction};
pub use norms_diff::{
    besov_morrey_norm, difference, lp_norm_on_bounds, lp_norm_on_cube, morrey_norm, tlm_norm,
};
pub use norms_spectral::{
    band, besov_morrey_norm_lp, build_partition, max_bands, tlm_norm_lp, FreqGrid, LPPartition,
};
pub use params::{NormResult, QuadratureSpec, SpaceParams};
pub use truncation::{truncate_abs, truncate_plus};
