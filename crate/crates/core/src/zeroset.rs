//! Dyadic-cube covering of zero sets and the covering-count scaling law:
//! the zero set restricted to a level-k cube is coverable by
//! O(2^{(d-1)(r-k)}) cubes of side 2^{-r}.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::cube::DyadicCube;
use crate::error::{Error, Result};
use crate::grid::{for_each_index, GridBox, GridFunction};
use crate::util::fit_line;

const NEAR_ZERO_TOL: f64 = 1e-9;

/// Sign-change / near-zero test on the closed cube `[lo, lo+side]^d`,
/// sampling corners and center of the cube through `eval`. The near-zero
/// branch compares |f| against the sampled range, which scales like the
/// local gradient times the cube side.
fn cell_has_zero(eval: &dyn Fn(&[f64]) -> f64, lo: &[f64], side: f64) -> bool {
    let d = lo.len();
    let mut min_v = f64::INFINITY;
    let mut max_v = f64::NEG_INFINITY;
    let mut min_abs = f64::INFINITY;
    let mut x = vec![0.0f64; d];
    for corner in 0..(1usize << d) {
        for a in 0..d {
            x[a] = lo[a] + if corner >> a & 1 == 1 { side } else { 0.0 };
        }
        let v = eval(&x);
        min_v = min_v.min(v);
        max_v = max_v.max(v);
        min_abs = min_abs.min(v.abs());
    }
    for a in 0..d {
        x[a] = lo[a] + 0.5 * side;
    }
    let v = eval(&x);
    min_v = min_v.min(v);
    max_v = max_v.max(v);
    min_abs = min_abs.min(v.abs());
    (min_v <= 0.0 && max_v >= 0.0) || min_abs <= NEAR_ZERO_TOL * (max_v - min_v)
}

/// All level-r cubes inside the doubled cube 2·base whose corner/center
/// samples of `g` exhibit a sign change or a gradient-scaled near-zero, in
/// lexicographic order.
pub fn sign_change_cells(g: &GridFunction, base: &DyadicCube, r: i32) -> Result<Vec<DyadicCube>> {
    if r < base.j {
        return Err(Error::Parameter("target level must refine the base cube".into()));
    }
    let d = base.dim();
    let side_r = 2f64.powi(-r);
    let (lo_d, hi_d) = base.doubled_bounds();
    // Level-r cubes [side_r m, side_r (m+1)] fully inside the doubled base,
    // clipped to the sampled domain (outside it the zero extension would
    // flag every cell).
    let mut lo_m = vec![0i64; d];
    let mut counts = vec![0usize; d];
    for a in 0..d {
        let m_lo = (lo_d[a].max(g.domain().lo[a]) / side_r).ceil() as i64;
        let m_hi = (hi_d[a].min(g.domain().hi[a]) / side_r).floor() as i64 - 1;
        if m_hi < m_lo {
            return Ok(vec![]);
        }
        lo_m[a] = m_lo;
        counts[a] = (m_hi - m_lo + 1) as usize;
    }
    let eval = |x: &[f64]| g.evaluate(x);
    let mut out = Vec::new();
    for_each_index(&counts, |idx| {
        let m: Vec<i64> = idx.iter().zip(&lo_m).map(|(&i, &l)| l + i as i64).collect();
        let lo: Vec<f64> = m.iter().map(|&mi| side_r * mi as f64).collect();
        if cell_has_zero(&eval, &lo, side_r) {
            out.push(DyadicCube::new(r, m));
        }
    });
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct CoverRow {
    pub r: i32,
    pub count: usize,
    /// count / 2^{(d-1)(r-k)}.
    pub ratio: f64,
}

/// Outcome of the covering-law fit.
#[derive(Debug, Clone)]
pub enum CoverOutcome {
    /// No covering cells at the finest level: empty zero set (or zeros
    /// missed by the transversality-assuming detector).
    NoZeros,
    Law {
        /// Fitted exponent of log₂ count against r; the covering law bounds
        /// it by d - 1 for analytic zero sets.
        exponent: f64,
        /// Mean of count / 2^{(d-1)(r-k)} over the fitted levels.
        prefactor: f64,
        rows: Vec<CoverRow>,
    },
}

/// Counts level-r covering cells of the zero set of `callback` inside `box`,
/// by recursive subdivision from level k (a child cell is tested only when
/// its parent was flagged, so counts can grow by at most 2^d per level), and
/// fits log₂ count against r over `r_range`.
pub fn cover_scaling(
    callback: &(dyn Fn(&[f64]) -> f64 + Sync),
    domain: &GridBox,
    k: i32,
    r_range: (i32, i32),
) -> Result<CoverOutcome> {
    if r_range.1 - r_range.0 < 3 {
        return Err(Error::Parameter("covering fit needs at least 4 levels".into()));
    }
    if r_range.0 <= k {
        return Err(Error::Parameter("all fit levels must refine the base level".into()));
    }
    let d = domain.dim();
    // Level-k cells intersecting the box.
    let side_k = 2f64.powi(-k);
    let mut lo_m = vec![0i64; d];
    let mut counts = vec![0usize; d];
    for a in 0..d {
        let m_lo = (domain.lo[a] / side_k).floor() as i64;
        let m_hi = (domain.hi[a] / side_k).ceil() as i64 - 1;
        lo_m[a] = m_lo;
        counts[a] = (m_hi - m_lo + 1).max(0) as usize;
    }
    let mut flagged: BTreeSet<Vec<i64>> = BTreeSet::new();
    {
        let mut cells = Vec::new();
        for_each_index(&counts, |idx| {
            cells.push(idx.iter().zip(&lo_m).map(|(&i, &l)| l + i as i64).collect::<Vec<i64>>());
        });
        let hits: Vec<bool> = cells
            .par_iter()
            .map(|m| {
                let lo: Vec<f64> = m.iter().map(|&mi| side_k * mi as f64).collect();
                cell_has_zero(&|x| callback(x), &lo, side_k)
            })
            .collect();
        for (m, hit) in cells.into_iter().zip(hits) {
            if hit {
                flagged.insert(m);
            }
        }
    }
    let mut rows = Vec::new();
    for level in (k + 1)..=r_range.1 {
        let side = 2f64.powi(-level);
        let parents: Vec<Vec<i64>> = flagged.iter().cloned().collect();
        let mut children = Vec::with_capacity(parents.len() << d);
        for m in &parents {
            for corner in 0..(1usize << d) {
                let child: Vec<i64> =
                    m.iter().enumerate().map(|(a, &mi)| 2 * mi + (corner >> a & 1) as i64).collect();
                children.push(child);
            }
        }
        children.sort();
        let hits: Vec<bool> = children
            .par_iter()
            .map(|m| {
                let lo: Vec<f64> = m.iter().map(|&mi| side * mi as f64).collect();
                cell_has_zero(&|x| callback(x), &lo, side)
            })
            .collect();
        flagged = children
            .into_iter()
            .zip(hits)
            .filter_map(|(m, hit)| if hit { Some(m) } else { None })
            .collect();
        if level >= r_range.0 {
            let ratio = flagged.len() as f64 / 2f64.powi((d as i32 - 1) * (level - k));
            rows.push(CoverRow { r: level, count: flagged.len(), ratio });
        }
    }
    if rows.iter().any(|row| row.count == 0) {
        return Ok(CoverOutcome::NoZeros);
    }
    let xs: Vec<f64> = rows.iter().map(|row| row.r as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|row| (row.count as f64).log2()).collect();
    let (exponent, _) = fit_line(&xs, &ys);
    let prefactor = rows.iter().map(|row| row.ratio).sum::<f64>() / rows.len() as f64;
    Ok(CoverOutcome::Law { exponent, prefactor, rows })
}
