//! Morrey norms and difference-characterization norms for Besov-Morrey and
//! Triebel-Lizorkin-Morrey spaces.
//!
//! The supremum over balls in the Morrey norm is taken over the finite family
//! of doubled dyadic cubes 2Q_{j,m} with j in a configured level range; this
//! changes values only by a dimensional constant, and every check built on
//! top is ratio- or slope-based.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cube::{cubes_at_level, DyadicCube};
use crate::error::{Error, Result};
use crate::grid::{for_each_index, GridFunction};
use crate::params::{NormResult, QuadratureSpec, SpaceParams};
use crate::util::binomial;

/// |x|^p with fast paths for the common exponents.
#[inline]
fn pow_abs(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x.abs()
    } else if p == 2.0 {
        x * x
    } else {
        x.abs().powf(p)
    }
}

/// Integral of the piecewise-constant density `pw` (one value per grid cell)
/// over an axis-aligned box, cells clipped to the box exactly.
fn box_integral(g: &GridFunction, pw: &[f64], lo: &[f64], hi: &[f64]) -> f64 {
    let d = g.dim();
    let mut axis_weights: Vec<(usize, Vec<f64>)> = Vec::with_capacity(d);
    for a in 0..d {
        let dx = g.dx(a);
        let b_lo = g.domain().lo[a];
        let c_lo = lo[a].max(b_lo);
        let c_hi = hi[a].min(g.domain().hi[a]);
        if c_lo >= c_hi {
            return 0.0;
        }
        let k_lo = (((c_lo - b_lo) / dx).floor() as i64).clamp(0, g.n()[a] as i64 - 1) as usize;
        let k_hi = (((c_hi - b_lo) / dx).ceil() as i64).clamp(1, g.n()[a] as i64) as usize;
        let mut w = Vec::with_capacity(k_hi - k_lo);
        for k in k_lo..k_hi {
            let cell_lo = b_lo + k as f64 * dx;
            let cell_hi = cell_lo + dx;
            w.push((c_hi.min(cell_hi) - c_lo.max(cell_lo)).max(0.0));
        }
        axis_weights.push((k_lo, w));
    }
    // Recurse over axes, accumulating the flat index and the weight product.
    fn rec(
        g: &GridFunction,
        pw: &[f64],
        aw: &[(usize, Vec<f64>)],
        axis: usize,
        flat: usize,
        weight: f64,
    ) -> f64 {
        let (k0, ref ws) = aw[axis];
        let stride_base = flat * g.n()[axis];
        if axis + 1 == aw.len() {
            let mut s = 0.0;
            for (off, &w) in ws.iter().enumerate() {
                s += w * pw[stride_base + k0 + off];
            }
            s * weight
        } else {
            let mut s = 0.0;
            for (off, &w) in ws.iter().enumerate() {
                s += rec(g, pw, aw, axis + 1, stride_base + k0 + off, weight * w);
            }
            s
        }
    }
    rec(g, pw, &axis_weights, 0, 0, 1.0)
}

/// Midpoint-quadrature value of (∫_{box ∩ domain} |f|^p dx)^{1/p} for an
/// arbitrary axis-aligned box, boundary cells clipped exactly.
pub fn lp_norm_on_bounds(g: &GridFunction, p: f64, lo: &[f64], hi: &[f64]) -> f64 {
    let pw: Vec<f64> = g.values().iter().map(|&v| pow_abs(v, p)).collect();
    box_integral(g, &pw, lo, hi).powf(1.0 / p)
}

/// (∫_{Q ∩ domain} |f|^p dx)^{1/p} over the cube itself (not its doubling).
pub fn lp_norm_on_cube(g: &GridFunction, p: f64, cube: &DyadicCube) -> f64 {
    let (lo, hi) = cube.bounds();
    lp_norm_on_bounds(g, p, &lo, &hi)
}

/// Discretized Morrey norm: max over levels j in `spec.sup_levels` and cubes
/// 2Q_{j,m} of |2Q|^{1/u-1/p} (∫_{2Q}|f|^p)^{1/p}, with the achieving cube
/// recorded (first in (j, lexicographic m) order on ties).
pub fn morrey_norm(g: &GridFunction, p: f64, u: f64, spec: &QuadratureSpec) -> Result<NormResult> {
    if !(p >= 1.0 && p <= u && u.is_finite()) {
        return Err(Error::Parameter(format!("need 1 <= p <= u < infinity, got p={p}, u={u}")));
    }
    spec.validate()?;
    let pw: Vec<f64> = g.values().iter().map(|&v| pow_abs(v, p)).collect();
    let exponent = 1.0 / u - 1.0 / p;
    let levels: Vec<i32> = (spec.sup_levels.0..=spec.sup_levels.1).collect();
    let per_level: Vec<Option<(f64, DyadicCube)>> = levels
        .par_iter()
        .map(|&j| {
            let mut best: Option<(f64, DyadicCube)> = None;
            for cube in cubes_at_level(g.domain(), j) {
                let (lo, hi) = cube.doubled_bounds();
                let integral = box_integral(g, &pw, &lo, &hi);
                let value = cube.doubled_volume().powf(exponent) * integral.powf(1.0 / p);
                if best.as_ref().is_none_or(|(b, _)| value > *b) {
                    best = Some((value, cube));
                }
            }
            best
        })
        .collect();
    let mut best: Option<(f64, DyadicCube)> = None;
    for cand in per_level.into_iter().flatten() {
        if best.as_ref().is_none_or(|(b, _)| cand.0 > *b) {
            best = Some(cand);
        }
    }
    let (total, witness) = best.ok_or(Error::EmptyLevelRange)?;
    Ok(NormResult {
        total,
        morrey_part: total,
        difference_part: 0.0,
        witness,
        spec: spec.clone(),
    })
}

/// Samples of the N-th iterated difference with an integer lattice shift:
/// (Δ^N_k f)[i] = Σ_r (-1)^{N-r} C(N,r) f[i + r k], zero outside the grid.
fn difference_shift_values(g: &GridFunction, shift: &[i64], n_order: u32) -> Vec<f64> {
    let coeffs: Vec<f64> = (0..=n_order)
        .map(|r| if (n_order - r).is_multiple_of(2) { binomial(n_order, r) } else { -binomial(n_order, r) })
        .collect();
    let d = g.dim();
    let total: usize = g.n().iter().product();
    let mut out = Vec::with_capacity(total);
    let mut probe = vec![0i64; d];
    for_each_index(g.n(), |idx| {
        let mut acc = 0.0;
        for (r, &c) in coeffs.iter().enumerate() {
            for a in 0..d {
                probe[a] = idx[a] as i64 + r as i64 * shift[a];
            }
            acc += c * g.value_at(&probe);
        }
        out.push(acc);
    });
    out
}

/// The N-th iterated difference Δ^N_h f sampled on g's grid with ZERO
/// extension. The step h is snapped per axis to the nearest integer multiple
/// of the grid spacing, so that differences act exactly on the samples (this
/// keeps pointwise inequalities between |Δ f| and |Δ |f|| exact).
pub fn difference(g: &GridFunction, h: &[f64], n_order: u32) -> Result<GridFunction> {
    if n_order < 1 {
        return Err(Error::Parameter("difference order must be at least 1".into()));
    }
    if h.len() != g.dim() {
        return Err(Error::Parameter("step dimension mismatch".into()));
    }
    let shift: Vec<i64> = h.iter().enumerate().map(|(a, &ha)| (ha / g.dx(a)).round() as i64).collect();
    let values = difference_shift_values(g, &shift, n_order);
    GridFunction::from_values(g.domain().clone(), g.n().to_vec(), values)
}

/// Quadrature of the ball B(0,t): uniform tensor midpoints over [-t,t]^d,
/// points outside the ball discarded, each carrying the cell volume as
/// weight. Nodes are snapped to the sample lattice and aggregated per
/// integer shift, in deterministic (lexicographic) order.
fn ball_shifts(g: &GridFunction, t: f64, h_per_axis: usize) -> Vec<(Vec<i64>, f64)> {
    let d = g.dim();
    let step = 2.0 * t / h_per_axis as f64;
    let w_cell = step.powi(d as i32);
    let mut agg: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
    let dims = vec![h_per_axis; d];
    for_each_index(&dims, |idx| {
        let h: Vec<f64> = idx.iter().map(|&i| -t + (i as f64 + 0.5) * step).collect();
        let r2: f64 = h.iter().map(|&x| x * x).sum();
        if r2 <= t * t {
            let shift: Vec<i64> =
                h.iter().enumerate().map(|(a, &ha)| (ha / g.dx(a)).round() as i64).collect();
            *agg.entry(shift).or_insert(0.0) += w_cell;
        }
    });
    agg.into_iter().collect()
}

fn check_diff_params(
    params: &SpaceParams,
    v: f64,
    n_order: u32,
    spec: &QuadratureSpec,
) -> Result<f64> {
    params.validate()?;
    spec.validate()?;
    if !(v >= 1.0) {
        return Err(Error::Parameter(format!("inner exponent v must be >= 1, got {v}")));
    }
    let inv_v = if v.is_infinite() { 0.0 } else { 1.0 / v };
    if (n_order as f64) <= params.s {
        return Err(Error::Parameter(format!(
            "difference order N={n_order} must exceed smoothness s={}",
            params.s
        )));
    }
    Ok(inv_v)
}

/// The difference-characterization Besov-Morrey norm ‖f‖^{(v,a)} with
/// a = t_max: Morrey base plus
/// (∫ t^{-sq-dq/v} ‖(∫_{B(0,t)}|Δ^N_h f|^v dh)^{1/v}‖_{ℳ^u_p}^q dt/t)^{1/q}.
/// q = ∞ and v = ∞ are realized as maxima over the node sets.
pub fn besov_morrey_norm(
    g: &GridFunction,
    params: &SpaceParams,
    v: f64,
    n_order: u32,
    spec: &QuadratureSpec,
) -> Result<NormResult> {
    let inv_v = check_diff_params(params, v, n_order, spec)?;
    let d = params.d as f64;
    if params.s <= d * (1.0 / params.p - inv_v).max(0.0) {
        return Err(Error::Parameter(format!(
            "characterization needs s > d*max(0, 1/p - 1/v); s={} is too small",
            params.s
        )));
    }
    let base = morrey_norm(g, params.p, params.u, spec)?;
    let (t_nodes, dt) = spec.t_nodes();
    let per_t: Result<Vec<f64>> = t_nodes
        .par_iter()
        .map(|&t| {
            let inner = inner_modulus_values(g, t, v, n_order, spec);
            let gt = GridFunction::from_values(g.domain().clone(), g.n().to_vec(), inner)?;
            Ok(morrey_norm(&gt, params.p, params.u, spec)?.total)
        })
        .collect();
    let per_t = per_t?;
    let difference_part = if params.q.is_infinite() {
        t_nodes
            .iter()
            .zip(&per_t)
            .map(|(&t, &m)| t.powf(-(params.s + d * inv_v)) * m)
            .fold(0.0f64, f64::max)
    } else {
        let q = params.q;
        t_nodes
            .iter()
            .zip(&per_t)
            .map(|(&t, &m)| dt * (t.powf(-(params.s + d * inv_v)) * m).powf(q))
            .sum::<f64>()
            .powf(1.0 / q)
    };
    Ok(NormResult {
        total: base.total + difference_part,
        morrey_part: base.total,
        difference_part,
        witness: base.witness,
        spec: spec.clone(),
    })
}

/// Samples of (∫_{B(0,t)} |Δ^N_h f|^v dh)^{1/v} (sup over h when v = ∞).
fn inner_modulus_values(
    g: &GridFunction,
    t: f64,
    v: f64,
    n_order: u32,
    spec: &QuadratureSpec,
) -> Vec<f64> {
    let total: usize = g.n().iter().product();
    let shifts = ball_shifts(g, t, spec.h_per_axis);
    if v.is_infinite() {
        let mut acc = vec![0.0f64; total];
        for (shift, _) in &shifts {
            let dv = difference_shift_values(g, shift, n_order);
            for (a, x) in acc.iter_mut().zip(&dv) {
                *a = a.max(x.abs());
            }
        }
        acc
    } else {
        let mut acc = vec![0.0f64; total];
        for (shift, w) in &shifts {
            let dv = difference_shift_values(g, shift, n_order);
            for (a, x) in acc.iter_mut().zip(&dv) {
                *a += w * pow_abs(*x, v);
            }
        }
        acc.iter().map(|&a| a.powf(1.0 / v)).collect()
    }
}

/// The difference-characterization Triebel-Lizorkin-Morrey norm ‖f‖^{(v,a)}:
/// Morrey base plus ‖(∫ t^{-sq}(t^{-d}∫_{B(0,t)}|Δ^N_h f|^v dh)^{q/v}
/// dt/t)^{1/q}‖_{ℳ^u_p}, the t-integral sitting inside the Morrey norm.
pub fn tlm_norm(
    g: &GridFunction,
    params: &SpaceParams,
    v: f64,
    n_order: u32,
    spec: &QuadratureSpec,
) -> Result<NormResult> {
    let inv_v = check_diff_params(params, v, n_order, spec)?;
    let d = params.d as f64;
    let inv_q = if params.q.is_infinite() { 0.0 } else { 1.0 / params.q };
    let floor = d * (1.0 / params.p - inv_v).max(inv_q - inv_v).max(0.0);
    if params.s <= floor {
        return Err(Error::Parameter(format!(
            "characterization needs s > d*max(0, 1/p - 1/v, 1/q - 1/v); s={} is too small",
            params.s
        )));
    }
    let base = morrey_norm(g, params.p, params.u, spec)?;
    let (t_nodes, dt) = spec.t_nodes();
    let total: usize = g.n().iter().product();
    // Per t node: samples of (t^{-d} ∫_{B(0,t)}|Δ^N_h f|^v dh)^{1/v}, with the
    // usual modification sup_h |Δ^N_h f| when v = ∞.
    let per_t: Vec<Vec<f64>> = t_nodes
        .par_iter()
        .map(|&t| {
            let inner = inner_modulus_values(g, t, v, n_order, spec);
            if v.is_infinite() {
                inner
            } else {
                let scale = t.powf(-d * inv_v);
                inner.iter().map(|&x| scale * x).collect()
            }
        })
        .collect();
    let mut combined = vec![0.0f64; total];
    if params.q.is_infinite() {
        for (bt, &t) in per_t.iter().zip(&t_nodes) {
            let ts = t.powf(-params.s);
            for (c, &b) in combined.iter_mut().zip(bt) {
                *c = c.max(ts * b);
            }
        }
    } else {
        let q = params.q;
        for (bt, &t) in per_t.iter().zip(&t_nodes) {
            let ts = t.powf(-params.s);
            for (c, &b) in combined.iter_mut().zip(bt) {
                *c += dt * (ts * b).powf(q);
            }
        }
        for c in combined.iter_mut() {
            *c = c.powf(1.0 / q);
        }
    }
    let hg = GridFunction::from_values(g.domain().clone(), g.n().to_vec(), combined)?;
    let difference_part = morrey_norm(&hg, params.p, params.u, spec)?.total;
    Ok(NormResult {
        total: base.total + difference_part,
        morrey_part: base.total,
        difference_part,
        witness: base.witness,
        spec: spec.clone(),
    })
}
