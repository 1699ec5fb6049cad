//! Desk-scale experiments: the critical boundedness border, truncation-ratio
//! sweeps, divergence probes, the sawtooth log-divergence, the Fubini-style
//! comparison, and the Hardy-type inequality check.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{sample, GridBox, GridFunction};
use crate::norms_diff::{besov_morrey_norm, morrey_norm, tlm_norm};
use crate::params::{QuadratureSpec, SpaceParams};
use crate::testbank::{fubini_function, necessity_function, sawtooth_series, Callback};
use crate::truncation::{truncate_abs, truncate_plus};
use crate::util::fit_line;

/// The smoothness threshold min(1 + 1/p, 1 + d/u) above which the
/// truncation operators stop acting on the space.
pub fn critical_border(params: &SpaceParams) -> f64 {
    (1.0 + 1.0 / params.p).min(1.0 + params.d as f64 / params.u)
}

/// Which truncation operator a sweep applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncOp {
    /// T⁺f = max(f, 0)
    Plus,
    /// Tf = |f|
    Abs,
}

/// Which norm engine a sweep uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    Besov,
    Tlm,
}

/// One (function, refinement) cell of a truncation-ratio sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub fn_index: usize,
    pub n: usize,
    pub norm_f: f64,
    pub norm_tf: f64,
    /// norm(T f) / norm(f); `None` when norm(f) = 0.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// Whether the per-refinement maximum ratio grows by at most 5% from
    /// each refinement level to the next.
    pub stable: bool,
}

/// Ratio norm(T*f)/norm(f) for every function in the family at every
/// refinement level (samples per axis), using the difference-based norms.
#[allow(clippy::too_many_arguments)]
pub fn truncation_ratio_sweep(
    family: &[Callback],
    domain: &GridBox,
    params: &SpaceParams,
    which: TruncOp,
    space: SpaceKind,
    v: f64,
    n_order: u32,
    n_list: &[usize],
    spec: &QuadratureSpec,
) -> Result<SweepReport> {
    if family.is_empty() {
        return Err(Error::Parameter("empty function family".into()));
    }
    if n_list.is_empty() {
        return Err(Error::Parameter("need at least one refinement level".into()));
    }
    let d = params.d;
    let norm = |g: &GridFunction| -> Result<f64> {
        Ok(match space {
            SpaceKind::Besov => besov_morrey_norm(g, params, v, n_order, spec)?.total,
            SpaceKind::Tlm => tlm_norm(g, params, v, n_order, spec)?.total,
        })
    };
    let mut rows = Vec::new();
    for &n in n_list {
        for (fn_index, f) in family.iter().enumerate() {
            let g = sample(|x| f(x), domain, &vec![n; d])?;
            let tg = match which {
                TruncOp::Plus => truncate_plus(&g),
                TruncOp::Abs => truncate_abs(&g),
            };
            let norm_f = norm(&g)?;
            let norm_tf = norm(&tg)?;
            let ratio = if norm_f > 0.0 { Some(norm_tf / norm_f) } else { None };
            rows.push(SweepRow { fn_index, n, norm_f, norm_tf, ratio });
        }
    }
    let max_per_n: Vec<f64> = n_list
        .iter()
        .map(|&n| {
            rows.iter()
                .filter(|r| r.n == n)
                .filter_map(|r| r.ratio)
                .fold(0.0f64, f64::max)
        })
        .collect();
    let stable = max_per_n.windows(2).all(|w| w[1] <= w[0] * 1.05);
    Ok(SweepReport { rows, stable })
}

/// Outcome of the per-level divergence probe.
#[derive(Debug, Clone)]
pub enum DivergenceOutcome {
    /// Least-squares fit of log₂ A_j against j; a positive slope is
    /// unboundedness evidence.
    Slope {
        slope: f64,
        intercept: f64,
        /// RMS fit residual divided by the fitted range.
        residual: f64,
        rows: Vec<(i32, f64)>,
    },
    /// s >= 1 + 1/p: the x₁ integral itself diverges at every level.
    DivergentIntegral,
}

/// Per-dyadic-level lower-bound quantity
/// A_j = 2^{-jd(1/u-1/p)} · 2^{-j(d-1)/p} · (∫_0^{2^{-j}} f(x₁)^{(1-s)p} dx₁)^{1/p}
/// for the odd necessity probe, with the x₁ integral evaluated by a fixed
/// per-level midpoint rule (the integrand is homogeneous, so the quadrature
/// bias is an exact constant factor across levels and cancels in the slope).
pub fn divergence_probe(params: &SpaceParams, j_range: (i32, i32)) -> Result<DivergenceOutcome> {
    params.validate()?;
    if j_range.1 - j_range.0 < 2 {
        return Err(Error::Parameter("divergence probe needs at least 3 levels".into()));
    }
    let (s, p, u, d) = (params.s, params.p, params.u, params.d as f64);
    let alpha = (1.0 - s) * p;
    if alpha <= -1.0 {
        return Ok(DivergenceOutcome::DivergentIntegral);
    }
    let f = necessity_function(params.d, s);
    let nodes = 2048usize;
    let mut rows = Vec::new();
    for j in j_range.0..=j_range.1 {
        let side = 2f64.powi(-j);
        let h = side / nodes as f64;
        let mut point = vec![0.0f64; params.d];
        let mut integral = 0.0;
        for i in 0..nodes {
            point[0] = (i as f64 + 0.5) * h;
            integral += f(&point).powf(alpha);
        }
        integral *= h;
        let a_j = 2f64.powf(-(j as f64) * d * (1.0 / u - 1.0 / p))
            * 2f64.powf(-(j as f64) * (d - 1.0) / p)
            * integral.powf(1.0 / p);
        rows.push((j, a_j.log2()));
    }
    let xs: Vec<f64> = rows.iter().map(|&(j, _)| j as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|&(_, y)| y).collect();
    let (slope, intercept) = fit_line(&xs, &ys);
    let fitted: Vec<f64> = xs.iter().map(|&x| slope * x + intercept).collect();
    let rms = (ys.iter().zip(&fitted).map(|(y, f)| (y - f) * (y - f)).sum::<f64>()
        / ys.len() as f64)
        .sqrt();
    let range = fitted.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
        - fitted.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let residual = if range > 0.0 { rms / range } else { rms };
    Ok(DivergenceOutcome::Slope { slope, intercept, residual, rows })
}

/// Fit of the sawtooth quantity for one partial sum length.
#[derive(Debug, Clone)]
pub struct SawtoothRow {
    pub j_terms: u32,
    /// Coefficient of log₂(1/t) in the fit Q(t) ≈ c1·log₂(1/t) + c2.
    pub c1: f64,
    pub c2: f64,
    /// RMS fit residual divided by the fitted range.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct SawtoothReport {
    pub rows: Vec<SawtoothRow>,
    /// (J, t, Q(t)) samples underlying the fits.
    pub points: Vec<(u32, f64, f64)>,
}

/// Evaluates Q(t) = t^{-1-1/u} · t^{1/u-1/p} (∫_0^t |g_J(x)|^p dx)^{1/p}
/// on log-spaced t nodes for each sawtooth partial sum, and fits
/// Q(t) ≈ c1·log₂(1/t) + c2. Logarithmic growth (c1 > 0, small residual) as
/// t ↓ 0 is the divergence evidence.
pub fn sawtooth_probe(
    p: f64,
    u: f64,
    j_list: &[u32],
    t_range: (f64, f64),
    t_count: usize,
) -> Result<SawtoothReport> {
    if !(p >= 1.0 && p <= u) {
        return Err(Error::Parameter("need 1 <= p <= u".into()));
    }
    if !(t_range.0 > 0.0 && t_range.0 < t_range.1 && t_range.1 <= 1.0) {
        return Err(Error::Parameter("need 0 < t_min < t_max <= 1".into()));
    }
    if t_count < 4 {
        return Err(Error::Parameter("need at least 4 t nodes".into()));
    }
    let quad_nodes = 4096usize;
    let ratio = (t_range.1 / t_range.0).powf(1.0 / (t_count - 1) as f64);
    let ts: Vec<f64> = (0..t_count).map(|i| t_range.0 * ratio.powi(i as i32)).collect();
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for &j_terms in j_list {
        let g = sawtooth_series(j_terms);
        let qs: Vec<f64> = ts
            .par_iter()
            .map(|&t| {
                let h = t / quad_nodes as f64;
                let integral: f64 = (0..quad_nodes)
                    .map(|i| g(&[(i as f64 + 0.5) * h]).abs().powf(p))
                    .sum::<f64>()
                    * h;
                t.powf(-1.0 - 1.0 / u) * t.powf(1.0 / u - 1.0 / p) * integral.powf(1.0 / p)
            })
            .collect();
        let xs: Vec<f64> = ts.iter().map(|&t| (1.0 / t).log2()).collect();
        let (c1, c2) = fit_line(&xs, &qs);
        let fitted: Vec<f64> = xs.iter().map(|&x| c1 * x + c2).collect();
        let rms = (qs.iter().zip(&fitted).map(|(y, f)| (y - f) * (y - f)).sum::<f64>()
            / qs.len() as f64)
            .sqrt();
        let range = fitted.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
            - fitted.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        let residual = if range > 0.0 { rms / range } else { rms };
        for (&t, &q) in ts.iter().zip(&qs) {
            points.push((j_terms, t, q));
        }
        rows.push(SawtoothRow { j_terms, c1, c2, residual });
    }
    Ok(SawtoothReport { rows, points })
}

/// Result of the Fubini-property comparison.
#[derive(Debug, Clone)]
pub struct FubiniReport {
    /// Log-log slope of the iterated (Fubini-style) quantity against t.
    pub fubini_slope: f64,
    /// (t, F(t)) samples of the iterated quantity.
    pub fubini_points: Vec<(f64, f64)>,
    /// (box scale, direct norm) samples under box enlargement.
    pub direct_values: Vec<(f64, f64)>,
    /// Maximum relative change of the direct norm against its first value.
    pub direct_rel_change: f64,
}

/// Compares (a) the iterated-norm quantity of the cylinder function
/// restricted to x₁-intervals [0, t] — expected to grow like t^{1/u} — with
/// (b) the direct difference-characterization norm under box enlargement —
/// expected stable when p <= (d-1)u/d.
#[allow(clippy::too_many_arguments)]
pub fn fubini_comparison(
    d: usize,
    p: f64,
    u: f64,
    s: f64,
    q: f64,
    t_range: (f64, f64),
    t_count: usize,
    box_scales: &[f64],
) -> Result<FubiniReport> {
    if d < 2 {
        return Err(Error::Parameter("the comparison needs d >= 2".into()));
    }
    if !(p < u) {
        return Err(Error::Parameter("the failure mechanism needs p < u".into()));
    }
    if p > (d as f64 - 1.0) * u / d as f64 {
        return Err(Error::Parameter(format!(
            "hypothesis p <= (d-1)u/d violated: p={p}, u={u}, d={d}"
        )));
    }
    if !(t_range.0 > 0.0 && t_range.0 < t_range.1) || t_count < 4 {
        return Err(Error::Parameter("need 0 < t_min < t_max and >= 4 t nodes".into()));
    }
    if box_scales.len() < 2 {
        return Err(Error::Parameter("need at least two box scales".into()));
    }
    let g = fubini_function(d, p)?;

    // (a) Iterated quantity: inner one-dimensional Morrey norm lower bound on
    // [0, t] is t^{1/u-1/p} (∫_0^t |g(x₁,x')|^p dx₁)^{1/p}; the outer
    // (d-1)-dimensional Morrey norm is taken over a grid in x'.
    let n_prime = 192usize;
    let prime_box = GridBox::new(vec![-0.5; d - 1], vec![1.5; d - 1])?;
    let outer_spec = QuadratureSpec {
        t_min: 0.01,
        t_max: 1.0,
        t_count: 2,
        h_per_axis: 2,
        sup_levels: (-4, 8),
    };
    let x1_nodes = 128usize;
    let ratio = (t_range.1 / t_range.0).powf(1.0 / (t_count - 1) as f64);
    let ts: Vec<f64> = (0..t_count).map(|i| t_range.0 * ratio.powi(i as i32)).collect();
    let fubini_points: Result<Vec<(f64, f64)>> = ts
        .par_iter()
        .map(|&t| {
            let inner = |xp: &[f64]| -> f64 {
                let h = t / x1_nodes as f64;
                let mut point = vec![0.0f64; d];
                point[1..].copy_from_slice(xp);
                let integral: f64 = (0..x1_nodes)
                    .map(|i| {
                        point[0] = (i as f64 + 0.5) * h;
                        g(&point).abs().powf(p)
                    })
                    .sum::<f64>()
                    * h;
                t.powf(1.0 / u - 1.0 / p) * integral.powf(1.0 / p)
            };
            let grid = sample(inner, &prime_box, &vec![n_prime; d - 1])?;
            Ok((t, morrey_norm(&grid, p, u, &outer_spec)?.total))
        })
        .collect();
    let fubini_points = fubini_points?;
    let xs: Vec<f64> = fubini_points.iter().map(|&(t, _)| t.log2()).collect();
    let ys: Vec<f64> = fubini_points.iter().map(|&(_, f)| f.log2()).collect();
    let (fubini_slope, _) = fit_line(&xs, &ys);

    // (b) Direct norm under box enlargement, v = 1, a = 1.
    let params = SpaceParams::new(s, p, u, q, d)?;
    let n_order = (s.floor() as u32) + 1;
    let cells_per_unit = 16usize;
    let direct_spec = QuadratureSpec {
        t_min: 1.0 / 16.0,
        t_max: 1.0,
        t_count: 8,
        h_per_axis: 6,
        sup_levels: (-6, 4),
    };
    let mut direct_values = Vec::new();
    for &scale in box_scales {
        let mut lo = vec![-0.5; d];
        let mut hi = vec![1.5; d];
        lo[0] = 0.0;
        hi[0] = scale;
        let domain = GridBox::new(lo, hi)?;
        let mut n = vec![2 * cells_per_unit; d];
        n[0] = (scale * cells_per_unit as f64).round() as usize;
        let grid = sample(|x| g(x), &domain, &n)?;
        let norm = besov_morrey_norm(&grid, &params, 1.0, n_order, &direct_spec)?;
        direct_values.push((scale, norm.total));
    }
    let first = direct_values[0].1;
    let direct_rel_change = direct_values
        .iter()
        .map(|&(_, v)| ((v - first) / first).abs())
        .fold(0.0f64, f64::max);
    Ok(FubiniReport { fubini_slope, fubini_points, direct_values, direct_rel_change })
}

/// The interval I of the Hardy-type inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HardyInterval {
    Bounded(f64, f64),
    /// The model half line (0, ∞), truncated at `cutoff` for sampling.
    HalfLine { cutoff: f64 },
}

impl HardyInterval {
    fn bounds(&self) -> (f64, f64) {
        match *self {
            HardyInterval::Bounded(a, b) => (a, b),
            HardyInterval::HalfLine { cutoff } => (0.0, cutoff),
        }
    }

    fn contains(&self, x: f64) -> bool {
        match *self {
            HardyInterval::Bounded(a, b) => x > a && x < b,
            HardyInterval::HalfLine { .. } => x > 0.0,
        }
    }

    /// Distance to the complement of I, exact from the endpoints.
    fn dist_to_complement(&self, x: f64) -> f64 {
        match *self {
            HardyInterval::Bounded(a, b) => (x - a).min(b - x).max(0.0),
            HardyInterval::HalfLine { .. } => x.max(0.0),
        }
    }
}

#[derive(Debug, Clone)]
pub struct HardyRow {
    pub fn_index: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// lhs / rhs; `None` when both sides vanish.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct HardyReport {
    pub rows: Vec<HardyRow>,
    pub max_ratio: f64,
}

/// Two-sided evaluation of the Morrey Hardy-type inequality on I: LHS is the
/// Morrey-type norm of f(x)·dist(x, I^c)^{-s}, RHS the Morrey-type norm of
/// the difference functional
/// (∫_0^∞ r^{-sq} (∫_{-1<h<1, x-rh∈I} |f(x) - f(x-rh)| dh)^q dr/r)^{1/q}.
/// Returns the per-function ratios and their maximum. For bounded I every
/// family member must have vanishing mean on I.
#[allow(clippy::too_many_arguments)]
pub fn hardy_check(
    family: &[Callback],
    interval: HardyInterval,
    p: f64,
    u: f64,
    q: f64,
    s: f64,
    n: usize,
    spec: &QuadratureSpec,
) -> Result<HardyReport> {
    if !(p >= 1.0 && p <= u && u.is_finite()) {
        return Err(Error::Parameter("need 1 <= p <= u < infinity".into()));
    }
    if !(s > 0.0 && s < 1.0 / u) {
        return Err(Error::Parameter(format!("need 0 < s < 1/u, got s={s}, u={u}")));
    }
    if !(q >= 1.0) {
        return Err(Error::Parameter("need q >= 1".into()));
    }
    if family.is_empty() {
        return Err(Error::Parameter("empty function family".into()));
    }
    spec.validate()?;
    let (a, b) = interval.bounds();
    let domain = GridBox::new(vec![a], vec![b])?;
    let dx = (b - a) / n as f64;
    let (r_nodes, dr) = spec.t_nodes();
    let h_count = spec.h_per_axis;
    let h_step = 2.0 / h_count as f64;
    let mut rows = Vec::new();
    for (fn_index, f) in family.iter().enumerate() {
        if let HardyInterval::Bounded(..) = interval {
            let m = 1 << 16;
            let hq = (b - a) / m as f64;
            let (mut mean, mut mass) = (0.0, 0.0);
            for i in 0..m {
                let v = f(&[a + (i as f64 + 0.5) * hq]);
                mean += v;
                mass += v.abs();
            }
            mean *= hq;
            mass *= hq;
            if mean.abs() > 1e-8 * mass.max(1.0) {
                return Err(Error::Parameter(format!(
                    "family member {fn_index} has nonzero mean {mean} on the interval"
                )));
            }
        }
        let centers: Vec<f64> = (0..n).map(|i| a + (i as f64 + 0.5) * dx).collect();
        let lhs_values: Vec<f64> = centers
            .iter()
            .map(|&x| f(&[x]) * interval.dist_to_complement(x).powf(-s))
            .collect();
        let rhs_values: Vec<f64> = centers
            .par_iter()
            .map(|&x| {
                let per_r = r_nodes.iter().map(|&r| {
                    let mut inner = 0.0;
                    for i in 0..h_count {
                        let h = -1.0 + (i as f64 + 0.5) * h_step;
                        let y = x - r * h;
                        if interval.contains(y) {
                            inner += (f(&[x]) - f(&[y])).abs() * h_step;
                        }
                    }
                    (r, inner)
                });
                if q.is_infinite() {
                    per_r.map(|(r, inner)| r.powf(-s) * inner).fold(0.0f64, f64::max)
                } else {
                    per_r
                        .map(|(r, inner)| dr * (r.powf(-s) * inner).powf(q))
                        .sum::<f64>()
                        .powf(1.0 / q)
                }
            })
            .collect();
        let lhs_grid = GridFunction::from_values(domain.clone(), vec![n], lhs_values)?;
        let rhs_grid = GridFunction::from_values(domain.clone(), vec![n], rhs_values)?;
        let lhs = morrey_norm(&lhs_grid, p, u, spec)?.total;
        let rhs = morrey_norm(&rhs_grid, p, u, spec)?.total;
        let ratio = if rhs > 0.0 {
            Some(lhs / rhs)
        } else if lhs == 0.0 {
            None
        } else {
            return Err(Error::Numerical("vanishing difference functional with nonzero weighted norm".into()));
        };
        rows.push(HardyRow { fn_index, lhs, rhs, ratio });
    }
    let max_ratio = rows.iter().filter_map(|r| r.ratio).fold(0.0f64, f64::max);
    Ok(HardyReport { rows, max_ratio })
}
