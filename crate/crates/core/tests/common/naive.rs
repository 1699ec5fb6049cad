//! Independent naive reference implementation of the difference-based norms,
//! written with plain loops over every (cube, t, h) triple, used to validate
//! the production engine at small sizes.
#![allow(dead_code)]

use morrey_core::{QuadratureSpec, SpaceParams};

/// Brute-force Morrey norm: every doubled dyadic cube in a generous index
/// window, every grid cell, overlap computed per axis.
pub fn naive_morrey(
    vals: &[f64],
    lo: &[f64],
    hi: &[f64],
    n: &[usize],
    p: f64,
    u: f64,
    levels: (i32, i32),
) -> f64 {
    let d = lo.len();
    let dx: Vec<f64> = (0..d).map(|a| (hi[a] - lo[a]) / n[a] as f64).collect();
    let mut best = 0.0f64;
    for j in levels.0..=levels.1 {
        let side = 2f64.powi(-j);
        let vol = (2.0 * side).powi(d as i32);
        // Generous window of candidate indices per axis.
        let lo_m: Vec<i64> = (0..d).map(|a| (lo[a] / side).floor() as i64 - 2).collect();
        let hi_m: Vec<i64> = (0..d).map(|a| (hi[a] / side).ceil() as i64 + 2).collect();
        let mut m = lo_m.clone();
        'cubes: loop {
            // Doubled cube bounds.
            let c_lo: Vec<f64> = m.iter().map(|&mi| side * (mi as f64 - 0.5)).collect();
            let c_hi: Vec<f64> = m.iter().map(|&mi| side * (mi as f64 + 1.5)).collect();
            // Loop over every cell of the grid.
            let mut integral = 0.0;
            let mut idx = vec![0usize; d];
            'cells: loop {
                let mut w = 1.0;
                for a in 0..d {
                    let cell_lo = lo[a] + idx[a] as f64 * dx[a];
                    let cell_hi = cell_lo + dx[a];
                    let overlap = (c_hi[a].min(cell_hi) - c_lo[a].max(cell_lo)).max(0.0);
                    w *= overlap;
                }
                let mut flat = 0;
                for a in 0..d {
                    flat = flat * n[a] + idx[a];
                }
                integral += w * vals[flat].abs().powf(p);
                let mut a = d;
                loop {
                    if a == 0 {
                        break 'cells;
                    }
                    a -= 1;
                    idx[a] += 1;
                    if idx[a] < n[a] {
                        break;
                    }
                    idx[a] = 0;
                }
            }
            let value = vol.powf(1.0 / u - 1.0 / p) * integral.powf(1.0 / p);
            best = best.max(value);
            let mut a = d;
            loop {
                if a == 0 {
                    break 'cubes;
                }
                a -= 1;
                m[a] += 1;
                if m[a] <= hi_m[a] {
                    break;
                }
                m[a] = lo_m[a];
            }
        }
    }
    best
}

/// Snapped h-ball quadrature shifts, accumulated in first-seen order.
pub fn naive_shifts(t: f64, h_per_axis: usize, dx: &[f64]) -> Vec<(Vec<i64>, f64)> {
    let d = dx.len();
    let step = 2.0 * t / h_per_axis as f64;
    let w_cell = step.powi(d as i32);
    let mut out: Vec<(Vec<i64>, f64)> = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let h: Vec<f64> = idx.iter().map(|&i| -t + (i as f64 + 0.5) * step).collect();
        if h.iter().map(|&x| x * x).sum::<f64>() <= t * t {
            let shift: Vec<i64> = h.iter().zip(dx).map(|(&ha, &da)| (ha / da).round() as i64).collect();
            match out.iter_mut().find(|(s, _)| *s == shift) {
                Some((_, w)) => *w += w_cell,
                None => out.push((shift, w_cell)),
            }
        }
        let mut a = d;
        loop {
            if a == 0 {
                return out;
            }
            a -= 1;
            idx[a] += 1;
            if idx[a] < h_per_axis {
                break;
            }
            idx[a] = 0;
        }
    }
}

/// First iterated difference with an integer shift, zero outside the grid.
pub fn naive_difference(vals: &[f64], n: &[usize], shift: &[i64], order: u32) -> Vec<f64> {
    let d = n.len();
    let total: usize = n.iter().product();
    let get = |idx: &[i64]| -> f64 {
        let mut flat = 0usize;
        for a in 0..d {
            if idx[a] < 0 || idx[a] >= n[a] as i64 {
                return 0.0;
            }
            flat = flat * n[a] + idx[a] as usize;
        }
        vals[flat]
    };
    // Pascal-triangle coefficients with alternating signs.
    let mut binom = vec![1.0f64];
    for _ in 0..order {
        let mut next = vec![1.0];
        for w in binom.windows(2) {
            next.push(w[0] + w[1]);
        }
        next.push(1.0);
        binom = next;
    }
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; d];
    loop {
        let mut acc = 0.0;
        for (r, &c) in binom.iter().enumerate() {
            let probe: Vec<i64> =
                (0..d).map(|a| idx[a] as i64 + r as i64 * shift[a]).collect();
            let sign = if (order as usize - r).is_multiple_of(2) { 1.0 } else { -1.0 };
            acc += sign * c * get(&probe);
        }
        out.push(acc);
        let mut a = d;
        loop {
            if a == 0 {
                return out;
            }
            a -= 1;
            idx[a] += 1;
            if idx[a] < n[a] {
                break;
            }
            idx[a] = 0;
        }
    }
}

pub struct NaiveSetup {
    pub vals: Vec<f64>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub n: Vec<usize>,
    pub dx: Vec<f64>,
}

pub fn t_nodes(spec: &QuadratureSpec) -> (Vec<f64>, f64) {
    let a = spec.t_min.ln();
    let b = spec.t_max.ln();
    let dt = (b - a) / spec.t_count as f64;
    ((0..spec.t_count).map(|i| (a + (i as f64 + 0.5) * dt).exp()).collect(), dt)
}

pub fn naive_besov(setup: &NaiveSetup, params: &SpaceParams, v: f64, order: u32, spec: &QuadratureSpec) -> f64 {
    let base = naive_morrey(&setup.vals, &setup.lo, &setup.hi, &setup.n, params.p, params.u, spec.sup_levels);
    let (ts, dt) = t_nodes(spec);
    let total: usize = setup.n.iter().product();
    let d = params.d as f64;
    let mut sum = 0.0;
    for &t in &ts {
        let mut gt = vec![0.0f64; total];
        for (shift, w) in naive_shifts(t, spec.h_per_axis, &setup.dx) {
            let dv = naive_difference(&setup.vals, &setup.n, &shift, order);
            for (g, x) in gt.iter_mut().zip(&dv) {
                *g += w * x.abs().powf(v);
            }
        }
        for g in gt.iter_mut() {
            *g = g.powf(1.0 / v);
        }
        let m = naive_morrey(&gt, &setup.lo, &setup.hi, &setup.n, params.p, params.u, spec.sup_levels);
        sum += dt * (t.powf(-(params.s + d / v)) * m).powf(params.q);
    }
    base + sum.powf(1.0 / params.q)
}

pub fn naive_tlm(setup: &NaiveSetup, params: &SpaceParams, v: f64, order: u32, spec: &QuadratureSpec) -> f64 {
    let base = naive_morrey(&setup.vals, &setup.lo, &setup.hi, &setup.n, params.p, params.u, spec.sup_levels);
    let (ts, dt) = t_nodes(spec);
    let total: usize = setup.n.iter().product();
    let d = params.d as f64;
    let mut hx = vec![0.0f64; total];
    for &t in &ts {
        let mut gt = vec![0.0f64; total];
        for (shift, w) in naive_shifts(t, spec.h_per_axis, &setup.dx) {
            let dv = naive_difference(&setup.vals, &setup.n, &shift, order);
            for (g, x) in gt.iter_mut().zip(&dv) {
                *g += w * x.abs().powf(v);
            }
        }
        for (h, g) in hx.iter_mut().zip(&gt) {
            let b = (t.powf(-d) * g).powf(1.0 / v);
            *h += dt * (t.powf(-params.s) * b).powf(params.q);
        }
    }
    for h in hx.iter_mut() {
        *h = h.powf(1.0 / params.q);
    }
    base + naive_morrey(&hx, &setup.lo, &setup.hi, &setup.n, params.p, params.u, spec.sup_levels)
}

