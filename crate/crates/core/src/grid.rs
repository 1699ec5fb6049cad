//! Sampled functions on uniform tensor grids with zero extension.

use crate::error::{Error, Result};

/// Axis-aligned box with positive volume.
#[derive(Debug, Clone, PartialEq)]
pub struct GridBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl GridBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::Parameter("box corners must share a positive dimension".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| !(a < b) || !a.is_finite() || !b.is_finite()) {
            return Err(Error::Parameter("box must have finite corners and positive volume".into()));
        }
        Ok(GridBox { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn len(&self, axis: usize) -> f64 {
        self.hi[axis] - self.lo[axis]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(&xi, (&lo, &hi))| xi >= lo && xi <= hi)
    }
}

/// A real-valued function sampled at the cell centers of a uniform tensor
/// grid, extended by zero outside its box.
#[derive(Debug, Clone)]
pub struct GridFunction {
    domain: GridBox,
    n: Vec<usize>,
    values: Vec<f64>,
}

impl GridFunction {
    /// Wrap precomputed cell-center samples. `values` is row-major with the
    /// last axis varying fastest.
    pub fn from_values(domain: GridBox, n: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if n.len() != domain.dim() || n.iter().any(|&k| k < 2) {
            return Err(Error::Parameter("need at least 2 samples per axis".into()));
        }
        let total: usize = n.iter().product();
        if values.len() != total {
            return Err(Error::Parameter(format!(
                "value count {} does not match grid size {}",
                values.len(),
                total
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { value: values[bad], point: vec![] });
        }
        Ok(GridFunction { domain, n, values })
    }

    pub fn domain(&self) -> &GridBox {
        &self.domain
    }

    pub fn n(&self) -> &[usize] {
        &self.n
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Grid spacing along one axis.
    pub fn dx(&self, axis: usize) -> f64 {
        self.domain.len(axis) / self.n[axis] as f64
    }

    /// Volume of one grid cell.
    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|a| self.dx(a)).product()
    }

    /// Coordinates of the cell center with the given multi-index.
    pub fn center(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter()
            .enumerate()
            .map(|(a, &i)| self.domain.lo[a] + (i as f64 + 0.5) * self.dx(a))
            .collect()
    }

    fn flat(&self, idx: &[usize]) -> usize {
        let mut f = 0;
        for (a, &i) in idx.iter().enumerate() {
            f = f * self.n[a] + i;
        }
        f
    }

    /// Apply a pointwise map to the samples.
    pub fn map(&self, op: impl Fn(f64) -> f64) -> GridFunction {
        GridFunction {
            domain: self.domain.clone(),
            n: self.n.clone(),
            values: self.values.iter().map(|&v| op(v)).collect(),
        }
    }

    /// Sample value at a signed multi-index; zero outside the grid.
    pub fn value_at(&self, idx: &[i64]) -> f64 {
        let mut f: usize = 0;
        for (a, &i) in idx.iter().enumerate() {
            if i < 0 || i >= self.n[a] as i64 {
                return 0.0;
            }
            f = f * self.n[a] + i as usize;
        }
        self.values[f]
    }

    /// Multilinear interpolation of the cell-center samples inside the box;
    /// zero outside (ZERO extension). Near the boundary the stencil is
    /// clamped and the weights extrapolate, so multilinear functions are
    /// reproduced exactly throughout the box.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        if !self.domain.contains(x) {
            return 0.0;
        }
        let d = self.dim();
        let mut base = vec![0usize; d];
        let mut frac = vec![0.0f64; d];
        for a in 0..d {
            let mut u = (x[a] - self.domain.lo[a]) / self.dx(a) - 0.5;
            // Snap to the lattice so sample points reproduce their stored
            // values bit-exactly despite the division above.
            let r = u.round();
            if (u - r).abs() < 1e-9 {
                u = r;
            }
            let i0 = (u.floor() as i64).clamp(0, self.n[a] as i64 - 2) as usize;
            base[a] = i0;
            frac[a] = u - i0 as f64;
        }
        let mut acc = 0.0;
        let mut idx = vec![0usize; d];
        for corner in 0..(1usize << d) {
            let mut w = 1.0;
            for a in 0..d {
                if corner >> a & 1 == 1 {
                    idx[a] = base[a] + 1;
                    w *= frac[a];
                } else {
                    idx[a] = base[a];
                    w *= 1.0 - frac[a];
                }
            }
            acc += w * self.values[self.flat(&idx)];
        }
        acc
    }
}

/// Iterate all multi-indices of a tensor grid in row-major order.
pub(crate) fn for_each_index(n: &[usize], mut body: impl FnMut(&[usize])) {
    let d = n.len();
    let mut idx = vec![0usize; d];
    loop {
        body(&idx);
        let mut a = d;
        loop {
            if a == 0 {
                return;
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

/// Sample a callback at the cell centers of a uniform grid over `domain`.
pub fn sample(
    callback: impl Fn(&[f64]) -> f64,
    domain: &GridBox,
    n: &[usize],
) -> Result<GridFunction> {
    if n.len() != domain.dim() || n.iter().any(|&k| k < 2) {
        return Err(Error::Parameter("need at least 2 samples per axis".into()));
    }
    let total: usize = n.iter().product();
    let mut values = Vec::with_capacity(total);
    let mut bad: Option<(f64, Vec<f64>)> = None;
    for_each_index(n, |idx| {
        let x: Vec<f64> = idx
            .iter()
            .enumerate()
            .map(|(a, &i)| domain.lo[a] + (i as f64 + 0.5) * domain.len(a) / n[a] as f64)
            .collect();
        let v = callback(&x);
        if !v.is_finite() && bad.is_none() {
            bad = Some((v, x.clone()));
        }
        values.push(v);
    });
    if let Some((value, point)) = bad {
        return Err(Error::NonFinite { value, point });
    }
    Ok(GridFunction { domain: domain.clone(), n: n.to_vec(), values })
}
