//! Littlewood-Paley definition norms via the discrete Fourier transform,
//! used as an independent cross-check of the difference-based engine.
//!
//! The whole-space Fourier transform is replaced by a periodic DFT on the
//! sampled box, zero-padded by a configurable factor to suppress wrap-around.

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::grid::{for_each_index, GridFunction};
use crate::norms_diff::morrey_norm;
use crate::params::{NormResult, QuadratureSpec, SpaceParams};
use crate::util::smooth_step_down;

/// Frequency lattice of a zero-padded periodic grid: mode index k maps to
/// the angular frequency 2π k / L per axis (k signed around the Nyquist).
#[derive(Debug, Clone)]
pub struct FreqGrid {
    pub n: Vec<usize>,
    pub box_len: Vec<f64>,
}

impl FreqGrid {
    /// Frequency lattice for `g` padded by `pad_factor` (>= 1) per axis.
    pub fn for_grid(g: &GridFunction, pad_factor: f64) -> Result<FreqGrid> {
        if !(pad_factor >= 1.0) {
            return Err(Error::Parameter("pad factor must be at least 1".into()));
        }
        let n: Vec<usize> =
            g.n().iter().map(|&k| ((k as f64 * pad_factor).ceil() as usize).max(k)).collect();
        let box_len: Vec<f64> = n.iter().enumerate().map(|(a, &k)| k as f64 * g.dx(a)).collect();
        Ok(FreqGrid { n, box_len })
    }

    /// Angular frequency vector of one lattice multi-index.
    pub fn xi(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter()
            .enumerate()
            .map(|(a, &k)| {
                let signed = if k <= self.n[a] / 2 { k as i64 } else { k as i64 - self.n[a] as i64 };
                2.0 * std::f64::consts::PI * signed as f64 / self.box_len[a]
            })
            .collect()
    }

    /// Largest angular frequency resolved along every axis (Nyquist).
    pub fn max_resolved(&self) -> f64 {
        (0..self.n.len())
            .map(|a| std::f64::consts::PI * self.n[a] as f64 / self.box_len[a])
            .fold(f64::INFINITY, f64::min)
    }
}

/// Largest usable band count for a frequency lattice.
pub fn max_bands(freq_grid: &FreqGrid) -> usize {
    freq_grid.max_resolved().log2().floor().max(1.0) as usize
}

/// A smooth dyadic decomposition of unity sampled on a frequency lattice:
/// φ_0 = 1 on |ξ| <= 1 and 0 on |ξ| >= 3/2; φ_k(ξ) = φ_0(2^{-k}ξ) −
/// φ_0(2^{-k+1}ξ) is supported in the annulus 2^{k-1} <= |ξ| <= 3·2^{k-1}.
#[derive(Debug, Clone)]
pub struct LPPartition {
    pub k_bands: usize,
    pub phi: Vec<Vec<f64>>,
    pub freq_grid: FreqGrid,
}

fn phi0_profile(r: f64) -> f64 {
    smooth_step_down(r, 1.0, 1.5)
}

/// Build the partition with bands 0..=K on the given frequency lattice.
pub fn build_partition(k_bands: usize, freq_grid: &FreqGrid) -> Result<LPPartition> {
    if k_bands < 1 {
        return Err(Error::Parameter("need at least one frequency band".into()));
    }
    let total: usize = freq_grid.n.iter().product();
    let mut radii = Vec::with_capacity(total);
    for_each_index(&freq_grid.n, |idx| {
        let xi = freq_grid.xi(idx);
        radii.push(xi.iter().map(|&x| x * x).sum::<f64>().sqrt());
    });
    let phi: Vec<Vec<f64>> = (0..=k_bands)
        .map(|k| {
            radii
                .iter()
                .map(|&r| {
                    if k == 0 {
                        phi0_profile(r)
                    } else {
                        let scale = 2f64.powi(k as i32);
                        phi0_profile(r / scale) - phi0_profile(2.0 * r / scale)
                    }
                })
                .collect()
        })
        .collect();
    Ok(LPPartition { k_bands, phi, freq_grid: freq_grid.clone() })
}

/// Unnormalized DFT along one axis of a row-major complex tensor.
fn fft_axis(
    data: &mut [Complex64],
    dims: &[usize],
    axis: usize,
    inverse: bool,
    planner: &mut FftPlanner<f64>,
) {
    let len = dims[axis];
    let stride: usize = dims[axis + 1..].iter().product();
    let outer: usize = dims[..axis].iter().product();
    let fft = if inverse { planner.plan_fft_inverse(len) } else { planner.plan_fft_forward(len) };
    let mut line = vec![Complex64::default(); len];
    for o in 0..outer {
        for i in 0..stride {
            let base = o * len * stride + i;
            for t in 0..len {
                line[t] = data[base + t * stride];
            }
            fft.process(&mut line);
            for t in 0..len {
                data[base + t * stride] = line[t];
            }
        }
    }
}

/// Littlewood-Paley band k of g: inverse DFT of φ_k times the DFT of g on
/// the padded periodic grid, cropped back to g's grid.
pub fn band(g: &GridFunction, partition: &LPPartition, k: usize) -> Result<GridFunction> {
    if k > partition.k_bands {
        return Err(Error::Parameter(format!("band {k} exceeds partition size {}", partition.k_bands)));
    }
    let dims = &partition.freq_grid.n;
    if dims.len() != g.dim() || dims.iter().zip(g.n()).any(|(&p, &n)| p < n) {
        return Err(Error::Parameter("partition lattice does not match the grid".into()));
    }
    let total: usize = dims.iter().product();
    let mut data = vec![Complex64::default(); total];
    // Copy samples into the low-index corner of the padded tensor.
    {
        let mut src = 0usize;
        for_each_index(g.n(), |idx| {
            let mut flat = 0usize;
            for (a, &i) in idx.iter().enumerate() {
                flat = flat * dims[a] + i;
            }
            data[flat] = Complex64::new(g.values()[src], 0.0);
            src += 1;
        });
    }
    let mut planner = FftPlanner::new();
    for a in 0..dims.len() {
        fft_axis(&mut data, dims, a, false, &mut planner);
    }
    let phi = &partition.phi[k];
    for (c, &m) in data.iter_mut().zip(phi) {
        *c *= m;
    }
    for a in 0..dims.len() {
        fft_axis(&mut data, dims, a, true, &mut planner);
    }
    let scale = 1.0 / total as f64;
    let mut out = Vec::with_capacity(g.values().len());
    for_each_index(g.n(), |idx| {
        let mut flat = 0usize;
        for (a, &i) in idx.iter().enumerate() {
            flat = flat * dims[a] + i;
        }
        out.push(data[flat].re * scale);
    });
    GridFunction::from_values(g.domain().clone(), g.n().to_vec(), out)
}

/// Littlewood-Paley Besov-Morrey norm: (Σ_k 2^{ksq} ‖band_k‖_{ℳ^u_p}^q)^{1/q},
/// sup over k when q = ∞. Parts satisfy total^q = morrey_part^q +
/// difference_part^q (band 0 vs the rest).
pub fn besov_morrey_norm_lp(
    g: &GridFunction,
    params: &SpaceParams,
    partition: &LPPartition,
    spec: &QuadratureSpec,
) -> Result<NormResult> {
    params.validate()?;
    spec.validate()?;
    let bands: Result<Vec<NormResult>> = (0..=partition.k_bands)
        .into_par_iter()
        .map(|k| {
            let b = band(g, partition, k)?;
            morrey_norm(&b, params.p, params.u, spec)
        })
        .collect();
    let bands = bands?;
    let weighted =
        |k: usize, m: f64| -> f64 { 2f64.powf(k as f64 * params.s) * m };
    let (morrey_part, difference_part, total);
    if params.q.is_infinite() {
        morrey_part = weighted(0, bands[0].total);
        difference_part =
            bands.iter().enumerate().skip(1).map(|(k, b)| weighted(k, b.total)).fold(0.0, f64::max);
        total = morrey_part.max(difference_part);
    } else {
        let q = params.q;
        let head = weighted(0, bands[0].total).powf(q);
        let tail: f64 =
            bands.iter().enumerate().skip(1).map(|(k, b)| weighted(k, b.total).powf(q)).sum();
        morrey_part = head.powf(1.0 / q);
        difference_part = tail.powf(1.0 / q);
        total = (head + tail).powf(1.0 / q);
    }
    Ok(NormResult {
        total,
        morrey_part,
        difference_part,
        witness: bands[0].witness.clone(),
        spec: spec.clone(),
    })
}

/// Littlewood-Paley Triebel-Lizorkin-Morrey norm: the ℓ_q sum over bands is
/// taken pointwise inside one Morrey norm.
pub fn tlm_norm_lp(
    g: &GridFunction,
    params: &SpaceParams,
    partition: &LPPartition,
    spec: &QuadratureSpec,
) -> Result<NormResult> {
    params.validate()?;
    spec.validate()?;
    let band_vals: Result<Vec<GridFunction>> = (0..=partition.k_bands)
        .into_par_iter()
        .map(|k| band(g, partition, k))
        .collect();
    let band_vals = band_vals?;
    let total_len = g.values().len();
    let combine = |from: usize, to: usize| -> Vec<f64> {
        let mut acc = vec![0.0f64; total_len];
        if params.q.is_infinite() {
            for (k, b) in band_vals.iter().enumerate().take(to + 1).skip(from) {
                let w = 2f64.powf(k as f64 * params.s);
                for (a, &x) in acc.iter_mut().zip(b.values()) {
                    *a = a.max(w * x.abs());
                }
            }
            acc
        } else {
            let q = params.q;
            for (k, b) in band_vals.iter().enumerate().take(to + 1).skip(from) {
                let w = 2f64.powf(k as f64 * params.s);
                for (a, &x) in acc.iter_mut().zip(b.values()) {
                    *a += (w * x.abs()).powf(q);
                }
            }
            acc.iter().map(|&a| a.powf(1.0 / q)).collect()
        }
    };
    let full = GridFunction::from_values(g.domain().clone(), g.n().to_vec(), combine(0, partition.k_bands))?;
    let head = GridFunction::from_values(g.domain().clone(), g.n().to_vec(), combine(0, 0))?;
    let tail = GridFunction::from_values(g.domain().clone(), g.n().to_vec(), combine(1, partition.k_bands))?;
    let full_norm = morrey_norm(&full, params.p, params.u, spec)?;
    let morrey_part = morrey_norm(&head, params.p, params.u, spec)?.total;
    let difference_part = morrey_norm(&tail, params.p, params.u, spec)?.total;
    Ok(NormResult {
        total: full_norm.total,
        morrey_part,
        difference_part,
        witness: full_norm.witness,
        spec: spec.clone(),
    })
}
