//! Dyadic cubes Q_{j,m} = 2^{-j} m + 2^{-j} (0,1)^d and their doublings.

use crate::grid::GridBox;

/// The dyadic cube at level `j` with integer index `m`; side length 2^{-j},
/// lower corner 2^{-j} m.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DyadicCube {
    pub j: i32,
    pub m: Vec<i64>,
}

impl DyadicCube {
    pub fn new(j: i32, m: Vec<i64>) -> Self {
        DyadicCube { j, m }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn side(&self) -> f64 {
        2f64.powi(-self.j)
    }

    /// Lower and upper corners of the cube itself.
    pub fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let s = self.side();
        let lo: Vec<f64> = self.m.iter().map(|&mi| s * mi as f64).collect();
        let hi: Vec<f64> = self.m.iter().map(|&mi| s * (mi as f64 + 1.0)).collect();
        (lo, hi)
    }

    /// Lower and upper corners of the concentric doubled cube 2Q.
    pub fn doubled_bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let s = self.side();
        let lo: Vec<f64> = self.m.iter().map(|&mi| s * (mi as f64 - 0.5)).collect();
        let hi: Vec<f64> = self.m.iter().map(|&mi| s * (mi as f64 + 1.5)).collect();
        (lo, hi)
    }

    /// Volume of the doubled cube.
    pub fn doubled_volume(&self) -> f64 {
        (2.0 * self.side()).powi(self.dim() as i32)
    }
}

/// All cubes Q_{j,m} whose doubled cube 2Q_{j,m} intersects `domain` in a set
/// of positive volume, in lexicographic order of m.
pub fn cubes_at_level(domain: &GridBox, j: i32) -> Vec<DyadicCube> {
    let d = domain.dim();
    let scale = 2f64.powi(j);
    // 2Q = [2^{-j}(m - 1/2), 2^{-j}(m + 3/2)] meets (lo, hi) openly iff
    // 2^j lo - 3/2 < m < 2^j hi + 1/2, strictly.
    let mut lo_m = vec![0i64; d];
    let mut hi_m = vec![0i64; d];
    for a in 0..d {
        let t_lo = scale * domain.lo[a] - 1.5;
        let t_hi = scale * domain.hi[a] + 0.5;
        lo_m[a] = t_lo.floor() as i64 + 1;
        hi_m[a] = t_hi.ceil() as i64 - 1;
        if lo_m[a] > hi_m[a] {
            return vec![];
        }
    }
    let mut out = Vec::new();
    let mut m = lo_m.clone();
    loop {
        out.push(DyadicCube::new(j, m.clone()));
        let mut a = d;
        loop {
            if a == 0 {
                return out;
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
