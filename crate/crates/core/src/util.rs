//! Small numeric helpers used across the crate.

/// Binomial coefficient C(n, k) as an exact f64 (n is small, <= 8 in practice).
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Ordinary least squares line fit `y = slope * x + intercept`.
///
/// Returns `(slope, intercept)`. `xs` and `ys` must have equal length >= 2.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "line fit needs at least two points");
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Smooth cutoff: 1 for r <= a, 0 for r >= b, C^inf in between.
pub fn smooth_step_down(r: f64, a: f64, b: f64) -> f64 {
    if r <= a {
        1.0
    } else if r >= b {
        0.0
    } else {
        // Standard glue built from exp(-1/t).
        let t = (r - a) / (b - a);
        let e = |s: f64| if s <= 0.0 { 0.0 } else { (-1.0 / s).exp() };
        let num = e(1.0 - t);
        num / (num + e(t))
    }
}

/// Smooth even bump supported in [-1, 1] with value 1 at the origin.
pub fn bump(x: f64) -> f64 {
    let r = x.abs();
    if r >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - r * r)).exp()
    }
}
