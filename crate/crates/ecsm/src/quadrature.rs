//! Small quadrature helpers: composite Simpson on uniform grids, trapezoid,
//! and Gauss–Legendre panels for the orthogonality checks.

/// Composite Simpson over `values` sampled uniformly with spacing `h`.
/// Falls back to a trapezoid correction for the last interval when the
/// sample count is even.
pub fn simpson_uniform(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(n >= 2, "need at least two samples");
    if n == 2 {
        return 0.5 * h * (values[0] + values[1]);
    }
    let odd_count = if n % 2 == 1 { n } else { n - 1 };
    let mut sum = values[0] + values[odd_count - 1];
    for (i, v) in values[1..odd_count - 1].iter().enumerate() {
        sum += if i % 2 == 0 { 4.0 * v } else { 2.0 * v };
    }
    let mut total = sum * h / 3.0;
    if n.is_multiple_of(2) {
        total += 0.5 * h * (values[n - 2] + values[n - 1]);
    }
    total
}

pub fn trapezoid_uniform(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(n >= 2, "need at least two samples");
    let interior: f64 = values[1..n - 1].iter().sum();
    h * (0.5 * (values[0] + values[n - 1]) + interior)
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1],
/// via Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        loop {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// ∫ₐᵇ f dx by an n-point Gauss–Legendre rule on each of the given panel
/// boundaries (ascending, first = a, last = b).
pub fn gauss_panels(f: impl Fn(f64) -> f64, boundaries: &[f64], points_per_panel: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(points_per_panel);
    let mut total = 0.0;
    for w in boundaries.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for (x, wt) in nodes.iter().zip(&weights) {
            total += wt * half * f(mid + half * x);
        }
    }
    total
}

/// Panel boundaries on [0, b] graded geometrically toward 0, to keep
/// algebraic endpoint singularities x^a harmless.
pub fn graded_boundaries(b: f64, levels: usize) -> Vec<f64> {
    let mut bounds = vec![0.0];
    for k in (0..=levels).rev() {
        bounds.push(b / (1u64 << k.min(62)) as f64);
    }
    bounds.dedup();
    bounds
}
