//! Shared test oracles, independent of the library implementations.

/// Lₙᵃ(x) by the explicit series Σₖ (−1)ᵏ C(n+a, n−k) xᵏ/k!, with the
/// generalized binomial in product form. Independent of the library's
/// recurrence evaluation.
pub fn laguerre_series(n: u32, a: f64, x: f64) -> f64 {
    let mut total = 0.0;
    for k in 0..=n {
        total += series_term(n, a, x, k);
    }
    total
}

/// Σₖ |term| of the same series, the natural scale for cancellation-aware
/// comparisons.
pub fn laguerre_series_scale(n: u32, a: f64, x: f64) -> f64 {
    (0..=n).map(|k| series_term(n, a, x, k).abs()).sum()
}

fn series_term(n: u32, a: f64, x: f64, k: u32) -> f64 {
    // C(n+a, n−k) = Π_{j=1}^{n−k} (a+k+j)/j
    let mut binom = 1.0;
    for j in 1..=(n - k) {
        binom *= (a + k as f64 + j as f64) / j as f64;
    }
    let mut pow = 1.0; // (−x)^k / k!
    for j in 1..=k {
        pow *= -x / j as f64;
    }
    binom * pow
}

/// C(n+a, n) for integer a ≥ 0, in exact integer arithmetic.
pub fn binomial_integer(n: u32, a: u32) -> f64 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for j in 1..=n as u128 {
        num *= a as u128 + j;
        den *= j;
    }
    (num / den) as f64
}
