use std::f64::consts::PI;

/// Modified Bessel function `I₀(x)` from its power series
/// `Σ ((x/2)^k / k!)²`, summed until terms fall below `1e-17` relative.
pub fn bessel_i0(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        sum += term;
        if term < 1e-17 * sum {
            return sum;
        }
        k += 1.0;
    }
}

/// Kaiser–Bessel window `I₀(πα√(1-(2k/(N-1)-1)²)) / I₀(πα)` for
/// `0 ≤ k < n_samples`.
pub fn kaiser_bessel_window(k: usize, n_samples: usize, alpha: f64) -> f64 {
    assert!(k < n_samples, "window index {k} outside 0..{n_samples}");
    if n_samples == 1 {
        return 1.0;
    }
    // integer offset from the centre keeps K(k) = K(N-1-k) bit-exact
    let offset = 2 * k as i64 - (n_samples as i64 - 1);
    let x = offset as f64 / (n_samples - 1) as f64;
    let r = (1.0 - x * x).max(0.0).sqrt();
    bessel_i0(PI * alpha * r) / bessel_i0(PI * alpha)
}
