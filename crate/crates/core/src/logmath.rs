//! Natural-log helpers for quantities far outside the `f64` range.

/// ln k!
pub fn ln_factorial(k: u64) -> f64 {
    if k < 2 {
        return 0.0;
    }
    if k <= 64 {
        return (2..=k).map(|i| (i as f64).ln()).sum();
    }
    libm::lgamma(k as f64 + 1.0)
}

/// ln (n)_k = ln n(n−1)⋯(n−k+1); `-inf` when k > n.
pub fn ln_falling_factorial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if k <= 256 {
        return (0..k).map(|i| ((n - i) as f64).ln()).sum();
    }
    ln_factorial(n) - ln_factorial(n - k)
}

/// ln C(n, k); `-inf` when k > n.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    if k <= 256 {
        return (0..k).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum();
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// ln(1 − x) for 0 ≤ x ≤ 1, accurate for small x.
pub fn ln_1m(x: f64) -> f64 {
    (-x).ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_direct_values() {
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-12);
        assert!((ln_falling_factorial(100, 3) - 970200f64.ln()).abs() < 1e-12);
        assert!((ln_binomial(20, 2) - 190f64.ln()).abs() < 1e-12);
        assert_eq!(ln_binomial(3, 4), f64::NEG_INFINITY);
        let big = ln_binomial(2000, 1000);
        let direct: f64 = (0..1000).map(|i| ((2000 - i) as f64 / (i + 1) as f64).ln()).sum();
        assert!((big - direct).abs() / direct < 1e-10);
        let lf = ln_falling_factorial(5000, 300);
        let direct: f64 = (0..300).map(|i| ((5000 - i) as f64).ln()).sum();
        assert!((lf - direct).abs() / direct < 1e-10);
    }
}
