//! Factorials, binomials and rising factorials.

use num_traits::Float;

/// Largest `n` with `n!` representable as a finite `f64`.
pub const FACTORIAL_CAP: usize = 170;

const fn factorial_table() -> [f64; FACTORIAL_CAP + 1] {
    let mut t = [1.0; FACTORIAL_CAP + 1];
    let mut i = 1;
    while i <= FACTORIAL_CAP {
        t[i] = t[i - 1] * i as f64;
        i += 1;
    }
    t
}

static FACTORIALS: [f64; FACTORIAL_CAP + 1] = factorial_table();

/// `n!`, or `+inf` past [`FACTORIAL_CAP`]; use [`ln_factorial`] there.
pub fn factorial(n: usize) -> f64 {
    FACTORIALS.get(n).copied().unwrap_or(f64::INFINITY)
}

pub fn ln_factorial(n: usize) -> f64 {
    if n <= FACTORIAL_CAP {
        FACTORIALS[n].ln()
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}

/// Binomial coefficient `C(n, k)`, exact for everything that fits in the
/// factorial table and computed in log space beyond it.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    if n <= FACTORIAL_CAP {
        return (FACTORIALS[n] / (FACTORIALS[k] * FACTORIALS[n - k])).round();
    }
    (ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)).exp()
}

/// Rising factorial `(m)_n = m (m+1) ... (m+n-1)`, with `(m)_0 = 1`.
pub fn pochhammer(m: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (m + i as f64))
}

/// `(m)_n / (n! m^n)` evaluated as a product of `O(1)` factors, stable for
/// huge `m` where `(m)_n` alone overflows.
pub fn scaled_pochhammer(m: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| {
        let i = i as f64;
        acc * (1.0 + i / m) / (i + 1.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(3.7, 0), 1.0);
        for n in 0..12 {
            assert_eq!(pochhammer(1.0, n), factorial(n));
        }
        assert_eq!(pochhammer(2.5, 3), 39.375);
    }

    #[test]
    fn scaled_pochhammer_matches_direct() {
        for &m in &[0.5, 1.0, 2.0, 7.25] {
            for n in 0..20 {
                let direct = pochhammer(m, n) / (factorial(n) * m.powi(n as i32));
                let rel = (scaled_pochhammer(m, n) - direct).abs() / direct;
                assert!(rel < 1e-13, "m={m} n={n}");
            }
        }
        // m -> infinity limit is 1/n!
        assert!((scaled_pochhammer(1e20, 5) - 1.0 / 120.0).abs() < 1e-18);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(40, 20), 137_846_528_820.0);
        assert_eq!(binomial(3, 4), 0.0);
        let big = binomial(200, 3);
        assert!((big - 1_313_400.0).abs() / 1_313_400.0 < 1e-10);
    }

    #[test]
    fn factorial_edges() {
        assert_eq!(factorial(0), 1.0);
        assert!(factorial(170).is_finite());
        assert!(factorial(171).is_infinite());
        assert!((ln_factorial(171) - libm::lgamma(172.0)).abs() < 1e-9);
    }
}
