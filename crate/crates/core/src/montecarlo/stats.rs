use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::specialfns::ExactSum;

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    /// `|value − target|` in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.value - target) / self.std_error
    }
}

/// Sample mean and unbiased variance with their standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: Estimate,
    pub variance: Estimate,
    pub n: usize,
}

/// Exactly rounded running sums of `x`, `x²`, `x³` and `x⁴`.
#[derive(Debug, Clone, Default)]
pub struct PowerSums {
    n: u64,
    sums: [ExactSum; 4],
}

impl PowerSums {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        self.n += 1;
        let mut pow = x;
        for s in &mut self.sums {
            s.add(pow);
            pow *= x;
        }
    }

    pub fn merge(&mut self, other: &PowerSums) {
        self.n += other.n;
        for (a, b) in self.sums.iter_mut().zip(&other.sums) {
            a.merge(b);
        }
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    /// Raw moment `E[X^k]` for `k` in `1..=4`.
    pub fn raw_moment(&self, k: usize) -> f64 {
        self.sums[k - 1].value() / self.n as f64
    }
}

/// Unbiased mean and variance with standard errors.
///
/// Central moments are taken about the mean in a second pass, since raw power
/// sums lose the variance to cancellation when the spread is small.
pub fn empirical_moments(samples: &[f64]) -> Result<Moments> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::InsufficientSamples { needed: 2, got: n });
    }
    let nf = n as f64;
    let mean = samples.iter().copied().collect::<ExactSum>().value() / nf;
    let mut m2 = ExactSum::new();
    let mut m4 = ExactSum::new();
    for &x in samples {
        let d2 = (x - mean) * (x - mean);
        m2.add(d2);
        m4.add(d2 * d2);
    }
    let (m2, m4) = (m2.value() / nf, m4.value() / nf);
    let variance = m2 * nf / (nf - 1.0);
    let var_se = ((m4 - m2 * m2 * (nf - 3.0) / (nf - 1.0)).max(0.0) / nf).sqrt();
    Ok(Moments {
        mean: Estimate {
            value: mean,
            std_error: (variance / nf).sqrt(),
        },
        variance: Estimate {
            value: variance,
            std_error: var_se,
        },
        n,
    })
}

/// Right-continuous empirical distribution function.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

pub fn empirical_cdf(samples: &[f64]) -> Result<EmpiricalCdf> {
    if samples.len() < 2 {
        return Err(Error::InsufficientSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(Error::invalid("samples", "contain NaN"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(EmpiricalCdf { sorted })
}

impl EmpiricalCdf {
    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of samples `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.sorted.len() as f64
    }

    /// Kolmogorov–Smirnov distance to a continuous CDF.
    ///
    /// Ties are handled by comparing at both sides of every distinct jump.
    pub fn ks_distance<F: FnMut(f64) -> f64>(&self, mut cdf: F) -> f64 {
        let n = self.sorted.len() as f64;
        let mut worst: f64 = 0.0;
        let mut i = 0;
        while i < self.sorted.len() {
            let x = self.sorted[i];
            let mut j = i;
            while j < self.sorted.len() && self.sorted[j] == x {
                j += 1;
            }
            let f = cdf(x);
            worst = worst.max((j as f64 / n - f).abs()).max((f - i as f64 / n).abs());
            i = j;
        }
        worst
    }
}

/// Estimates `E[X^n e^(−sX)] = (−1)^n dⁿL_X/dsⁿ` from samples of `X`.
pub fn mc_laplace_derivative(samples: &[f64], n: u32, s: f64) -> Result<Estimate> {
    if samples.len() < 2 {
        return Err(Error::InsufficientSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    if !(s >= 0.0) {
        return Err(Error::domain("transform point", s, "s >= 0"));
    }
    let values: Vec<f64> = samples
        .iter()
        .map(|&x| x.powi(n as i32) * (-s * x).exp())
        .collect();
    let m = empirical_moments(&values)?;
    Ok(m.mean)
}
