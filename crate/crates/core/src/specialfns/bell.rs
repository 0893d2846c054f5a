//! Partial (incomplete) exponential Bell polynomials.

use alloc::vec;
use alloc::vec::Vec;

use super::combinatorics::binomial;
use super::sum::CompensatedSum;
use crate::error::{Error, Result};

/// `B_{n,q}(x_1, ..., x_{n-q+1})` via
/// `B_{n,q} = Σ_i C(n-1, i-1) x_i B_{n-i,q-1}`.
///
/// `x[j - 1]` holds `x_j`; at least `n - q + 1` entries are required.
pub fn bell_incomplete(n: usize, q: usize, x: &[f64]) -> Result<f64> {
    if q > n {
        return Ok(0.0);
    }
    if n == 0 {
        return Ok(1.0);
    }
    if q == 0 {
        return Ok(0.0);
    }
    let needed = n - q + 1;
    if x.len() < needed {
        return Err(Error::InsufficientSamples {
            needed,
            got: x.len(),
        });
    }
    // table[m][p] = B_{m,p}
    let mut table = vec![vec![0.0; q + 1]; n + 1];
    table[0][0] = 1.0;
    for p in 1..=q {
        for m in p..=n {
            let mut sum = CompensatedSum::new();
            for i in 1..=(m - p + 1) {
                sum.add(binomial(m - 1, i - 1) * x[i - 1] * table[m - i][p - 1]);
            }
            table[m][p] = sum.value();
        }
    }
    Ok(table[n][q])
}

/// All `B_{n,q}(1! y_1, 2! y_2, ...) / n!` for `n, q <= order`.
///
/// This normalisation is the coefficient of `s^n` in `(Σ_j y_j s^j)^q / q!`,
/// so the recurrence only ever adds nonnegative terms when `y >= 0` and stays
/// in range far past the point where `n!` overflows.
#[derive(Debug, Clone)]
pub struct BellTable {
    order: usize,
    values: Vec<f64>,
}

impl BellTable {
    /// `y[j - 1]` holds `y_j`; `y.len()` sets the maximal order.
    pub fn scaled(y: &[f64]) -> Self {
        let order = y.len();
        let width = order + 1;
        let mut values = vec![0.0; width * width];
        values[0] = 1.0;
        for q in 1..=order {
            for n in q..=order {
                let mut sum = CompensatedSum::new();
                for i in 1..=(n - q + 1) {
                    sum.add(y[i - 1] * values[(n - i) * width + q - 1]);
                }
                values[n * width + q] = sum.value() / q as f64;
            }
        }
        BellTable { order, values }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `B_{n,q}(x̃) / n!`, zero outside the table's triangle.
    pub fn get(&self, n: usize, q: usize) -> f64 {
        if n > self.order || q > self.order {
            return 0.0;
        }
        self.values[n * (self.order + 1) + q]
    }

    /// `Σ_q B_{n,q}(x̃) / n!`, the scaled complete Bell polynomial.
    pub fn complete(&self, n: usize) -> f64 {
        let mut sum = CompensatedSum::new();
        for q in 0..=n.min(self.order) {
            sum.add(self.get(n, q));
        }
        sum.value()
    }
}
