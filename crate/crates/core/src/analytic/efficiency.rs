use core::f64::consts::LN_2;

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest admissible integrand `P(γ)/((1+γ) ln 2)` at the top of the grid.
pub const SE_TAIL_TOLERANCE: f64 = 1e-6;

/// `(1 − C) ∫₀^∞ P(SIR ≥ γ) / ((1 + γ) ln 2) dγ` in bit/s/Hz.
///
/// `points` are `(γ, coverage)` pairs on a strictly increasing linear grid.
/// `P(SIR ≥ 0) = 1` supplies the value at the origin when the grid starts
/// above zero. The integral is a trapezoid rule; the grid must reach far
/// enough that the integrand has dropped below [`SE_TAIL_TOLERANCE`].
pub fn spectral_efficiency(points: &[(f64, f64)], cost_c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&cost_c) {
        return Err(Error::domain("cost C", cost_c, "[0, 1]"));
    }
    if points.is_empty() {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    }
    let mut grid: Vec<(f64, f64)> = Vec::with_capacity(points.len() + 1);
    if points[0].0 > 0.0 {
        grid.push((0.0, 1.0));
    }
    for &(g, p) in points {
        if !(g >= 0.0 && g.is_finite()) || !(0.0..=1.0).contains(&p) {
            return Err(Error::domain("coverage point", g, "finite gamma >= 0 and coverage in [0, 1]"));
        }
        if grid.last().is_some_and(|&(prev, _)| g <= prev) {
            return Err(Error::invalid("points", "thresholds must increase strictly"));
        }
        grid.push((g, p));
    }
    if cost_c == 1.0 {
        return Ok(0.0);
    }
    let integrand = |(g, p): (f64, f64)| p / ((1.0 + g) * LN_2);
    let (g_max, p_max) = *grid.last().expect("nonempty grid");
    if integrand((g_max, p_max)) >= SE_TAIL_TOLERANCE {
        return Err(Error::InsufficientRange {
            gamma_max: g_max,
            last_coverage: p_max,
            tolerance: SE_TAIL_TOLERANCE,
        });
    }
    let area: f64 = grid
        .windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (integrand(w[0]) + integrand(w[1])))
        .sum();
    Ok((1.0 - cost_c) * area)
}
