#![allow(dead_code)]

use satcov::geometry::SystemParams;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Asymptotic p-value of the one-sample Kolmogorov–Smirnov statistic.
pub fn ks_p_value(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    let mut sum = 0.0;
    for k in 1..200 {
        let k = k as f64;
        let term = 2.0 * (-1f64).powf(k - 1.0) * (-2.0 * k * k * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

/// Pearson χ² p-value of observed counts against expected counts.
pub fn chi_square_p(observed: &[u64], expected: &[f64]) -> f64 {
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
        .sum();
    let dof = (observed.len() - 1) as f64;
    1.0 - ChiSquared::new(dof).unwrap().cdf(stat)
}

pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// A random valid scenario built from unit-interval draws.
pub fn fuzzed_params(u: [f64; 9]) -> SystemParams {
    let mut p = SystemParams::reference(50.0);
    p.earth_radius_km = 6000.0 + 500.0 * u[0];
    p.sat_orbit_radius_km = p.earth_radius_km + 300.0 + 1200.0 * u[1];
    p.min_elevation_rad = (10.0 + 50.0 * u[2]).to_radians();
    p.path_loss_exponent = 2.1 + 2.9 * u[3];
    p.nakagami_m = 0.5 + 4.5 * u[4];
    p.gain_inside = 0.5 + 1.5 * u[5];
    p.gain_outside = p.gain_inside * (0.01 + 0.99 * u[6]);
    let r_max = satcov::geometry::max_slant_range(&p);
    let phi_max = satcov::geometry::polar_angle_at_range(&p, r_max);
    p.cluster_polar_angle_rad = phi_max * (0.05 + 0.9 * u[7]);
    p.set_visible_mean(10.0 + 490.0 * u[8]);
    p
}
