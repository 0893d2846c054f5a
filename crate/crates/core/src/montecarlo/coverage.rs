use alloc::vec::Vec;

use num_traits::Float;

use super::snapshot::{Mode, Simulator};
use crate::error::{Error, Result};
use crate::geometry::db_to_lin;

const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval `(lower, upper)` for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lower = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let upper = if successes == trials { 1.0 } else { (centre + half).min(1.0) };
    (lower, upper)
}

/// Per-threshold coverage counts. Merging is exact, so partial counters
/// from any split of the trials combine to the same result.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageCounter {
    thresholds_db: Vec<f64>,
    thresholds_lin: Vec<f64>,
    covered: Vec<u64>,
    trials: u64,
}

impl CoverageCounter {
    pub fn new(thresholds_db: &[f64]) -> Self {
        CoverageCounter {
            thresholds_db: thresholds_db.to_vec(),
            thresholds_lin: thresholds_db.iter().map(|&db| db_to_lin(db)).collect(),
            covered: alloc::vec![0; thresholds_db.len()],
            trials: 0,
        }
    }

    pub fn add(&mut self, sir: f64) {
        self.trials += 1;
        for (c, &g) in self.covered.iter_mut().zip(&self.thresholds_lin) {
            if sir >= g {
                *c += 1;
            }
        }
    }

    pub fn merge(&mut self, other: &CoverageCounter) -> Result<()> {
        if self.thresholds_db != other.thresholds_db {
            return Err(Error::invalid("thresholds", "counters cover different threshold grids"));
        }
        for (a, b) in self.covered.iter_mut().zip(&other.covered) {
            *a += b;
        }
        self.trials += other.trials;
        Ok(())
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn covered(&self) -> &[u64] {
        &self.covered
    }

    pub fn curve(&self) -> CoverageCurve {
        let points = self
            .thresholds_db
            .iter()
            .zip(&self.covered)
            .map(|(&gamma_db, &k)| {
                let (ci_lower, ci_upper) = wilson_interval(k, self.trials, Z95);
                CoveragePoint {
                    gamma_db,
                    estimate: if self.trials == 0 { 0.0 } else { k as f64 / self.trials as f64 },
                    ci_lower,
                    ci_upper,
                    ci95_halfwidth: 0.5 * (ci_upper - ci_lower),
                    n_trials: self.trials,
                }
            })
            .collect();
        CoverageCurve { points }
    }
}

/// Monte Carlo coverage at one threshold with its Wilson 95% interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoveragePoint {
    pub gamma_db: f64,
    pub estimate: f64,
    pub ci_lower: f64,
    pub ci_upper: f64,
    pub ci95_halfwidth: f64,
    pub n_trials: u64,
}

impl CoveragePoint {
    /// Standard deviation of the estimate, from the Wilson interval so that it
    /// stays positive when the estimate sits at 0 or 1.
    pub fn sigma(&self) -> f64 {
        self.ci95_halfwidth / Z95
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CoverageCurve {
    pub points: Vec<CoveragePoint>,
}

/// Runs `trials` snapshots sequentially on the trial-indexed substreams.
pub fn estimate_coverage(sim: &mut Simulator, mode: Mode, trials: u64) -> Result<CoverageCurve> {
    if trials == 0 {
        return Err(Error::invalid("mc_trials", "must be at least 1"));
    }
    let mut counter = CoverageCounter::new(&sim.params().sir_thresholds_db);
    for t in 0..trials {
        counter.add(sim.trial(t, mode).sir);
    }
    Ok(counter.curve())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SystemParams;

    #[test]
    fn wilson_edges() {
        let (lo, hi) = wilson_interval(0, 100, Z95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval(100, 100, Z95);
        assert!(lo > 0.95 && hi == 1.0);
        let (lo, hi) = wilson_interval(50, 100, Z95);
        assert!((0.5 - lo - (hi - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn merge_matches_single_run() {
        let grid = [-3.0, 0.0, 4.0];
        let sirs = [0.1, 0.9, 1.1, 3.0, f64::INFINITY, 0.0];
        let mut all = CoverageCounter::new(&grid);
        let (mut a, mut b) = (CoverageCounter::new(&grid), CoverageCounter::new(&grid));
        for (i, &s) in sirs.iter().enumerate() {
            all.add(s);
            if i % 2 == 0 { a.add(s) } else { b.add(s) }
        }
        b.merge(&a).unwrap();
        assert_eq!(all, b);
        assert!(b.merge(&CoverageCounter::new(&[1.0])).is_err());
    }

    #[test]
    fn low_threshold_covers_nonempty_clusters() {
        let mut p = SystemParams::reference(50.0);
        p.sir_thresholds_db = alloc::vec![-300.0, 0.0];
        let mut sim = Simulator::nakagami(&p).unwrap();
        let n = 20_000;
        let curve = estimate_coverage(&mut sim, Mode::Cluster, n).unwrap();
        let void = (-sim.geometry().cluster_area_km2 * p.sat_density_per_km2).exp();
        let pt = curve.points[0];
        assert!((pt.estimate - (1.0 - void)).abs() < 3.0 * pt.sigma() + 1e-12);
        assert!(curve.points[1].estimate <= pt.estimate);
    }
}
