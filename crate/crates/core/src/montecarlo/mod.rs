//! Snapshot simulation of the downlink SIR and the statistics built on it.

mod coverage;
mod snapshot;
mod stats;

pub use coverage::{estimate_coverage, wilson_interval, CoverageCounter, CoverageCurve, CoveragePoint};
pub use snapshot::{evaluate_links, simulate_snapshot, Link, Mode, Simulator, Snapshot};
pub use stats::{
    empirical_cdf, empirical_moments, mc_laplace_derivative, EmpiricalCdf, Estimate, Moments, PowerSums,
};
