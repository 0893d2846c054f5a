//! Parallel Monte Carlo orchestration.
//!
//! Trials are cut into fixed blocks of [`BLOCK_TRIALS`] consecutive indices.
//! Every trial draws from its own substream of the scenario seed, and block
//! results are merged in block order, so the output does not depend on the
//! number of worker threads.

use std::env;
use std::ops::Range;

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};
use satcov::channel::Fading;
use satcov::geometry::SystemParams;
use satcov::montecarlo::{CoverageCounter, CoverageCurve, Mode, Simulator, Snapshot};

use crate::error::{CliError, Result};

/// Trials per work unit.
pub const BLOCK_TRIALS: u64 = 4096;

/// Environment variable capping the worker count (0 = one per core).
pub const THREADS_ENV: &str = "SATCOV_THREADS";

/// Worker count requested through [`THREADS_ENV`]; 0 when unset.
pub fn threads_from_env() -> Result<usize> {
    match env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::config(format!("{THREADS_ENV}=`{v}` is not a non-negative integer"))),
        Err(env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(CliError::config(format!("{THREADS_ENV}: {e}"))),
    }
}

/// A dedicated worker pool.
pub struct Runner {
    pool: ThreadPool,
}

impl Runner {
    /// `threads = 0` uses one worker per core.
    pub fn new(threads: usize) -> Result<Self> {
        let pool = ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::config(format!("cannot start worker pool: {e}")))?;
        Ok(Runner { pool })
    }

    pub fn from_env() -> Result<Self> {
        Self::new(threads_from_env()?)
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Applies `f` to each item in parallel; results keep the input order.
    pub fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        self.pool.install(|| items.par_iter().map(&f).collect())
    }

    /// Applies `f` to every block of trial indices; results keep block order.
    pub fn map_blocks<U, F>(&self, trials: u64, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(Range<u64>) -> U + Sync + Send,
    {
        let blocks: Vec<Range<u64>> = (0..trials.div_ceil(BLOCK_TRIALS))
            .map(|b| b * BLOCK_TRIALS..((b + 1) * BLOCK_TRIALS).min(trials))
            .collect();
        self.map(&blocks, |r| f(r.clone()))
    }

    /// All snapshots of trials `0..trials`, in trial order.
    pub fn snapshots(&self, params: &SystemParams, fading: Fading, mode: Mode, trials: u64) -> Result<Vec<Snapshot>> {
        let template = Simulator::new(params, fading)?;
        let blocks = self.map_blocks(trials, |range| {
            let mut sim = template.clone();
            range.map(|i| sim.trial(i, mode)).collect::<Vec<_>>()
        });
        Ok(blocks.concat())
    }

    /// Coverage curve over the scenario's threshold grid.
    pub fn coverage(&self, params: &SystemParams, fading: Fading, mode: Mode, trials: u64) -> Result<CoverageCurve> {
        let template = Simulator::new(params, fading)?;
        let thresholds = &params.sir_thresholds_db;
        let blocks = self.map_blocks(trials, |range| {
            let mut sim = template.clone();
            let mut counter = CoverageCounter::new(thresholds);
            for i in range {
                counter.add(sim.trial(i, mode).sir);
            }
            counter
        });
        let mut total = CoverageCounter::new(thresholds);
        for b in &blocks {
            total.merge(b)?;
        }
        Ok(total.curve())
    }
}
