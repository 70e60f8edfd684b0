//! Multi-threaded driver for the D search.
//!
//! Each stage's trial range is evaluated in parallel and reduced with
//! [`Candidate::better`], which is associative, commutative and breaks ties by
//! trial index, so the estimate is bit-identical for every worker count.

use std::env;
use std::num::NonZeroUsize;
use std::thread;

use qcorr_core::measure_d::{Candidate, DEstimate, DSearch};
use qcorr_core::DensityMatrix;
use rayon::prelude::*;

use crate::{Error, Result};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "QCORR_THREADS";

/// Worker count: the available parallelism, capped by `QCORR_THREADS` when
/// set.
pub fn worker_count() -> Result<usize> {
    let available = thread::available_parallelism().map_or(1, NonZeroUsize::get);
    match env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => Ok(available.min(cap)),
            _ => Err(Error::Invalid(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            ))),
        },
        Err(_) => Ok(available),
    }
}

/// D estimate with the random trials spread over `workers` threads.
pub fn estimate_d_parallel(rho: &DensityMatrix, trials: u64, seed: u64, workers: usize) -> Result<DEstimate> {
    let search = DSearch::new(rho, seed)?;
    if workers <= 1 {
        return Ok(search.run_with(trials, |range, center| search.best_in(range, center)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Invalid(format!("cannot start worker threads: {e}")))?;
    Ok(pool.install(|| {
        search.run_with(trials, |range, center| {
            range
                .into_par_iter()
                .map(|i| search.evaluate_trial(i, center))
                .reduce_with(Candidate::better)
        })
    }))
}
