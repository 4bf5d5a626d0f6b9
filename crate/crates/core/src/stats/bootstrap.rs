// SPDX-License-Identifier: MIT OR Apache-2.0

use rand::Rng;
use rayon::prelude::*;

use super::rng::stream_rng;
use crate::error::{Error, Result};

/// Nearest-rank percentile of sorted data, `q` in `[0, 1]`.
pub fn percentile_nearest_rank(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let rank = (q * n as f64).ceil() as usize;
    sorted[rank.clamp(1, n) - 1]
}

/// Percentile bootstrap 95% interval for `statistic` over `values`.
///
/// Resample `i` draws from stream `i` of `seed`, so the interval does not
/// depend on thread count.
pub fn bootstrap_ci<F>(values: &[f64], statistic: F, n_resamples: usize, seed: u64) -> Result<(f64, f64)>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if values.is_empty() {
        return Err(Error::EmptyInput("bootstrap needs at least one value".into()));
    }
    if n_resamples == 0 {
        return Err(Error::Config("bootstrap needs at least one resample".into()));
    }
    let n = values.len();
    let mut stats: Vec<f64> = (0..n_resamples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let resample: Vec<f64> = (0..n).map(|_| values[rng.random_range(0..n)]).collect();
            statistic(&resample)
        })
        .collect();
    stats.sort_by(f64::total_cmp);
    Ok((
        percentile_nearest_rank(&stats, 0.025),
        percentile_nearest_rank(&stats, 0.975),
    ))
}
