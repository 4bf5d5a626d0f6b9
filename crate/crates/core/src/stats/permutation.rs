// SPDX-License-Identifier: MIT OR Apache-2.0

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rank::{midranks, pearson};
use super::rng::stream_rng;
use crate::error::{Error, Result};

/// `n!`, or `None` once it no longer fits in a `u64`.
pub fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// Visit every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        f(&perm);
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("pivot exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// Rank correlation with a two-sided permutation p-value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTest {
    pub rho: f64,
    pub p_value: f64,
    pub n: usize,
    pub n_permutations: u64,
    pub exhaustive: bool,
}

/// Spearman rho between `x` and `y` with a two-sided permutation p-value.
///
/// When `n!` does not exceed `n_permutations` every relabelling of `y` is
/// enumerated and `p = #{|rho_perm| >= |rho|} / n!`. Otherwise `y` is
/// shuffled `n_permutations` times and `p = (1 + #{...}) / (1 + B)`.
pub fn spearman_permutation_test(
    x: &[f64],
    y: &[f64],
    n_permutations: usize,
    seed: u64,
) -> Result<CorrelationTest> {
    if x.len() != y.len() {
        return Err(Error::Validation("correlation inputs differ in length".into()));
    }
    if x.len() < 3 {
        return Err(Error::TooFewItems(format!(
            "need at least 3 pairs, got {}",
            x.len()
        )));
    }
    if n_permutations == 0 {
        return Err(Error::Config("permutation count must be >= 1".into()));
    }
    let rx = midranks(x);
    let ry = midranks(y);
    let rho = pearson(&rx, &ry)?;
    let n = x.len();
    let cx = centered(&rx);
    let cy = centered(&ry);
    let denom = (dot(&cx, &cx) * dot(&cy, &cy)).sqrt();
    let threshold = rho.abs() - 1e-12;
    let stat = |perm: &[usize]| -> f64 {
        perm.iter()
            .enumerate()
            .map(|(i, &p)| cx[i] * cy[p])
            .sum::<f64>()
            / denom
    };

    match factorial(n).filter(|&f| f <= n_permutations as u64) {
        Some(total) => {
            let mut hits = 0u64;
            for_each_permutation(n, |perm| {
                if stat(perm).abs() >= threshold {
                    hits += 1;
                }
            });
            Ok(CorrelationTest {
                rho,
                p_value: hits as f64 / total as f64,
                n,
                n_permutations: total,
                exhaustive: true,
            })
        }
        None => {
            let hits: u64 = (0..n_permutations as u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = stream_rng(seed, i);
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.shuffle(&mut rng);
                    u64::from(stat(&perm).abs() >= threshold)
                })
                .sum();
            Ok(CorrelationTest {
                rho,
                p_value: (1 + hits) as f64 / (1 + n_permutations) as f64,
                n,
                n_permutations: n_permutations as u64,
                exhaustive: false,
            })
        }
    }
}

fn centered(x: &[f64]) -> Vec<f64> {
    let m = x.iter().sum::<f64>() / x.len() as f64;
    x.iter().map(|v| v - m).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
