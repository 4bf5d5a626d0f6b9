// SPDX-License-Identifier: MIT OR Apache-2.0

//! One-sided Mantel test on condensed RDMs with Spearman as the statistic.
//!
//! Relabelling the stimuli of an RDM permutes its entries, and mid-ranks
//! commute with permutation, so the entry ranks are computed once and each
//! permutation costs a single gather-and-dot over the condensed vector.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::permutation::{factorial, for_each_permutation};
use super::rank::midranks;
use super::rng::stream_rng;
use crate::error::{Error, Result};
use crate::geometry::{condensed_index, condensed_pairs, Rdm};

/// Tolerance when comparing a permuted statistic with the observed one.
const TIE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MantelResult {
    pub rho_observed: f64,
    pub p_value: f64,
    /// Monte Carlo draws, or `n!` when every relabelling was enumerated.
    pub n_permutations: u64,
    pub seed: u64,
    pub exhaustive: bool,
}

/// Mantel test of positive association between `rdm_a` and `rdm_b`.
///
/// Each permutation relabels the stimuli of `rdm_b` (rows and columns
/// together). With `B` Monte Carlo draws `p = (1 + #{rho_perm >= rho}) /
/// (1 + B)`. If `n! <= B` all `n!` relabellings are enumerated instead and
/// `p = #{rho_perm >= rho} / n!`, the identity included.
pub fn mantel_test(rdm_a: &Rdm, rdm_b: &Rdm, n_permutations: usize, seed: u64) -> Result<MantelResult> {
    let n = rdm_a.n();
    if rdm_b.n() != n {
        return Err(Error::Validation(format!(
            "RDM sizes differ ({n} vs {})",
            rdm_b.n()
        )));
    }
    if n < 4 {
        return Err(Error::TooFewItems(format!(
            "Mantel test needs at least 4 items, got {n}"
        )));
    }
    if n_permutations == 0 {
        return Err(Error::Config("permutation count must be >= 1".into()));
    }

    let ra = centered(midranks(rdm_a.entries()));
    let rb = centered(midranks(rdm_b.entries()));
    let denom = (dot(&ra, &ra) * dot(&rb, &rb)).sqrt();
    if denom <= 0.0 {
        return Err(Error::DegenerateInput(
            "an RDM with all entries tied has no rank variance".into(),
        ));
    }
    let rho_observed = (dot(&ra, &rb) / denom).clamp(-1.0, 1.0);
    let pairs = condensed_pairs(n);
    let permuted_rho = |perm: &[usize]| -> f64 {
        pairs
            .iter()
            .zip(&ra)
            .map(|(&(i, j), a)| {
                let (pi, pj) = (perm[i], perm[j]);
                let k = if pi < pj {
                    condensed_index(n, pi, pj)
                } else {
                    condensed_index(n, pj, pi)
                };
                a * rb[k]
            })
            .sum::<f64>()
            / denom
    };
    let threshold = rho_observed - TIE_EPS;

    if let Some(total) = factorial(n).filter(|&f| f <= n_permutations as u64) {
        let mut hits = 0u64;
        for_each_permutation(n, |perm| {
            if permuted_rho(perm) >= threshold {
                hits += 1;
            }
        });
        return Ok(MantelResult {
            rho_observed,
            p_value: hits as f64 / total as f64,
            n_permutations: total,
            seed,
            exhaustive: true,
        });
    }

    let hits: u64 = (0..n_permutations as u64)
        .into_par_iter()
        .map_init(
            || (0..n).collect::<Vec<usize>>(),
            |perm, i| {
                let mut rng = stream_rng(seed, i);
                for (k, p) in perm.iter_mut().enumerate() {
                    *p = k;
                }
                perm.shuffle(&mut rng);
                u64::from(permuted_rho(perm) >= threshold)
            },
        )
        .sum();
    Ok(MantelResult {
        rho_observed,
        p_value: (1 + hits) as f64 / (1 + n_permutations) as f64,
        n_permutations: n_permutations as u64,
        seed,
        exhaustive: false,
    })
}

fn centered(mut x: Vec<f64>) -> Vec<f64> {
    let m = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= m);
    x
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::spearman_rho;

    fn rdm(n: usize, entries: Vec<f64>) -> Rdm {
        Rdm::new(n, entries, "test").unwrap()
    }

    #[test]
    fn single_permutation_p_is_half_or_one() {
        let a = rdm(5, (0..10).map(|i| (i * 3 % 10) as f64).collect());
        let b = rdm(5, (0..10).map(|i| (i * 7 % 10) as f64).collect());
        for seed in 0..20 {
            let r = mantel_test(&a, &b, 1, seed).unwrap();
            assert!(r.p_value == 0.5 || r.p_value == 1.0);
        }
    }

    #[test]
    fn observed_rho_is_spearman_of_entries() {
        let a = rdm(5, (0..10).map(|i| 1.0 + (i as f64).sin()).collect());
        let b = rdm(5, (0..10).map(|i| 1.0 + (i as f64 * 0.7).cos()).collect());
        let r = mantel_test(&a, &b, 10, 1).unwrap();
        let direct = spearman_rho(a.entries(), b.entries()).unwrap();
        assert!((r.rho_observed - direct).abs() < 1e-12);
    }

    #[test]
    fn too_few_items() {
        let a = rdm(3, vec![1.0, 2.0, 3.0]);
        assert!(matches!(mantel_test(&a, &a, 10, 0), Err(Error::TooFewItems(_))));
    }

    #[test]
    fn joint_relabelling_leaves_rho_unchanged() {
        let n = 6;
        let a = rdm(n, (0..15).map(|i| ((i * 5 + 2) % 15) as f64).collect());
        let b = rdm(n, (0..15).map(|i| ((i * 4 + 1) % 15) as f64 + 0.5).collect());
        let perm = [3, 0, 5, 1, 4, 2];
        let relabel = |r: &Rdm| {
            let mut e = vec![0.0; r.entries().len()];
            for (k, &(i, j)) in condensed_pairs(n).iter().enumerate() {
                e[k] = r.get(perm[i], perm[j]);
            }
            Rdm::new(n, e, "p").unwrap()
        };
        let r0 = mantel_test(&a, &b, 50, 3).unwrap().rho_observed;
        let r1 = mantel_test(&relabel(&a), &relabel(&b), 50, 3).unwrap().rho_observed;
        assert!((r0 - r1).abs() < 1e-12);
    }
}
