// SPDX-License-Identifier: MIT OR Apache-2.0

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::rank::midranks;
use crate::error::{Error, Result};

/// Combined sample size up to which `MwMethod::Auto` enumerates exactly.
pub const EXACT_MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MwMethod {
    Auto,
    Exact,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MannWhitney {
    /// `U` for sample a: rank sum of a minus `n_a (n_a + 1) / 2`.
    pub u: f64,
    pub p_two_sided: f64,
    /// P(U <= observed) under the null.
    pub p_lower: f64,
    /// P(U >= observed) under the null.
    pub p_upper: f64,
    pub exact: bool,
}

/// Mann-Whitney U with exact enumeration for small samples and a
/// tie-corrected normal approximation otherwise.
pub fn mann_whitney_u(sample_a: &[f64], sample_b: &[f64]) -> Result<MannWhitney> {
    mann_whitney_u_with(sample_a, sample_b, MwMethod::Auto)
}

pub fn mann_whitney_u_with(sample_a: &[f64], sample_b: &[f64], method: MwMethod) -> Result<MannWhitney> {
    let (na, nb) = (sample_a.len(), sample_b.len());
    if na == 0 || nb == 0 {
        return Err(Error::EmptyInput("Mann-Whitney needs two non-empty samples".into()));
    }
    let combined: Vec<f64> = sample_a.iter().chain(sample_b).copied().collect();
    if combined.iter().all(|&v| v == combined[0]) {
        return Err(Error::DegenerateInput(
            "all values identical across both samples".into(),
        ));
    }
    let ranks = midranks(&combined);
    let offset = (na * (na + 1)) as f64 / 2.0;
    let u = ranks[..na].iter().sum::<f64>() - offset;

    let exact = match method {
        MwMethod::Exact => true,
        MwMethod::Normal => false,
        MwMethod::Auto => na + nb <= EXACT_MAX_N,
    };
    if exact {
        Ok(exact_test(&ranks, na, u, offset))
    } else {
        Ok(normal_test(&combined, na, nb, u))
    }
}

/// Enumerate every way of choosing which `na` of the pooled mid-ranks
/// belong to sample a.
fn exact_test(ranks: &[f64], na: usize, u_obs: f64, offset: f64) -> MannWhitney {
    let n = ranks.len();
    let mu = (na * (n - na)) as f64 / 2.0;
    let eps = 1e-9;
    let dev_obs = (u_obs - mu).abs();
    let (mut total, mut lower, mut upper, mut extreme) = (0u64, 0u64, 0u64, 0u64);
    let mut chosen: Vec<usize> = (0..na).collect();
    loop {
        let u = chosen.iter().map(|&i| ranks[i]).sum::<f64>() - offset;
        total += 1;
        lower += u64::from(u <= u_obs + eps);
        upper += u64::from(u >= u_obs - eps);
        extreme += u64::from((u - mu).abs() >= dev_obs - eps);
        // next combination in lexicographic order
        let Some(i) = (0..na).rev().find(|&i| chosen[i] < n - na + i) else {
            break;
        };
        chosen[i] += 1;
        for j in i + 1..na {
            chosen[j] = chosen[j - 1] + 1;
        }
    }
    let total = total as f64;
    MannWhitney {
        u: u_obs,
        p_two_sided: (extreme as f64 / total).min(1.0),
        p_lower: lower as f64 / total,
        p_upper: upper as f64 / total,
        exact: true,
    }
}

fn normal_test(combined: &[f64], na: usize, nb: usize, u: f64) -> MannWhitney {
    let n = (na + nb) as f64;
    let mu = (na * nb) as f64 / 2.0;
    let mut sorted = combined.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    let var = (na * nb) as f64 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    let sd = var.sqrt();
    let std_normal = Normal::standard();
    // continuity-corrected
    let z_abs = ((u - mu).abs() - 0.5).max(0.0) / sd;
    let p_two_sided = (2.0 * std_normal.sf(z_abs)).min(1.0);
    let p_upper = std_normal.sf((u - mu - 0.5) / sd);
    let p_lower = std_normal.cdf((u - mu + 0.5) / sd);
    MannWhitney {
        u,
        p_two_sided,
        p_lower,
        p_upper,
        exact: false,
    }
}
