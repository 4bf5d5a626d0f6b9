// SPDX-License-Identifier: MIT OR Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdrOutcome {
    pub p_values: Vec<f64>,
    pub rejected: Vec<bool>,
    pub alpha: f64,
    /// Benjamini-Hochberg adjusted p-values, in input order.
    pub q_values: Vec<f64>,
}

impl FdrOutcome {
    pub fn n_rejected(&self) -> usize {
        self.rejected.iter().filter(|&&r| r).count()
    }
}

/// Benjamini-Hochberg step-up procedure: with p-values sorted ascending,
/// find the largest `k` such that `p_(k) <= k * alpha / m` and reject the
/// `k` smallest.
pub fn bh_fdr(p_values: &[f64], alpha: f64) -> Result<FdrOutcome> {
    if p_values.is_empty() {
        return Err(Error::EmptyInput("no p-values to correct".into()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Config(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if let Some(p) = p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::Validation(format!("p-value {p} outside [0, 1]")));
    }
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p_values[a].total_cmp(&p_values[b]));

    let cutoff = (1..=m)
        .rev()
        .find(|&k| p_values[order[k - 1]] <= k as f64 * alpha / m as f64)
        .unwrap_or(0);
    let mut rejected = vec![false; m];
    for &i in &order[..cutoff] {
        rejected[i] = true;
    }

    let mut q_values = vec![0.0; m];
    let mut running = 1.0f64;
    for k in (1..=m).rev() {
        let i = order[k - 1];
        running = running.min(p_values[i] * m as f64 / k as f64);
        q_values[i] = running;
    }

    Ok(FdrOutcome {
        p_values: p_values.to_vec(),
        rejected,
        alpha,
        q_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_examples() {
        let out = bh_fdr(&[0.01, 0.02, 0.04], 0.05).unwrap();
        assert_eq!(out.rejected, vec![true, true, true]);
        let out = bh_fdr(&[0.9, 0.95], 0.05).unwrap();
        assert_eq!(out.rejected, vec![false, false]);
        let out = bh_fdr(&[0.04], 0.05).unwrap();
        assert_eq!(out.rejected, vec![true]);
    }

    #[test]
    fn step_up_rescues_earlier_p() {
        // 0.03 > 1*.05/3 but 0.034 <= 3*.05/3, so all reject
        let out = bh_fdr(&[0.034, 0.03, 0.02], 0.05).unwrap();
        assert_eq!(out.rejected, vec![true, true, true]);
    }

    #[test]
    fn empty_input() {
        assert!(matches!(bh_fdr(&[], 0.05), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn q_values_reject_iff_below_alpha() {
        let p = [0.001, 0.2, 0.013, 0.04, 0.6, 0.011];
        let out = bh_fdr(&p, 0.05).unwrap();
        for (q, r) in out.q_values.iter().zip(&out.rejected) {
            assert_eq!(*q <= 0.05, *r);
        }
    }
}
