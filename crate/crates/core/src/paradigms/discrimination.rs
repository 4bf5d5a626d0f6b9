// SPDX-License-Identifier: MIT OR Apache-2.0

//! Confidence-based discrimination: |Δlogit| for cross-boundary versus
//! within-category pairs, overall and within log-distance bins.

use serde::{Deserialize, Serialize};

use crate::data::{assign_distance_bins, TrialRecord, N_DISTANCE_BINS};
use crate::error::{Error, Result};
use crate::stats::{cohens_d, mann_whitney_u, mean};

const SIG_LEVEL: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinComparison {
    pub bin: u8,
    pub n_cross: usize,
    pub n_within: usize,
    pub delta_conf: Option<f64>,
    pub cohens_d: Option<f64>,
    pub mw_p: Option<f64>,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationResult {
    pub n_cross: usize,
    pub n_within: usize,
    pub conf_cross: f64,
    pub conf_within: f64,
    pub delta_conf: f64,
    pub cohens_d: f64,
    pub mw_u: f64,
    pub mw_p: f64,
    pub bins: Vec<BinComparison>,
    /// Bins with a significant difference at p < .05.
    pub sig_bins: usize,
}

fn split(trials: &[&TrialRecord]) -> (Vec<f64>, Vec<f64>) {
    let mut cross = Vec::new();
    let mut within = Vec::new();
    for t in trials {
        if t.is_cross_boundary {
            cross.push(t.abs_delta_logit);
        } else {
            within.push(t.abs_delta_logit);
        }
    }
    (cross, within)
}

/// Compare cross-boundary and within-category confidence. Trials without a
/// distance bin are binned first (six equal-count bins over the whole list).
/// A bin with fewer than two trials in either group, or with no variation,
/// is reported but not tested.
pub fn run_discrimination(trials: &[TrialRecord]) -> Result<DiscriminationResult> {
    let mut owned;
    let trials = if trials.iter().any(|t| t.distance_bin.is_none()) {
        owned = trials.to_vec();
        assign_distance_bins(&mut owned);
        &owned[..]
    } else {
        trials
    };
    let all: Vec<&TrialRecord> = trials.iter().collect();
    let (cross, within) = split(&all);
    if cross.is_empty() || within.is_empty() {
        return Err(Error::DegenerateInput(format!(
            "need both cross-boundary and within-category trials ({} cross, {} within)",
            cross.len(),
            within.len()
        )));
    }
    let d = cohens_d(&cross, &within)?;
    let mw = mann_whitney_u(&cross, &within)?;

    let bins: Vec<BinComparison> = (0..N_DISTANCE_BINS as u8)
        .map(|bin| {
            let members: Vec<&TrialRecord> = trials.iter().filter(|t| t.distance_bin == Some(bin)).collect();
            let (c, w) = split(&members);
            let testable = c.len() >= 2 && w.len() >= 2;
            let d = testable.then(|| cohens_d(&c, &w).ok()).flatten();
            let p = testable
                .then(|| mann_whitney_u(&c, &w).ok().map(|m| m.p_two_sided))
                .flatten();
            BinComparison {
                bin,
                n_cross: c.len(),
                n_within: w.len(),
                delta_conf: (!c.is_empty() && !w.is_empty()).then(|| mean(&c) - mean(&w)),
                cohens_d: d,
                mw_p: p,
                significant: p.is_some_and(|p| p < SIG_LEVEL),
            }
        })
        .collect();
    let conf_cross = mean(&cross);
    let conf_within = mean(&within);
    Ok(DiscriminationResult {
        n_cross: cross.len(),
        n_within: within.len(),
        conf_cross,
        conf_within,
        delta_conf: conf_cross - conf_within,
        cohens_d: d,
        mw_u: mw.u,
        mw_p: mw.p_two_sided,
        sig_bins: bins.iter().filter(|b| b.significant).count(),
        bins,
    })
}
