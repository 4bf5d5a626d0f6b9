// SPDX-License-Identifier: MIT OR Apache-2.0

//! Precision gradient: reciprocal adjacent-stimulus distance, and the ratio
//! of the boundary step to the other steps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check_layers;
use crate::data::{HiddenStateBundle, StimulusSet};
use crate::error::{Error, Result};
use crate::geometry::{adjacent_distances, compute_centroids, CentroidSet, Metric};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrecisionLayer {
    pub layer: usize,
    pub adjacent_distances: Vec<f64>,
    pub precision: Vec<f64>,
    /// Index `i` of the adjacent pair `(i, i + 1)` treated as the boundary.
    pub boundary_pair: usize,
    /// Boundary-pair distance over the mean of all other adjacent distances.
    pub boundary_ratio: f64,
}

/// Adjacent pair that straddles `position`: `v_i < position <= v_{i+1}`.
fn straddling_pair(values: &[f64], position: f64) -> Option<usize> {
    values.windows(2).position(|w| w[0] < position && position <= w[1])
}

/// The boundary pair, else the pair straddling the control position, else
/// the middle pair.
pub(crate) fn focus_pair(stimuli: &StimulusSet) -> usize {
    let values = stimuli.values();
    stimuli
        .boundary()
        .or(stimuli.control_position())
        .and_then(|p| straddling_pair(values, p))
        .unwrap_or((values.len() - 2) / 2)
}

pub fn precision_profile(centroids: &CentroidSet, stimuli: &StimulusSet, metric: Metric) -> Result<PrecisionLayer> {
    if stimuli.len() < 3 {
        return Err(Error::TooFewItems("precision gradient needs at least 3 stimuli".into()));
    }
    if centroids.len() != stimuli.len() {
        return Err(Error::Validation("centroid count differs from stimulus count".into()));
    }
    let distances = adjacent_distances(centroids, metric)?;
    if let Some(i) = distances.iter().position(|&d| d <= 0.0) {
        return Err(Error::DegenerateVector(format!(
            "stimuli {i} and {} coincide (infinite precision)",
            i + 1
        )));
    }
    let pair = focus_pair(stimuli);
    let others: Vec<f64> = distances
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pair)
        .map(|(_, &d)| d)
        .collect();
    let rest_mean = others.iter().sum::<f64>() / others.len() as f64;
    Ok(PrecisionLayer {
        layer: centroids.layer(),
        precision: distances.iter().map(|d| 1.0 / d).collect(),
        boundary_ratio: distances[pair] / rest_mean,
        boundary_pair: pair,
        adjacent_distances: distances,
    })
}

pub fn run_precision(bundle: &HiddenStateBundle, metric: Metric, layers: &[usize]) -> Result<Vec<PrecisionLayer>> {
    check_layers(layers, bundle.n_layers())?;
    layers
        .par_iter()
        .map(|&layer| precision_profile(&compute_centroids(bundle, layer)?, bundle.stimuli(), metric))
        .collect()
}
