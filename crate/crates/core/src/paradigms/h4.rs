// SPDX-License-Identifier: MIT OR Apache-2.0

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_layers, reference_kind};
use crate::data::HiddenStateBundle;
use crate::error::{Error, Result};
use crate::fitting::{hierarchical_regression, HierarchicalRegressionResult};
use crate::geometry::{compute_centroids, condensed_pairs, empirical_rdm, theoretical_rdm, Metric, TheoreticalRdmSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct H4LayerResult {
    pub layer: usize,
    #[serde(flatten)]
    pub regression: HierarchicalRegressionResult,
}

/// Hierarchical regression of each layer's empirical distances on log
/// distance, then log distance plus the boundary-crossing indicator.
pub fn run_h4(bundle: &HiddenStateBundle, metric: Metric, layers: &[usize]) -> Result<Vec<H4LayerResult>> {
    check_layers(layers, bundle.n_layers())?;
    let stimuli = bundle.stimuli();
    if stimuli.boundary().is_none() {
        return Err(Error::Validation(format!(
            "'{}' has no boundary to test",
            stimuli.condition()
        )));
    }
    let base = theoretical_rdm(stimuli, &TheoreticalRdmSpec::new(reference_kind(stimuli)))?;
    let values = stimuli.values();
    let flags: Vec<bool> = condensed_pairs(stimuli.len())
        .into_iter()
        .map(|(i, j)| stimuli.is_cross(values[i], values[j]))
        .collect();
    layers
        .par_iter()
        .map(|&layer| {
            let empirical = empirical_rdm(&compute_centroids(bundle, layer)?, metric)?;
            Ok(H4LayerResult {
                layer,
                regression: hierarchical_regression(empirical.entries(), base.entries(), &flags)?,
            })
        })
        .collect()
}
