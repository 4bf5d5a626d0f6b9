// SPDX-License-Identifier: MIT OR Apache-2.0

//! Across-model and across-layer correlations between behavioural and
//! geometric summaries.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check_layers;
use super::rsa::reference_kind;
use crate::data::HiddenStateBundle;
use crate::error::{Error, Result};
use crate::geometry::{compute_centroids, empirical_rdm, fit_lambda, theoretical_rdm, Metric, TheoreticalRdmSpec};
use crate::stats::{spearman_permutation_test, spearman_rho, CorrelationTest};

const MIN_ITEMS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub model_id: String,
    /// Fitted identification slope.
    pub id_slope: f64,
    /// Mean CP advantage Δρ over layers.
    pub cp_strength: f64,
}

fn correlate(x: &[f64], y: &[f64], what: &str, n_permutations: usize, seed: u64) -> Result<CorrelationTest> {
    if x.len() < MIN_ITEMS {
        return Err(Error::TooFewItems(format!(
            "{what} needs at least {MIN_ITEMS} items, got {}",
            x.len()
        )));
    }
    spearman_permutation_test(x, y, n_permutations, seed)
}

/// Does identification sharpness predict geometric CP strength?
pub fn cross_model_dissociation(summaries: &[ModelSummary], n_permutations: usize, seed: u64) -> Result<CorrelationTest> {
    let slopes: Vec<f64> = summaries.iter().map(|s| s.id_slope).collect();
    let strengths: Vec<f64> = summaries.iter().map(|s| s.cp_strength).collect();
    correlate(&slopes, &strengths, "cross-model dissociation", n_permutations, seed)
}

pub fn lambda_beta_correlation(lambdas: &[f64], betas: &[f64], n_permutations: usize, seed: u64) -> Result<CorrelationTest> {
    if lambdas.len() != betas.len() {
        return Err(Error::Validation("λ and β series differ in length".into()));
    }
    correlate(lambdas, betas, "λ-β correlation", n_permutations, seed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaBetaLayer {
    pub layer: usize,
    /// Grid-fit CP-additive λ.
    pub lambda: f64,
    /// ρ achieved at that λ.
    pub lambda_rho: f64,
    /// ρ of the continuous reference model.
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaBetaRun {
    pub per_layer: Vec<LambdaBetaLayer>,
    pub correlation: CorrelationTest,
}

pub fn run_lambda_beta(
    bundle: &HiddenStateBundle,
    metric: Metric,
    layers: &[usize],
    grid: &[f64],
    n_permutations: usize,
    seed: u64,
) -> Result<LambdaBetaRun> {
    check_layers(layers, bundle.n_layers())?;
    let stimuli = bundle.stimuli();
    let reference = theoretical_rdm(stimuli, &TheoreticalRdmSpec::new(reference_kind(stimuli)))?;
    let per_layer = layers
        .par_iter()
        .map(|&layer| {
            let rdm = empirical_rdm(&compute_centroids(bundle, layer)?, metric)?;
            let fit = fit_lambda(&rdm, stimuli, grid)?;
            Ok(LambdaBetaLayer {
                layer,
                lambda: fit.lambda,
                lambda_rho: fit.rho,
                beta: spearman_rho(rdm.entries(), reference.entries())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let lambdas: Vec<f64> = per_layer.iter().map(|l| l.lambda).collect();
    let betas: Vec<f64> = per_layer.iter().map(|l| l.beta).collect();
    let correlation = lambda_beta_correlation(&lambdas, &betas, n_permutations, seed)?;
    Ok(LambdaBetaRun { per_layer, correlation })
}

/// Ratio of the decade-100 to the decade-10 mean CP advantage.
pub fn boundary_ratio_e4(decade10_advantage: f64, decade100_advantage: f64) -> Result<f64> {
    if decade10_advantage == 0.0 {
        return Err(Error::DegenerateInput("decade-10 advantage is zero".into()));
    }
    Ok(decade100_advantage / decade10_advantage)
}
