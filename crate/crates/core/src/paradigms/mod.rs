// SPDX-License-Identifier: MIT OR Apache-2.0

//! Analysis orchestrators. Each takes loaded bundles or trials and returns
//! serializable per-layer results; the [`cli`](crate::cli) module wraps
//! them into results documents.

mod crossmodel;
mod discrimination;
mod h4;
mod identification;
mod manifold;
mod patching;
mod precision;
mod rsa;

pub use crossmodel::{
    boundary_ratio_e4, cross_model_dissociation, lambda_beta_correlation, run_lambda_beta,
    LambdaBetaLayer, LambdaBetaRun, ModelSummary,
};
pub use discrimination::{run_discrimination, BinComparison, DiscriminationResult};
pub use h4::{run_h4, H4LayerResult};
pub use identification::{
    run_identification, CrossoverDelta, FramingCurve, IdentificationResult, MIN_CROSSOVER_SWING,
};
pub use manifold::{
    manifold_profile, manifold_rotation, phase_reset, ManifoldProfile, PhaseReset, DEFAULT_E7_WINDOW,
};
pub use patching::{
    build_patch_vectors, direction_validity, read_patch_effects, run_probe, specificity_ratio,
    summarize_patch_effects, DirectionValidity, PatchEffect, PatchEffectSummary, PatchVectorSet,
    ProbeLayer, DEFAULT_ALPHAS, DEFAULT_RANDOM_CONTROLS,
};
pub use precision::{precision_profile, run_precision, PrecisionLayer};
pub use rsa::{reference_kind, run_rsa, RsaLayerResult, RsaOptions, RsaRun};

use crate::error::{Error, Result};

/// Default "primary" layers: every non-embedding layer, or layer 0 for a
/// single-layer bundle.
pub fn primary_layers(n_layers: usize) -> Vec<usize> {
    if n_layers > 1 {
        (1..n_layers).collect()
    } else {
        vec![0]
    }
}

/// Check that every requested layer exists.
pub fn check_layers(layers: &[usize], n_layers: usize) -> Result<()> {
    if layers.is_empty() {
        return Err(Error::EmptyInput("no layers selected".into()));
    }
    match layers.iter().find(|&&l| l >= n_layers) {
        Some(l) => Err(Error::Index(format!(
            "layer {l} out of range for a {n_layers}-layer bundle"
        ))),
        None => Ok(()),
    }
}
