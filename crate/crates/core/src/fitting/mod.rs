// SPDX-License-Identifier: MIT OR Apache-2.0

//! Least-squares machinery.

mod ols;
mod pca;
mod ridge;
mod sigmoid;

pub use ols::{hierarchical_regression, ols_fit, HierarchicalRegressionResult, OlsFit};
pub use pca::top_principal_component;
pub use ridge::{ridge_probe, ridge_probe_with, ProbeResult, RidgeOptions, DEFAULT_RIDGE_PENALTY};
pub use sigmoid::{fit_sigmoid, logistic, SigmoidFit, SIGMOID_MAX_ITER};
