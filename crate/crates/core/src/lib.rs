// SPDX-License-Identifier: MIT OR Apache-2.0

//! Categorical-perception analysis for hidden-state geometries.
//!
//! The crate turns per-layer activations of a language model (or the
//! synthetic generator in [`synth`]) into representational dissimilarity
//! matrices, compares them to log-magnitude and boundary-warped templates,
//! and runs the statistics around that comparison: Mantel permutation
//! tests, Benjamini-Hochberg correction, hierarchical regression,
//! identification curves, confidence-based discrimination, precision
//! gradients and probe-derived patch vectors.
//!
//! Module map:
//!
//! - [`data`]: stimulus sets, the bundle file format, trial files, results documents
//! - [`geometry`]: centroids, empirical and theoretical RDMs, boundary-boost fitting
//! - [`stats`]: rank correlation, permutation tests, FDR, effect sizes, bootstrap
//! - [`fitting`]: hierarchical OLS, ridge probes, logistic fits, principal components
//! - [`paradigms`]: the analysis orchestrators
//! - [`synth`]: planted-geometry generator used for end-to-end validation
//! - [`cli`]: run configuration and command execution

pub mod cli;
pub mod data;
pub mod error;
pub mod fitting;
pub mod geometry;
pub mod paradigms;
pub mod stats;
pub mod synth;

pub use error::{Error, Result};
