// SPDX-License-Identifier: MIT OR Apache-2.0

//! Centroids, empirical and theoretical RDMs, and boundary-boost fitting.

mod centroids;
mod rdm;
mod theoretical;

pub use centroids::{compute_centroids, CentroidSet};
pub use rdm::{adjacent_distances, condensed_index, condensed_len, condensed_pairs, distance, empirical_rdm, Metric, Rdm};
pub use theoretical::{default_lambda_grid, fit_lambda, theoretical_rdm, LambdaFit, TheoreticalKind, TheoreticalRdmSpec};
