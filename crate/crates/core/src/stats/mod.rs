// SPDX-License-Identifier: MIT OR Apache-2.0

//! Statistical engine: rank correlation, permutation tests, multiple
//! comparison correction, effect sizes and bootstrap intervals.

mod bootstrap;
mod effect;
mod fdr;
mod mann_whitney;
mod mantel;
mod permutation;
mod rank;
pub mod rng;

pub use bootstrap::{bootstrap_ci, percentile_nearest_rank};
pub use effect::{cohens_d, mean, sample_variance};
pub use fdr::{bh_fdr, FdrOutcome};
pub use mann_whitney::{mann_whitney_u, mann_whitney_u_with, MannWhitney, MwMethod};
pub use mantel::{mantel_test, MantelResult};
pub use permutation::{factorial, for_each_permutation, spearman_permutation_test, CorrelationTest};
pub use rank::{midranks, pearson, spearman_rho};
