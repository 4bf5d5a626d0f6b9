// SPDX-License-Identifier: MIT OR Apache-2.0

//! Domain types and the on-disk formats shared with the extractor.

mod bundle;
mod results;
mod stimulus;
mod trials;

pub use bundle::{read_bundle, write_bundle, BundleHeader, BundleRole, HiddenStateBundle, MAGIC};
pub use results::{file_digest, write_atomic, InputDigest, ResultsDocument};
pub use stimulus::{DomainKind, StimulusSet};
pub use trials::{assign_distance_bins, read_trials, write_trials, Order, TrialRecord, N_DISTANCE_BINS};

/// Carrier-sentence indices reserved for identification prompts. RSA
/// bundles must not reuse them.
pub const IDENTIFICATION_SENTENCES: [usize; 4] = [0, 1, 2, 3];

/// Carrier-sentence indices used for RSA centroids.
pub const RSA_SENTENCES: [usize; 4] = [4, 5, 6, 7];
