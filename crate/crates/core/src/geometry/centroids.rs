// SPDX-License-Identifier: MIT OR Apache-2.0

use serde::{Deserialize, Serialize};

use crate::data::HiddenStateBundle;
use crate::error::{Error, Result};

/// Per-stimulus mean hidden state at one layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentroidSet {
    layer: usize,
    vectors: Vec<Vec<f64>>,
}

impl CentroidSet {
    pub fn new(layer: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        let Some(dim) = vectors.first().map(Vec::len) else {
            return Err(Error::EmptyInput("centroid set has no vectors".into()));
        };
        if dim == 0 || vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::Validation("centroids must share a nonzero dimension".into()));
        }
        if vectors.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Validation("centroids must be finite".into()));
        }
        Ok(CentroidSet { layer, vectors })
    }

    pub fn layer(&self) -> usize {
        self.layer
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }
}

/// Average each stimulus's sentence vectors at `layer`, in 64-bit.
pub fn compute_centroids(bundle: &HiddenStateBundle, layer: usize) -> Result<CentroidSet> {
    if layer >= bundle.n_layers() {
        return Err(Error::Index(format!(
            "layer {layer} out of range for a {}-layer bundle",
            bundle.n_layers()
        )));
    }
    let s = bundle.n_sentences();
    let vectors = (0..bundle.n_stimuli())
        .map(|i| {
            let mut acc = vec![0.0f64; bundle.hidden_dim()];
            for sentence in 0..s {
                for (a, &x) in acc.iter_mut().zip(bundle.vector(layer, i, sentence)) {
                    *a += f64::from(x);
                }
            }
            acc.iter_mut().for_each(|a| *a /= s as f64);
            acc
        })
        .collect();
    CentroidSet::new(layer, vectors)
}
