// SPDX-License-Identifier: MIT OR Apache-2.0

//! Hidden-state bundle: a single file holding every layer's activations for
//! one model and one stimulus condition.
//!
//! Layout:
//!
//! ```text
//! "CPB1" | header length (u32 LE) | UTF-8 JSON header | f32 LE payload
//! ```
//!
//! The payload is ordered `[layer][stimulus][sentence][dim]`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::stimulus::{DomainKind, StimulusSet};
use super::IDENTIFICATION_SENTENCES;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"CPB1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleRole {
    Rsa,
    Identification,
}

/// JSON header stored after the magic bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleHeader {
    pub model_id: String,
    pub condition: String,
    #[serde(default = "default_domain")]
    pub domain: DomainKind,
    pub role: BundleRole,
    pub layers: usize,
    pub sentences: usize,
    pub hidden_dim: usize,
    pub stimuli: Vec<f64>,
    pub boundary: Option<f64>,
    #[serde(default)]
    pub control_position: Option<f64>,
    pub sentence_indices: Vec<usize>,
    /// Which token position the extractor read hidden states from.
    #[serde(default)]
    pub token_position: Option<String>,
}

fn default_domain() -> DomainKind {
    DomainKind::Numerical
}

/// Activations for every (layer, stimulus, sentence) triple.
#[derive(Debug, Clone, PartialEq)]
pub struct HiddenStateBundle {
    model_id: String,
    stimuli: StimulusSet,
    role: BundleRole,
    n_layers: usize,
    n_sentences: usize,
    hidden_dim: usize,
    sentence_indices: Vec<usize>,
    token_position: Option<String>,
    tensor: Vec<f32>,
}

impl HiddenStateBundle {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        model_id: impl Into<String>,
        stimuli: StimulusSet,
        role: BundleRole,
        n_layers: usize,
        n_sentences: usize,
        hidden_dim: usize,
        sentence_indices: Vec<usize>,
        tensor: Vec<f32>,
    ) -> Result<Self> {
        let bundle = HiddenStateBundle {
            model_id: model_id.into(),
            stimuli,
            role,
            n_layers,
            n_sentences,
            hidden_dim,
            sentence_indices,
            token_position: None,
            tensor,
        };
        bundle.validate()?;
        Ok(bundle)
    }

    pub fn with_token_position(mut self, policy: impl Into<String>) -> Self {
        self.token_position = Some(policy.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.stimuli.validate()?;
        if self.n_layers == 0 || self.n_sentences == 0 || self.hidden_dim == 0 {
            return Err(Error::Validation(format!(
                "layers, sentences and hidden_dim must all be >= 1 (got {}, {}, {})",
                self.n_layers, self.n_sentences, self.hidden_dim
            )));
        }
        let expected = self.expected_len()?;
        if self.tensor.len() != expected {
            return Err(Error::Validation(format!(
                "tensor has {} entries, shape implies {expected}",
                self.tensor.len()
            )));
        }
        if let Some(pos) = self.tensor.iter().position(|x| !x.is_finite()) {
            return Err(Error::Validation(format!(
                "non-finite activation at flat index {pos}"
            )));
        }
        if self.sentence_indices.len() != self.n_sentences {
            return Err(Error::Validation(format!(
                "{} sentence indices for {} sentences",
                self.sentence_indices.len(),
                self.n_sentences
            )));
        }
        let mut sorted = self.sentence_indices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("duplicate sentence index".into()));
        }
        if self.role == BundleRole::Rsa {
            if let Some(i) = self
                .sentence_indices
                .iter()
                .find(|i| IDENTIFICATION_SENTENCES.contains(i))
            {
                return Err(Error::Validation(format!(
                    "RSA bundle uses identification sentence {i}"
                )));
            }
        }
        Ok(())
    }

    fn expected_len(&self) -> Result<usize> {
        [self.stimuli.len(), self.n_sentences, self.hidden_dim]
            .iter()
            .try_fold(self.n_layers, |acc, &x| acc.checked_mul(x))
            .ok_or_else(|| Error::Validation("bundle shape overflows".into()))
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn stimuli(&self) -> &StimulusSet {
        &self.stimuli
    }

    pub fn role(&self) -> BundleRole {
        self.role
    }

    pub fn n_layers(&self) -> usize {
        self.n_layers
    }

    pub fn n_stimuli(&self) -> usize {
        self.stimuli.len()
    }

    pub fn n_sentences(&self) -> usize {
        self.n_sentences
    }

    pub fn hidden_dim(&self) -> usize {
        self.hidden_dim
    }

    pub fn sentence_indices(&self) -> &[usize] {
        &self.sentence_indices
    }

    pub fn token_position(&self) -> Option<&str> {
        self.token_position.as_deref()
    }

    /// Flat `[layer][stimulus][sentence][dim]` payload.
    pub fn tensor(&self) -> &[f32] {
        &self.tensor
    }

    /// Activation vector for one (layer, stimulus, sentence).
    pub fn vector(&self, layer: usize, stimulus: usize, sentence: usize) -> &[f32] {
        let d = self.hidden_dim;
        let start = ((layer * self.n_stimuli() + stimulus) * self.n_sentences + sentence) * d;
        &self.tensor[start..start + d]
    }

    pub fn header(&self) -> BundleHeader {
        BundleHeader {
            model_id: self.model_id.clone(),
            condition: self.stimuli.condition().to_string(),
            domain: self.stimuli.domain(),
            role: self.role,
            layers: self.n_layers,
            sentences: self.n_sentences,
            hidden_dim: self.hidden_dim,
            stimuli: self.stimuli.values().to_vec(),
            boundary: self.stimuli.boundary(),
            control_position: self.stimuli.control_position(),
            sentence_indices: self.sentence_indices.clone(),
            token_position: self.token_position.clone(),
        }
    }

    /// Serialize to the on-disk byte layout.
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        self.validate()?;
        let header = serde_json::to_vec(&self.header())
            .map_err(|e| Error::Format(format!("header encoding: {e}")))?;
        let header_len = u32::try_from(header.len())
            .map_err(|_| Error::Format("header longer than 4 GiB".into()))?;
        let mut out = Vec::with_capacity(8 + header.len() + 4 * self.tensor.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&header_len.to_le_bytes());
        out.extend_from_slice(&header);
        for x in &self.tensor {
            out.extend_from_slice(&x.to_le_bytes());
        }
        Ok(out)
    }

    /// Parse the on-disk byte layout and validate the result.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 8 {
            return Err(Error::Format("file shorter than the fixed preamble".into()));
        }
        if &bytes[..4] != MAGIC {
            return Err(Error::Format(format!(
                "bad magic {:?}, expected \"CPB1\"",
                String::from_utf8_lossy(&bytes[..4])
            )));
        }
        let header_len = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes")) as usize;
        let header_end = 8usize
            .checked_add(header_len)
            .filter(|&end| end <= bytes.len())
            .ok_or_else(|| Error::CorruptPayload("header runs past end of file".into()))?;
        let header: BundleHeader = serde_json::from_slice(&bytes[8..header_end])
            .map_err(|e| Error::Format(format!("header: {e}")))?;

        let payload = &bytes[header_end..];
        let n_values = [header.stimuli.len(), header.sentences, header.hidden_dim]
            .iter()
            .try_fold(header.layers, |acc, &x| acc.checked_mul(x))
            .and_then(|n| n.checked_mul(4))
            .ok_or_else(|| Error::CorruptPayload("declared shape overflows".into()))?;
        if payload.len() != n_values {
            return Err(Error::CorruptPayload(format!(
                "header declares {n_values} payload bytes, found {}",
                payload.len()
            )));
        }
        let tensor: Vec<f32> = payload
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().expect("4 bytes")))
            .collect();

        let stimuli = StimulusSet::new(
            header.condition,
            header.domain,
            header.stimuli,
            header.boundary,
            header.control_position,
        )?;
        let bundle = HiddenStateBundle {
            model_id: header.model_id,
            stimuli,
            role: header.role,
            n_layers: header.layers,
            n_sentences: header.sentences,
            hidden_dim: header.hidden_dim,
            sentence_indices: header.sentence_indices,
            token_position: header.token_position,
            tensor,
        };
        bundle.validate()?;
        Ok(bundle)
    }
}

pub fn read_bundle(path: impl AsRef<Path>) -> Result<HiddenStateBundle> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    HiddenStateBundle::from_bytes(&bytes)
}

pub fn write_bundle(bundle: &HiddenStateBundle, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = bundle.to_bytes()?;
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}
