// SPDX-License-Identifier: MIT OR Apache-2.0

//! Planted-geometry generator.
//!
//! At every layer the stimuli sit on a circular arc of radius `R` in a
//! random plane, at angles proportional to their log magnitude. Stimuli at
//! or above the boundary are additionally displaced by `λ_t` along a third
//! direction orthogonal to that plane. Sentence vectors add isotropic
//! Gaussian noise to the stimulus centre. All randomness is drawn from
//! per-layer ChaCha substreams of the generator seed.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::data::{BundleRole, HiddenStateBundle, StimulusSet, RSA_SENTENCES};
use crate::error::{Error, Result};
use crate::stats::rng::{stream_rng, substream_seed};

/// How stimulus values map onto arc angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcSpacing {
    /// Angle proportional to log magnitude (the default).
    Log,
    /// Angle proportional to the raw value; equally spaced values give
    /// equal adjacent chords.
    Linear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub model_id: String,
    pub stimuli: StimulusSet,
    pub n_layers: usize,
    pub n_sentences: usize,
    pub dim: usize,
    pub radius: f64,
    /// Total arc angle in radians, in (0, π).
    pub arc_span: f64,
    pub lambda_true: f64,
    pub noise_sigma: f64,
    pub seed: u64,
    pub spacing: ArcSpacing,
    /// Per-layer override of `lambda_true`.
    pub layer_lambdas: Option<Vec<f64>>,
    /// Per-layer override of `noise_sigma`.
    pub layer_sigmas: Option<Vec<f64>>,
}

impl SynthSpec {
    /// Defaults: 33 layers, 4 sentences, 64 dimensions, unit radius,
    /// arc span π/3, no boost, no noise, seed 42.
    pub fn new(stimuli: StimulusSet) -> Self {
        SynthSpec {
            model_id: "synthetic".into(),
            stimuli,
            n_layers: 33,
            n_sentences: 4,
            dim: 64,
            radius: 1.0,
            arc_span: std::f64::consts::FRAC_PI_3,
            lambda_true: 0.0,
            noise_sigma: 0.0,
            seed: 42,
            spacing: ArcSpacing::Log,
            layer_lambdas: None,
            layer_sigmas: None,
        }
    }

    pub fn lambda(mut self, lambda_true: f64) -> Self {
        self.lambda_true = lambda_true;
        self
    }

    pub fn sigma(mut self, noise_sigma: f64) -> Self {
        self.noise_sigma = noise_sigma;
        self
    }

    pub fn layers(mut self, n_layers: usize) -> Self {
        self.n_layers = n_layers;
        self
    }

    pub fn dim(mut self, dim: usize) -> Self {
        self.dim = dim;
        self
    }

    pub fn sentences(mut self, n_sentences: usize) -> Self {
        self.n_sentences = n_sentences;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn spacing(mut self, spacing: ArcSpacing) -> Self {
        self.spacing = spacing;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Validation(m));
        if self.dim < 3 {
            return fail(format!("dim must be >= 3, got {}", self.dim));
        }
        if self.n_layers == 0 || self.n_sentences == 0 {
            return fail("layers and sentences must be >= 1".into());
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return fail(format!("radius must be positive, got {}", self.radius));
        }
        if !(self.arc_span > 0.0 && self.arc_span < std::f64::consts::PI) {
            return fail(format!("arc span must lie in (0, π), got {}", self.arc_span));
        }
        for (name, profile, scalar) in [
            ("lambda", &self.layer_lambdas, self.lambda_true),
            ("sigma", &self.layer_sigmas, self.noise_sigma),
        ] {
            if !(scalar.is_finite() && scalar >= 0.0) {
                return fail(format!("{name} must be finite and >= 0"));
            }
            if let Some(p) = profile {
                if p.len() != self.n_layers {
                    return fail(format!(
                        "{name} profile has {} entries for {} layers",
                        p.len(),
                        self.n_layers
                    ));
                }
                if p.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                    return fail(format!("{name} profile entries must be finite and >= 0"));
                }
            }
        }
        self.stimuli.validate()
    }

    fn layer_lambda(&self, layer: usize) -> f64 {
        self.layer_lambdas.as_ref().map_or(self.lambda_true, |p| p[layer])
    }

    fn layer_sigma(&self, layer: usize) -> f64 {
        self.layer_sigmas.as_ref().map_or(self.noise_sigma, |p| p[layer])
    }

    /// Arc angle of every stimulus.
    pub fn angles(&self) -> Result<Vec<f64>> {
        let coords = match self.spacing {
            ArcSpacing::Log => self.stimuli.log_values()?,
            ArcSpacing::Linear => self.stimuli.values().to_vec(),
        };
        let (lo, hi) = (coords[0], coords[coords.len() - 1]);
        Ok(coords
            .iter()
            .map(|c| self.arc_span * (c - lo) / (hi - lo))
            .collect())
    }

    /// Boost that makes the boundary step `ratio` times as long as every
    /// other adjacent step. Needs linear spacing over equally spaced values,
    /// where all noise-free chords are equal.
    pub fn boost_for_step_ratio(&self, ratio: f64) -> Result<f64> {
        if self.spacing != ArcSpacing::Linear {
            return Err(Error::Config("step ratio needs linear arc spacing".into()));
        }
        let v = self.stimuli.values();
        let step = v[1] - v[0];
        if v.windows(2).any(|w| ((w[1] - w[0]) - step).abs() > 1e-9 * step) {
            return Err(Error::Config("step ratio needs equally spaced values".into()));
        }
        if ratio.is_nan() || ratio < 1.0 {
            return Err(Error::Config(format!("step ratio must be >= 1, got {ratio}")));
        }
        let dtheta = self.arc_span / (v.len() - 1) as f64;
        let chord = 2.0 * self.radius * (dtheta / 2.0).sin();
        Ok(chord * (ratio * ratio - 1.0).sqrt())
    }
}

fn gaussian_vector(rng: &mut impl rand::Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| StandardNormal.sample(rng)).collect()
}

/// Three mutually orthonormal vectors by Gram-Schmidt on Gaussian draws.
fn orthonormal_triple(rng: &mut impl rand::Rng, dim: usize) -> [Vec<f64>; 3] {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(3);
    while basis.len() < 3 {
        let mut v = gaussian_vector(rng, dim);
        for b in &basis {
            let proj: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= proj * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            v.iter_mut().for_each(|x| *x /= norm);
            basis.push(v);
        }
    }
    let [a, b, c]: [Vec<f64>; 3] = basis.try_into().expect("three vectors");
    [a, b, c]
}

/// Noise-free stimulus centres at one layer.
pub fn layer_centres(spec: &SynthSpec, layer: usize) -> Result<Vec<Vec<f64>>> {
    spec.validate()?;
    let mut rng = stream_rng(substream_seed(spec.seed, layer as u64), 0);
    let [u1, u2, shift] = orthonormal_triple(&mut rng, spec.dim);
    let lambda = spec.layer_lambda(layer);
    let angles = spec.angles()?;
    Ok(spec
        .stimuli
        .values()
        .iter()
        .zip(&angles)
        .map(|(&v, &theta)| {
            let boost = if spec.stimuli.category_of(v) == Some(1) {
                lambda
            } else {
                0.0
            };
            (0..spec.dim)
                .map(|d| spec.radius * (theta.cos() * u1[d] + theta.sin() * u2[d]) + boost * shift[d])
                .collect()
        })
        .collect())
}

/// Generate an RSA-role bundle from `spec`.
pub fn generate(spec: &SynthSpec) -> Result<HiddenStateBundle> {
    spec.validate()?;
    let (n, s, d) = (spec.stimuli.len(), spec.n_sentences, spec.dim);
    let mut tensor = Vec::with_capacity(spec.n_layers * n * s * d);
    for layer in 0..spec.n_layers {
        let centres = layer_centres(spec, layer)?;
        let sigma = spec.layer_sigma(layer);
        let mut noise_rng = stream_rng(substream_seed(spec.seed, layer as u64), 1);
        for centre in &centres {
            for _ in 0..s {
                for &c in centre {
                    let z: f64 = StandardNormal.sample(&mut noise_rng);
                    tensor.push((c + sigma * z) as f32);
                }
            }
        }
    }
    let sentence_indices = (0..s).map(|i| RSA_SENTENCES[0] + i).collect();
    let bundle = HiddenStateBundle::new(
        spec.model_id.clone(),
        spec.stimuli.clone(),
        BundleRole::Rsa,
        spec.n_layers,
        s,
        d,
        sentence_indices,
        tensor,
    )?;
    Ok(bundle.with_token_position("synthetic"))
}
