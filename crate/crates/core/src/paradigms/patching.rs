// SPDX-License-Identifier: MIT OR Apache-2.0

//! Probe-based steering: category directions, patch-vector construction with
//! random-direction controls, and analysis of the Δconfidence tables that
//! come back from patched forward passes.

use std::collections::BTreeMap;
use std::path::Path;

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check_layers;
use crate::data::HiddenStateBundle;
use crate::error::{Error, Result};
use crate::fitting::{ridge_probe_with, top_principal_component, ProbeResult, RidgeOptions};
use crate::geometry::{compute_centroids, CentroidSet};
use crate::stats::rng::{stream_rng, substream_seed};
use crate::stats::spearman_rho;

pub const DEFAULT_ALPHAS: [f64; 4] = [0.25, 0.5, 0.75, 1.0];
pub const DEFAULT_RANDOM_CONTROLS: usize = 10;

/// Sanity checks that the probe direction tracks the dominant category axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionValidity {
    /// Spearman ρ between centroid projections on PC1 and category labels.
    pub pc1_category_rho: f64,
    /// |cos| between the probe direction and PC1.
    pub probe_pc1_cosine: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeLayer {
    pub probe: ProbeResult,
    pub validity: DirectionValidity,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn direction_validity(centroids: &CentroidSet, labels: &[bool], probe: &ProbeResult) -> Result<DirectionValidity> {
    let pc1 = top_principal_component(centroids.vectors())?;
    let proj: Vec<f64> = centroids.vectors().iter().map(|v| dot(v, &pc1)).collect();
    let cats: Vec<f64> = labels.iter().map(|&l| f64::from(u8::from(l))).collect();
    Ok(DirectionValidity {
        pc1_category_rho: spearman_rho(&proj, &cats)?,
        probe_pc1_cosine: dot(&probe.unit_direction, &pc1).abs(),
    })
}

/// Ridge probe per layer, trained on centroid category labels.
pub fn run_probe(bundle: &HiddenStateBundle, layers: &[usize], opts: RidgeOptions) -> Result<Vec<ProbeLayer>> {
    check_layers(layers, bundle.n_layers())?;
    let labels = bundle
        .stimuli()
        .labels()
        .ok_or_else(|| Error::Validation("probe needs a stimulus set with a boundary".into()))?;
    layers
        .par_iter()
        .map(|&layer| {
            let centroids = compute_centroids(bundle, layer)?;
            let probe = ridge_probe_with(&centroids, &labels, opts)?;
            let validity = direction_validity(&centroids, &labels, &probe)?;
            Ok(ProbeLayer { probe, validity })
        })
        .collect()
}

/// Additive deltas for one layer. Index order is `[alpha][vector]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatchVectorSet {
    pub layer: usize,
    pub alpha_levels: Vec<f64>,
    pub weight_norm: f64,
    pub category_deltas: Vec<Vec<f64>>,
    /// Unit directions shared by every dose level.
    pub random_directions: Vec<Vec<f64>>,
    pub random_deltas: Vec<Vec<Vec<f64>>>,
    /// Set when no random controls were requested.
    pub empty_controls_warning: bool,
}

fn random_unit(dim: usize, seed: u64, stream: u64) -> Result<Vec<f64>> {
    let mut rng = stream_rng(seed, stream);
    let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
    let norm = dot(&v, &v).sqrt();
    if norm == 0.0 {
        return Err(Error::DegenerateVector("random direction drew a zero vector".into()));
    }
    Ok(v.into_iter().map(|x| x / norm).collect())
}

/// Category deltas `α·‖w‖·v_cat` plus `n_random` equal-norm deltas along
/// seeded Gaussian (hence sphere-uniform) directions.
pub fn build_patch_vectors(probe: &ProbeResult, alphas: &[f64], n_random: usize, seed: u64) -> Result<PatchVectorSet> {
    let dim = probe.unit_direction.len();
    if dim == 0 || !(probe.weight_norm.is_finite() && probe.weight_norm > 0.0) {
        return Err(Error::Validation("probe has no usable direction".into()));
    }
    if alphas.is_empty() {
        return Err(Error::EmptyInput("no alpha levels".into()));
    }
    if alphas.iter().any(|a| !a.is_finite() || *a < 0.0) {
        return Err(Error::Config("alpha levels must be finite and non-negative".into()));
    }
    let layer_seed = substream_seed(seed, probe.layer as u64);
    let random_directions = (0..n_random)
        .map(|k| random_unit(dim, layer_seed, k as u64))
        .collect::<Result<Vec<_>>>()?;
    let scale = |dir: &[f64], alpha: f64| -> Vec<f64> {
        dir.iter().map(|x| alpha * probe.weight_norm * x).collect()
    };
    Ok(PatchVectorSet {
        layer: probe.layer,
        alpha_levels: alphas.to_vec(),
        weight_norm: probe.weight_norm,
        category_deltas: alphas.iter().map(|&a| scale(&probe.unit_direction, a)).collect(),
        random_deltas: alphas
            .iter()
            .map(|&a| random_directions.iter().map(|d| scale(d, a)).collect())
            .collect(),
        random_directions,
        empty_controls_warning: n_random == 0,
    })
}

/// `|cat_effect|` over the mean of `|random_effects|`.
pub fn specificity_ratio(cat_effect: f64, random_effects: &[f64]) -> Result<f64> {
    if random_effects.is_empty() {
        return Err(Error::EmptyInput("no random-direction effects".into()));
    }
    let mean = random_effects.iter().map(|e| e.abs()).sum::<f64>() / random_effects.len() as f64;
    if mean.is_nan() || mean <= 0.0 {
        return Err(Error::DegenerateInput("random-direction effects average to zero".into()));
    }
    Ok(cat_effect.abs() / mean)
}

/// One row of a Δconfidence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatchEffect {
    pub layer: usize,
    pub alpha: f64,
    /// `category` or `random_<k>`.
    pub direction: String,
    pub delta_conf: f64,
}

impl PatchEffect {
    fn is_category(&self) -> bool {
        self.direction == "category"
    }

    fn validate(&self) -> Result<()> {
        let random_ok = self
            .direction
            .strip_prefix("random_")
            .is_some_and(|k| k.parse::<usize>().is_ok());
        if !(self.is_category() || random_ok) {
            return Err(Error::Schema(format!("unknown direction '{}'", self.direction)));
        }
        if !self.alpha.is_finite() || !self.delta_conf.is_finite() {
            return Err(Error::Validation("non-finite alpha or delta_conf".into()));
        }
        Ok(())
    }
}

pub fn read_patch_effects(path: impl AsRef<Path>) -> Result<Vec<PatchEffect>> {
    let path = path.as_ref();
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Parse(format!("{other:?}")),
    })?;
    let mut rows = Vec::new();
    for (i, row) in reader.deserialize::<PatchEffect>().enumerate() {
        let row = row.map_err(|e| Error::Parse(format!("{}: row {}: {e}", path.display(), i + 1)))?;
        row.validate()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput(format!("{} has no rows", path.display())));
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatchEffectSummary {
    pub layer: usize,
    pub alphas: Vec<f64>,
    /// Mean |Δconfidence| along the category direction, per alpha.
    pub category_effect: Vec<f64>,
    /// Mean |Δconfidence| over random directions, per alpha.
    pub random_effect: Vec<Option<f64>>,
    /// Specificity at the largest alpha.
    pub specificity: Option<f64>,
    /// Category effect never decreases as alpha grows.
    pub monotonic: bool,
}

fn mean_abs(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum::<f64>() / x.len() as f64
}

pub fn summarize_patch_effects(effects: &[PatchEffect]) -> Result<Vec<PatchEffectSummary>> {
    // layer -> alpha bits -> (category rows, random rows)
    type Rows = (Vec<f64>, Vec<f64>);
    let mut grouped: BTreeMap<usize, BTreeMap<u64, Rows>> = BTreeMap::new();
    for e in effects {
        e.validate()?;
        let slot = grouped.entry(e.layer).or_default().entry(e.alpha.to_bits()).or_default();
        if e.is_category() {
            slot.0.push(e.delta_conf);
        } else {
            slot.1.push(e.delta_conf);
        }
    }
    if grouped.is_empty() {
        return Err(Error::EmptyInput("no patch effects".into()));
    }
    grouped
        .into_iter()
        .map(|(layer, by_alpha)| {
            let mut levels: Vec<(f64, Vec<f64>, Vec<f64>)> = by_alpha
                .into_iter()
                .map(|(bits, (c, r))| (f64::from_bits(bits), c, r))
                .collect();
            levels.sort_by(|a, b| a.0.total_cmp(&b.0));
            if let Some((alpha, ..)) = levels.iter().find(|l| l.1.is_empty()) {
                return Err(Error::UnbalancedDesign(format!(
                    "layer {layer}, alpha {alpha}: no category-direction rows"
                )));
            }
            let category_effect: Vec<f64> = levels.iter().map(|l| mean_abs(&l.1)).collect();
            let random_effect: Vec<Option<f64>> = levels
                .iter()
                .map(|l| (!l.2.is_empty()).then(|| mean_abs(&l.2)))
                .collect();
            let last = levels.last().expect("non-empty group");
            let specificity = if last.2.is_empty() {
                None
            } else {
                specificity_ratio(*category_effect.last().unwrap(), &last.2).ok()
            };
            Ok(PatchEffectSummary {
                layer,
                monotonic: category_effect.windows(2).all(|w| w[1] >= w[0]),
                alphas: levels.iter().map(|l| l.0).collect(),
                category_effect,
                random_effect,
                specificity,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn probe(w: Vec<f64>) -> ProbeResult {
        let norm = dot(&w, &w).sqrt();
        ProbeResult {
            layer: 3,
            unit_direction: w.iter().map(|x| x / norm).collect(),
            weights: w,
            bias: 0.0,
            ridge_penalty: 1.0,
            standardized: true,
            train_accuracy: 1.0,
            weight_norm: norm,
        }
    }

    #[test]
    fn category_delta_from_weights() {
        let set = build_patch_vectors(&probe(vec![3.0, 4.0]), &[0.5, 0.0], 3, 42).unwrap();
        assert!((set.category_deltas[0][0] - 1.5).abs() < 1e-12);
        assert!((set.category_deltas[0][1] - 2.0).abs() < 1e-12);
        assert!(set.category_deltas[1].iter().all(|&x| x == 0.0));
        for d in &set.random_deltas[0] {
            assert!((dot(d, d).sqrt() - 2.5).abs() < 1e-9);
        }
    }

    #[test]
    fn no_controls_sets_warning() {
        let set = build_patch_vectors(&probe(vec![1.0, 0.0, 0.0]), &DEFAULT_ALPHAS, 0, 1).unwrap();
        assert!(set.empty_controls_warning);
        assert!(set.random_deltas.iter().all(Vec::is_empty));
    }

    #[test]
    fn random_directions_are_seeded() {
        let p = probe(vec![1.0; 16]);
        let a = build_patch_vectors(&p, &DEFAULT_ALPHAS, 10, 7).unwrap();
        let b = build_patch_vectors(&p, &DEFAULT_ALPHAS, 10, 7).unwrap();
        let c = build_patch_vectors(&p, &DEFAULT_ALPHAS, 10, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.random_directions, c.random_directions);
    }

    #[test]
    fn specificity_cases() {
        assert!((specificity_ratio(0.621, &[0.00886]).unwrap() - 70.09029345372461).abs() < 1e-9);
        assert_eq!(specificity_ratio(0.2, &[0.1, 0.3]).unwrap(), 1.0);
        assert_eq!(specificity_ratio(0.0, &[0.1]).unwrap(), 0.0);
        assert!(matches!(specificity_ratio(1.0, &[0.0, 0.0]), Err(Error::DegenerateInput(_))));
        assert!(matches!(specificity_ratio(1.0, &[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn summary_groups_by_alpha() {
        let row = |alpha: f64, direction: &str, delta_conf: f64| PatchEffect {
            layer: 5,
            alpha,
            direction: direction.into(),
            delta_conf,
        };
        let effects = vec![
            row(1.0, "category", 0.6),
            row(0.5, "category", -0.3),
            row(1.0, "random_0", 0.01),
            row(1.0, "random_1", -0.03),
        ];
        let s = summarize_patch_effects(&effects).unwrap();
        assert_eq!(s[0].alphas, vec![0.5, 1.0]);
        assert_eq!(s[0].random_effect, vec![None, Some(0.02)]);
        assert!((s[0].specificity.unwrap() - 30.0).abs() < 1e-9);
        assert!(s[0].monotonic);
        assert!(summarize_patch_effects(&[row(1.0, "sideways", 0.0)]).is_err());
    }
}
