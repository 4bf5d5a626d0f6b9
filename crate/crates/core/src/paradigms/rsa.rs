// SPDX-License-Identifier: MIT OR Apache-2.0

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check_layers;
use crate::data::{DomainKind, HiddenStateBundle, StimulusSet};
use crate::error::{Error, Result};
use crate::geometry::{compute_centroids, empirical_rdm, theoretical_rdm, Metric, Rdm, TheoreticalKind, TheoreticalRdmSpec};
use crate::stats::{bh_fdr, mantel_test, rng::substream_seed};

/// Continuous baseline the CP-additive model is compared against:
/// log magnitude, or ordinal rank for nonce stimuli.
pub fn reference_kind(stimuli: &StimulusSet) -> TheoreticalKind {
    match stimuli.domain() {
        DomainKind::Nonce => TheoreticalKind::OrdinalContinuous,
        _ => TheoreticalKind::ContinuousLog,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RsaOptions {
    pub metric: Metric,
    pub specs: Vec<TheoreticalRdmSpec>,
    pub n_permutations: usize,
    pub seed: u64,
    pub fdr_alpha: f64,
    pub layers: Vec<usize>,
}

impl RsaOptions {
    /// The five standard templates (plus the ordinal baseline for nonce
    /// sets) with λ = γ = 1, 10,000 permutations, seed 42, α = .05.
    pub fn standard(stimuli: &StimulusSet, layers: Vec<usize>) -> Self {
        let mut specs = TheoreticalRdmSpec::standard_set(1.0, 1.0);
        if stimuli.domain() == DomainKind::Nonce {
            specs.push(TheoreticalRdmSpec::new(TheoreticalKind::OrdinalContinuous));
        }
        RsaOptions {
            metric: Metric::Cosine,
            specs,
            n_permutations: 10_000,
            seed: 42,
            fdr_alpha: 0.05,
            layers,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RsaLayerResult {
    pub layer: usize,
    pub rho_by_model: BTreeMap<String, f64>,
    pub mantel_p_by_model: BTreeMap<String, f64>,
    pub fdr_significant: BTreeMap<String, bool>,
    /// ρ(cp_additive) − ρ(reference model).
    pub cp_advantage: f64,
    /// ρ(cp_additive) > ρ(cp_multiplicative); `None` without a
    /// multiplicative template.
    pub add_vs_mult: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RsaRun {
    pub metric: Metric,
    pub reference_model: String,
    pub layers: Vec<RsaLayerResult>,
    /// Layers where the CP-additive model beats the reference.
    pub cp_wins: usize,
    pub add_wins: Option<usize>,
    pub mean_cp_advantage: f64,
    pub max_rho_cp_additive: f64,
    pub max_rho_reference: f64,
}

impl RsaRun {
    pub fn n_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn summary_line(&self) -> String {
        format!(
            "CP>Cont {}/{}  mean Δρ {:+.3}",
            self.cp_wins,
            self.n_layers(),
            self.mean_cp_advantage
        )
    }
}

/// Per layer: centroids, empirical RDM, ρ and Mantel p against every
/// template; then BH-FDR across layers for each template.
pub fn run_rsa(bundle: &HiddenStateBundle, opts: &RsaOptions) -> Result<RsaRun> {
    check_layers(&opts.layers, bundle.n_layers())?;
    let stimuli = bundle.stimuli();
    let reference = reference_kind(stimuli);
    let kinds: Vec<TheoreticalKind> = opts.specs.iter().map(|s| s.kind).collect();
    for (i, k) in kinds.iter().enumerate() {
        if kinds[..i].contains(k) {
            return Err(Error::Config(format!("template {k} listed twice")));
        }
    }
    for needed in [reference, TheoreticalKind::CpAdditive] {
        if !kinds.contains(&needed) {
            return Err(Error::Config(format!("RSA needs the {needed} template")));
        }
    }
    let templates: Vec<Rdm> = opts
        .specs
        .iter()
        .map(|s| theoretical_rdm(stimuli, s))
        .collect::<Result<_>>()?;

    let per_layer: Vec<Vec<(f64, f64)>> = opts
        .layers
        .par_iter()
        .map(|&layer| -> Result<Vec<(f64, f64)>> {
            let empirical = empirical_rdm(&compute_centroids(bundle, layer)?, opts.metric)?;
            let seed = substream_seed(opts.seed, layer as u64);
            templates
                .iter()
                .map(|t| {
                    let m = mantel_test(t, &empirical, opts.n_permutations, seed)?;
                    Ok((m.rho_observed, m.p_value))
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let fdr: Vec<Vec<bool>> = (0..kinds.len())
        .map(|m| {
            let ps: Vec<f64> = per_layer.iter().map(|row| row[m].1).collect();
            bh_fdr(&ps, opts.fdr_alpha).map(|o| o.rejected)
        })
        .collect::<Result<_>>()?;

    let idx = |k: TheoreticalKind| kinds.iter().position(|&x| x == k);
    let (i_add, i_ref) = (idx(TheoreticalKind::CpAdditive).unwrap(), idx(reference).unwrap());
    let i_mult = idx(TheoreticalKind::CpMultiplicative);

    let layers: Vec<RsaLayerResult> = opts
        .layers
        .iter()
        .enumerate()
        .map(|(li, &layer)| {
            let row = &per_layer[li];
            RsaLayerResult {
                layer,
                rho_by_model: kinds.iter().zip(row).map(|(k, r)| (k.name().to_string(), r.0)).collect(),
                mantel_p_by_model: kinds.iter().zip(row).map(|(k, r)| (k.name().to_string(), r.1)).collect(),
                fdr_significant: kinds
                    .iter()
                    .enumerate()
                    .map(|(m, k)| (k.name().to_string(), fdr[m][li]))
                    .collect(),
                cp_advantage: row[i_add].0 - row[i_ref].0,
                add_vs_mult: i_mult.map(|im| row[i_add].0 > row[im].0),
            }
        })
        .collect();

    let n = layers.len() as f64;
    Ok(RsaRun {
        metric: opts.metric,
        reference_model: reference.name().to_string(),
        cp_wins: layers.iter().filter(|l| l.cp_advantage > 0.0).count(),
        add_wins: i_mult.map(|_| layers.iter().filter(|l| l.add_vs_mult == Some(true)).count()),
        mean_cp_advantage: layers.iter().map(|l| l.cp_advantage).sum::<f64>() / n,
        max_rho_cp_additive: per_layer.iter().map(|r| r[i_add].0).fold(f64::NEG_INFINITY, f64::max),
        max_rho_reference: per_layer.iter().map(|r| r[i_ref].0).fold(f64::NEG_INFINITY, f64::max),
        layers,
    })
}
