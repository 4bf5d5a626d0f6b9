// SPDX-License-Identifier: MIT OR Apache-2.0

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::CentroidSet;

pub const DEFAULT_RIDGE_PENALTY: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RidgeOptions {
    pub penalty: f64,
    /// Scale each centered feature to unit variance before solving. The
    /// returned weights are mapped back to the raw feature space either way.
    pub standardize: bool,
}

impl Default for RidgeOptions {
    fn default() -> Self {
        RidgeOptions {
            penalty: DEFAULT_RIDGE_PENALTY,
            standardize: true,
        }
    }
}

/// Linear category probe over one layer's centroids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub layer: usize,
    /// Raw-space weights: the score of `x` is `weights · x + bias`.
    pub weights: Vec<f64>,
    pub bias: f64,
    pub ridge_penalty: f64,
    pub standardized: bool,
    pub train_accuracy: f64,
    pub weight_norm: f64,
    pub unit_direction: Vec<f64>,
}

impl ProbeResult {
    pub fn score(&self, x: &[f64]) -> f64 {
        self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.bias
    }
}

pub fn ridge_probe(centroids: &CentroidSet, labels: &[bool], penalty: f64) -> Result<ProbeResult> {
    ridge_probe_with(
        centroids,
        labels,
        RidgeOptions {
            penalty,
            ..RidgeOptions::default()
        },
    )
}

/// Ridge regression of ±1 labels on centered (optionally standardized)
/// centroids: `(XᵀX + penalty·I) w = Xᵀy`. With fewer centroids than
/// dimensions the equivalent dual system `(XXᵀ + penalty·I) a = y`,
/// `w = Xᵀa` is solved instead.
pub fn ridge_probe_with(centroids: &CentroidSet, labels: &[bool], opts: RidgeOptions) -> Result<ProbeResult> {
    let vectors = centroids.vectors();
    let (n, d) = (vectors.len(), centroids.dim());
    if labels.len() != n {
        return Err(Error::Validation(format!(
            "{} labels for {n} centroids",
            labels.len()
        )));
    }
    if labels.iter().all(|&l| l) || labels.iter().all(|&l| !l) {
        return Err(Error::DegenerateDesign("probe needs both categories".into()));
    }
    if !(opts.penalty.is_finite() && opts.penalty > 0.0) {
        return Err(Error::Config(format!(
            "ridge penalty must be positive, got {}",
            opts.penalty
        )));
    }

    let means: Vec<f64> = (0..d)
        .map(|j| vectors.iter().map(|v| v[j]).sum::<f64>() / n as f64)
        .collect();
    let scales: Vec<f64> = (0..d)
        .map(|j| {
            if !opts.standardize {
                return 1.0;
            }
            let var = vectors.iter().map(|v| (v[j] - means[j]).powi(2)).sum::<f64>() / n as f64;
            if var > 0.0 {
                var.sqrt()
            } else {
                1.0
            }
        })
        .collect();
    let x = DMatrix::from_fn(n, d, |i, j| (vectors[i][j] - means[j]) / scales[j]);
    let y = DVector::from_iterator(n, labels.iter().map(|&l| if l { 1.0 } else { -1.0 }));

    let w_scaled = if n < d {
        let gram = &x * x.transpose() + DMatrix::identity(n, n) * opts.penalty;
        let alpha = gram
            .cholesky()
            .ok_or_else(|| Error::DegenerateDesign("ridge system not positive definite".into()))?
            .solve(&y);
        x.transpose() * alpha
    } else {
        let gram = x.transpose() * &x + DMatrix::identity(d, d) * opts.penalty;
        let rhs = x.transpose() * &y;
        gram.cholesky()
            .ok_or_else(|| Error::DegenerateDesign("ridge system not positive definite".into()))?
            .solve(&rhs)
    };

    let weights: Vec<f64> = w_scaled.iter().zip(&scales).map(|(w, s)| w / s).collect();
    let y_mean = y.mean();
    let bias = y_mean - weights.iter().zip(&means).map(|(w, m)| w * m).sum::<f64>();
    let weight_norm = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
    if weight_norm <= 0.0 || !weight_norm.is_finite() {
        return Err(Error::DegenerateDesign("probe weights vanished".into()));
    }
    let unit_direction = weights.iter().map(|w| w / weight_norm).collect();
    let mut probe = ProbeResult {
        layer: centroids.layer(),
        weights,
        bias,
        ridge_penalty: opts.penalty,
        standardized: opts.standardize,
        train_accuracy: 0.0,
        weight_norm,
        unit_direction,
    };
    let correct = vectors
        .iter()
        .zip(labels)
        .filter(|(v, &l)| {
            let s = probe.score(v);
            (s > 0.0 && l) || (s < 0.0 && !l)
        })
        .count();
    probe.train_accuracy = correct as f64 / n as f64;
    Ok(probe)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_d() -> (CentroidSet, Vec<bool>) {
        let c = CentroidSet::new(
            0,
            vec![vec![-1.2], vec![-1.0], vec![-0.8], vec![0.8], vec![1.0], vec![1.2]],
        )
        .unwrap();
        (c, vec![false, false, false, true, true, true])
    }

    #[test]
    fn separable_one_d() {
        let (c, labels) = one_d();
        let p = ridge_probe(&c, &labels, 1.0).unwrap();
        assert_eq!(p.train_accuracy, 1.0);
        assert!(p.weights[0] > 0.0);
        assert_eq!(p.unit_direction, vec![1.0]);
    }

    #[test]
    fn larger_penalty_shrinks_weights() {
        let (c, labels) = one_d();
        let norms: Vec<f64> = [0.1, 1.0, 10.0]
            .iter()
            .map(|&pen| {
                ridge_probe_with(&c, &labels, RidgeOptions { penalty: pen, standardize: false })
                    .unwrap()
                    .weight_norm
            })
            .collect();
        assert!(norms[0] > norms[1] && norms[1] > norms[2]);
        // one feature: w = Σxy / (Σx² + penalty) with Σxy = 6, Σx² = 6.16
        for (pen, norm) in [0.1, 1.0, 10.0].iter().zip(&norms) {
            assert!((norm - 6.0 / (6.16 + pen)).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_direction_is_normalized() {
        let c = CentroidSet::new(
            3,
            (0..10)
                .map(|i| vec![i as f64, (i * i) as f64 * 0.1, (i as f64).sin()])
                .collect(),
        )
        .unwrap();
        let labels: Vec<bool> = (0..10).map(|i| i >= 5).collect();
        let p = ridge_probe(&c, &labels, 1.0).unwrap();
        let norm: f64 = p.unit_direction.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
        assert_eq!(p.layer, 3);
    }

    #[test]
    fn single_class_rejected() {
        let (c, _) = one_d();
        assert!(matches!(
            ridge_probe(&c, &[true; 6], 1.0),
            Err(Error::DegenerateDesign(_))
        ));
    }
}
