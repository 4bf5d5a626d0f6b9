// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::error::{Error, Result};

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Unbiased (n - 1) variance.
pub fn sample_variance(x: &[f64]) -> f64 {
    let m = mean(x);
    x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (x.len() as f64 - 1.0)
}

/// Cohen's d with the (n - 1)-weighted pooled standard deviation.
pub fn cohens_d(sample_a: &[f64], sample_b: &[f64]) -> Result<f64> {
    let (na, nb) = (sample_a.len(), sample_b.len());
    if na < 2 || nb < 2 {
        return Err(Error::TooFewItems(format!(
            "Cohen's d needs at least 2 values per sample, got {na} and {nb}"
        )));
    }
    let pooled = ((na as f64 - 1.0) * sample_variance(sample_a)
        + (nb as f64 - 1.0) * sample_variance(sample_b))
        / (na + nb - 2) as f64;
    if pooled <= 0.0 {
        return Err(Error::DegenerateInput("pooled variance is zero".into()));
    }
    Ok((mean(sample_a) - mean(sample_b)) / pooled.sqrt())
}
