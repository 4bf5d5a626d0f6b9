// SPDX-License-Identifier: MIT OR Apache-2.0

use serde::{Deserialize, Serialize};

use super::centroids::CentroidSet;
use crate::error::{Error, Result};

/// Number of pairs `i < j` among `n` items.
pub fn condensed_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Row-major position of pair `(i, j)`, `i < j < n`, in condensed storage.
pub fn condensed_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)` with `i < j`, in condensed order.
pub fn condensed_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Representational dissimilarity matrix in condensed upper-triangle form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rdm {
    n: usize,
    entries: Vec<f64>,
    label: String,
}

impl Rdm {
    pub fn new(n: usize, entries: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if entries.len() != condensed_len(n) {
            return Err(Error::Validation(format!(
                "{} entries for an RDM over {n} items (expected {})",
                entries.len(),
                condensed_len(n)
            )));
        }
        if let Some(x) = entries.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(Error::Validation(format!(
                "RDM entries must be finite and non-negative, found {x}"
            )));
        }
        Ok(Rdm {
            n,
            entries,
            label: label.into(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Symmetric lookup; the diagonal is zero.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Less => self.entries[condensed_index(self.n, i, j)],
            std::cmp::Ordering::Greater => self.entries[condensed_index(self.n, j, i)],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Cosine,
    Euclidean,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cosine" => Ok(Metric::Cosine),
            "euclidean" => Ok(Metric::Euclidean),
            other => Err(Error::Config(format!("unknown metric '{other}'"))),
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Metric::Cosine => "cosine",
            Metric::Euclidean => "euclidean",
        })
    }
}

/// Distance between two vectors. Cosine distance is clamped at 0 from
/// below; a value above 2 cannot arise in exact arithmetic and is rejected.
pub fn distance(u: &[f64], v: &[f64], metric: Metric) -> Result<f64> {
    match metric {
        Metric::Euclidean => Ok(u
            .iter()
            .zip(v)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()),
        Metric::Cosine => {
            let (mut dot, mut uu, mut vv) = (0.0, 0.0, 0.0);
            for (a, b) in u.iter().zip(v) {
                dot += a * b;
                uu += a * a;
                vv += b * b;
            }
            if uu == 0.0 || vv == 0.0 {
                return Err(Error::DegenerateVector(
                    "zero-norm vector has no cosine distance".into(),
                ));
            }
            let d = 1.0 - dot / (uu.sqrt() * vv.sqrt());
            if d > 2.0 + 1e-9 {
                return Err(Error::Validation(format!("cosine distance {d} exceeds 2")));
            }
            Ok(d.clamp(0.0, 2.0))
        }
    }
}

/// Pairwise distances between all centroids.
pub fn empirical_rdm(centroids: &CentroidSet, metric: Metric) -> Result<Rdm> {
    let v = centroids.vectors();
    let n = v.len();
    let entries = condensed_pairs(n)
        .into_iter()
        .map(|(i, j)| distance(&v[i], &v[j], metric))
        .collect::<Result<Vec<_>>>()?;
    Rdm::new(n, entries, metric.to_string())
}

/// Distances between consecutive stimuli: `d(h(i), h(i + 1))`.
pub fn adjacent_distances(centroids: &CentroidSet, metric: Metric) -> Result<Vec<f64>> {
    centroids
        .vectors()
        .windows(2)
        .map(|w| distance(&w[0], &w[1], metric))
        .collect()
}
