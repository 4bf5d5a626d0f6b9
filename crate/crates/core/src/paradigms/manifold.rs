// SPDX-License-Identifier: MIT OR Apache-2.0

//! Local manifold geometry along the stimulus sequence: rotation of the
//! leading direction across a position, and the size of the boundary step
//! relative to ordinary steps.

use serde::{Deserialize, Serialize};

use super::precision::focus_pair;
use crate::data::StimulusSet;
use crate::error::{Error, Result};
use crate::fitting::top_principal_component;
use crate::geometry::{adjacent_distances, CentroidSet, Metric};
use crate::stats::{mann_whitney_u, mean};

pub const DEFAULT_E7_WINDOW: usize = 4;

/// Angle in degrees, folded to [0, 90], between PC1 of centroids
/// `position - window ..= position` and PC1 of `position ..= position + window`.
pub fn manifold_rotation(centroids: &CentroidSet, window: usize, position: usize) -> Result<f64> {
    if window < 2 {
        return Err(Error::Config(format!("rotation window must be at least 2, got {window}")));
    }
    if position < window || position + window >= centroids.len() {
        return Err(Error::Index(format!(
            "window of {window} around position {position} leaves the {}-stimulus range",
            centroids.len()
        )));
    }
    let v = centroids.vectors();
    let pre = top_principal_component(&v[position - window..=position])?;
    let post = top_principal_component(&v[position..=position + window])?;
    let cos: f64 = pre.iter().zip(&post).map(|(a, b)| a * b).sum();
    Ok(cos.abs().min(1.0).acos().to_degrees())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifoldProfile {
    pub layer: usize,
    pub window: usize,
    pub positions: Vec<usize>,
    pub angles: Vec<f64>,
    /// Index of the first stimulus at or above the boundary.
    pub boundary_position: Option<usize>,
    pub boundary_angle: Option<f64>,
    /// Largest angle among positions whose windows do not touch the
    /// boundary step.
    pub max_clear_angle: Option<f64>,
}

/// Rotation at every position where a full window fits.
pub fn manifold_profile(centroids: &CentroidSet, stimuli: &StimulusSet, window: usize) -> Result<ManifoldProfile> {
    let n = centroids.len();
    if n != stimuli.len() {
        return Err(Error::Validation("centroid count differs from stimulus count".into()));
    }
    if n < 2 * window + 1 {
        return Err(Error::TooFewItems(format!(
            "a window of {window} needs at least {} stimuli",
            2 * window + 1
        )));
    }
    let positions: Vec<usize> = (window..n - window).collect();
    let angles = positions
        .iter()
        .map(|&p| manifold_rotation(centroids, window, p))
        .collect::<Result<Vec<_>>>()?;
    let boundary_position = stimuli.boundary_index();
    let boundary_angle =
        boundary_position.and_then(|b| positions.iter().position(|&p| p == b).map(|i| angles[i]));
    let max_clear_angle = boundary_position.and_then(|b| {
        // The step (b-1, b) lies inside [p - w, p + w] iff b - w <= p <= b - 1 + w.
        positions
            .iter()
            .zip(&angles)
            .filter(|&(&p, _)| p + window < b || p > b - 1 + window)
            .map(|(_, &a)| a)
            .reduce(f64::max)
    });
    Ok(ManifoldProfile {
        layer: centroids.layer(),
        window,
        positions,
        angles,
        boundary_position,
        boundary_angle,
        max_clear_angle,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseReset {
    pub boundary_mean: f64,
    pub other_mean: f64,
    /// `boundary_mean / other_mean`.
    pub ratio: f64,
    /// Two-sided Mann-Whitney p, boundary steps against all others.
    pub mw_p: f64,
    pub n_boundary: usize,
    pub n_other: usize,
}

/// Boundary-step distances against every other adjacent step, pooled over
/// the supplied layers. `window` adds that many neighbouring steps on each
/// side to the boundary group.
pub fn phase_reset(layers: &[CentroidSet], stimuli: &StimulusSet, metric: Metric, window: usize) -> Result<PhaseReset> {
    if layers.is_empty() {
        return Err(Error::EmptyInput("no layers".into()));
    }
    if stimuli.boundary().is_none() {
        return Err(Error::Validation("phase reset needs a stimulus set with a boundary".into()));
    }
    let n_steps = stimuli.len() - 1;
    let centre = focus_pair(stimuli);
    let lo = centre.saturating_sub(window);
    let hi = (centre + window).min(n_steps - 1);
    let (mut boundary, mut other) = (Vec::new(), Vec::new());
    for c in layers {
        if c.len() != stimuli.len() {
            return Err(Error::Validation("centroid count differs from stimulus count".into()));
        }
        for (i, d) in adjacent_distances(c, metric)?.into_iter().enumerate() {
            if (lo..=hi).contains(&i) {
                boundary.push(d);
            } else {
                other.push(d);
            }
        }
    }
    if other.len() < 3 || boundary.is_empty() {
        return Err(Error::TooFewItems(format!(
            "{} boundary and {} other steps; need at least 1 and 3",
            boundary.len(),
            other.len()
        )));
    }
    let other_mean = mean(&other);
    if other_mean <= 0.0 {
        return Err(Error::DegenerateVector("non-boundary steps have zero length".into()));
    }
    let boundary_mean = mean(&boundary);
    let all_equal = boundary
        .iter()
        .chain(&other)
        .all(|&d| (d - boundary[0]).abs() <= 1e-12 * boundary[0].abs().max(1.0));
    let mw_p = if all_equal {
        1.0
    } else {
        mann_whitney_u(&boundary, &other)?.p_two_sided
    };
    Ok(PhaseReset {
        ratio: boundary_mean / other_mean,
        boundary_mean,
        other_mean,
        mw_p,
        n_boundary: boundary.len(),
        n_other: other.len(),
    })
}
