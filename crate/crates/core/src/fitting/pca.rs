// SPDX-License-Identifier: MIT OR Apache-2.0

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Leading eigenvector of the centered covariance of `vectors`, sign-fixed
/// so its largest-magnitude entry is positive.
///
/// With fewer points than dimensions the eigenproblem is solved on the
/// `M × M` Gram matrix and mapped back, which gives the same direction.
pub fn top_principal_component(vectors: &[Vec<f64>]) -> Result<Vec<f64>> {
    let m = vectors.len();
    if m < 2 {
        return Err(Error::TooFewItems(format!("PCA needs at least 2 points, got {m}")));
    }
    let d = vectors[0].len();
    if d == 0 || vectors.iter().any(|v| v.len() != d) {
        return Err(Error::Validation("PCA inputs must share a nonzero dimension".into()));
    }
    let means: Vec<f64> = (0..d)
        .map(|j| vectors.iter().map(|v| v[j]).sum::<f64>() / m as f64)
        .collect();
    let x = DMatrix::from_fn(m, d, |i, j| vectors[i][j] - means[j]);
    let total_var: f64 = x.iter().map(|v| v * v).sum();
    if total_var <= 0.0 {
        return Err(Error::DegenerateInput("points have zero variance".into()));
    }

    let mut direction: Vec<f64> = if m < d {
        let gram = &x * x.transpose();
        let eig = gram.symmetric_eigen();
        let top = eig.eigenvalues.imax();
        let v = x.transpose() * eig.eigenvectors.column(top);
        v.iter().copied().collect()
    } else {
        let cov = x.transpose() * &x;
        let eig = cov.symmetric_eigen();
        let top = eig.eigenvalues.imax();
        eig.eigenvectors.column(top).iter().copied().collect()
    };
    let norm = direction.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm <= 0.0 || !norm.is_finite() {
        return Err(Error::DegenerateInput("leading component vanished".into()));
    }
    let pivot = direction
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |acc, (i, &v)| if v.abs() > acc.1.abs() { (i, v) } else { acc })
        .1;
    let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
    direction.iter_mut().for_each(|v| *v *= sign / norm);
    Ok(direction)
}
