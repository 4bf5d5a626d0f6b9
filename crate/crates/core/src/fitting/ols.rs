// SPDX-License-Identifier: MIT OR Apache-2.0

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, FisherSnedecor};

use crate::error::{Error, Result};

/// Relative singular-value cutoff below which a design counts as rank
/// deficient.
const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct OlsFit {
    pub coefficients: Vec<f64>,
    pub residuals: Vec<f64>,
    pub r2: f64,
}

/// Ordinary least squares of `y` on the columns of `design` (an intercept
/// column must be included by the caller). Solved by SVD.
pub fn ols_fit(design: &DMatrix<f64>, y: &[f64]) -> Result<OlsFit> {
    if design.nrows() != y.len() {
        return Err(Error::Validation("design rows and response length differ".into()));
    }
    if design.nrows() <= design.ncols() {
        return Err(Error::TooFewItems(format!(
            "{} observations for {} coefficients",
            design.nrows(),
            design.ncols()
        )));
    }
    let svd = design.clone().svd(true, true);
    let s_max = svd.singular_values.max();
    let s_min = svd.singular_values.min();
    if s_max <= 0.0 || s_min <= RANK_TOL * s_max {
        return Err(Error::DegenerateDesign("design matrix is rank deficient".into()));
    }
    let yv = DVector::from_column_slice(y);
    let beta = svd
        .solve(&yv, 0.0)
        .map_err(|e| Error::DegenerateDesign(e.to_string()))?;
    let residuals = &yv - design * &beta;
    let mean = yv.mean();
    let sst: f64 = yv.iter().map(|v| (v - mean).powi(2)).sum();
    if sst <= 0.0 {
        return Err(Error::DegenerateInput("response has zero variance".into()));
    }
    let sse = residuals.norm_squared();
    Ok(OlsFit {
        coefficients: beta.iter().copied().collect(),
        residuals: residuals.iter().copied().collect(),
        r2: (1.0 - sse / sst).clamp(0.0, 1.0),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HierarchicalRegressionResult {
    pub r2_step1: f64,
    pub r2_step2: f64,
    pub delta_r2: f64,
    pub f_stat: f64,
    pub p_value: f64,
    pub coef_logdist: f64,
    pub coef_boundary: f64,
    pub intercept: f64,
    pub n_pairs: usize,
}

/// Step 1 regresses `distances` on `log_dists`; step 2 adds the 0/1
/// boundary-crossing indicator. The F statistic for the added predictor is
/// `ΔR² (n − 3) / (1 − R²₂)` on (1, n − 3) degrees of freedom.
pub fn hierarchical_regression(
    distances: &[f64],
    log_dists: &[f64],
    cross_flags: &[bool],
) -> Result<HierarchicalRegressionResult> {
    let n = distances.len();
    if log_dists.len() != n || cross_flags.len() != n {
        return Err(Error::Validation("regression inputs differ in length".into()));
    }
    if n < 4 {
        return Err(Error::TooFewItems(format!("need at least 4 pairs, got {n}")));
    }
    if log_dists.iter().all(|&x| x == log_dists[0]) {
        return Err(Error::DegenerateDesign("log-distances are all equal".into()));
    }
    if cross_flags.iter().all(|&f| f == cross_flags[0]) {
        return Err(Error::DegenerateDesign(
            "boundary indicator is constant, step 2 is collinear with the intercept".into(),
        ));
    }
    let step1 = DMatrix::from_fn(n, 2, |i, j| if j == 0 { 1.0 } else { log_dists[i] });
    let step2 = DMatrix::from_fn(n, 3, |i, j| match j {
        0 => 1.0,
        1 => log_dists[i],
        _ => f64::from(u8::from(cross_flags[i])),
    });
    let fit1 = ols_fit(&step1, distances)?;
    let fit2 = ols_fit(&step2, distances)?;
    let r2_step1 = fit1.r2;
    let r2_step2 = fit2.r2.max(r2_step1);
    let delta_r2 = r2_step2 - r2_step1;
    let dof = (n - 3) as f64;
    let unexplained = 1.0 - r2_step2;
    let (f_stat, p_value) = if unexplained <= 1e-15 {
        if delta_r2 > 1e-12 {
            (f64::INFINITY, 0.0)
        } else {
            (0.0, 1.0)
        }
    } else {
        let f = delta_r2 * dof / unexplained;
        let dist = FisherSnedecor::new(1.0, dof).expect("dof >= 1");
        (f, dist.sf(f))
    };
    Ok(HierarchicalRegressionResult {
        r2_step1,
        r2_step2,
        delta_r2,
        f_stat,
        p_value,
        coef_logdist: fit2.coefficients[1],
        coef_boundary: fit2.coefficients[2],
        intercept: fit2.coefficients[0],
        n_pairs: n,
    })
}
