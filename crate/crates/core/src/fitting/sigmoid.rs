// SPDX-License-Identifier: MIT OR Apache-2.0

//! Two-parameter logistic `p(x) = 1 / (1 + exp(−k (x − x0)))` fitted by
//! multi-start damped Gauss-Newton (Levenberg-Marquardt).

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SIGMOID_MAX_ITER: usize = 200;
const STEP_TOL: f64 = 1e-9;
const START_SLOPES: [f64; 6] = [0.5, -0.5, 2.0, -2.0, 8.0, -8.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmoidFit {
    pub crossover: f64,
    pub slope: f64,
    pub r2: f64,
    pub sse: f64,
    pub converged: bool,
}

pub fn logistic(x: f64, crossover: f64, slope: f64) -> f64 {
    let z = slope * (x - crossover);
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

fn sse(x: &[f64], p: &[f64], x0: f64, k: f64) -> f64 {
    x.iter()
        .zip(p)
        .map(|(&xi, &pi)| (logistic(xi, x0, k) - pi).powi(2))
        .sum()
}

/// Quartiles of `x` by linear interpolation.
fn quartiles(x: &[f64]) -> [f64; 3] {
    let mut s = x.to_vec();
    s.sort_by(f64::total_cmp);
    let at = |q: f64| {
        let pos = q * (s.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        s[lo] + (s[hi] - s[lo]) * (pos - lo as f64)
    };
    [at(0.25), at(0.5), at(0.75)]
}

struct Run {
    x0: f64,
    k: f64,
    sse: f64,
    converged: bool,
}

fn levenberg_marquardt(x: &[f64], p: &[f64], mut x0: f64, mut k: f64) -> Run {
    let mut cost = sse(x, p, x0, k);
    let mut damping = 1e-3;
    let mut converged = false;
    for _ in 0..SIGMOID_MAX_ITER {
        let mut jtj = Matrix2::zeros();
        let mut jtr = Vector2::zeros();
        for (&xi, &pi) in x.iter().zip(p) {
            let f = logistic(xi, x0, k);
            let g = f * (1.0 - f);
            let jac = Vector2::new(-k * g, (xi - x0) * g);
            jtj += jac * jac.transpose();
            jtr += jac * (f - pi);
        }
        if jtr.norm() < 1e-15 {
            converged = true;
            break;
        }
        let mut accepted = false;
        while damping < 1e12 {
            let mut a = jtj;
            a[(0, 0)] += damping * (1.0 + jtj[(0, 0)]);
            a[(1, 1)] += damping * (1.0 + jtj[(1, 1)]);
            let Some(step) = a.lu().solve(&(-jtr)) else {
                damping *= 10.0;
                continue;
            };
            let (nx0, nk) = (x0 + step[0], k + step[1]);
            let new_cost = sse(x, p, nx0, nk);
            if new_cost.is_finite() && new_cost <= cost {
                x0 = nx0;
                k = nk;
                cost = new_cost;
                damping = (damping / 3.0).max(1e-12);
                accepted = true;
                if step.norm() < STEP_TOL {
                    converged = true;
                }
                break;
            }
            damping *= 4.0;
        }
        if !accepted {
            // no downhill step at any damping: stationary to machine precision
            converged = true;
            break;
        }
        if converged {
            break;
        }
    }
    Run {
        x0,
        k,
        sse: cost,
        converged,
    }
}

/// Least-squares logistic fit. Starts from every combination of the
/// stimulus quartiles and slopes ±0.5, ±2, ±8 and keeps the lowest-error
/// converged run (or the lowest-error run if none converged).
pub fn fit_sigmoid(x: &[f64], p: &[f64]) -> Result<SigmoidFit> {
    if x.len() != p.len() {
        return Err(Error::Validation("x and p differ in length".into()));
    }
    if x.len() < 4 {
        return Err(Error::TooFewPoints(format!(
            "logistic fit needs at least 4 points, got {}",
            x.len()
        )));
    }
    if let Some(v) = p.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::Validation(format!("probability {v} outside [0, 1]")));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Validation("stimulus values must be finite".into()));
    }

    let mut best: Option<Run> = None;
    for x_start in quartiles(x) {
        for k_start in START_SLOPES {
            let run = levenberg_marquardt(x, p, x_start, k_start);
            let better = match &best {
                None => true,
                Some(b) => (run.converged && !b.converged)
                    || (run.converged == b.converged && run.sse < b.sse),
            };
            if better {
                best = Some(run);
            }
        }
    }
    let run = best.expect("at least one start");
    let mean = p.iter().sum::<f64>() / p.len() as f64;
    let sst: f64 = p.iter().map(|v| (v - mean).powi(2)).sum();
    let r2 = if sst > 0.0 {
        (1.0 - run.sse / sst).clamp(0.0, 1.0)
    } else {
        0.0
    };
    Ok(SigmoidFit {
        crossover: run.x0,
        slope: run.k,
        r2,
        sse: run.sse,
        converged: run.converged,
    })
}
