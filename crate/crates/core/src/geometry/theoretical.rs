// SPDX-License-Identifier: MIT OR Apache-2.0

//! Theoretical RDM templates.
//!
//! With `Δ` the absolute difference of natural-log magnitudes and `c` the
//! cross-category indicator:
//!
//! | kind                 | entry              |
//! |----------------------|--------------------|
//! | `continuous_log`     | `Δ`                |
//! | `cp_additive`        | `Δ + λ·c`          |
//! | `cp_multiplicative`  | `Δ·(1 + γ·c)`      |
//! | `categorical`        | `c`                |
//! | `linear`             | `|x_i − x_j|`      |
//! | `ordinal_continuous` | `|rank_i − rank_j|`|
//!
//! Temperature sets take logs of `v − v_min + 1` when any value is
//! non-positive. For nonce sets the boundary-warped kinds use rank
//! distance as their base instead of log distance, since the ranks carry
//! no magnitude.

use serde::{Deserialize, Serialize};

use super::rdm::{condensed_pairs, Rdm};
use crate::data::{DomainKind, StimulusSet};
use crate::error::{Error, Result};
use crate::stats::spearman_rho;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoreticalKind {
    ContinuousLog,
    CpAdditive,
    CpMultiplicative,
    Categorical,
    Linear,
    OrdinalContinuous,
}

impl TheoreticalKind {
    pub const ALL: [TheoreticalKind; 6] = [
        TheoreticalKind::ContinuousLog,
        TheoreticalKind::CpAdditive,
        TheoreticalKind::CpMultiplicative,
        TheoreticalKind::Categorical,
        TheoreticalKind::Linear,
        TheoreticalKind::OrdinalContinuous,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoreticalKind::ContinuousLog => "continuous_log",
            TheoreticalKind::CpAdditive => "cp_additive",
            TheoreticalKind::CpMultiplicative => "cp_multiplicative",
            TheoreticalKind::Categorical => "categorical",
            TheoreticalKind::Linear => "linear",
            TheoreticalKind::OrdinalContinuous => "ordinal_continuous",
        }
    }

    pub fn needs_boundary(self) -> bool {
        matches!(
            self,
            TheoreticalKind::CpAdditive | TheoreticalKind::CpMultiplicative | TheoreticalKind::Categorical
        )
    }
}

impl std::fmt::Display for TheoreticalKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TheoreticalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoreticalKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown theoretical model '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoreticalRdmSpec {
    pub kind: TheoreticalKind,
    /// Additive boundary boost.
    pub lambda: f64,
    /// Multiplicative boundary boost.
    pub gamma: f64,
}

impl TheoreticalRdmSpec {
    pub fn new(kind: TheoreticalKind) -> Self {
        TheoreticalRdmSpec {
            kind,
            lambda: 1.0,
            gamma: 1.0,
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    /// The five model templates with the given boosts.
    pub fn standard_set(lambda: f64, gamma: f64) -> Vec<Self> {
        [
            TheoreticalKind::ContinuousLog,
            TheoreticalKind::CpAdditive,
            TheoreticalKind::CpMultiplicative,
            TheoreticalKind::Categorical,
            TheoreticalKind::Linear,
        ]
        .into_iter()
        .map(|k| TheoreticalRdmSpec::new(k).with_lambda(lambda).with_gamma(gamma))
        .collect()
    }
}

/// Build the template RDM for `spec` over `stimuli`.
pub fn theoretical_rdm(stimuli: &StimulusSet, spec: &TheoreticalRdmSpec) -> Result<Rdm> {
    if !(spec.lambda.is_finite() && spec.lambda >= 0.0 && spec.gamma.is_finite() && spec.gamma >= 0.0) {
        return Err(Error::Validation(format!(
            "boosts must be finite and non-negative (lambda {}, gamma {})",
            spec.lambda, spec.gamma
        )));
    }
    if spec.kind.needs_boundary() && stimuli.boundary().is_none() {
        return Err(Error::Validation(format!(
            "{} needs a category boundary; '{}' has none",
            spec.kind,
            stimuli.condition()
        )));
    }
    let values = stimuli.values();
    let n = values.len();
    let base: Vec<f64> = match spec.kind {
        TheoreticalKind::Linear => values.to_vec(),
        TheoreticalKind::OrdinalContinuous => stimuli.ranks(),
        TheoreticalKind::CpAdditive | TheoreticalKind::CpMultiplicative
            if stimuli.domain() == DomainKind::Nonce =>
        {
            stimuli.ranks()
        }
        TheoreticalKind::Categorical => vec![0.0; n],
        _ => stimuli.log_values()?,
    };
    let entries = condensed_pairs(n)
        .into_iter()
        .map(|(i, j)| {
            let delta = (base[i] - base[j]).abs();
            let cross = if stimuli.is_cross(values[i], values[j]) { 1.0 } else { 0.0 };
            match spec.kind {
                TheoreticalKind::ContinuousLog
                | TheoreticalKind::Linear
                | TheoreticalKind::OrdinalContinuous => delta,
                TheoreticalKind::CpAdditive => delta + spec.lambda * cross,
                TheoreticalKind::CpMultiplicative => delta * (1.0 + spec.gamma * cross),
                TheoreticalKind::Categorical => cross,
            }
        })
        .collect();
    Rdm::new(n, entries, spec.kind.name())
}

/// Boost grid 0.00, 0.05, ..., 2.00.
pub fn default_lambda_grid() -> Vec<f64> {
    (0..=40).map(|k| f64::from(k) / 20.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaFit {
    pub lambda: f64,
    pub rho: f64,
}

/// Grid value of λ whose CP-additive template best rank-correlates with
/// `empirical`. Ties go to the smaller λ.
pub fn fit_lambda(empirical: &Rdm, stimuli: &StimulusSet, grid: &[f64]) -> Result<LambdaFit> {
    if grid.is_empty() {
        return Err(Error::EmptyInput("lambda grid is empty".into()));
    }
    if empirical.n() != stimuli.len() {
        return Err(Error::Validation(format!(
            "RDM over {} items, stimulus set has {}",
            empirical.n(),
            stimuli.len()
        )));
    }
    let mut best: Option<LambdaFit> = None;
    for &lambda in grid {
        let template = theoretical_rdm(
            stimuli,
            &TheoreticalRdmSpec::new(TheoreticalKind::CpAdditive).with_lambda(lambda),
        )?;
        let rho = spearman_rho(empirical.entries(), template.entries())?;
        let better = match best {
            None => true,
            Some(b) => rho > b.rho + 1e-12 || ((rho - b.rho).abs() <= 1e-12 && lambda < b.lambda),
        };
        if better {
            best = Some(LambdaFit { lambda, rho });
        }
    }
    Ok(best.expect("grid is non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::condensed_index;

    fn entry(r: &Rdm, i: usize, j: usize) -> f64 {
        r.entries()[condensed_index(r.n(), i, j)]
    }

    fn spec(kind: TheoreticalKind) -> TheoreticalRdmSpec {
        TheoreticalRdmSpec::new(kind)
    }

    #[test]
    // literals are frozen reference values, not stand-ins for std constants
    #[allow(clippy::approx_constant)]
    fn template_entries() {
        // index of value v in 4..=20 is v - 4
        let s = StimulusSet::decade_10();
        let cont = theoretical_rdm(&s, &spec(TheoreticalKind::ContinuousLog)).unwrap();
        assert!((entry(&cont, 0, 4) - 0.693_147_180_559_945_3).abs() < 1e-15);
        let add = theoretical_rdm(&s, &spec(TheoreticalKind::CpAdditive)).unwrap();
        assert!((entry(&add, 5, 6) - 1.105_360_515_657_826_3).abs() < 1e-14);
        assert!((entry(&add, 4, 5) - 0.117_783_035_656_383_45).abs() < 1e-14);
        let cat = theoretical_rdm(&s, &spec(TheoreticalKind::Categorical)).unwrap();
        assert_eq!(entry(&cat, 5, 6), 1.0);
        assert_eq!(entry(&cat, 7, 11), 0.0);
        let lin = theoretical_rdm(&s, &spec(TheoreticalKind::Linear)).unwrap();
        assert_eq!(entry(&lin, 0, 4), 4.0);
    }

    #[test]
    fn zero_boosts_reduce_to_continuous() {
        let s = StimulusSet::decade_100();
        let cont = theoretical_rdm(&s, &spec(TheoreticalKind::ContinuousLog)).unwrap();
        let add = theoretical_rdm(&s, &spec(TheoreticalKind::CpAdditive).with_lambda(0.0)).unwrap();
        let mul = theoretical_rdm(&s, &spec(TheoreticalKind::CpMultiplicative).with_gamma(0.0)).unwrap();
        assert_eq!(cont.entries(), add.entries());
        assert_eq!(cont.entries(), mul.entries());
    }

    #[test]
    fn categorical_is_binary_and_linear_matches_ordinal() {
        let s = StimulusSet::decade_100();
        let cat = theoretical_rdm(&s, &spec(TheoreticalKind::Categorical)).unwrap();
        assert!(cat.entries().iter().all(|&x| x == 0.0 || x == 1.0));
        let lin = theoretical_rdm(&s, &spec(TheoreticalKind::Linear)).unwrap();
        let ord = theoretical_rdm(&s, &spec(TheoreticalKind::OrdinalContinuous)).unwrap();
        for (l, o) in lin.entries().iter().zip(ord.entries()) {
            assert_eq!(*l, 5.0 * o);
        }
    }

    #[test]
    fn boundary_required() {
        let s = StimulusSet::control_15();
        assert!(theoretical_rdm(&s, &spec(TheoreticalKind::CpAdditive)).is_err());
        assert!(theoretical_rdm(&s, &spec(TheoreticalKind::ContinuousLog)).is_ok());
    }

    #[test]
    fn fit_lambda_self_recovery() {
        let s = StimulusSet::decade_10();
        let grid = default_lambda_grid();
        let planted = theoretical_rdm(&s, &spec(TheoreticalKind::CpAdditive)).unwrap();
        let fit = fit_lambda(&planted, &s, &grid).unwrap();
        assert!((fit.rho - 1.0).abs() < 1e-12);
        // smallest grid point whose template ranks identically to λ = 1
        for &lam in grid.iter().filter(|&&l| l < fit.lambda) {
            let t = theoretical_rdm(&s, &spec(TheoreticalKind::CpAdditive).with_lambda(lam)).unwrap();
            assert!(spearman_rho(planted.entries(), t.entries()).unwrap() < 1.0 - 1e-12);
        }

        let cont = theoretical_rdm(&s, &spec(TheoreticalKind::ContinuousLog)).unwrap();
        let fit = fit_lambda(&cont, &s, &grid).unwrap();
        assert_eq!(fit.lambda, 0.0);
        assert!((fit.rho - 1.0).abs() < 1e-12);
    }
}
