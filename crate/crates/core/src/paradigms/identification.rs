// SPDX-License-Identifier: MIT OR Apache-2.0

//! Counterbalanced identification curves and their logistic fits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::data::{Order, StimulusSet, TrialRecord};
use crate::error::{Error, Result};
use crate::fitting::{fit_sigmoid, logistic, SigmoidFit};

/// A fitted curve only counts as crossing 0.5 if it rises (or falls) by at
/// least this much across the probed range.
pub const MIN_CROSSOVER_SWING: f64 = 0.2;

const DEFAULT_FRAMING: &str = "default";

type OrderSums = BTreeMap<Order, (f64, usize)>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FramingCurve {
    pub framing: String,
    pub values: Vec<f64>,
    /// Mean P(category b) over AB trials, per value.
    pub p_ab: Vec<f64>,
    /// Mean P(category b) over BA trials, per value.
    pub p_ba: Vec<f64>,
    /// Counterbalanced curve: pointwise mean of `p_ab` and `p_ba`.
    pub p_category_b: Vec<f64>,
    pub fit: Option<SigmoidFit>,
    /// Fitted 0.5 crossing, when the curve has one inside the range.
    pub crossover: Option<f64>,
    /// Crossover lies within one stimulus step of the structural boundary.
    pub boundary_hit: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverDelta {
    pub framing_a: String,
    pub framing_b: String,
    /// |x0 − x0′| in stimulus steps; `None` unless both framings cross.
    pub delta_steps: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentificationResult {
    pub step: f64,
    pub framings: Vec<FramingCurve>,
    pub crossover_deltas: Vec<CrossoverDelta>,
}

fn median_step(values: &[f64]) -> f64 {
    let mut steps: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    steps.sort_by(f64::total_cmp);
    steps[steps.len() / 2]
}

/// Group trials by framing and probed value, average P(category b) within
/// each presentation order, counterbalance, and fit a logistic per
/// framing. Identification trials carry the probed value in both value
/// columns.
pub fn run_identification(trials: &[TrialRecord], stimuli: &StimulusSet) -> Result<IdentificationResult> {
    if trials.is_empty() {
        return Err(Error::EmptyInput("no identification trials".into()));
    }
    // framing -> value bits -> order -> (sum, count)
    let mut groups: BTreeMap<String, BTreeMap<u64, OrderSums>> = BTreeMap::new();
    for t in trials {
        if t.value_a != t.value_b {
            return Err(Error::Validation(format!(
                "identification trial probes two values ({} and {})",
                t.value_a, t.value_b
            )));
        }
        let framing = t.framing.clone().unwrap_or_else(|| DEFAULT_FRAMING.into());
        let slot = groups
            .entry(framing)
            .or_default()
            .entry(ordered_bits(t.value_a))
            .or_default()
            .entry(t.order)
            .or_insert((0.0, 0));
        slot.0 += t.prob_b();
        slot.1 += 1;
    }

    let boundary = stimuli.boundary();
    let mut framings = Vec::new();
    let mut global_step: Option<f64> = None;
    for (framing, by_value) in groups {
        let mut values = Vec::new();
        let (mut p_ab, mut p_ba) = (Vec::new(), Vec::new());
        for (bits, by_order) in by_value {
            let value = from_ordered_bits(bits);
            let mean_for = |o: Order| {
                by_order.get(&o).map(|(s, c)| s / *c as f64).ok_or_else(|| {
                    Error::UnbalancedDesign(format!(
                        "framing '{framing}', value {value}: no {o} trials"
                    ))
                })
            };
            p_ab.push(mean_for(Order::AB)?);
            p_ba.push(mean_for(Order::BA)?);
            values.push(value);
        }
        let p_category_b: Vec<f64> = p_ab.iter().zip(&p_ba).map(|(a, b)| (a + b) / 2.0).collect();
        let step = if values.len() >= 2 {
            median_step(&values)
        } else {
            1.0
        };
        global_step.get_or_insert(step);

        let fit = if values.len() >= 4 {
            Some(fit_sigmoid(&values, &p_category_b)?)
        } else {
            None
        };
        let crossover = fit.and_then(|f| {
            let (lo, hi) = (values[0], values[values.len() - 1]);
            let swing = (logistic(hi, f.crossover, f.slope) - logistic(lo, f.crossover, f.slope)).abs();
            (swing >= MIN_CROSSOVER_SWING && f.crossover >= lo && f.crossover <= hi)
                .then_some(f.crossover)
        });
        let boundary_hit = match (crossover, boundary) {
            (Some(x0), Some(b)) => (x0 - b).abs() <= step + 1e-12,
            _ => false,
        };
        framings.push(FramingCurve {
            framing,
            values,
            p_ab,
            p_ba,
            p_category_b,
            fit,
            crossover,
            boundary_hit,
        });
    }

    let step = global_step.unwrap_or(1.0);
    let mut crossover_deltas = Vec::new();
    for (i, a) in framings.iter().enumerate() {
        for b in &framings[i + 1..] {
            crossover_deltas.push(CrossoverDelta {
                framing_a: a.framing.clone(),
                framing_b: b.framing.clone(),
                delta_steps: match (a.crossover, b.crossover) {
                    (Some(x), Some(y)) => Some((x - y).abs() / step),
                    _ => None,
                },
            });
        }
    }
    Ok(IdentificationResult {
        step,
        framings,
        crossover_deltas,
    })
}

/// Order-preserving map from finite f64 to u64, used as a map key.
fn ordered_bits(x: f64) -> u64 {
    let b = x.to_bits();
    if b >> 63 == 1 {
        !b
    } else {
        b | (1 << 63)
    }
}

fn from_ordered_bits(b: u64) -> f64 {
    if b >> 63 == 1 {
        f64::from_bits(b & !(1 << 63))
    } else {
        f64::from_bits(!b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial(s: &StimulusSet, v: f64, order: Order, p_b: f64, framing: &str) -> TrialRecord {
        // logit_b − logit_a = logit(p_b)
        let logit = (p_b / (1.0 - p_b)).ln();
        TrialRecord::new(s, v, v, order, 0.0, logit).unwrap().with_framing(framing)
    }

    #[test]
    fn position_bias_cancels() {
        let s = StimulusSet::decade_10();
        let trials: Vec<_> = s
            .values()
            .iter()
            .flat_map(|&v| [trial(&s, v, Order::AB, 0.9, "f"), trial(&s, v, Order::BA, 0.1, "f")])
            .collect();
        let r = run_identification(&trials, &s).unwrap();
        for p in &r.framings[0].p_category_b {
            assert!((p - 0.5).abs() < 1e-12);
        }
        assert_eq!(r.framings[0].crossover, None);
        assert!(!r.framings[0].boundary_hit);
    }

    #[test]
    fn step_curve_hits_boundary() {
        let s = StimulusSet::decade_10();
        let trials: Vec<_> = s
            .values()
            .iter()
            .flat_map(|&v| {
                let p = if v >= 10.0 { 0.999 } else { 0.001 };
                [trial(&s, v, Order::AB, p, "digit"), trial(&s, v, Order::BA, p, "digit")]
            })
            .collect();
        let r = run_identification(&trials, &s).unwrap();
        let c = &r.framings[0];
        let x0 = c.crossover.expect("step curve crosses");
        assert!((x0 - 10.0).abs() <= 1.0, "{x0}");
        assert!(c.boundary_hit);
    }

    #[test]
    fn missing_order_is_unbalanced() {
        let s = StimulusSet::decade_10();
        let trials = vec![trial(&s, 5.0, Order::AB, 0.3, "f")];
        assert!(matches!(
            run_identification(&trials, &s),
            Err(Error::UnbalancedDesign(_))
        ));
    }

    #[test]
    fn ordered_bits_roundtrip_and_order() {
        let xs = [-20.0, -0.5, 0.0, 3.0, 100.0];
        for w in xs.windows(2) {
            assert!(ordered_bits(w[0]) < ordered_bits(w[1]));
        }
        for x in xs {
            assert_eq!(from_ordered_bits(ordered_bits(x)), x);
        }
    }
}
