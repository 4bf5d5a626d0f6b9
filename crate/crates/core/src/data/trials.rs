// SPDX-License-Identifier: MIT OR Apache-2.0

//! Forced-choice trial files.
//!
//! One header row, then one row per trial. Required columns are
//! `value_a,value_b,order,logit_a,logit_b`; `framing` and `layer` are
//! optional. Files may also carry the derived columns `abs_delta_logit`,
//! `is_cross_boundary`, `log_distance` and `distance_bin`; when present
//! they are checked against the values recomputed on load.
//!
//! Identification trials use the same schema with `value_a == value_b`
//! (the probed value), `logit_a` holding the category-a option's logit and
//! `logit_b` the category-b option's logit.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::stimulus::{DomainKind, StimulusSet};
use crate::error::{Error, Result};

pub const N_DISTANCE_BINS: usize = 6;

const REQUIRED: [&str; 5] = ["value_a", "value_b", "order", "logit_a", "logit_b"];
const DERIVED_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Order {
    AB,
    BA,
}

impl std::str::FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "AB" => Ok(Order::AB),
            "BA" => Ok(Order::BA),
            other => Err(Error::Parse(format!("order must be AB or BA, got '{other}'"))),
        }
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Order::AB => "AB",
            Order::BA => "BA",
        })
    }
}

/// One forced-choice trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub value_a: f64,
    pub value_b: f64,
    pub order: Order,
    pub logit_a: f64,
    pub logit_b: f64,
    pub abs_delta_logit: f64,
    pub is_cross_boundary: bool,
    pub log_distance: f64,
    pub distance_bin: Option<u8>,
    pub framing: Option<String>,
    pub layer: Option<usize>,
}

impl TrialRecord {
    /// Build a record, deriving `abs_delta_logit`, `is_cross_boundary` and
    /// `log_distance` from the stimulus set.
    pub fn new(
        stimuli: &StimulusSet,
        value_a: f64,
        value_b: f64,
        order: Order,
        logit_a: f64,
        logit_b: f64,
    ) -> Result<Self> {
        if ![value_a, value_b, logit_a, logit_b]
            .iter()
            .all(|x| x.is_finite())
        {
            return Err(Error::Validation("trial fields must be finite".into()));
        }
        Ok(TrialRecord {
            value_a,
            value_b,
            order,
            logit_a,
            logit_b,
            abs_delta_logit: (logit_a - logit_b).abs(),
            is_cross_boundary: stimuli.is_cross(value_a, value_b),
            log_distance: log_distance(stimuli, value_a, value_b)?,
            distance_bin: None,
            framing: None,
            layer: None,
        })
    }

    pub fn with_framing(mut self, framing: impl Into<String>) -> Self {
        self.framing = Some(framing.into());
        self
    }

    pub fn with_layer(mut self, layer: usize) -> Self {
        self.layer = Some(layer);
        self
    }

    /// Probability mass on option b under a two-way softmax of the logits.
    pub fn prob_b(&self) -> f64 {
        1.0 / (1.0 + (self.logit_a - self.logit_b).exp())
    }
}

fn log_distance(stimuli: &StimulusSet, a: f64, b: f64) -> Result<f64> {
    let shift = if stimuli.domain() == DomainKind::Temperature {
        stimuli.log_shift()
    } else {
        0.0
    };
    let (a, b) = (a + shift, b + shift);
    if a <= 0.0 || b <= 0.0 {
        return Err(Error::Domain(format!(
            "log-distance needs positive values, got {a} and {b}"
        )));
    }
    Ok((a.ln() - b.ln()).abs())
}

/// Assign six equal-count bins by rank of `log_distance`. Tied distances
/// always share a bin.
pub fn assign_distance_bins(trials: &mut [TrialRecord]) {
    let n = trials.len();
    if n == 0 {
        return;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| trials[i].log_distance.total_cmp(&trials[j].log_distance));
    let mut first_rank = 0;
    for (rank, &idx) in order.iter().enumerate() {
        if rank > 0 && trials[order[rank - 1]].log_distance != trials[idx].log_distance {
            first_rank = rank;
        }
        let bin = first_rank * N_DISTANCE_BINS / n;
        trials[idx].distance_bin = Some(bin as u8);
    }
}

/// Read a trials file and recompute the derived fields against `stimuli`.
/// Distance bins are taken from a `distance_bin` column when present and
/// assigned by [`assign_distance_bins`] otherwise.
pub fn read_trials(path: impl AsRef<Path>, stimuli: &StimulusSet) -> Result<Vec<TrialRecord>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_trials(file, stimuli)
}

pub(crate) fn parse_trials<R: std::io::Read>(
    reader: R,
    stimuli: &StimulusSet,
) -> Result<Vec<TrialRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Schema(format!("header row: {e}")))?
        .clone();
    let columns: HashMap<&str, usize> = headers.iter().enumerate().map(|(i, h)| (h, i)).collect();
    for name in REQUIRED {
        if !columns.contains_key(name) {
            return Err(Error::Schema(format!("missing required column '{name}'")));
        }
    }

    let mut trials = Vec::new();
    let mut have_bins = columns.contains_key("distance_bin");
    for (row_no, row) in rdr.records().enumerate() {
        let line = row_no + 2;
        let row = row.map_err(|e| Error::Parse(format!("line {line}: {e}")))?;
        let field = |name: &str| -> Option<&str> {
            columns
                .get(name)
                .and_then(|&i| row.get(i))
                .filter(|s| !s.is_empty())
        };
        let required = |name: &str| -> Result<&str> {
            field(name).ok_or_else(|| Error::Parse(format!("line {line}: empty '{name}'")))
        };
        let number = |name: &str| -> Result<f64> {
            let raw = required(name)?;
            raw.parse::<f64>()
                .map_err(|_| Error::Parse(format!("line {line}: '{name}' = '{raw}' is not a number")))
        };

        let mut trial = TrialRecord::new(
            stimuli,
            number("value_a")?,
            number("value_b")?,
            required("order")?
                .parse()
                .map_err(|e: Error| Error::Parse(format!("line {line}: {e}")))?,
            number("logit_a")?,
            number("logit_b")?,
        )?;
        trial.framing = field("framing").map(str::to_string);
        if let Some(raw) = field("layer") {
            trial.layer = Some(
                raw.parse()
                    .map_err(|_| Error::Parse(format!("line {line}: bad layer '{raw}'")))?,
            );
        }

        if field("abs_delta_logit").is_some() {
            check_close(line, "abs_delta_logit", number("abs_delta_logit")?, trial.abs_delta_logit)?;
        }
        if field("log_distance").is_some() {
            check_close(line, "log_distance", number("log_distance")?, trial.log_distance)?;
        }
        if let Some(raw) = field("is_cross_boundary") {
            let flag = parse_flag(raw)
                .ok_or_else(|| Error::Parse(format!("line {line}: bad flag '{raw}'")))?;
            if flag != trial.is_cross_boundary {
                return Err(Error::Validation(format!(
                    "line {line}: is_cross_boundary={flag} disagrees with the stimulus boundary"
                )));
            }
        }
        match field("distance_bin") {
            Some(raw) => {
                let bin: u8 = raw
                    .parse()
                    .ok()
                    .filter(|&b| (b as usize) < N_DISTANCE_BINS)
                    .ok_or_else(|| Error::Parse(format!("line {line}: bad distance_bin '{raw}'")))?;
                trial.distance_bin = Some(bin);
            }
            None => have_bins = false,
        }
        trials.push(trial);
    }
    if !have_bins {
        assign_distance_bins(&mut trials);
    }
    Ok(trials)
}

fn check_close(line: usize, name: &str, stored: f64, derived: f64) -> Result<()> {
    if (stored - derived).abs() > DERIVED_TOL * (1.0 + derived.abs()) {
        return Err(Error::Validation(format!(
            "line {line}: {name} = {stored} but recomputed {derived}"
        )));
    }
    Ok(())
}

fn parse_flag(raw: &str) -> Option<bool> {
    match raw.to_ascii_lowercase().as_str() {
        "1" | "true" => Some(true),
        "0" | "false" => Some(false),
        _ => None,
    }
}

/// Write trials with every derived column so the file reloads identically.
pub fn write_trials(path: impl AsRef<Path>, trials: &[TrialRecord]) -> Result<()> {
    let path = path.as_ref();
    let mut wtr = csv::Writer::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Parse(format!("{other:?}")),
    })?;
    let csv_err = |e: csv::Error| Error::Parse(e.to_string());
    wtr.write_record([
        "value_a",
        "value_b",
        "order",
        "logit_a",
        "logit_b",
        "framing",
        "layer",
        "abs_delta_logit",
        "is_cross_boundary",
        "log_distance",
        "distance_bin",
    ])
    .map_err(csv_err)?;
    for t in trials {
        wtr.write_record([
            t.value_a.to_string(),
            t.value_b.to_string(),
            t.order.to_string(),
            t.logit_a.to_string(),
            t.logit_b.to_string(),
            t.framing.clone().unwrap_or_default(),
            t.layer.map(|l| l.to_string()).unwrap_or_default(),
            t.abs_delta_logit.to_string(),
            u8::from(t.is_cross_boundary).to_string(),
            t.log_distance.to_string(),
            t.distance_bin.map(|b| b.to_string()).unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    wtr.flush().map_err(|e| Error::io(path, e))
}
