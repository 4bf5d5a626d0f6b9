// SPDX-License-Identifier: MIT OR Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// What kind of quantity the probing values are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    Numerical,
    Temperature,
    /// Nonce tokens carrying only an ordinal rank (1..N).
    Nonce,
}

/// An ordered set of probing values with an optional category boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StimulusSet {
    condition: String,
    domain: DomainKind,
    values: Vec<f64>,
    boundary: Option<f64>,
    control_position: Option<f64>,
}

impl StimulusSet {
    pub fn new(
        condition: impl Into<String>,
        domain: DomainKind,
        values: Vec<f64>,
        boundary: Option<f64>,
        control_position: Option<f64>,
    ) -> Result<Self> {
        let set = StimulusSet {
            condition: condition.into(),
            domain,
            values,
            boundary,
            control_position,
        };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        let v = &self.values;
        if v.len() < 3 {
            return Err(Error::Validation(format!(
                "stimulus set '{}' needs at least 3 values, got {}",
                self.condition,
                v.len()
            )));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Validation("stimulus values must be finite".into()));
        }
        if v.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Validation(
                "stimulus values must be strictly increasing".into(),
            ));
        }
        if self.domain != DomainKind::Temperature && v[0] <= 0.0 {
            return Err(Error::Validation(format!(
                "{:?} stimulus values must be strictly positive",
                self.domain
            )));
        }
        if let Some(b) = self.boundary {
            if !b.is_finite() {
                return Err(Error::Validation("boundary must be finite".into()));
            }
            let below = v.iter().any(|&x| x < b);
            let above = v.iter().any(|&x| x >= b);
            if !(below && above) {
                return Err(Error::Validation(format!(
                    "boundary {b} must have stimuli on both sides"
                )));
            }
        }
        if let Some(c) = self.control_position {
            if !c.is_finite() {
                return Err(Error::Validation("control position must be finite".into()));
            }
        }
        Ok(())
    }

    /// Values 4..=20 with the single/double-digit boundary at 10.
    pub fn decade_10() -> Self {
        Self::integer_range("decade_10", 4, 20, 1, Some(10.0), None)
    }

    /// Values 11..=19 around the non-boundary position 15.
    pub fn control_15() -> Self {
        Self::integer_range("control_15", 11, 19, 1, None, Some(15.0))
    }

    /// Values 70..=130 in steps of 5 with the boundary at 100.
    pub fn decade_100() -> Self {
        Self::integer_range("decade_100", 70, 130, 5, Some(100.0), None)
    }

    /// Values 130..=170 in steps of 5 around the non-boundary position 150.
    pub fn control_150() -> Self {
        Self::integer_range("control_150", 130, 170, 5, None, Some(150.0))
    }

    /// Eighteen temperatures from -20 to 100 °C, hot/cold boundary at 22 °C.
    pub fn temperature() -> Self {
        let values = [
            -20.0, -10.0, 0.0, 5.0, 10.0, 15.0, 18.0, 20.0, 22.0, 24.0, 26.0, 30.0, 35.0, 40.0,
            50.0, 60.0, 80.0, 100.0,
        ];
        StimulusSet::new(
            "temperature",
            DomainKind::Temperature,
            values.to_vec(),
            Some(22.0),
            None,
        )
        .expect("preset is valid")
    }

    /// Temperatures 35..=51 °C around 43 °C, no linguistic boundary.
    pub fn temperature_control() -> Self {
        let values = (35..=51).map(f64::from).collect();
        StimulusSet::new(
            "temperature_control",
            DomainKind::Temperature,
            values,
            None,
            Some(43.0),
        )
        .expect("preset is valid")
    }

    /// Ranks 1..=17 standing in for 4..=20; the boundary sits at rank 7.
    pub fn nonce(condition: &str) -> Self {
        let values = (1..=17).map(f64::from).collect();
        StimulusSet::new(condition, DomainKind::Nonce, values, Some(7.0), None)
            .expect("preset is valid")
    }

    /// Look up a preset by condition name.
    pub fn preset(name: &str) -> Option<Self> {
        Some(match name {
            "decade_10" => Self::decade_10(),
            "control_15" => Self::control_15(),
            "decade_100" => Self::decade_100(),
            "control_150" => Self::control_150(),
            "temperature" => Self::temperature(),
            "temperature_control" => Self::temperature_control(),
            "nonce_no_order" | "nonce_ordered" => Self::nonce(name),
            _ => return None,
        })
    }

    fn integer_range(
        name: &str,
        lo: i32,
        hi: i32,
        step: usize,
        boundary: Option<f64>,
        control: Option<f64>,
    ) -> Self {
        let values = (lo..=hi).step_by(step).map(f64::from).collect();
        StimulusSet::new(name, DomainKind::Numerical, values, boundary, control)
            .expect("preset is valid")
    }

    pub fn condition(&self) -> &str {
        &self.condition
    }

    pub fn domain(&self) -> DomainKind {
        self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn boundary(&self) -> Option<f64> {
        self.boundary
    }

    pub fn control_position(&self) -> Option<f64> {
        self.control_position
    }

    /// 0 below the boundary, 1 at or above it; `None` without a boundary.
    pub fn category_of(&self, value: f64) -> Option<u8> {
        self.boundary.map(|b| u8::from(value >= b))
    }

    /// Whether `a` and `b` fall on different sides of the boundary.
    pub fn is_cross(&self, a: f64, b: f64) -> bool {
        match self.boundary {
            Some(_) => self.category_of(a) != self.category_of(b),
            None => false,
        }
    }

    /// Shift added to every value before taking logarithms. Zero unless
    /// some value is non-positive, in which case values map to
    /// `v - v_min + 1`.
    pub fn log_shift(&self) -> f64 {
        let min = self.values[0];
        if min <= 0.0 {
            1.0 - min
        } else {
            0.0
        }
    }

    /// Natural logs of the (shifted) values.
    pub fn log_values(&self) -> Result<Vec<f64>> {
        let shift = match self.domain {
            DomainKind::Temperature => self.log_shift(),
            _ => 0.0,
        };
        self.values
            .iter()
            .map(|&v| {
                let x = v + shift;
                if x > 0.0 {
                    Ok(x.ln())
                } else {
                    Err(Error::Domain(format!(
                        "log of non-positive stimulus value {v}"
                    )))
                }
            })
            .collect()
    }

    /// Ordinal ranks 1..=N.
    pub fn ranks(&self) -> Vec<f64> {
        (1..=self.values.len()).map(|r| r as f64).collect()
    }

    /// Index of the first stimulus at or above the boundary.
    pub fn boundary_index(&self) -> Option<usize> {
        let b = self.boundary?;
        self.values.iter().position(|&v| v >= b)
    }

    /// Category labels for every stimulus, if a boundary exists.
    pub fn labels(&self) -> Option<Vec<bool>> {
        let b = self.boundary?;
        Some(self.values.iter().map(|&v| v >= b).collect())
    }
}
