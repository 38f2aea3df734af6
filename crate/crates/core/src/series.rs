use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where a series or spectrum came from.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub label: String,
    /// Generator seed, for synthetic noise inputs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(label: impl Into<String>) -> Self {
        Provenance {
            label: label.into(),
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Real samples `a(1), ..., a(t)`. Never empty, always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    provenance: Provenance,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("time series must hold at least one sample"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "sample n = {} is not finite ({})",
                i + 1,
                values[i]
            )));
        }
        Ok(TimeSeries { values, provenance })
    }

    pub fn from_values(values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        Self::new(values, Provenance::new(label))
    }

    /// Sample count `t`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `a(n)` with the 1-based index used throughout the transforms.
    pub fn at(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn label(&self) -> &str {
        &self.provenance.label
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Samples `a(offset + 1), ..., a(offset + len)` as a new series.
    pub fn window(&self, offset: usize, len: usize) -> Result<TimeSeries> {
        if len == 0 || offset + len > self.len() {
            return Err(Error::invalid(format!(
                "window offset {offset} length {len} does not fit a series of {} samples",
                self.len()
            )));
        }
        Ok(TimeSeries {
            values: self.values[offset..offset + len].to_vec(),
            provenance: self.provenance.clone(),
        })
    }

    pub(crate) fn map_values(&self, f: impl Fn(usize, f64) -> f64) -> Result<TimeSeries> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| f(i + 1, v))
            .collect();
        TimeSeries::new(values, self.provenance.clone())
    }
}
