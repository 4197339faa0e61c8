use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::probability::joint_table;
use super::report::MeasurementScenario;
use crate::error::{HardyError, Result};
use crate::qudit::{CoefficientMatrix, MeasurementBasis};
use crate::random::rng;

/// Which Alice setting is paired with which Bob setting, as `"11"` .. `"22"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SettingPair {
    #[serde(rename = "11")]
    A1B1,
    #[serde(rename = "12")]
    A1B2,
    #[serde(rename = "21")]
    A2B1,
    #[serde(rename = "22")]
    A2B2,
}

impl SettingPair {
    pub fn bases<'a>(&self, s: &'a MeasurementScenario) -> (&'a MeasurementBasis, &'a MeasurementBasis) {
        match self {
            SettingPair::A1B1 => (&s.a1, &s.b1),
            SettingPair::A1B2 => (&s.a1, &s.b2),
            SettingPair::A2B1 => (&s.a2, &s.b1),
            SettingPair::A2B2 => (&s.a2, &s.b2),
        }
    }
}

impl FromStr for SettingPair {
    type Err = HardyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "11" => Ok(SettingPair::A1B1),
            "12" => Ok(SettingPair::A1B2),
            "21" => Ok(SettingPair::A2B1),
            "22" => Ok(SettingPair::A2B2),
            other => Err(HardyError::SettingPair(other.to_string())),
        }
    }
}

impl fmt::Display for SettingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            SettingPair::A1B1 => "11",
            SettingPair::A1B2 => "12",
            SettingPair::A2B1 => "21",
            SettingPair::A2B2 => "22",
        };
        f.write_str(label)
    }
}

/// Outcome counts, row `m` = Alice outcome, column `n` = Bob outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub d: usize,
    pub pair: SettingPair,
    pub samples: u64,
    pub seed: u64,
    pub counts: Vec<Vec<u64>>,
}

impl CountTable {
    pub fn get(&self, m: usize, n: usize) -> u64 {
        self.counts[m][n]
    }

    /// Empirical frequency of Alice's outcome being strictly smaller than Bob's.
    pub fn ordered_frequency(&self) -> f64 {
        let hits: u64 = (0..self.d)
            .map(|m| ((m + 1)..self.d).map(|n| self.counts[m][n]).sum::<u64>())
            .sum();
        hits as f64 / self.samples as f64
    }
}

/// Draws `n_samples` i.i.d. outcome pairs from the exact joint distribution.
///
/// Inverse-CDF over the row-major cell probabilities with a ChaCha8 stream
/// seeded from `seed`.
pub fn sample_outcomes(
    h: &CoefficientMatrix,
    scenario: &MeasurementScenario,
    pair: SettingPair,
    n_samples: u64,
    seed: u64,
) -> Result<CountTable> {
    if n_samples == 0 {
        return Err(HardyError::InvalidArgument("n_samples must be at least 1".into()));
    }
    let d = h.d();
    let (alice, bob) = pair.bases(scenario);
    let table = joint_table(h, alice, bob)?;
    let cumulative: Vec<f64> = table
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let total = *cumulative.last().expect("d >= 1");

    let mut rng = rng(seed);
    let mut flat = vec![0u64; d * d];
    for _ in 0..n_samples {
        let x = rng.random::<f64>() * total;
        let cell = cumulative.partition_point(|&c| c <= x).min(d * d - 1);
        flat[cell] += 1;
    }
    let counts = flat.chunks(d).map(|row| row.to_vec()).collect();
    Ok(CountTable {
        d,
        pair,
        samples: n_samples,
        seed,
        counts,
    })
}
