use serde::{Deserialize, Serialize};

use super::probability::{bob_images, ordered_probability, strictly_upper_mass, Party};
use crate::error::{HardyError, Result};
use crate::qudit::{concurrence, constraint_measurements, inner, CoefficientMatrix, MeasurementBasis};
use crate::tolerance;

/// The four settings of one Hardy experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementScenario {
    pub a1: MeasurementBasis,
    pub a2: MeasurementBasis,
    pub b1: MeasurementBasis,
    pub b2: MeasurementBasis,
}

impl MeasurementScenario {
    pub fn new(a1: MeasurementBasis, a2: MeasurementBasis, b1: MeasurementBasis, b2: MeasurementBasis) -> Result<Self> {
        let d = a1.d();
        for b in [&a2, &b1, &b2] {
            if b.d() != d {
                return Err(HardyError::DimensionMismatch {
                    expected: d,
                    found: b.d(),
                });
            }
        }
        Ok(Self { a1, a2, b1, b2 })
    }

    /// `A_1 = B_1` standard, `A_2`/`B_2` forced by the zero constraints on `h`.
    pub fn constructed(h: &CoefficientMatrix) -> Result<Self> {
        let (a2, b2) = constraint_measurements(h)?;
        let std = MeasurementBasis::standard(h.d());
        Ok(Self {
            a1: std.clone(),
            a2,
            b1: std,
            b2,
        })
    }

    pub fn d(&self) -> usize {
        self.a1.d()
    }
}

/// How the measurements behind a report were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasurementMode {
    Constructed,
    Explicit,
}

/// `P(A_2 < B_2)` together with the three constraint probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardyReport {
    pub d: usize,
    pub score: f64,
    /// `[P(A_2 < B_1), P(B_1 < A_1), P(A_1 < B_2)]`
    pub residuals: [f64; 3],
    pub concurrence: f64,
    pub measurement_mode: MeasurementMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<CoefficientMatrix>,
}

impl HardyReport {
    pub fn without_state(mut self) -> Self {
        self.state = None;
        self
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// The four ordered probabilities as they enter the Bell functional.
    pub fn ordered(&self) -> super::bell::OrderedProbabilities {
        super::bell::OrderedProbabilities {
            a2_lt_b1: self.residuals[0],
            b1_lt_a1: self.residuals[1],
            a1_lt_b2: self.residuals[2],
            a2_lt_b2: self.score,
        }
    }
}

/// `(P(A_2 < B_1), P(B_1 < A_1), P(A_1 < B_2))` for an explicit scenario.
pub fn hardy_residuals(h: &CoefficientMatrix, scenario: &MeasurementScenario) -> Result<[f64; 3]> {
    if scenario.d() != h.d() {
        return Err(HardyError::DimensionMismatch {
            expected: h.d(),
            found: scenario.d(),
        });
    }
    Ok([
        ordered_probability(h, (&scenario.a2, Party::Alice), (&scenario.b1, Party::Bob))?,
        ordered_probability(h, (&scenario.b1, Party::Bob), (&scenario.a1, Party::Alice))?,
        ordered_probability(h, (&scenario.a1, Party::Alice), (&scenario.b2, Party::Bob))?,
    ])
}

/// Report for an arbitrary scenario; no constraint is enforced.
pub fn evaluate_scenario(h: &CoefficientMatrix, scenario: &MeasurementScenario) -> Result<HardyReport> {
    let residuals = hardy_residuals(h, scenario)?;
    let score = ordered_probability(h, (&scenario.a2, Party::Alice), (&scenario.b2, Party::Bob))?;
    Ok(HardyReport {
        d: h.d(),
        score,
        residuals,
        concurrence: concurrence_or_zero(h)?,
        measurement_mode: MeasurementMode::Explicit,
        state: Some(h.clone()),
    })
}

fn concurrence_or_zero(h: &CoefficientMatrix) -> Result<f64> {
    if h.d() < 2 {
        Ok(0.0)
    } else {
        concurrence(h)
    }
}

/// Hardy probability `P(A_2 < B_2)` of an upper-triangular state, with the
/// remaining settings fixed by the zero constraints.
pub fn hardy_score(h: &CoefficientMatrix) -> Result<HardyReport> {
    let d = h.d();
    let (a2, b2) = constraint_measurements(h)?;

    // w_n = H conj(v_n); its m-th entry is the A_1 = m, B_2 = n amplitude.
    let images = bob_images(h, &b2);
    let score = strictly_upper_mass(&a2, &images);
    let a1_lt_b2: f64 = (0..d)
        .map(|n| (0..n).map(|m| images[n][m].norm_sqr()).sum::<f64>())
        .sum();
    let columns: Vec<Vec<_>> = (0..d).map(|n| h.column(n)).collect();
    let a2_lt_b1 = strictly_upper_mass(&a2, &columns);
    let b1_lt_a1: f64 = (0..d)
        .map(|m| (0..m).map(|n| h.get(m, n).norm_sqr()).sum::<f64>())
        .sum();

    let residuals = [a2_lt_b1, b1_lt_a1.min(1.0), a1_lt_b2.min(1.0)];
    if let Some(r) = residuals.iter().find(|r| **r > tolerance::PROBABILITY_RESIDUAL) {
        return Err(HardyError::ConstraintViolation { residual: *r });
    }
    Ok(HardyReport {
        d,
        score,
        residuals,
        concurrence: concurrence_or_zero(h)?,
        measurement_mode: MeasurementMode::Constructed,
        state: Some(h.clone()),
    })
}

/// Score alone, without residuals or concurrence. Used in the optimizer's inner loop.
pub(crate) fn score_only(h: &CoefficientMatrix) -> Result<f64> {
    let (a2, b2) = constraint_measurements(h)?;
    let d = h.d();
    let mut total = 0.0;
    for n in 1..d {
        let v = b2.vector(n);
        let w: Vec<_> = (0..d)
            .map(|i| h.row(i).iter().zip(v).map(|(x, y)| x * y.conj()).sum())
            .collect();
        total += (0..n).map(|m| inner(a2.vector(m), &w).norm_sqr()).sum::<f64>();
    }
    Ok(total.clamp(0.0, 1.0))
}
