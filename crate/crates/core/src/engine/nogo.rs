use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bell::OrderedProbabilities;
use super::probability::{ordered_probability, Party};
use super::report::{hardy_score, MeasurementScenario};
use crate::error::{HardyError, Result};
use crate::qudit::{mes, MeasurementBasis};
use crate::random::{random_phase, random_unitary, rng};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NogoReport {
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    /// Largest `P(A_2 < B_2)` over the trials.
    pub max_score: f64,
    /// Largest of the three constraint probabilities over the trials.
    pub max_residual: f64,
    /// Score of the maximally entangled state under the constructed measurements.
    pub constructed_score: f64,
    pub passed: bool,
}

/// Tolerance on every trial's `P(A_2 < B_2)`.
pub const NOGO_SCORE_TOLERANCE: f64 = 1e-12;

/// Settings compatible with the zero constraints on the maximally entangled state.
///
/// With `H = I/sqrt(d)` the amplitude table of a setting pair is
/// `U^dagger conj(V) / sqrt(d)`, so each constraint forces that product to be
/// diagonal. Choosing `conj(V_1) = U_1 D_1`, `conj(V_2) = U_1 D_2` and
/// `U_2 = U_1 D_1 D_3^dagger` makes the `A_2 B_2` table
/// `D_3 D_1^dagger D_2 / sqrt(d)`, which is diagonal as well.
pub fn mes_scenario(u1: &[Complex64], phases: [&[Complex64]; 3]) -> Result<MeasurementScenario> {
    let d = phases[0].len();
    let [d1, d2, d3] = phases;
    let col = |m: usize| -> Vec<Complex64> { (0..d).map(|i| u1[i * d + m]).collect() };
    let scaled = |m: usize, f: Complex64, conjugate: bool| -> Vec<Complex64> {
        col(m)
            .into_iter()
            .map(|z| if conjugate { (z * f).conj() } else { z * f })
            .collect()
    };
    let a1 = MeasurementBasis::new((0..d).map(col).collect())?;
    let b1 = MeasurementBasis::new((0..d).map(|m| scaled(m, d1[m], true)).collect())?;
    let b2 = MeasurementBasis::new((0..d).map(|m| scaled(m, d2[m], true)).collect())?;
    let a2 = MeasurementBasis::new((0..d).map(|m| scaled(m, d1[m] * d3[m].conj(), false)).collect())?;
    MeasurementScenario::new(a1, a2, b1, b2)
}

/// All four ordered probabilities of the maximally entangled state in `scenario`.
pub fn mes_ordered(scenario: &MeasurementScenario) -> Result<OrderedProbabilities> {
    let h = mes(scenario.d())?;
    let s = scenario;
    Ok(OrderedProbabilities {
        a2_lt_b1: ordered_probability(&h, (&s.a2, Party::Alice), (&s.b1, Party::Bob))?,
        b1_lt_a1: ordered_probability(&h, (&s.b1, Party::Bob), (&s.a1, Party::Alice))?,
        a1_lt_b2: ordered_probability(&h, (&s.a1, Party::Alice), (&s.b2, Party::Bob))?,
        a2_lt_b2: ordered_probability(&h, (&s.a2, Party::Alice), (&s.b2, Party::Bob))?,
    })
}

/// Random-phase trials showing the maximally entangled state never scores.
pub fn mes_nogo_check(d: usize, trials: usize, seed: u64) -> Result<NogoReport> {
    if d < 2 {
        return Err(HardyError::Dimension { d, min: 2 });
    }
    let mut rng = rng(seed);
    let mut max_score: f64 = 0.0;
    let mut max_residual: f64 = 0.0;
    for _ in 0..trials {
        let u1 = random_unitary(d, &mut rng);
        let phases: Vec<Vec<Complex64>> = (0..3)
            .map(|_| (0..d).map(|_| random_phase(&mut rng)).collect())
            .collect();
        let scenario = mes_scenario(&u1, [&phases[0], &phases[1], &phases[2]])?;
        let p = mes_ordered(&scenario)?;
        max_score = max_score.max(p.a2_lt_b2);
        max_residual = max_residual.max(p.a2_lt_b1).max(p.b1_lt_a1).max(p.a1_lt_b2);
    }
    let constructed_score = hardy_score(&mes(d)?)?.score;
    let passed = max_score <= NOGO_SCORE_TOLERANCE && constructed_score <= NOGO_SCORE_TOLERANCE;
    Ok(NogoReport {
        d,
        trials,
        seed,
        max_score,
        max_residual,
        constructed_score,
        passed,
    })
}
