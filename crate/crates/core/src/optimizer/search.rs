use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::nelder_mead::{minimize, SimplexConfig};
use crate::catalog::{approx_state, optimal_state};
use crate::engine::{hardy_score, score_only, HardyReport};
use crate::error::{HardyError, Result};
use crate::qudit::CoefficientMatrix;
use crate::random::rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub d: usize,
    /// Restrict to states symmetric under reflection in the anti-diagonal.
    pub symmetric: bool,
    pub restarts: usize,
    /// Local-search iteration budget per restart.
    pub max_iterations: usize,
    pub step_tolerance: f64,
    pub score_tolerance: f64,
    pub seed: u64,
}

impl OptimizerConfig {
    pub fn new(d: usize) -> Self {
        Self {
            d,
            symmetric: false,
            restarts: 4,
            max_iterations: 40_000,
            step_tolerance: 1e-9,
            score_tolerance: 1e-13,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(HardyError::Dimension { d: self.d, min: 2 });
        }
        if self.restarts == 0 {
            return Err(HardyError::InvalidArgument("restarts must be at least 1".into()));
        }
        if !(self.step_tolerance > 0.0 && self.score_tolerance > 0.0) {
            return Err(HardyError::InvalidArgument("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Best state found, with its constructed-measurement report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationOutcome {
    #[serde(flatten)]
    pub report: HardyReport,
    pub converged: bool,
    pub best_restart: usize,
    pub restarts: usize,
    pub evaluations: usize,
}

/// Maps free parameters onto the upper triangle. Each parameter feeds one
/// orbit of cells: a single cell, or a pair mirrored in the anti-diagonal.
#[derive(Debug, Clone)]
struct TriangularParams {
    d: usize,
    orbits: Vec<Vec<(usize, usize)>>,
}

impl TriangularParams {
    fn new(d: usize, symmetric: bool) -> Self {
        let mut orbits = Vec::new();
        for i in 0..d {
            for j in i..d {
                let mirror = (d - 1 - j, d - 1 - i);
                if !symmetric || mirror == (i, j) {
                    orbits.push(vec![(i, j)]);
                } else if (i, j) < mirror {
                    orbits.push(vec![(i, j), mirror]);
                }
            }
        }
        Self { d, orbits }
    }

    #[cfg(test)]
    fn len(&self) -> usize {
        self.orbits.len()
    }

    fn norm(&self, x: &[f64]) -> f64 {
        self.orbits
            .iter()
            .zip(x)
            .map(|(o, v)| o.len() as f64 * v * v)
            .sum::<f64>()
            .sqrt()
    }

    /// Rescales `x` so the state it encodes has unit norm.
    fn project(&self, x: &mut [f64]) {
        let n = self.norm(x);
        if n > 0.0 {
            x.iter_mut().for_each(|v| *v = v.abs() / n);
        }
    }

    fn state(&self, x: &[f64]) -> Option<CoefficientMatrix> {
        let d = self.d;
        let n = self.norm(x);
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for (orbit, v) in self.orbits.iter().zip(x) {
            for &(i, j) in orbit {
                entries[i * d + j] = Complex64::new(v.abs() / n, 0.0);
            }
        }
        Some(CoefficientMatrix::from_parts_unchecked(d, entries))
    }

    fn encode(&self, h: &CoefficientMatrix) -> Vec<f64> {
        let mut x: Vec<f64> = self
            .orbits
            .iter()
            .map(|o| o.iter().map(|&(i, j)| h.get(i, j).norm()).sum::<f64>() / o.len() as f64)
            .collect();
        self.project(&mut x);
        x
    }

    fn score(&self, x: &[f64]) -> f64 {
        self.state(x).and_then(|h| score_only(&h).ok()).unwrap_or(0.0)
    }
}

struct LocalResult {
    x: Vec<f64>,
    score: f64,
    converged: bool,
    evaluations: usize,
}

/// Simplex rounds with shrinking initial steps, then quasi-Newton refinement
/// on finite-difference gradients.
fn local_ascent(params: &TriangularParams, start: Vec<f64>, config: &OptimizerConfig) -> LocalResult {
    let mut evaluations = 0usize;
    let mut x = start;
    params.project(&mut x);
    let mut best = params.score(&x);
    let mut budget = config.max_iterations;
    let mut converged = false;
    let mut step = 0.05;

    while budget > 0 {
        let simplex = SimplexConfig {
            initial_step: step,
            value_tolerance: config.score_tolerance,
            step_tolerance: config.step_tolerance,
            max_iterations: budget,
        };
        let result = minimize(
            |p| {
                evaluations += 1;
                -params.score(p)
            },
            &x,
            &simplex,
        );
        budget = budget.saturating_sub(result.iterations.max(1));
        let mut candidate = result.x;
        params.project(&mut candidate);
        let score = params.score(&candidate);
        let gain = score - best;
        if score > best {
            best = score;
            x = candidate;
        }
        if gain <= config.score_tolerance {
            converged = result.converged;
            break;
        }
        step = (step * 0.5).max(1e-4);
    }

    let refined = quasi_newton(params, x, best, config, &mut evaluations, &mut budget);
    LocalResult {
        x: refined.0,
        score: refined.1,
        converged: converged && refined.2,
        evaluations,
    }
}

fn fd_gradient(params: &TriangularParams, p: &[f64], evaluations: &mut usize) -> Vec<f64> {
    const FD_STEP: f64 = 1e-6;
    *evaluations += 2 * p.len();
    (0..p.len())
        .map(|k| {
            let mut up = p.to_vec();
            let mut down = p.to_vec();
            up[k] += FD_STEP;
            down[k] -= FD_STEP;
            (params.score(&up) - params.score(&down)) / (2.0 * FD_STEP)
        })
        .collect()
}

/// BFGS ascent with central-difference gradients and backtracking line search.
fn quasi_newton(
    params: &TriangularParams,
    mut x: Vec<f64>,
    mut value: f64,
    config: &OptimizerConfig,
    evaluations: &mut usize,
    budget: &mut usize,
) -> (Vec<f64>, f64, bool) {
    let n = x.len();
    // inverse Hessian approximation of the negated objective
    let mut inv_h: Vec<f64> = (0..n * n).map(|k| if k % (n + 1) == 0 { 1.0 } else { 0.0 }).collect();
    let mut g = fd_gradient(params, &x, evaluations);
    let mut fresh = true;
    while *budget > 0 {
        *budget -= 1;
        // ascent direction p = H^{-1} g
        let dir: Vec<f64> = (0..n).map(|i| (0..n).map(|j| inv_h[i * n + j] * g[j]).sum()).collect();
        let slope: f64 = dir.iter().zip(&g).map(|(a, b)| a * b).sum();
        if slope <= 0.0 {
            if fresh {
                // plain gradient step is not an ascent direction: stationary
                return (x, value, true);
            }
            inv_h
                .iter_mut()
                .enumerate()
                .for_each(|(k, v)| *v = if k % (n + 1) == 0 { 1.0 } else { 0.0 });
            fresh = true;
            continue;
        }
        fresh = false;
        let mut t = 1.0;
        let mut accepted = None;
        while t > 1e-12 {
            let mut trial: Vec<f64> = x.iter().zip(&dir).map(|(a, b)| a + t * b).collect();
            params.project(&mut trial);
            *evaluations += 1;
            let v = params.score(&trial);
            if v >= value + 1e-4 * t * slope {
                accepted = Some((trial, v));
                break;
            }
            t *= 0.5;
        }
        let Some((next, next_value)) = accepted else {
            return (x, value, true);
        };
        let moved = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let gain = next_value - value;
        let next_g = fd_gradient(params, &next, evaluations);

        // BFGS update for minimizing -score: s = step, y = -(g_next - g)
        let s: Vec<f64> = next.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = next_g.iter().zip(&g).map(|(a, b)| b - a).collect();
        let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
        if sy > 1e-16 {
            let hy: Vec<f64> = (0..n).map(|i| (0..n).map(|j| inv_h[i * n + j] * y[j]).sum()).collect();
            let yhy: f64 = y.iter().zip(&hy).map(|(a, b)| a * b).sum();
            for i in 0..n {
                for j in 0..n {
                    inv_h[i * n + j] += (sy + yhy) * s[i] * s[j] / (sy * sy) - (hy[i] * s[j] + s[i] * hy[j]) / sy;
                }
            }
        }
        x = next;
        value = next_value;
        g = next_g;
        if moved <= config.step_tolerance || gain <= config.score_tolerance {
            return (x, value, true);
        }
    }
    (x, value, false)
}

/// Maximizes `P(A_2 < B_2)` over real non-negative upper-triangular states
/// with constraint-constructed measurements.
///
/// Restart 0 starts from the approximate catalog state; later restarts
/// perturb it multiplicatively with seeded log-normal noise. Restarts run
/// in parallel and the best score wins, ties going to the lowest index.
pub fn maximize_hardy(config: &OptimizerConfig) -> Result<OptimizationOutcome> {
    config.validate()?;
    let d = config.d;
    let params = TriangularParams::new(d, config.symmetric);
    let base = params.encode(&approx_state(d)?);

    let results: Vec<LocalResult> = (0..config.restarts)
        .into_par_iter()
        .map(|r| {
            let mut start = base.clone();
            if r > 0 {
                let mut g = rng(config.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(r as u64));
                for v in start.iter_mut() {
                    let z: f64 = StandardNormal.sample(&mut g);
                    *v *= (0.3 * z).exp();
                }
            }
            local_ascent(&params, start, config)
        })
        .collect();

    let mut best_index = 0;
    for (i, r) in results.iter().enumerate() {
        if r.score > results[best_index].score {
            best_index = i;
        }
    }
    let best = &results[best_index];
    let state = params.state(&best.x).expect("ascent keeps a non-zero state");
    let report = hardy_score(&state)?;
    Ok(OptimizationOutcome {
        report,
        converged: best.converged,
        best_restart: best_index,
        restarts: config.restarts,
        evaluations: results.iter().map(|r| r.evaluations).sum(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub d: usize,
    pub optimizer_score: f64,
    pub catalog_score: f64,
    pub score_gap: f64,
    /// `max |(|h_opt| - |h_cat|)|` entrywise.
    pub max_entry_gap: f64,
    pub consistent: bool,
    pub optimizer_state: CoefficientMatrix,
    pub catalog_state: CoefficientMatrix,
}

pub const CONSISTENCY_SCORE_TOLERANCE: f64 = 1e-3;
pub const CONSISTENCY_ENTRY_TOLERANCE: f64 = 1e-2;

/// Compares the optimizer's result with the tabulated optimal state.
pub fn verify_optimum_consistency(config: &OptimizerConfig) -> Result<ConsistencyReport> {
    let d = config.d;
    let catalog_state = optimal_state(d)?;
    let catalog_score = hardy_score(&catalog_state)?.score;
    let outcome = maximize_hardy(config)?;
    let optimizer_state = outcome
        .report
        .state
        .clone()
        .expect("optimizer reports carry their state");
    let max_entry_gap = optimizer_state
        .entries()
        .iter()
        .zip(catalog_state.entries())
        .map(|(a, b)| (a.norm() - b.norm()).abs())
        .fold(0.0, f64::max);
    let score_gap = (outcome.report.score - catalog_score).abs();
    Ok(ConsistencyReport {
        d,
        optimizer_score: outcome.report.score,
        catalog_score,
        score_gap,
        max_entry_gap,
        consistent: score_gap <= CONSISTENCY_SCORE_TOLERANCE && max_entry_gap <= CONSISTENCY_ENTRY_TOLERANCE,
        optimizer_state,
        catalog_state,
    })
}
