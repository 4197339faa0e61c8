use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::state::CoefficientMatrix;
use crate::error::{HardyError, Result};
use crate::tolerance;

/// Which subsystem survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Alice,
    Bob,
}

/// Hermitian, unit-trace, positive semidefinite `d x d` matrix (row-major).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    d: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validates hermiticity, unit trace and eigenvalues `>= -1e-10`.
    pub fn new(d: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != d * d {
            return Err(HardyError::Shape {
                expected: d * d,
                found: entries.len(),
            });
        }
        let rho = Self { d, entries };
        rho.check_hermitian_trace()?;
        let lowest = rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if lowest < tolerance::DENSITY_EIGENVALUE {
            return Err(HardyError::InvalidDensity {
                reason: format!("negative eigenvalue {lowest:e}"),
            });
        }
        Ok(rho)
    }

    fn check_hermitian_trace(&self) -> Result<()> {
        let d = self.d;
        for i in 0..d {
            for j in i..d {
                let gap = (self.get(i, j) - self.get(j, i).conj()).norm();
                if gap > tolerance::DENSITY {
                    return Err(HardyError::InvalidDensity {
                        reason: format!("not hermitian at ({i}, {j}): {gap:e}"),
                    });
                }
            }
        }
        let trace = self.trace();
        if (trace - 1.0).abs() > tolerance::DENSITY {
            return Err(HardyError::InvalidDensity {
                reason: format!("trace {trace}"),
            });
        }
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.d + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.d).map(|i| self.get(i, i).re).sum()
    }

    /// `tr(rho^2)`, which for a Hermitian matrix is the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let m = DMatrix::from_row_slice(self.d, self.d, &self.entries);
        let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }
}

/// Reduced density of one party: `H H^dagger` for Alice, `H^T (H^T)^dagger` for Bob.
pub fn reduced_density(h: &CoefficientMatrix, side: Side) -> DensityMatrix {
    let d = h.d();
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    match side {
        Side::Alice => {
            // rho_ik = sum_j h_ij conj(h_kj)
            entries.par_chunks_mut(d).enumerate().for_each(|(i, row)| {
                let ri = h.row(i);
                for (k, slot) in row.iter_mut().enumerate() {
                    *slot = ri.iter().zip(h.row(k)).map(|(a, b)| a * b.conj()).sum();
                }
            });
        }
        Side::Bob => {
            // rho_jl = sum_i h_ij conj(h_il)
            let cols: Vec<Vec<Complex64>> = (0..d).map(|j| h.column(j)).collect();
            entries.par_chunks_mut(d).enumerate().for_each(|(j, row)| {
                for (l, slot) in row.iter_mut().enumerate() {
                    *slot = cols[j].iter().zip(&cols[l]).map(|(a, b)| a * b.conj()).sum();
                }
            });
        }
    }
    let rho = DensityMatrix { d, entries };
    debug_assert!(rho.check_hermitian_trace().is_ok());
    rho
}

/// Generalized concurrence `sqrt(d/(d-1) (1 - tr rho_A^2))`.
pub fn concurrence(h: &CoefficientMatrix) -> Result<f64> {
    let d = h.d();
    if d < 2 {
        return Err(HardyError::Dimension { d, min: 2 });
    }
    let purity_a = reduced_density(h, Side::Alice).purity();
    let purity_b = reduced_density(h, Side::Bob).purity();
    debug_assert!(
        (purity_a - purity_b).abs() <= tolerance::CONCURRENCE_SIDES,
        "Alice purity {purity_a} vs Bob purity {purity_b}"
    );
    let df = d as f64;
    let c = (df / (df - 1.0) * (1.0 - purity_a).max(0.0)).sqrt();
    Ok(c.min(1.0))
}
