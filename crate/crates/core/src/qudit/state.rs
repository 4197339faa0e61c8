use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HardyError, Result};
use crate::tolerance;

/// Complex amplitude. Public constructors reject non-finite components.
pub type ComplexScalar = Complex64;

/// Dense complex vector of length `d`.
pub type CVector = Vec<Complex64>;

/// Pure two-qudit state `sum_ij h_ij |i>_A |j>_B` stored as its `d x d`
/// coefficient matrix. Row index is Alice's label, column index is Bob's.
///
/// Local operations act as `H -> U H V^T`. The Frobenius norm is one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateFile", into = "StateFile")]
pub struct CoefficientMatrix {
    d: usize,
    entries: Vec<Complex64>,
}

impl CoefficientMatrix {
    /// Builds a state from row-major entries, requiring unit norm within `1e-12`.
    pub fn new(d: usize, entries: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(d, entries, tolerance::NORMALIZATION)
    }

    /// Builds a state, requiring `|sum |h_ij|^2 - 1| <= tol`.
    pub fn with_tolerance(d: usize, entries: Vec<Complex64>, tol: f64) -> Result<Self> {
        check_shape(d, &entries)?;
        let defect = (norm_sq(&entries) - 1.0).abs();
        if defect > tol {
            return Err(HardyError::NotNormalized { defect, tolerance: tol });
        }
        Ok(Self { d, entries })
    }

    /// Builds a state by rescaling arbitrary non-zero entries to unit norm.
    pub fn normalized(d: usize, mut entries: Vec<Complex64>) -> Result<Self> {
        check_shape(d, &entries)?;
        let norm = norm_sq(&entries).sqrt();
        if norm == 0.0 {
            return Err(HardyError::NotNormalized {
                defect: 1.0,
                tolerance: tolerance::NORMALIZATION,
            });
        }
        entries.iter_mut().for_each(|z| *z /= norm);
        Ok(Self { d, entries })
    }

    /// Real-valued rows, rescaled to unit norm.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.len();
        let mut entries = Vec::with_capacity(d * d);
        for row in rows {
            if row.len() != d {
                return Err(HardyError::Shape {
                    expected: d,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::normalized(d, entries)
    }

    pub(crate) fn from_parts_unchecked(d: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), d * d);
        Self { d, entries }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.d + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.d..(i + 1) * self.d]
    }

    pub fn column(&self, j: usize) -> CVector {
        (0..self.d).map(|i| self.get(i, j)).collect()
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(&self.entries)
    }

    /// Largest `|h_ij|` strictly below the diagonal, with its position.
    pub fn lower_triangle_max(&self) -> (f64, usize, usize) {
        let mut worst = (0.0, 0, 0);
        for i in 0..self.d {
            for j in 0..i {
                let m = self.get(i, j).norm();
                if m > worst.0 {
                    worst = (m, i, j);
                }
            }
        }
        worst
    }

    pub fn is_upper_triangular(&self, tol: f64) -> bool {
        self.lower_triangle_max().0 <= tol
    }

    /// Errors unless every entry below the diagonal is a structural zero.
    pub fn require_upper_triangular(&self) -> Result<()> {
        let (magnitude, row, col) = self.lower_triangle_max();
        if magnitude > tolerance::STRUCTURAL_ZERO {
            return Err(HardyError::NotUpperTriangular { row, col, magnitude });
        }
        Ok(())
    }

    /// The state after local unitaries: `U H V^T`, with `u` and `v` row-major.
    pub fn apply_local(&self, u: &[Complex64], v: &[Complex64]) -> Result<Self> {
        let d = self.d;
        for m in [u, v] {
            if m.len() != d * d {
                return Err(HardyError::Shape {
                    expected: d * d,
                    found: m.len(),
                });
            }
        }
        // (U H)_ik then (U H V^T)_il = sum_k (U H)_ik v_lk
        let uh = matmul(u, &self.entries, d);
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        out.par_chunks_mut(d).enumerate().for_each(|(i, row)| {
            for (l, slot) in row.iter_mut().enumerate() {
                *slot = (0..d).map(|k| uh[i * d + k] * v[l * d + k]).sum();
            }
        });
        Ok(Self::from_parts_unchecked(d, out))
    }
}

/// The maximally entangled state `(1/sqrt d) sum_j |j>|j>`.
pub fn mes(d: usize) -> Result<CoefficientMatrix> {
    if d == 0 {
        return Err(HardyError::Dimension { d, min: 1 });
    }
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        entries[i * d + i] = amp;
    }
    Ok(CoefficientMatrix::from_parts_unchecked(d, entries))
}

fn check_shape(d: usize, entries: &[Complex64]) -> Result<()> {
    if d == 0 {
        return Err(HardyError::Dimension { d, min: 1 });
    }
    if entries.len() != d * d {
        return Err(HardyError::Shape {
            expected: d * d,
            found: entries.len(),
        });
    }
    if let Some(index) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(HardyError::NonFinite { index });
    }
    Ok(())
}

fn norm_sq(entries: &[Complex64]) -> f64 {
    entries.iter().map(|z| z.norm_sqr()).sum()
}

/// Row-major `a * b` for square `d x d` matrices.
pub(crate) fn matmul(a: &[Complex64], b: &[Complex64], d: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    out.par_chunks_mut(d).enumerate().for_each(|(i, row)| {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (slot, bkj) in row.iter_mut().zip(&b[k * d..(k + 1) * d]) {
                *slot += aik * bkj;
            }
        }
    });
    out
}

/// On-disk state format: `{"d": 2, "entries": [[[re, im], ...], ...]}`, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub d: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl From<CoefficientMatrix> for StateFile {
    fn from(h: CoefficientMatrix) -> Self {
        let entries = (0..h.d)
            .map(|i| h.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        StateFile { d: h.d, entries }
    }
}

impl TryFrom<StateFile> for CoefficientMatrix {
    type Error = HardyError;

    fn try_from(file: StateFile) -> Result<Self> {
        if file.entries.len() != file.d {
            return Err(HardyError::Shape {
                expected: file.d,
                found: file.entries.len(),
            });
        }
        let mut entries = Vec::with_capacity(file.d * file.d);
        for row in &file.entries {
            if row.len() != file.d {
                return Err(HardyError::Shape {
                    expected: file.d,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
        }
        CoefficientMatrix::with_tolerance(file.d, entries, tolerance::NORMALIZATION_IO)
    }
}

impl CoefficientMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| HardyError::Format(e.to_string()))
    }
}
