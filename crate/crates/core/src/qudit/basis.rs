use num_complex::Complex64;

use super::state::{CVector, CoefficientMatrix};
use crate::error::{HardyError, Result};
use crate::tolerance;

/// Orthonormal basis of `C^d`; vector `m` is the projector for outcome `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    d: usize,
    vectors: Vec<CVector>,
}

impl MeasurementBasis {
    /// Validates that `vectors` are `d` pairwise orthonormal vectors of length `d`.
    pub fn new(vectors: Vec<CVector>) -> Result<Self> {
        let d = vectors.len();
        if d == 0 {
            return Err(HardyError::Dimension { d, min: 1 });
        }
        for v in &vectors {
            if v.len() != d {
                return Err(HardyError::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
            if let Some(index) = v.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(HardyError::NonFinite { index });
            }
        }
        let basis = Self { d, vectors };
        basis.check_orthonormal(tolerance::ORTHONORMALITY)?;
        Ok(basis)
    }

    pub(crate) fn from_vectors_unchecked(vectors: Vec<CVector>) -> Self {
        Self {
            d: vectors.len(),
            vectors,
        }
    }

    /// The computational basis `e_0 .. e_{d-1}`.
    pub fn standard(d: usize) -> Self {
        Self::from_vectors_unchecked((0..d).map(|m| unit_vector(d, m)).collect())
    }

    /// Basis formed by the columns of a row-major unitary.
    pub fn from_unitary_columns(d: usize, unitary: &[Complex64]) -> Result<Self> {
        if unitary.len() != d * d {
            return Err(HardyError::Shape {
                expected: d * d,
                found: unitary.len(),
            });
        }
        Self::new((0..d).map(|m| (0..d).map(|i| unitary[i * d + m]).collect()).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vector(&self, m: usize) -> &[Complex64] {
        &self.vectors[m]
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    /// Same basis with vector `m` multiplied by `exp(i phases[m])`.
    pub fn rephased(&self, phases: &[f64]) -> Self {
        let vectors = self
            .vectors
            .iter()
            .zip(phases)
            .map(|(v, &t)| {
                let p = Complex64::from_polar(1.0, t);
                v.iter().map(|z| z * p).collect()
            })
            .collect();
        Self::from_vectors_unchecked(vectors)
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> (f64, usize, usize) {
        let mut worst = (0.0, 0, 0);
        for m in 0..self.d {
            for n in m..self.d {
                let target = if m == n { 1.0 } else { 0.0 };
                let defect = (inner(&self.vectors[m], &self.vectors[n]) - target).norm();
                if defect > worst.0 {
                    worst = (defect, m, n);
                }
            }
        }
        worst
    }

    pub fn check_orthonormal(&self, tol: f64) -> Result<()> {
        let (defect, first, second) = self.orthonormality_defect();
        if defect > tol {
            return Err(HardyError::NotOrthonormal { first, second, defect });
        }
        Ok(())
    }
}

/// `<a|b> = sum conj(a_i) b_i`.
#[inline]
pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn unit_vector(d: usize, k: usize) -> CVector {
    let mut e = vec![Complex64::new(0.0, 0.0); d];
    e[k] = Complex64::new(1.0, 0.0);
    e
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Removes from `v` its components along the orthonormal `bases`, twice.
fn project_out(v: &mut [Complex64], bases: &[&[CVector]]) {
    for _ in 0..2 {
        for q in bases.iter().flat_map(|b| b.iter()) {
            let c = inner(q, v);
            for (x, y) in v.iter_mut().zip(q) {
                *x -= c * y;
            }
        }
    }
}

/// Orthogonalizes `v` against `basis` and normalizes it. Returns `None` when
/// the residual falls below `1e-12` relative to the input norm.
fn orthonormalize_against(mut v: CVector, bases: &[&[CVector]]) -> Option<CVector> {
    let start = vec_norm(&v);
    if start == 0.0 {
        return None;
    }
    project_out(&mut v, bases);
    let rest = vec_norm(&v);
    if rest < tolerance::DEPENDENT * start {
        return None;
    }
    v.iter_mut().for_each(|z| *z /= rest);
    Some(v)
}

/// Scales `v` so its first component with magnitude above `1e-12` is real positive.
fn fix_phase(v: &mut [Complex64]) {
    if let Some(lead) = v.iter().copied().find(|z| z.norm() > tolerance::STRUCTURAL_ZERO) {
        let phase = lead.conj() / lead.norm();
        v.iter_mut().for_each(|z| *z *= phase);
    }
}

/// Generator sets `S_0 ⊇ S_1 ⊇ ... ⊇ S_{d-1}` in `C^d`, stored as one list of
/// vectors each tagged with the deepest level it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedGenerators {
    d: usize,
    tagged: Vec<(CVector, usize)>,
}

impl NestedGenerators {
    /// Generator `(v, depth)` belongs to every `S_m` with `m <= depth`.
    pub fn from_tagged(d: usize, tagged: Vec<(CVector, usize)>) -> Result<Self> {
        if d == 0 {
            return Err(HardyError::Dimension { d, min: 1 });
        }
        for (v, depth) in &tagged {
            if v.len() != d {
                return Err(HardyError::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
            if *depth >= d {
                return Err(HardyError::InvalidArgument(format!(
                    "generator depth {depth} >= d = {d}"
                )));
            }
            if let Some(index) = v.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(HardyError::NonFinite { index });
            }
        }
        Ok(Self { d, tagged })
    }

    /// Explicit per-level lists; every vector of level `m + 1` must also appear in level `m`.
    pub fn from_levels(d: usize, levels: Vec<Vec<CVector>>) -> Result<Self> {
        if levels.len() != d {
            return Err(HardyError::Shape {
                expected: d,
                found: levels.len(),
            });
        }
        for m in 1..d {
            if let Some(_missing) = levels[m].iter().find(|v| !levels[m - 1].contains(v)) {
                return Err(HardyError::NotNested {
                    level: m,
                    previous: m - 1,
                });
            }
        }
        let mut tagged = Vec::new();
        for (m, level) in levels.iter().enumerate() {
            for v in level {
                let deeper = levels.get(m + 1).is_some_and(|next| next.contains(v));
                let seen = tagged.iter().any(|(w, _): &(CVector, usize)| w == v);
                if !deeper && !seen {
                    tagged.push((v.clone(), m));
                }
            }
        }
        Self::from_tagged(d, tagged)
    }

    /// No constraints at any level.
    pub fn empty(d: usize) -> Self {
        Self { d, tagged: Vec::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

/// Builds `v_0 .. v_{d-1}` with `v_m ⊥ span(S_m)` and `v_m ⊥ v_0 .. v_{m-1}`.
///
/// The admissible space at level `m` is `span(S_m)^⊥` minus the directions
/// already taken. When it has dimension one the vector is forced up to
/// phase; otherwise the first standard vector (in index order) with a
/// non-negligible projection onto it is projected and normalized. Each
/// vector's leading non-zero component is made real positive.
pub fn orthonormal_complement_chain(generators: &NestedGenerators) -> Result<MeasurementBasis> {
    let d = generators.d;

    // Orthonormalize the generators deepest-first so that the span of all
    // directions tagged >= m is exactly span(S_m).
    let mut order: Vec<usize> = (0..generators.tagged.len()).collect();
    order.sort_by(|&a, &b| generators.tagged[b].1.cmp(&generators.tagged[a].1));
    let mut spanning: Vec<CVector> = Vec::new();
    let mut spanning_tags: Vec<usize> = Vec::new();
    for idx in order {
        let (v, depth) = &generators.tagged[idx];
        if let Some(q) = orthonormalize_against(v.clone(), &[&spanning]) {
            spanning.push(q);
            spanning_tags.push(*depth);
        }
    }

    // Orthonormal basis of span(S_0)^⊥.
    let mut pool: Vec<CVector> = Vec::new();
    let free = d - spanning.len();
    for k in 0..d {
        if pool.len() == free {
            break;
        }
        if let Some(p) = orthonormalize_against(unit_vector(d, k), &[&spanning, &pool]) {
            pool.push(p);
        }
    }

    let mut out: Vec<CVector> = Vec::with_capacity(d);
    for level in 0..d {
        if level > 0 {
            // directions leaving the constraint set at this level
            for (q, &tag) in spanning.iter().zip(&spanning_tags) {
                if tag == level - 1 {
                    pool.push(q.clone());
                }
            }
        }
        if pool.is_empty() {
            return Err(HardyError::ComplementExhausted { level });
        }
        let mut chosen = if pool.len() == 1 {
            pool[0].clone()
        } else {
            select_by_standard_seed(&pool, d).ok_or(HardyError::ComplementExhausted { level })?
        };
        fix_phase(&mut chosen);
        pool = remove_direction(pool, &chosen);
        out.push(chosen);
    }
    Ok(MeasurementBasis::from_vectors_unchecked(out))
}

/// Normalized projection onto `span(pool)` of the first standard vector that
/// is not orthogonal to it.
fn select_by_standard_seed(pool: &[CVector], d: usize) -> Option<CVector> {
    for k in 0..d {
        let mut w = vec![Complex64::new(0.0, 0.0); d];
        for p in pool {
            let c = p[k].conj();
            for (x, y) in w.iter_mut().zip(p) {
                *x += c * y;
            }
        }
        let norm = vec_norm(&w);
        if norm > tolerance::DEPENDENT {
            w.iter_mut().for_each(|z| *z /= norm);
            return Some(w);
        }
    }
    None
}

/// Orthonormal basis of `span(pool) ⊖ u`, for unit `u` inside `span(pool)`.
fn remove_direction(pool: Vec<CVector>, u: &[Complex64]) -> Vec<CVector> {
    if pool.len() <= 1 {
        return Vec::new();
    }
    let (drop, _) = pool
        .iter()
        .enumerate()
        .map(|(i, p)| (i, inner(p, u).norm()))
        .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    let mut rest: Vec<CVector> = Vec::with_capacity(pool.len() - 1);
    let anchor = [u.to_vec()];
    for (i, p) in pool.into_iter().enumerate() {
        if i == drop {
            continue;
        }
        if let Some(q) = orthonormalize_against(p, &[&anchor, &rest]) {
            rest.push(q);
        }
    }
    rest
}

/// The `A_2` and `B_2` bases forced by `P(A_2 < B_1) = 0` and
/// `P(A_1 < B_2) = 0` when `A_1 = B_1` is the standard basis.
///
/// Alice's vector `u_m` is orthogonal to every column `c_n` of `H` with
/// `n > m`; Bob's `v_n` is orthogonal to every row `r_m` with `m < n`.
pub fn constraint_measurements(h: &CoefficientMatrix) -> Result<(MeasurementBasis, MeasurementBasis)> {
    h.require_upper_triangular()?;
    let d = h.d();

    // column c_n constrains levels m < n
    let alice_gens = (1..d).map(|n| (h.column(n), n - 1)).collect();
    let a2 = orthonormal_complement_chain(&NestedGenerators::from_tagged(d, alice_gens)?)?;

    // Bob is built from the top outcome down: level k produces v_{d-1-k},
    // and row r_m constrains v_n for n > m, i.e. levels k <= d-2-m.
    let bob_gens = (0..d.saturating_sub(1))
        .map(|m| (h.row(m).to_vec(), d - 2 - m))
        .collect();
    let reversed = orthonormal_complement_chain(&NestedGenerators::from_tagged(d, bob_gens)?)?;
    let mut vectors = reversed.vectors;
    vectors.reverse();
    Ok((a2, MeasurementBasis::from_vectors_unchecked(vectors)))
}
