//! Seeded random states and unitaries.
//!
//! All generators are `rand_chacha::ChaCha8Rng`, whose output stream is
//! fixed across platforms for a given seed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::qudit::{inner, CoefficientMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unitary, row-major, from Gram-Schmidt on a complex Ginibre matrix.
pub fn random_unitary<R: Rng>(d: usize, rng: &mut R) -> Vec<Complex64> {
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while columns.len() < d {
        let mut v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for q in &columns {
                let c = inner(q, &v);
                v.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            v.iter_mut().for_each(|z| *z /= norm);
            columns.push(v);
        }
    }
    let mut u = vec![Complex64::new(0.0, 0.0); d * d];
    for (j, col) in columns.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u[i * d + j] = *z;
        }
    }
    u
}

/// Uniformly random pure state (Gaussian entries, normalized).
pub fn random_state<R: Rng>(d: usize, rng: &mut R) -> CoefficientMatrix {
    let entries = (0..d * d).map(|_| gaussian(rng)).collect();
    CoefficientMatrix::normalized(d, entries).expect("gaussian entries are non-zero")
}

/// Random complex state supported on the upper triangle.
pub fn random_upper_triangular<R: Rng>(d: usize, rng: &mut R) -> CoefficientMatrix {
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in i..d {
            entries[i * d + j] = gaussian(rng);
        }
    }
    CoefficientMatrix::normalized(d, entries).expect("gaussian entries are non-zero")
}

/// Unit phase `exp(i t)` with `t` uniform in `[0, 2 pi)`.
pub fn random_phase<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}
