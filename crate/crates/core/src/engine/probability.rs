use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{HardyError, Result};
use crate::qudit::{inner, CoefficientMatrix, MeasurementBasis};

/// Which observer holds a measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    Alice,
    Bob,
}

fn check_dims(h: &CoefficientMatrix, bases: &[&MeasurementBasis]) -> Result<()> {
    for b in bases {
        if b.d() != h.d() {
            return Err(HardyError::DimensionMismatch {
                expected: h.d(),
                found: b.d(),
            });
        }
    }
    Ok(())
}

/// `P(A = m, B = n) = |u_m^dagger H conj(v_n)|^2`.
pub fn joint_probability(
    h: &CoefficientMatrix,
    alice: &MeasurementBasis,
    m: usize,
    bob: &MeasurementBasis,
    n: usize,
) -> Result<f64> {
    check_dims(h, &[alice, bob])?;
    let d = h.d();
    for outcome in [m, n] {
        if outcome >= d {
            return Err(HardyError::OutcomeRange { outcome, d });
        }
    }
    let v = bob.vector(n);
    let u = alice.vector(m);
    let amp: Complex64 = (0..d)
        .map(|i| u[i].conj() * h.row(i).iter().zip(v).map(|(x, y)| x * y.conj()).sum::<Complex64>())
        .sum();
    Ok(amp.norm_sqr().min(1.0))
}

/// Columns `H conj(v_n)` for every Bob vector, one `Vec` per `n`.
pub(crate) fn bob_images(h: &CoefficientMatrix, bob: &MeasurementBasis) -> Vec<Vec<Complex64>> {
    let d = h.d();
    (0..d)
        .into_par_iter()
        .map(|n| {
            let v = bob.vector(n);
            (0..d)
                .map(|i| h.row(i).iter().zip(v).map(|(x, y)| x * y.conj()).sum())
                .collect()
        })
        .collect()
}

/// Full `d x d` table of joint probabilities, row `m` = Alice outcome.
pub fn joint_table(h: &CoefficientMatrix, alice: &MeasurementBasis, bob: &MeasurementBasis) -> Result<Vec<f64>> {
    check_dims(h, &[alice, bob])?;
    let d = h.d();
    let images = bob_images(h, bob);
    let mut table = vec![0.0; d * d];
    table.par_chunks_mut(d).enumerate().for_each(|(m, row)| {
        let u = alice.vector(m);
        for (n, slot) in row.iter_mut().enumerate() {
            *slot = inner(u, &images[n]).norm_sqr();
        }
    });
    Ok(table)
}

/// `sum_{m<n} |u_m^dagger w_n|^2` over precomputed images `w_n`.
pub(crate) fn strictly_upper_mass(alice: &MeasurementBasis, images: &[Vec<Complex64>]) -> f64 {
    let d = images.len();
    let mass: f64 = (0..d)
        .into_par_iter()
        .map(|n| {
            (0..n)
                .map(|m| inner(alice.vector(m), &images[n]).norm_sqr())
                .sum::<f64>()
        })
        .collect::<Vec<_>>()
        .iter()
        .sum();
    mass.clamp(0.0, 1.0)
}

/// Total probability that the first party's outcome is strictly smaller than
/// the second party's.
pub fn ordered_probability(
    h: &CoefficientMatrix,
    first: (&MeasurementBasis, Party),
    second: (&MeasurementBasis, Party),
) -> Result<f64> {
    let (alice, bob, alice_first) = match (first.1, second.1) {
        (Party::Alice, Party::Bob) => (first.0, second.0, true),
        (Party::Bob, Party::Alice) => (second.0, first.0, false),
        _ => return Err(HardyError::SameParty),
    };
    check_dims(h, &[alice, bob])?;
    let d = h.d();
    let table = joint_table(h, alice, bob)?;
    let mut total = 0.0;
    for m in 0..d {
        for n in 0..d {
            if (alice_first && m < n) || (!alice_first && n < m) {
                total += table[m * d + n];
            }
        }
    }
    Ok(total.clamp(0.0, 1.0))
}

/// `P(A = B)` on the same pair of settings.
pub fn equal_probability(h: &CoefficientMatrix, alice: &MeasurementBasis, bob: &MeasurementBasis) -> Result<f64> {
    let d = h.d();
    let table = joint_table(h, alice, bob)?;
    Ok((0..d).map(|m| table[m * d + m]).sum::<f64>().clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::mes;

    fn h2() -> CoefficientMatrix {
        CoefficientMatrix::from_real_rows(&[vec![0.618034, 0.485868], vec![0.0, 0.618034]]).unwrap()
    }

    #[test]
    fn mes_standard_diagonal_cell() {
        let std2 = MeasurementBasis::standard(2);
        let p = joint_probability(&mes(2).unwrap(), &std2, 0, &std2, 0).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
    }

    #[test]
    fn upper_triangular_cells() {
        let std2 = MeasurementBasis::standard(2);
        let h = h2();
        assert_eq!(joint_probability(&h, &std2, 1, &std2, 0).unwrap(), 0.0);
        // |h_01|^2 of the printed entries, after renormalization
        let norm_sq = 2.0 * 0.618034f64.powi(2) + 0.485868f64.powi(2);
        let want = 0.485868f64.powi(2) / norm_sq;
        let p = joint_probability(&h, &std2, 0, &std2, 1).unwrap();
        assert!((p - want).abs() < 1e-15);
        assert!((p - 0.236068).abs() < 1e-6);
    }

    #[test]
    fn ordered_on_standard_bases() {
        let std2 = MeasurementBasis::standard(2);
        let h = h2();
        let b_lt_a = ordered_probability(&h, (&std2, Party::Bob), (&std2, Party::Alice)).unwrap();
        assert_eq!(b_lt_a, 0.0);
        let a_lt_b = ordered_probability(&h, (&std2, Party::Alice), (&std2, Party::Bob)).unwrap();
        assert!((a_lt_b - 0.236068).abs() < 1e-6);

        let std1 = MeasurementBasis::standard(1);
        let one = mes(1).unwrap();
        assert_eq!(
            ordered_probability(&one, (&std1, Party::Alice), (&std1, Party::Bob)).unwrap(),
            0.0
        );
        assert_eq!(
            ordered_probability(&one, (&std1, Party::Bob), (&std1, Party::Alice)).unwrap(),
            0.0
        );
    }

    #[test]
    fn error_paths() {
        let std2 = MeasurementBasis::standard(2);
        let std3 = MeasurementBasis::standard(3);
        let h = h2();
        assert_eq!(
            joint_probability(&h, &std2, 2, &std2, 0),
            Err(HardyError::OutcomeRange { outcome: 2, d: 2 })
        );
        assert!(matches!(
            joint_probability(&h, &std3, 0, &std2, 0),
            Err(HardyError::DimensionMismatch { .. })
        ));
        assert_eq!(
            ordered_probability(&h, (&std2, Party::Alice), (&std2, Party::Alice)),
            Err(HardyError::SameParty)
        );
    }

    #[test]
    fn table_matches_single_cells() {
        let h = crate::catalog::approx_state(4).unwrap();
        let (a2, b2) = crate::qudit::constraint_measurements(&h).unwrap();
        let table = joint_table(&h, &a2, &b2).unwrap();
        for m in 0..4 {
            for n in 0..4 {
                let single = joint_probability(&h, &a2, m, &b2, n).unwrap();
                assert!((table[m * 4 + n] - single).abs() < 1e-15);
            }
        }
    }
}
