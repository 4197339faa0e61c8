use serde::{Deserialize, Serialize};

use crate::error::{HardyError, Result};

/// The four ordered probabilities entering the Bell functional.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct OrderedProbabilities {
    pub a2_lt_b1: f64,
    pub b1_lt_a1: f64,
    pub a1_lt_b2: f64,
    pub a2_lt_b2: f64,
}

/// `P(A_2<B_1) + P(B_1<A_1) + P(A_1<B_2) - P(A_2<B_2)`; local models give `>= 0`.
pub fn zg_functional(p: &OrderedProbabilities) -> f64 {
    p.a2_lt_b1 + p.b1_lt_a1 + p.a1_lt_b2 - p.a2_lt_b2
}

/// One deterministic outcome assignment for the four settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeterministicStrategy {
    pub a1: usize,
    pub a2: usize,
    pub b1: usize,
    pub b2: usize,
}

impl DeterministicStrategy {
    pub fn new(d: usize, a1: usize, a2: usize, b1: usize, b2: usize) -> Result<Self> {
        for outcome in [a1, a2, b1, b2] {
            if outcome >= d {
                return Err(HardyError::OutcomeRange { outcome, d });
            }
        }
        Ok(Self { a1, a2, b1, b2 })
    }

    /// Ordered probabilities of this strategy, each 0 or 1.
    pub fn indicators(&self) -> OrderedProbabilities {
        let ind = |x: usize, y: usize| if x < y { 1.0 } else { 0.0 };
        OrderedProbabilities {
            a2_lt_b1: ind(self.a2, self.b1),
            b1_lt_a1: ind(self.b1, self.a1),
            a1_lt_b2: ind(self.a1, self.b2),
            a2_lt_b2: ind(self.a2, self.b2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LhvMinimum {
    pub d: usize,
    pub minimum: f64,
    pub strategies_checked: usize,
    pub minimizers: Vec<DeterministicStrategy>,
}

/// Minimum of the Bell functional over all `d^4` deterministic strategies.
pub fn lhv_minimum(d: usize, cap: usize) -> Result<LhvMinimum> {
    if d == 0 {
        return Err(HardyError::Dimension { d, min: 1 });
    }
    if d > cap {
        return Err(HardyError::ResourceCap { d, cap });
    }
    let mut minimum = f64::INFINITY;
    let mut minimizers = Vec::new();
    let mut checked = 0;
    for a1 in 0..d {
        for a2 in 0..d {
            for b1 in 0..d {
                for b2 in 0..d {
                    let s = DeterministicStrategy { a1, a2, b1, b2 };
                    let value = zg_functional(&s.indicators());
                    checked += 1;
                    if value < minimum {
                        minimum = value;
                        minimizers.clear();
                    }
                    if value == minimum {
                        minimizers.push(s);
                    }
                }
            }
        }
    }
    Ok(LhvMinimum {
        d,
        minimum,
        strategies_checked: checked,
        minimizers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::LHV_DEFAULT_CAP;

    #[test]
    fn functional_examples() {
        assert_eq!(zg_functional(&OrderedProbabilities::default()), 0.0);
        let s = DeterministicStrategy::new(2, 0, 0, 1, 0).unwrap();
        assert_eq!(zg_functional(&s.indicators()), 1.0);
    }

    #[test]
    fn small_enumerations() {
        let one = lhv_minimum(1, LHV_DEFAULT_CAP).unwrap();
        assert_eq!(one.minimum, 0.0);
        assert_eq!(one.minimizers.len(), 1);
        assert_eq!(one.strategies_checked, 1);

        for d in [2, 5] {
            let r = lhv_minimum(d, LHV_DEFAULT_CAP).unwrap();
            assert_eq!(r.minimum, 0.0);
            assert_eq!(r.strategies_checked, d.pow(4));
            assert!(r.minimizers.contains(&DeterministicStrategy {
                a1: 1,
                a2: 1,
                b1: 1,
                b2: 1
            }));
        }
    }

    #[test]
    fn cap_and_range_errors() {
        assert_eq!(lhv_minimum(13, 12), Err(HardyError::ResourceCap { d: 13, cap: 12 }));
        assert!(lhv_minimum(13, 13).is_ok());
        assert!(DeterministicStrategy::new(2, 0, 2, 0, 0).is_err());
    }
}
