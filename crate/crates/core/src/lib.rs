//! Hardy's nonlocality argument for two qudits with `d`-outcome measurements.
//!
//! A pure state is a `d x d` coefficient matrix `H`. With Alice's and Bob's
//! first settings fixed to the standard basis, the three zero-probability
//! conditions `P(A_2 < B_1) = P(B_1 < A_1) = P(A_1 < B_2) = 0` force `H` to be
//! upper-triangular and determine the second settings up to phases. The
//! Hardy probability `P(A_2 < B_2)` is then a function of `H` alone.
//!
//! * [`qudit`]: states, reduced densities, concurrence, constructed bases.
//! * [`engine`]: joint and ordered probabilities, the Hardy score, the
//!   Bell functional and its deterministic-strategy minimum, sampling.
//! * [`catalog`]: tabulated optimal states and the approximate family.
//! * [`optimizer`]: multi-start maximization and the approximate scan.

pub mod catalog;
pub mod engine;
pub mod error;
pub mod optimizer;
pub mod qudit;
pub mod random;
pub mod tolerance;

pub use error::{HardyError, Result};
