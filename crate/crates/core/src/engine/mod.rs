//! Probabilities, the Hardy constraint system, the associated Bell
//! functional and its local-hidden-variable oracle.

mod bell;
mod nogo;
mod probability;
mod report;
mod sampling;

pub use bell::{lhv_minimum, zg_functional, DeterministicStrategy, LhvMinimum, OrderedProbabilities};
pub use nogo::{mes_nogo_check, mes_ordered, mes_scenario, NogoReport, NOGO_SCORE_TOLERANCE};
pub use probability::{equal_probability, joint_probability, joint_table, ordered_probability, Party};
pub(crate) use report::score_only;
pub use report::{evaluate_scenario, hardy_residuals, hardy_score, HardyReport, MeasurementMode, MeasurementScenario};
pub use sampling::{sample_outcomes, CountTable, SettingPair};
