//! Maximization of the Hardy probability and the large-`d` approximate scan.

pub mod nelder_mead;
mod scan;
mod search;

pub use scan::{
    format_significant, read_scan_csv, scan_approx, ScanCsvWriter, ScanOutcome, ScanPoint, ScanRow, SCAN_CSV_HEADER,
};
pub use search::{
    maximize_hardy, verify_optimum_consistency, ConsistencyReport, OptimizationOutcome, OptimizerConfig,
    CONSISTENCY_ENTRY_TOLERANCE, CONSISTENCY_SCORE_TOLERANCE,
};
