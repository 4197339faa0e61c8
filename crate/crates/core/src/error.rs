use thiserror::Error;

/// Errors raised by state construction, measurement construction and evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum HardyError {
    #[error("dimension must be at least {min}, got {d}")]
    Dimension { d: usize, min: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("entry count mismatch: expected {expected}, got {found}")]
    Shape { expected: usize, found: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("state is not normalized: |norm^2 - 1| = {defect:e} exceeds {tolerance:e}")]
    NotNormalized { defect: f64, tolerance: f64 },

    #[error("state is not upper-triangular: |h[{row}][{col}]| = {magnitude:e}")]
    NotUpperTriangular { row: usize, col: usize, magnitude: f64 },

    #[error("basis is not orthonormal: |<v{first}|v{second}> - delta| = {defect:e}")]
    NotOrthonormal { first: usize, second: usize, defect: f64 },

    #[error("invalid density matrix: {reason}")]
    InvalidDensity { reason: String },

    #[error("outcome {outcome} out of range for dimension {d}")]
    OutcomeRange { outcome: usize, d: usize },

    #[error("ordered probability needs one Alice and one Bob setting")]
    SameParty,

    #[error("generator sets are not nested: level {level} is not a subset of level {previous}")]
    NotNested { level: usize, previous: usize },

    #[error("orthogonal complement exhausted at level {level}")]
    ComplementExhausted { level: usize },

    #[error("constructed measurements leave constraint probability {residual:e}")]
    ConstraintViolation { residual: f64 },

    #[error("no catalog entry for d = {d}; optimal states are tabulated for d = 2..=7, use the optimizer for other dimensions")]
    UnavailableEntry { d: usize },

    #[error("d = {d} exceeds the enumeration cap {cap}")]
    ResourceCap { d: usize, cap: usize },

    #[error("invalid setting pair {0:?}; expected one of 11, 12, 21, 22")]
    SettingPair(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed state file: {0}")]
    Format(String),
}

pub type Result<T, E = HardyError> = std::result::Result<T, E>;

impl HardyError {
    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            HardyError::Dimension { .. } => "dimension",
            HardyError::DimensionMismatch { .. } => "dimension_mismatch",
            HardyError::Shape { .. } => "shape",
            HardyError::NonFinite { .. } => "non_finite",
            HardyError::NotNormalized { .. } => "not_normalized",
            HardyError::NotUpperTriangular { .. } => "not_upper_triangular",
            HardyError::NotOrthonormal { .. } => "not_orthonormal",
            HardyError::InvalidDensity { .. } => "invalid_density",
            HardyError::OutcomeRange { .. } => "outcome_range",
            HardyError::SameParty => "same_party",
            HardyError::NotNested { .. } => "not_nested",
            HardyError::ComplementExhausted { .. } => "complement_exhausted",
            HardyError::ConstraintViolation { .. } => "constraint_violation",
            HardyError::UnavailableEntry { .. } => "unavailable_entry",
            HardyError::ResourceCap { .. } => "resource_cap",
            HardyError::SettingPair(_) => "setting_pair",
            HardyError::InvalidArgument(_) => "invalid_argument",
            HardyError::Format(_) => "format",
        }
    }
}
