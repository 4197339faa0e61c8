//! Numerical thresholds shared across the crate.

/// Magnitude below which a matrix entry counts as a structural zero.
pub const STRUCTURAL_ZERO: f64 = 1e-12;

/// Admissible value of a probability that must vanish.
pub const PROBABILITY_RESIDUAL: f64 = 1e-10;

/// Unit-norm check applied to freshly constructed states.
pub const NORMALIZATION: f64 = 1e-12;

/// Unit-norm check applied when reading states from files.
pub const NORMALIZATION_IO: f64 = 1e-9;

/// Orthonormality check for measurement bases.
pub const ORTHONORMALITY: f64 = 1e-10;

/// Hermiticity and trace checks for density matrices.
pub const DENSITY: f64 = 1e-12;

/// Most negative eigenvalue tolerated in a density matrix.
pub const DENSITY_EIGENVALUE: f64 = -1e-10;

/// Agreement required between the Alice- and Bob-side concurrence forms.
pub const CONCURRENCE_SIDES: f64 = 1e-10;

/// Post-projection norm under which a vector is treated as dependent.
pub const DEPENDENT: f64 = 1e-12;

/// Drift allowed between printed six-digit catalog states and unit norm.
pub const CATALOG_DRIFT: f64 = 1e-4;

/// Default enumeration cap for the local-hidden-variable oracle.
pub const LHV_DEFAULT_CAP: usize = 12;

/// Default largest dimension accepted by the approximate scan.
pub const SCAN_DEFAULT_CAP: usize = 2000;
