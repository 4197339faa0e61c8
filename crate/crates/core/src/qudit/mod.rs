//! Complex linear algebra for pure two-qudit states.

mod basis;
mod density;
mod state;

pub(crate) use basis::inner;
pub use basis::{constraint_measurements, orthonormal_complement_chain, MeasurementBasis, NestedGenerators};
pub use density::{concurrence, reduced_density, DensityMatrix, Side};
pub use state::{mes, CVector, CoefficientMatrix, ComplexScalar, StateFile};
