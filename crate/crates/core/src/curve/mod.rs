//! Smooth curve models over F_p, their rational points and divisors.

mod divisor;
mod function;
mod local;
mod model;

pub use divisor::{Divisor, Point};
pub use function::{coefficient_vectors, independent_subset, span_rank, FunctionElem};
pub use local::FiberRing;
pub use model::{Chart, CurveKind, CurveModel, Place};
