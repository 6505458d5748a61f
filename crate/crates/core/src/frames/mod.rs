//! Classical frames and fusion frames in ℝⁿ.

mod bounds;
mod family;
mod fusion;
mod subspace;

pub use bounds::{frame_bounds, frame_operator, frame_threshold, BoundsReport, FRAME_TOL};
pub use family::{VectorFamily, WeightedFamily};
pub use subspace::{Subspace, ORTHONORMAL_TOL};
