//! Small dense real linear algebra: the substrate for every frame computation.

pub mod eigen;
pub mod matrix;
pub mod ortho;
pub mod solve;

pub use eigen::{nonneg, operator_norm, symmetric_spectrum, Spectrum};
pub use matrix::{axpy, dot, norm, Matrix};
pub use ortho::{numerical_rank, orthonormalize, projection_matrix, RANK_TOL};
pub use solve::solve_spd;
