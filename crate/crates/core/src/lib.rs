//! Fusion frames in ℝⁿ and their weavings.
//!
//! - [`numerics`]: dense symmetric eigensolver, Gram-Schmidt, SPD solves.
//! - [`frames`]: subspaces, weighted families, (fusion) frame operators and optimal bounds.
//! - [`weaving`]: operators indexed by a weaving pattern, universal bounds by exhaustive
//!   enumeration, Riesz checks.
//! - [`lifting`]: local frames inside each subspace and the lifted vector families.
//! - [`cli`]: problem files, reports and the command dispatcher behind `fusion-weave`.

// `!(x > t)` is intentional: NaN must fail positivity tests.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod builtins;
pub mod cli;
pub mod error;
pub mod frames;
pub mod lifting;
pub mod numerics;
pub mod weaving;

pub use error::{Error, Result};
