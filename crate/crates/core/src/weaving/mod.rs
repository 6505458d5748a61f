//! Weavings of two weighted families over a shared index set.
//!
//! A [`WeavingPattern`] σ picks the first family on σ and the second on σᶜ. Everything
//! here is computed per pattern and reduced over all patterns (or a seeded sample of
//! them), with results that do not depend on the worker count.

mod complement;
mod operator;
mod pattern;
mod riesz;
mod sweep;
mod universal;

pub use complement::{complement_defect, direct_sum_projection, woven_complement_defect};
pub use operator::{selected, woven_operator, woven_synthesis_matrix, woven_vector_operator};
pub use pattern::{WeavingPattern, MAX_INDICES};
pub use riesz::{
    is_woven_riesz, nonzero_spectrum_mismatch, riesz_pattern_bounds, DimensionWitness, RieszPatternBounds, RieszReport,
};
pub use sweep::{Sampling, SweepMode, WeavingOptions, DEFAULT_PATTERN_CAP, PER_PATTERN_AUTO_LIMIT};
pub use universal::{
    is_woven, operator_lower_bound, universal_weaving_bounds, weaving_frame_bounds, OperatorLowerBound, PatternBounds,
    WeavingReport,
};
