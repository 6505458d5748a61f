//! Weaving fusion Riesz bases.
//!
//! For a weaving σ with synthesis matrix `T_σ` (`n x K`), the Riesz bounds are the
//! extremal eigenvalues of `T_σᵀ T_σ`. The weaving is a Riesz basis exactly when `T_σ`
//! is bijective: rank `n` (onto) and bounded below (one-to-one), which forces `K = n`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::frames::{frame_threshold, WeightedFamily};
use crate::numerics::{nonneg, numerical_rank, symmetric_spectrum, Matrix, RANK_TOL};
use crate::weaving::operator::{check_pair, coincident_mask, woven_synthesis_matrix};
use crate::weaving::sweep::{map_reduce, pattern_masks, Extremes, SweepMode, WeavingOptions};
use crate::weaving::WeavingPattern;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RieszPatternBounds {
    pub pattern: WeavingPattern,
    pub lower: f64,
    pub upper: f64,
    /// `Σ k_i` over the selected subspaces.
    pub column_count: usize,
    pub rank: usize,
}

pub fn riesz_pattern_bounds(
    v: &WeightedFamily,
    w: &WeightedFamily,
    sigma: &WeavingPattern,
) -> Result<RieszPatternBounds> {
    let t = woven_synthesis_matrix(v, w, sigma)?;
    let (lower, upper) = if t.cols() == 0 {
        (0.0, 0.0)
    } else {
        let spec = symmetric_spectrum(&t.gram_inner(), false)?;
        (nonneg(spec.eigenvalues[0]), nonneg(spec.eigenvalues[t.cols() - 1]))
    };
    Ok(RieszPatternBounds {
        pattern: *sigma,
        lower,
        upper,
        column_count: t.cols(),
        rank: numerical_rank(&t, RANK_TOL),
    })
}

/// The first pattern (smallest mask) whose synthesis operator is not square of full rank.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionWitness {
    pub pattern: WeavingPattern,
    pub column_count: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RieszReport {
    pub mode: SweepMode,
    pub patterns_evaluated: usize,
    pub ambient_dim: usize,
    pub universal_lower: f64,
    pub universal_upper: f64,
    pub is_riesz_weaving: bool,
    pub argmin_pattern: WeavingPattern,
    pub argmax_pattern: WeavingPattern,
    pub dimension_witness: Option<DimensionWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_pattern_bounds: Option<Vec<RieszPatternBounds>>,
}

#[derive(Clone, Copy)]
struct Acc {
    ext: Extremes,
    // (mask, column_count, rank) of the smallest failing mask
    defect: Option<(u64, usize, usize)>,
}

fn merge_defect(a: Option<(u64, usize, usize)>, b: Option<(u64, usize, usize)>) -> Option<(u64, usize, usize)> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Decides whether every weaving of `v` and `w` is a fusion Riesz basis.
pub fn is_woven_riesz(v: &WeightedFamily, w: &WeightedFamily, options: &WeavingOptions) -> Result<(bool, RieszReport)> {
    check_pair(v, w)?;
    let n = v.ambient_dim();
    let size = v.len();
    let (mode, masks) = pattern_masks(size, coincident_mask(v, w), options)?;
    let eval = |mask: u64| riesz_pattern_bounds(v, w, &WeavingPattern::new(size, mask)?);
    let (acc, table) = map_reduce(
        &masks,
        options.threads,
        options.wants_table(size),
        eval,
        |m, rb| Acc {
            ext: Extremes::single(m, rb.lower, rb.upper),
            defect: (rb.column_count != n || rb.rank != n).then_some((m, rb.column_count, rb.rank)),
        },
        Acc {
            ext: Extremes::EMPTY,
            defect: None,
        },
        |a, b| Acc {
            ext: a.ext.merge(b.ext),
            defect: merge_defect(a.defect, b.defect),
        },
    )?;
    let ext = acc.ext;
    let bounded_below = ext.lower > frame_threshold(options.rel_tol, ext.upper);
    let is_riesz = mode == SweepMode::Exhaustive && acc.defect.is_none() && bounded_below;
    let dimension_witness = match acc.defect {
        Some((mask, column_count, rank)) => Some(DimensionWitness {
            pattern: WeavingPattern::new(size, mask)?,
            column_count,
            rank,
        }),
        None => None,
    };
    let report = RieszReport {
        mode,
        patterns_evaluated: ext.count,
        ambient_dim: n,
        universal_lower: ext.lower,
        universal_upper: ext.upper,
        is_riesz_weaving: is_riesz,
        argmin_pattern: WeavingPattern::new(size, ext.lower_mask)?,
        argmax_pattern: WeavingPattern::new(size, ext.upper_mask)?,
        dimension_witness,
        per_pattern_bounds: table,
    };
    Ok((is_riesz, report))
}

/// Largest deviation between the nonzero spectra of `TᵀT` and `TTᵀ`.
///
/// Eigenvalues at or below `1e-9 · max(1, λ_max)` count as zero. Returns infinity when
/// the two nonzero multisets have different sizes.
pub fn nonzero_spectrum_mismatch(t: &Matrix) -> Result<f64> {
    let inner = symmetric_spectrum(&t.gram_inner(), false)?.eigenvalues;
    let outer = symmetric_spectrum(&t.gram_outer(), false)?.eigenvalues;
    let top = inner
        .last()
        .copied()
        .unwrap_or(0.0)
        .max(outer.last().copied().unwrap_or(0.0));
    let zero = 1e-9 * top.max(1.0);
    let nz = |xs: Vec<f64>| -> Vec<f64> { xs.into_iter().filter(|&x| x > zero).collect() };
    let (a, b) = (nz(inner), nz(outer));
    if a.len() != b.len() {
        return Ok(f64::INFINITY);
    }
    Ok(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}
