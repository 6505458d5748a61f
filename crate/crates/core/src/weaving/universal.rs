use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{frame_operator, frame_threshold, VectorFamily, WeightedFamily};
use crate::weaving::operator::{check_pair, coincident_mask, operator_extremes, woven_operator, woven_vector_operator};
use crate::weaving::sweep::{map_reduce, pattern_masks, Extremes, SweepMode, WeavingOptions};
use crate::weaving::WeavingPattern;

/// Bounds of a single weaving.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternBounds {
    pub pattern: WeavingPattern,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeavingReport {
    pub mode: SweepMode,
    /// Distinct weavings visited; indices where both families coincide are pinned to V.
    pub patterns_evaluated: usize,
    pub universal_lower: f64,
    pub universal_upper: f64,
    pub woven: bool,
    pub argmin_pattern: WeavingPattern,
    pub argmax_pattern: WeavingPattern,
    /// `min_σ min ‖S_σ f‖ / ‖f‖`.
    pub alpha: f64,
    /// Upper bound `B` of the first family on its own.
    pub v_upper: f64,
    /// Upper bound `D` of the second family on its own.
    pub w_upper: f64,
    /// `α² / (B² + D²)`.
    pub lemma_floor: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_pattern_bounds: Option<Vec<PatternBounds>>,
}

#[derive(Clone, Copy)]
struct Acc {
    ext: Extremes,
    min_abs: f64,
}

fn lemma_floor(alpha: f64, b: f64, d: f64) -> f64 {
    let denom = b * b + d * d;
    if denom > 0.0 {
        alpha * alpha / denom
    } else {
        0.0
    }
}

/// Shared driver: `operator(mask)` builds `S_σ` for one pattern.
fn sweep(
    size: usize,
    fixed: u64,
    v_upper: f64,
    w_upper: f64,
    options: &WeavingOptions,
    operator: impl Fn(&WeavingPattern) -> Result<crate::numerics::Matrix> + Sync,
) -> Result<WeavingReport> {
    let (mode, masks) = pattern_masks(size, fixed, options)?;
    let eval = |mask: u64| -> Result<(PatternBounds, f64)> {
        let pattern = WeavingPattern::new(size, mask)?;
        let (lower, upper, min_abs) = operator_extremes(&operator(&pattern)?)?;
        Ok((PatternBounds { pattern, lower, upper }, min_abs))
    };
    let identity = Acc {
        ext: Extremes::EMPTY,
        min_abs: f64::INFINITY,
    };
    let (acc, table) = map_reduce(
        &masks,
        options.threads,
        options.wants_table(size),
        eval,
        |m, (pb, min_abs)| Acc {
            ext: Extremes::single(m, pb.lower, pb.upper),
            min_abs: *min_abs,
        },
        identity,
        |a, b| Acc {
            ext: a.ext.merge(b.ext),
            min_abs: a.min_abs.min(b.min_abs),
        },
    )?;
    let ext = acc.ext;
    let threshold = frame_threshold(options.rel_tol, ext.upper);
    Ok(WeavingReport {
        mode,
        patterns_evaluated: ext.count,
        universal_lower: ext.lower,
        universal_upper: ext.upper,
        woven: mode == SweepMode::Exhaustive && ext.lower > threshold,
        argmin_pattern: WeavingPattern::new(size, ext.lower_mask)?,
        argmax_pattern: WeavingPattern::new(size, ext.upper_mask)?,
        alpha: acc.min_abs,
        v_upper,
        w_upper,
        lemma_floor: lemma_floor(acc.min_abs, v_upper, w_upper),
        per_pattern_bounds: table.map(|t| t.into_iter().map(|(pb, _)| pb).collect()),
    })
}

/// Universal bounds over every weaving of `v` and `w`.
///
/// `universal_lower = min_σ λ_min(S_σ)`, `universal_upper = max_σ λ_max(S_σ)`; argmin and
/// argmax patterns break ties on the smallest bitmask. Sampled sweeps never report
/// `woven = true`.
pub fn universal_weaving_bounds(
    v: &WeightedFamily,
    w: &WeightedFamily,
    options: &WeavingOptions,
) -> Result<WeavingReport> {
    check_pair(v, w)?;
    let b = v.bounds_with_tol(options.rel_tol)?.upper;
    let d = w.bounds_with_tol(options.rel_tol)?.upper;
    sweep(v.len(), coincident_mask(v, w), b, d, options, |p| {
        woven_operator(v, w, p)
    })
}

pub fn is_woven(v: &WeightedFamily, w: &WeightedFamily, options: &WeavingOptions) -> Result<(bool, WeavingReport)> {
    let report = universal_weaving_bounds(v, w, options)?;
    Ok((report.woven, report))
}

/// Universal bounds for weavings of two vector families `{v_i f_ij}` and `{w_i g_ij}`.
pub fn weaving_frame_bounds(
    f: &VectorFamily,
    g: &VectorFamily,
    v_weights: &[f64],
    w_weights: &[f64],
    options: &WeavingOptions,
) -> Result<WeavingReport> {
    if f.len() != g.len() {
        return Err(Error::FamilySizeMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    if f.ambient_dim() != g.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_dim(),
            got: g.ambient_dim(),
        });
    }
    for weights in [v_weights, w_weights] {
        if weights.len() != f.len() {
            return Err(Error::BlockCountMismatch {
                expected: f.len(),
                got: weights.len(),
            });
        }
        if let Some(index) = weights.iter().position(|c| !(c.is_finite() && *c > 0.0)) {
            return Err(Error::NonPositiveWeight {
                index,
                weight: weights[index],
            });
        }
    }
    let n = f.ambient_dim();
    let family_upper = |fam: &VectorFamily, weights: &[f64]| -> Result<f64> {
        let per_vector: Vec<f64> = (0..fam.len())
            .flat_map(|i| std::iter::repeat_n(weights[i], fam.group(i).len()))
            .collect();
        let op = frame_operator(n, &fam.flatten(), Some(&per_vector))?;
        Ok(operator_extremes(&op)?.1)
    };
    let b = family_upper(f, v_weights)?;
    let d = family_upper(g, w_weights)?;
    let fixed = (0..f.len().min(64))
        .filter(|&i| f.coincides_at(g, i) && v_weights[i].to_bits() == w_weights[i].to_bits())
        .fold(0u64, |m, i| m | 1 << i);
    sweep(f.len(), fixed, b, d, options, |p| {
        woven_vector_operator(f, g, v_weights, w_weights, p)
    })
}

/// `α = min_σ min_{‖f‖=1} ‖S_σ f‖` and the floor `α² / (B² + D²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorLowerBound {
    pub alpha: f64,
    pub lemma_floor: f64,
    pub v_upper: f64,
    pub w_upper: f64,
}

/// Requires both families to be fusion frames on their own.
pub fn operator_lower_bound(
    v: &WeightedFamily,
    w: &WeightedFamily,
    options: &WeavingOptions,
) -> Result<OperatorLowerBound> {
    for fam in [v, w] {
        let b = fam.bounds_with_tol(options.rel_tol)?;
        if !b.is_frame {
            return Err(Error::NotAFusionFrame { lower: b.lower });
        }
    }
    let opts = WeavingOptions {
        per_pattern: Some(false),
        ..options.clone()
    };
    let report = universal_weaving_bounds(v, w, &opts)?;
    Ok(OperatorLowerBound {
        alpha: report.alpha,
        lemma_floor: report.lemma_floor,
        v_upper: report.v_upper,
        w_upper: report.w_upper,
    })
}
