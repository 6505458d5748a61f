//! Local frames inside each subspace, lifted to global vector families.
//!
//! Given frames `{f_ij}` for `V_i` with bounds `A_i ≤ B_i` and `{g_ij}` for `W_i` with
//! bounds `C_i ≤ D_i`, the subspace families weave exactly when the lifted families
//! `{v_i f_ij}` and `{w_i g_ij}` weave. Per pattern the lifted operator is squeezed
//! between `α S_σ` and `β S_σ` with `α = min(A, C)` and `β = max(B, D)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{frame_threshold, Subspace, VectorFamily, WeightedFamily, FRAME_TOL};
use crate::numerics::{nonneg, norm, symmetric_spectrum, Matrix};
use crate::weaving::{universal_weaving_bounds, weaving_frame_bounds, WeavingOptions, WeavingReport};

/// Off-subspace tolerance for local frame vectors, relative to `max(1, ‖f‖)`.
pub const SUBSPACE_RESIDUAL_TOL: f64 = 1e-10;

/// Slack allowed on both sides of the bound sandwich.
pub const SANDWICH_TOL: f64 = 1e-9;

/// Frame bounds of `vectors` as a frame for `subspace`, computed in the subspace's own
/// coordinates so the directions orthogonal to it do not register as zero eigenvalues.
///
/// An empty local system (or the zero subspace) has bounds `(0, 0)`.
pub fn local_frame_bounds<V: AsRef<[f64]>>(subspace: &Subspace, vectors: &[V]) -> Result<(f64, f64)> {
    let k = subspace.dim();
    let mut op = Matrix::zeros(k, k);
    for (j, f) in vectors.iter().enumerate() {
        let f = f.as_ref();
        let residual = subspace.residual(f)?;
        if residual > SUBSPACE_RESIDUAL_TOL * norm(f).max(1.0) {
            return Err(Error::OutsideSubspace {
                index: 0,
                vector: j,
                residual,
            });
        }
        op.add_outer(1.0, &subspace.coordinates(f)?)?;
    }
    if k == 0 || vectors.is_empty() {
        return Ok((0.0, 0.0));
    }
    let spec = symmetric_spectrum(&op, false)?;
    Ok((nonneg(spec.eigenvalues[0]), nonneg(spec.eigenvalues[k - 1])))
}

/// A weighted family together with a frame for each of its subspaces.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalFrameSystem {
    base: WeightedFamily,
    local: VectorFamily,
    bounds: Vec<(f64, f64)>,
}

impl LocalFrameSystem {
    /// Vectors within tolerance of their subspace are projected onto it; every local
    /// system must be a frame for its subspace.
    pub fn new(base: WeightedFamily, local: VectorFamily) -> Result<Self> {
        if local.len() != base.len() {
            return Err(Error::FamilySizeMismatch {
                left: base.len(),
                right: local.len(),
            });
        }
        if local.ambient_dim() != base.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: base.ambient_dim(),
                got: local.ambient_dim(),
            });
        }
        let mut groups = Vec::with_capacity(base.len());
        let mut bounds = Vec::with_capacity(base.len());
        for index in 0..base.len() {
            let sub = base.subspace(index);
            let group = local.group(index);
            let (lo, hi) = local_frame_bounds(sub, group).map_err(|e| match e {
                Error::OutsideSubspace { vector, residual, .. } => Error::OutsideSubspace {
                    index,
                    vector,
                    residual,
                },
                other => other,
            })?;
            if !(lo > frame_threshold(FRAME_TOL, hi)) {
                return Err(Error::HypothesisViolation { index, lower: lo });
            }
            groups.push(group.iter().map(|f| sub.project(f)).collect::<Result<Vec<_>>>()?);
            bounds.push((lo, hi));
        }
        let local = VectorFamily::new(base.ambient_dim(), groups)?;
        Ok(Self { base, local, bounds })
    }

    /// Each subspace paired with its own orthonormal basis (all local bounds equal 1).
    pub fn parseval(base: WeightedFamily) -> Result<Self> {
        let groups = base.iter().map(|(s, _)| s.basis().columns()).collect();
        let local = VectorFamily::new(base.ambient_dim(), groups)?;
        Self::new(base, local)
    }

    pub fn base(&self) -> &WeightedFamily {
        &self.base
    }

    pub fn local(&self) -> &VectorFamily {
        &self.local
    }

    pub fn local_bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// `(inf A_i, sup B_i)`; `inf` is a minimum over the finite index set.
    pub fn extreme_bounds(&self) -> (f64, f64) {
        self.bounds
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &(a, b)| (lo.min(a), hi.max(b)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AggregateBounds {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// `min(A, C)`
    pub alpha: f64,
    /// `max(B, D)`
    pub beta: f64,
}

pub fn aggregate_bounds(v: &LocalFrameSystem, w: &LocalFrameSystem) -> AggregateBounds {
    let (a, b) = v.extreme_bounds();
    let (c, d) = w.extreme_bounds();
    AggregateBounds {
        a,
        b,
        c,
        d,
        alpha: a.min(c),
        beta: b.max(d),
    }
}

fn check_systems(v: &LocalFrameSystem, w: &LocalFrameSystem) -> Result<()> {
    if v.base.len() != w.base.len() {
        return Err(Error::FamilySizeMismatch {
            left: v.base.len(),
            right: w.base.len(),
        });
    }
    if v.base.ambient_dim() != w.base.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: v.base.ambient_dim(),
            got: w.base.ambient_dim(),
        });
    }
    Ok(())
}

fn lift_one(sys: &LocalFrameSystem) -> Result<VectorFamily> {
    let groups = (0..sys.base.len())
        .map(|i| {
            let c = sys.base.weight(i);
            sys.local
                .group(i)
                .iter()
                .map(|f| f.iter().map(|x| c * x).collect())
                .collect()
        })
        .collect();
    VectorFamily::new(sys.base.ambient_dim(), groups)
}

/// The global families `{v_i f_ij}` and `{w_i g_ij}`.
pub fn lift(v: &LocalFrameSystem, w: &LocalFrameSystem) -> Result<(VectorFamily, VectorFamily)> {
    check_systems(v, w)?;
    Ok((lift_one(v)?, lift_one(w)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub aggregate: AggregateBounds,
    pub fusion: WeavingReport,
    pub lifted: WeavingReport,
    pub woven_fusion: bool,
    pub woven_vectors: bool,
    /// `A_lifted − α A_VW`; the lower sandwich holds when this is `≥ −SANDWICH_TOL`.
    pub lower_margin: f64,
    /// `β B_VW − B_lifted`; the upper sandwich holds when this is `≥ −SANDWICH_TOL`.
    pub upper_margin: f64,
    pub sandwich_holds: bool,
    pub flags_agree: bool,
}

impl EquivalenceReport {
    pub fn consistent(&self) -> bool {
        self.flags_agree && self.sandwich_holds
    }
}

/// Weaves the subspace families and the lifted vector families and compares them.
pub fn equivalence_check(
    v: &LocalFrameSystem,
    w: &LocalFrameSystem,
    options: &WeavingOptions,
) -> Result<EquivalenceReport> {
    check_systems(v, w)?;
    let aggregate = aggregate_bounds(v, w);
    let fusion = universal_weaving_bounds(&v.base, &w.base, options)?;
    let (f, g) = lift(v, w)?;
    let ones = vec![1.0; f.len()];
    let lifted = weaving_frame_bounds(&f, &g, &ones, &ones, options)?;
    let lower_margin = lifted.universal_lower - aggregate.alpha * fusion.universal_lower;
    let upper_margin = aggregate.beta * fusion.universal_upper - lifted.universal_upper;
    Ok(EquivalenceReport {
        aggregate,
        woven_fusion: fusion.woven,
        woven_vectors: lifted.woven,
        sandwich_holds: lower_margin >= -SANDWICH_TOL && upper_margin >= -SANDWICH_TOL,
        flags_agree: fusion.woven == lifted.woven,
        lower_margin,
        upper_margin,
        fusion,
        lifted,
    })
}
