//! Orthogonal complements inside Hilbert direct sums `⊕ V_i ⊆ ⊕ ℝⁿ`.
//!
//! For nested subspaces `U_i ⊆ V_i`, the complement of `⊕ U_i` within `⊕ V_i` is
//! `⊕ (U_i^⊥ ∩ V_i)`; in matrix form `P_{⊕V} − P_{⊕U} = ⊕ (P_{V_i} − P_{U_i})` and each
//! block is the projection onto the relative complement.

use crate::error::{Error, Result};
use crate::frames::{Subspace, WeightedFamily};
use crate::numerics::Matrix;
use crate::weaving::operator::{check_pair, selected};
use crate::weaving::WeavingPattern;

/// Block-diagonal projection onto `⊕ S_i` inside `(ℝⁿ)^m`.
pub fn direct_sum_projection(subspaces: &[&Subspace]) -> Matrix {
    let blocks: Vec<Matrix> = subspaces.iter().map(|s| s.projection().clone()).collect();
    Matrix::block_diagonal(&blocks)
}

/// Frobenius distance between `P_{⊕outer} − P_{⊕inner}` and the block-diagonal projection
/// onto `⊕ (inner_i^⊥ ∩ outer_i)`. Fails if some `inner_i` is not contained in `outer_i`.
pub fn complement_defect(outer: &[&Subspace], inner: &[&Subspace]) -> Result<f64> {
    if outer.len() != inner.len() {
        return Err(Error::BlockCountMismatch {
            expected: outer.len(),
            got: inner.len(),
        });
    }
    let complements = outer
        .iter()
        .zip(inner)
        .enumerate()
        .map(|(index, (o, i))| {
            o.relative_complement(i).map_err(|e| match e {
                Error::OutsideSubspace { vector, residual, .. } => Error::OutsideSubspace {
                    index,
                    vector,
                    residual,
                },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let difference = direct_sum_projection(outer).sub(&direct_sum_projection(inner))?;
    let refs: Vec<&Subspace> = complements.iter().collect();
    Ok(difference.sub(&direct_sum_projection(&refs))?.frobenius_norm())
}

/// [`complement_defect`] for the weaving σ of `v`, `w` against nested families
/// `u ⊆ v` (used on σ) and `x ⊆ w` (used on σᶜ).
pub fn woven_complement_defect(
    v: &WeightedFamily,
    w: &WeightedFamily,
    u: &[Subspace],
    x: &[Subspace],
    sigma: &WeavingPattern,
) -> Result<f64> {
    check_pair(v, w)?;
    for nested in [u, x] {
        if nested.len() != v.len() {
            return Err(Error::BlockCountMismatch {
                expected: v.len(),
                got: nested.len(),
            });
        }
    }
    let outer: Vec<&Subspace> = (0..v.len()).map(|i| selected(v, w, sigma, i).0).collect();
    let inner: Vec<&Subspace> = (0..v.len())
        .map(|i| if sigma.draws_from_v(i) { &u[i] } else { &x[i] })
        .collect();
    complement_defect(&outer, &inner)
}
