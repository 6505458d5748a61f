use crate::error::{Error, Result};
use crate::frames::{Subspace, VectorFamily, WeightedFamily};
use crate::numerics::{nonneg, symmetric_spectrum, Matrix};
use crate::weaving::WeavingPattern;

pub(crate) fn check_pair(v: &WeightedFamily, w: &WeightedFamily) -> Result<()> {
    if v.len() != w.len() {
        return Err(Error::FamilySizeMismatch {
            left: v.len(),
            right: w.len(),
        });
    }
    if v.ambient_dim() != w.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: v.ambient_dim(),
            got: w.ambient_dim(),
        });
    }
    Ok(())
}

fn check_pattern(size: usize, sigma: &WeavingPattern) -> Result<()> {
    if sigma.size() != size {
        return Err(Error::FamilySizeMismatch {
            left: size,
            right: sigma.size(),
        });
    }
    Ok(())
}

/// Indices where both families carry bitwise-identical members, as a mask.
pub(crate) fn coincident_mask(v: &WeightedFamily, w: &WeightedFamily) -> u64 {
    (0..v.len().min(64))
        .filter(|&i| v.coincides_at(w, i))
        .fold(0, |m, i| m | 1 << i)
}

/// The member selected at index `i`: V on σ, W on σᶜ.
pub fn selected<'a>(
    v: &'a WeightedFamily,
    w: &'a WeightedFamily,
    sigma: &WeavingPattern,
    i: usize,
) -> (&'a Subspace, f64) {
    if sigma.draws_from_v(i) {
        (v.subspace(i), v.weight(i))
    } else {
        (w.subspace(i), w.weight(i))
    }
}

/// `S_σ = Σ_{i∈σ} v_i² P_{V_i} + Σ_{i∈σᶜ} w_i² P_{W_i}`, summed in index order.
pub fn woven_operator(v: &WeightedFamily, w: &WeightedFamily, sigma: &WeavingPattern) -> Result<Matrix> {
    check_pair(v, w)?;
    check_pattern(v.len(), sigma)?;
    let n = v.ambient_dim();
    let mut s = Matrix::zeros(n, n);
    for i in 0..v.len() {
        let (sub, weight) = selected(v, w, sigma, i);
        s.add_scaled(weight * weight, sub.projection())?;
    }
    Ok(s)
}

/// `T_σ` as an `n x Σk_i` matrix: block `i` is the selected weight times the
/// selected subspace's orthonormal basis. `T_σ T_σᵀ = S_σ`.
pub fn woven_synthesis_matrix(v: &WeightedFamily, w: &WeightedFamily, sigma: &WeavingPattern) -> Result<Matrix> {
    check_pair(v, w)?;
    check_pattern(v.len(), sigma)?;
    let n = v.ambient_dim();
    let mut columns = Vec::new();
    for i in 0..v.len() {
        let (sub, weight) = selected(v, w, sigma, i);
        for c in sub.basis().columns() {
            columns.push(c.into_iter().map(|x| weight * x).collect::<Vec<f64>>());
        }
    }
    Matrix::from_columns(n, &columns)
}

/// `Σ_{i∈σ,j} v_i² f_ij f_ijᵀ + Σ_{i∈σᶜ,j} w_i² g_ij g_ijᵀ`.
pub fn woven_vector_operator(
    f: &VectorFamily,
    g: &VectorFamily,
    v_weights: &[f64],
    w_weights: &[f64],
    sigma: &WeavingPattern,
) -> Result<Matrix> {
    check_pattern(f.len(), sigma)?;
    let n = f.ambient_dim();
    let mut s = Matrix::zeros(n, n);
    for i in 0..f.len() {
        let (group, c) = if sigma.draws_from_v(i) {
            (f.group(i), v_weights[i])
        } else {
            (g.group(i), w_weights[i])
        };
        for x in group {
            s.add_outer(c * c, x)?;
        }
    }
    Ok(s)
}

/// Clamped extremal eigenvalues plus `min |λ|`, the norm lower bound `min ‖S x‖/‖x‖`.
pub(crate) fn operator_extremes(op: &Matrix) -> Result<(f64, f64, f64)> {
    let spec = symmetric_spectrum(op, false)?;
    let lower = spec.min().map_or(0.0, nonneg);
    let upper = spec.max().map_or(0.0, nonneg);
    let min_abs = spec.eigenvalues.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    Ok((lower, upper, if min_abs.is_finite() { min_abs } else { 0.0 }))
}
