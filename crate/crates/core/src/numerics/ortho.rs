//! Rank-revealing Gram-Schmidt and projection matrices.

use crate::error::{Error, Result};
use crate::numerics::matrix::{axpy, dot, norm};
use crate::numerics::Matrix;

/// Default absolute tolerance on the post-projection residual norm.
pub const RANK_TOL: f64 = 1e-10;

/// Orthonormal basis (as the columns of an `n x k` matrix) of the span of `vectors`.
///
/// Modified Gram-Schmidt with one reorthogonalization pass; a vector whose residual
/// after projecting out the current basis has norm `<= tol` is dropped. An empty
/// input yields an `n x 0` basis.
pub fn orthonormalize<V: AsRef<[f64]>>(ambient_dim: usize, vectors: &[V], tol: f64) -> Result<Matrix> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let v = v.as_ref();
        if v.len() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: v.len(),
            });
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite(0));
        }
        let mut r = v.to_vec();
        for _pass in 0..2 {
            for u in &basis {
                let c = dot(u, &r);
                axpy(-c, u, &mut r);
            }
        }
        let rn = norm(&r);
        if rn > tol {
            r.iter_mut().for_each(|x| *x /= rn);
            // a third pass keeps UᵀU = I tight after normalization
            for u in &basis {
                let c = dot(u, &r);
                axpy(-c, u, &mut r);
            }
            let rn = norm(&r);
            r.iter_mut().for_each(|x| *x /= rn);
            basis.push(r);
        }
    }
    Matrix::from_columns(ambient_dim, &basis)
}

/// Number of columns of `m` that survive [`orthonormalize`] at `tol`.
pub fn numerical_rank(m: &Matrix, tol: f64) -> usize {
    let cols = m.columns();
    // columns are finite and of the right length by construction
    orthonormalize(m.rows(), &cols, tol).map_or(0, |b| b.cols())
}

/// `U Uᵀ` for a basis with orthonormal columns.
pub fn projection_matrix(basis: &Matrix) -> Matrix {
    basis.gram_outer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(basis: &Matrix, v: &[f64]) -> f64 {
        let p = projection_matrix(basis);
        let pv = p.matvec(v).unwrap();
        norm(&crate::numerics::matrix::sub_vec(v, &pv))
    }

    #[test]
    fn already_orthonormal() {
        let b = orthonormalize(2, &[[1.0, 0.0], [0.0, 1.0]], RANK_TOL).unwrap();
        assert_eq!(b, Matrix::identity(2));
    }

    #[test]
    fn normalizes_scalar_multiple() {
        let b = orthonormalize(2, &[[2.0, 0.0]], RANK_TOL).unwrap();
        assert_eq!(b.cols(), 1);
        assert_eq!(b.column(0), vec![1.0, 0.0]);
    }

    #[test]
    fn drops_dependent_vectors() {
        let input = [[1.0, 1.0], [1.0, 1.0], [1.0, 0.0]];
        let b = orthonormalize(2, &input, RANK_TOL).unwrap();
        assert_eq!(b.cols(), 2);
        for v in &input {
            assert!(residual(&b, v) <= 1e-10);
        }
        let gram = b.gram_inner();
        assert!(gram.sub(&Matrix::identity(2)).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn empty_input_is_zero_subspace() {
        let b = orthonormalize::<[f64; 3]>(3, &[], RANK_TOL).unwrap();
        assert_eq!((b.rows(), b.cols()), (3, 0));
        assert_eq!(projection_matrix(&b), Matrix::zeros(3, 3));
    }

    #[test]
    fn dimension_mismatch() {
        let err = orthonormalize(2, &[vec![1.0, 0.0], vec![1.0, 0.0, 0.0]], RANK_TOL).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, got: 3 });
    }

    #[test]
    fn diagonal_line_projection() {
        // UUᵀ for u = (1,1)/√2 by hand: every entry 1/2
        let b = orthonormalize(2, &[[1.0, 1.0]], RANK_TOL).unwrap();
        let p = projection_matrix(&b);
        for &x in p.as_slice() {
            assert!((x - 0.5).abs() <= 1e-15);
        }
        assert_eq!(numerical_rank(&p, RANK_TOL), 1);
    }
}
