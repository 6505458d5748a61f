use crate::error::{Error, Result};
use crate::numerics::matrix::{norm, sub_vec};
use crate::numerics::{orthonormalize, projection_matrix, Matrix, RANK_TOL};

/// Tolerance for `UᵀU = I` when accepting a caller-supplied orthonormal basis.
pub const ORTHONORMAL_TOL: f64 = 1e-12;

/// A subspace of ℝⁿ held as an orthonormal basis plus its cached orthogonal projection.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: Matrix,
    projection: Matrix,
}

impl Subspace {
    /// Span of arbitrary vectors, at the default rank tolerance.
    pub fn span<V: AsRef<[f64]>>(ambient_dim: usize, vectors: &[V]) -> Result<Self> {
        Self::span_with_tol(ambient_dim, vectors, RANK_TOL)
    }

    pub fn span_with_tol<V: AsRef<[f64]>>(ambient_dim: usize, vectors: &[V], tol: f64) -> Result<Self> {
        let basis = orthonormalize(ambient_dim, vectors, tol)?;
        Ok(Self::from_basis_unchecked(basis))
    }

    /// Accepts `basis` as is, provided its columns are orthonormal to [`ORTHONORMAL_TOL`].
    pub fn from_orthonormal(basis: Matrix) -> Result<Self> {
        let k = basis.cols();
        let defect = basis.gram_inner().sub(&Matrix::identity(k))?.max_abs();
        if defect > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal { defect });
        }
        Ok(Self::from_basis_unchecked(basis))
    }

    fn from_basis_unchecked(basis: Matrix) -> Self {
        let projection = projection_matrix(&basis);
        Self { basis, projection }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_basis_unchecked(Matrix::zeros(ambient_dim, 0))
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_basis_unchecked(Matrix::identity(ambient_dim))
    }

    /// Span of the standard basis vectors `e_i`, `i ∈ indices` (0-based).
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Result<Self> {
        let vectors: Vec<Vec<f64>> = indices
            .iter()
            .map(|&i| {
                if i >= ambient_dim {
                    return Err(Error::DimensionMismatch {
                        expected: ambient_dim,
                        got: i + 1,
                    });
                }
                let mut e = vec![0.0; ambient_dim];
                e[i] = 1.0;
                Ok(e)
            })
            .collect::<Result<_>>()?;
        Self::span(ambient_dim, &vectors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn project(&self, f: &[f64]) -> Result<Vec<f64>> {
        self.projection.matvec(f)
    }

    /// `Uᵀ f`: coordinates of the projection of `f` in the stored basis.
    pub fn coordinates(&self, f: &[f64]) -> Result<Vec<f64>> {
        self.basis.transpose_matvec(f)
    }

    /// `‖f − P f‖`.
    pub fn residual(&self, f: &[f64]) -> Result<f64> {
        let pf = self.project(f)?;
        Ok(norm(&sub_vec(f, &pf)))
    }

    /// Orthogonal complement of `inner` inside `self`; `inner` must be contained in `self`.
    pub fn relative_complement(&self, inner: &Subspace) -> Result<Subspace> {
        if inner.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: inner.ambient_dim(),
            });
        }
        for (j, u) in inner.basis.columns().iter().enumerate() {
            let r = self.residual(u)?;
            if r > RANK_TOL {
                return Err(Error::OutsideSubspace {
                    index: 0,
                    vector: j,
                    residual: r,
                });
            }
        }
        // Gram-Schmidt over inner's basis followed by self's basis keeps only the new directions
        let n = self.ambient_dim();
        let mut vectors = inner.basis.columns();
        vectors.extend(self.basis.columns());
        let joint = orthonormalize(n, &vectors, RANK_TOL)?;
        let complement: Vec<Vec<f64>> = (inner.dim()..joint.cols()).map(|j| joint.column(j)).collect();
        Ok(Self::from_basis_unchecked(Matrix::from_columns(n, &complement)?))
    }

    /// Bitwise equality of the stored projections.
    pub fn same_as(&self, other: &Subspace) -> bool {
        self.projection == other.projection
    }
}
