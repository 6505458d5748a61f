use crate::error::{Error, Result};
use crate::numerics::eigen::SYMMETRY_TOL;
use crate::numerics::Matrix;

/// Relative pivot threshold below which an SPD solve reports [`Error::NotInvertible`].
pub const SPD_PIVOT_TOL: f64 = 1e-10;

/// Solves `M x = b` for symmetric positive definite `M` by Cholesky factorization.
///
/// A pivot at or below `SPD_PIVOT_TOL * ‖M‖_F` (or a negative one) means the matrix is
/// numerically singular or indefinite.
pub fn solve_spd(m: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    let deviation = m.asymmetry();
    if deviation > SYMMETRY_TOL * m.max_abs().max(1.0) {
        return Err(Error::NotSymmetric { deviation });
    }
    let threshold = SPD_PIVOT_TOL * m.frobenius_norm();

    // lower-triangular L with M = L Lᵀ
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > threshold) {
            return Err(Error::NotInvertible);
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in (j + 1)..n {
            let mut s = 0.5 * (m[(i, j)] + m[(j, i)]);
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }

    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[(i, k)] * y[k];
        }
        y[i] = s / l[(i, i)];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in (i + 1)..n {
            s -= l[(k, i)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    Ok(x)
}
