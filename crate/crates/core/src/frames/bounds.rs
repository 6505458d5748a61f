use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{nonneg, symmetric_spectrum, Matrix};

/// Default relative tolerance for "is a frame": `lower > FRAME_TOL * max(1, upper)`.
pub const FRAME_TOL: f64 = 1e-8;

/// Absolute threshold implied by relative tolerance `rel` for a family with upper bound `upper`.
pub fn frame_threshold(rel: f64, upper: f64) -> f64 {
    rel * upper.max(1.0)
}

/// Optimal frame bounds of a positive semidefinite operator, with unit witnesses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub lower: f64,
    pub upper: f64,
    pub is_frame: bool,
    pub witness_low: Vec<f64>,
    pub witness_high: Vec<f64>,
}

impl BoundsReport {
    /// Extremal eigenvalues of `op` (clamped at 0) and their eigenvectors.
    pub fn from_operator(op: &Matrix, rel_tol: f64) -> Result<Self> {
        let n = op.rows();
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let spec = symmetric_spectrum(op, true)?;
        let lower = nonneg(spec.eigenvalues[0]);
        let upper = nonneg(spec.eigenvalues[n - 1]);
        Ok(Self {
            lower,
            upper,
            is_frame: lower > frame_threshold(rel_tol, upper),
            witness_low: spec.eigenvector(0).unwrap_or_default(),
            witness_high: spec.eigenvector(n - 1).unwrap_or_default(),
        })
    }
}

/// `Σ c_i² f_i f_iᵀ`, with `c_i = 1` when no weights are given.
pub fn frame_operator<V: AsRef<[f64]>>(ambient_dim: usize, vectors: &[V], weights: Option<&[f64]>) -> Result<Matrix> {
    if let Some(w) = weights {
        if w.len() != vectors.len() {
            return Err(Error::BlockCountMismatch {
                expected: vectors.len(),
                got: w.len(),
            });
        }
    }
    let mut s = Matrix::zeros(ambient_dim, ambient_dim);
    for (i, f) in vectors.iter().enumerate() {
        let c = weights.map_or(1.0, |w| w[i]);
        s.add_outer(c * c, f.as_ref())?;
    }
    Ok(s)
}

pub fn frame_bounds<V: AsRef<[f64]>>(ambient_dim: usize, vectors: &[V]) -> Result<BoundsReport> {
    BoundsReport::from_operator(&frame_operator(ambient_dim, vectors, None)?, FRAME_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_operator_examples() {
        let e = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert_eq!(frame_operator(3, &e, None).unwrap(), Matrix::identity(3));
        let rep = [[1.0, 0.0], [1.0, 0.0]];
        assert_eq!(
            frame_operator(2, &rep, None).unwrap(),
            Matrix::from_diagonal(&[2.0, 0.0])
        );
        // outer products by hand: e1e1ᵀ + e2e2ᵀ + (1,1)(1,1)ᵀ
        let mb = [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]];
        let expected = Matrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        assert_eq!(frame_operator(2, &mb, None).unwrap(), expected);
        let weighted = frame_operator(2, &[[1.0, 0.0]], Some(&[3.0])).unwrap();
        assert_eq!(weighted, Matrix::from_diagonal(&[9.0, 0.0]));
        assert!(frame_operator(2, &[[1.0, 0.0, 0.0]], None).is_err());
    }

    #[test]
    fn frame_bounds_examples() {
        let b = frame_bounds(2, &[[1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!((b.lower, b.upper, b.is_frame), (1.0, 1.0, true));

        let b = frame_bounds(2, &[[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-14 && (b.upper - 3.0).abs() < 1e-14);
        assert!(b.is_frame);

        let b = frame_bounds(2, &[[1.0, 0.0]]).unwrap();
        assert_eq!(b.lower, 0.0);
        assert!(!b.is_frame);
        assert_eq!(b.witness_low, vec![0.0, 1.0]);
    }

    #[test]
    fn witnesses_attain_bounds() {
        let vs = [[1.0, 2.0, 0.0], [0.0, 1.0, -1.0], [3.0, 0.0, 1.0], [1.0, 1.0, 1.0]];
        let op = frame_operator(3, &vs, None).unwrap();
        let b = BoundsReport::from_operator(&op, FRAME_TOL).unwrap();
        let q = |x: &[f64]| crate::numerics::dot(x, &op.matvec(x).unwrap());
        assert!((q(&b.witness_low) - b.lower).abs() <= 1e-8 * b.lower.max(1.0));
        assert!((q(&b.witness_high) - b.upper).abs() <= 1e-8 * b.upper);
    }

    #[test]
    fn tolerance_is_relative() {
        // once upper >= 1 the threshold scales with the family
        let vs = [[1.0, 0.0], [0.0, 1e-3]];
        for t in [1.0, 1e3, 1e6] {
            let scaled: Vec<Vec<f64>> = vs.iter().map(|v| v.iter().map(|x| x * t).collect()).collect();
            assert!(frame_bounds(2, &scaled).unwrap().is_frame);
        }
        let thin = [[1.0, 0.0], [0.0, 1e-5]];
        assert!(!frame_bounds(2, &thin).unwrap().is_frame);
    }
}
