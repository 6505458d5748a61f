//! Symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! The solver is sequential and data-independent in its loop order, so the same
//! input bits always produce the same output bits.

use crate::error::{Error, Result};
use crate::numerics::Matrix;

/// Relative symmetry tolerance accepted by [`symmetric_spectrum`].
pub const SYMMETRY_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;
// Stop once the off-diagonal Frobenius norm is this small relative to ‖M‖_F.
const TARGET_OFF: f64 = 1e-15;
const ACCEPT_OFF: f64 = 1e-12;

/// Eigenvalues in ascending order, optionally with eigenvectors as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<Matrix>,
}

impl Spectrum {
    pub fn min(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    pub fn eigenvector(&self, k: usize) -> Option<Vec<f64>> {
        self.eigenvectors.as_ref().map(|q| q.column(k))
    }
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += 2.0 * a[(p, q)] * a[(p, q)];
        }
    }
    s.sqrt()
}

/// Full spectrum of a real symmetric matrix.
pub fn symmetric_spectrum(m: &Matrix, want_vectors: bool) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let deviation = m.asymmetry();
    if deviation > SYMMETRY_TOL * m.max_abs().max(1.0) {
        return Err(Error::NotSymmetric { deviation });
    }

    // work on the exact symmetric part
    let mut a = m.clone();
    for p in 0..n {
        for q in (p + 1)..n {
            let s = 0.5 * (a[(p, q)] + a[(q, p)]);
            a[(p, q)] = s;
            a[(q, p)] = s;
        }
    }
    let mut v = want_vectors.then(|| Matrix::identity(n));

    let scale = a.frobenius_norm();
    let mut off = off_diagonal_norm(&a);
    let mut sweep = 0;
    while off > TARGET_OFF * scale && sweep < MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                // negligible element: drop it without rotating
                if sweep > 3 && app.abs() + 100.0 * apq.abs() == app.abs() && aqq.abs() + 100.0 * apq.abs() == aqq.abs()
                {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, p, q, c, s);
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                if let Some(v) = v.as_mut() {
                    rotate_columns(v, p, q, c, s);
                }
            }
        }
        off = off_diagonal_norm(&a);
        sweep += 1;
    }
    if off > ACCEPT_OFF * scale {
        return Err(Error::NoConvergence { off_norm: off });
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: equal eigenvalues keep solver order
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let eigenvalues = order.iter().map(|&i| a[(i, i)]).collect();
    let eigenvectors = v.map(|v| {
        let mut sorted = Matrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            for r in 0..n {
                sorted[(r, dst)] = v[(r, src)];
            }
        }
        sorted
    });
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn rotate_columns(a: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..a.rows() {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
}

// A ← JᵀAJ for the plane rotation J acting on coordinates p, q.
fn rotate(a: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    rotate_columns(a, p, q, c, s);
    for k in 0..a.cols() {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
}

/// Clamps eigenvalue noise below zero to `+0.0`.
#[inline]
pub fn nonneg(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// Largest singular value: `sqrt(λ_max(MᵀM))`.
pub fn operator_norm(m: &Matrix) -> Result<f64> {
    // the smaller Gram matrix has the same nonzero spectrum
    let gram = if m.cols() <= m.rows() {
        m.gram_inner()
    } else {
        m.gram_outer()
    };
    let spec = symmetric_spectrum(&gram, false)?;
    Ok(nonneg(spec.max().unwrap_or(0.0)).sqrt())
}
