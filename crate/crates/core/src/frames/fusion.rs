//! Fusion frame operators: `T({f_i}) = Σ w_i P_i f_i`, `T*f = {w_i P_i f}` and `S = T T*`.

use crate::error::{Error, Result};
use crate::frames::{BoundsReport, WeightedFamily, FRAME_TOL};
use crate::numerics::{axpy, solve_spd, Matrix};

impl WeightedFamily {
    /// `S = Σ w_i² P_i`, summed in index order.
    pub fn frame_operator(&self) -> Matrix {
        let n = self.ambient_dim();
        let mut s = Matrix::zeros(n, n);
        for (sub, w) in self.iter() {
            // shapes agree by construction
            let _ = s.add_scaled(w * w, sub.projection());
        }
        s
    }

    pub fn bounds(&self) -> Result<BoundsReport> {
        self.bounds_with_tol(FRAME_TOL)
    }

    pub fn bounds_with_tol(&self, rel_tol: f64) -> Result<BoundsReport> {
        BoundsReport::from_operator(&self.frame_operator(), rel_tol)
    }

    /// Per-index measurements `w_i P_i f`.
    pub fn analysis(&self, f: &[f64]) -> Result<Vec<Vec<f64>>> {
        if f.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: f.len(),
            });
        }
        self.iter()
            .map(|(sub, w)| Ok(sub.project(f)?.into_iter().map(|x| w * x).collect()))
            .collect()
    }

    /// `Σ w_i P_i f_i`.
    pub fn synthesis<B: AsRef<[f64]>>(&self, blocks: &[B]) -> Result<Vec<f64>> {
        if blocks.len() != self.len() {
            return Err(Error::BlockCountMismatch {
                expected: self.len(),
                got: blocks.len(),
            });
        }
        let mut out = vec![0.0; self.ambient_dim()];
        for ((sub, w), b) in self.iter().zip(blocks) {
            let pb = sub.project(b.as_ref())?;
            axpy(w, &pb, &mut out);
        }
        Ok(out)
    }

    /// Recovers `f` from its measurements `{w_i P_i f}` as `S⁻¹ Σ w_i P_i m_i`.
    ///
    /// Blocks are re-projected onto their subspaces first, so slightly perturbed
    /// measurements are accepted.
    pub fn reconstruct<B: AsRef<[f64]>>(&self, measurements: &[B]) -> Result<Vec<f64>> {
        let bounds = self.bounds()?;
        if !bounds.is_frame {
            return Err(Error::NotAFusionFrame { lower: bounds.lower });
        }
        let y = self.synthesis(measurements)?;
        solve_spd(&self.frame_operator(), &y).map_err(|e| match e {
            Error::NotInvertible => Error::NotAFusionFrame { lower: bounds.lower },
            other => other,
        })
    }
}
