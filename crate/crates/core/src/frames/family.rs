use crate::error::{Error, Result};
use crate::frames::Subspace;

/// A weighted family `{(W_i, w_i)}` of subspaces of a common ℝⁿ.
///
/// Weights are strictly positive and finite; a subspace that should not contribute is
/// left out of the family rather than given weight zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedFamily {
    ambient_dim: usize,
    members: Vec<(Subspace, f64)>,
}

impl WeightedFamily {
    pub fn new(ambient_dim: usize, members: Vec<(Subspace, f64)>) -> Result<Self> {
        for (index, (s, w)) in members.iter().enumerate() {
            if s.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: s.ambient_dim(),
                });
            }
            if !(w.is_finite() && *w > 0.0) {
                return Err(Error::NonPositiveWeight { index, weight: *w });
            }
        }
        Ok(Self { ambient_dim, members })
    }

    /// Every subspace with weight 1.
    pub fn unit(ambient_dim: usize, subspaces: Vec<Subspace>) -> Result<Self> {
        Self::new(ambient_dim, subspaces.into_iter().map(|s| (s, 1.0)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn subspace(&self, i: usize) -> &Subspace {
        &self.members[i].0
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.members[i].1
    }

    pub fn weights(&self) -> Vec<f64> {
        self.members.iter().map(|(_, w)| *w).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Subspace, f64)> {
        self.members.iter().map(|(s, w)| (s, *w))
    }

    /// Same subspaces, every weight multiplied by `t > 0`.
    pub fn with_scaled_weights(&self, t: f64) -> Result<Self> {
        Self::new(
            self.ambient_dim,
            self.members.iter().map(|(s, w)| (s.clone(), w * t)).collect(),
        )
    }

    /// True when index `i` carries bitwise the same subspace and weight in both families.
    pub fn coincides_at(&self, other: &WeightedFamily, i: usize) -> bool {
        self.weight(i).to_bits() == other.weight(i).to_bits() && self.subspace(i).same_as(other.subspace(i))
    }
}

/// Vectors of ℝⁿ grouped by index: `{f_ij : j ∈ J_i}` for each `i`. Groups may be empty.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFamily {
    ambient_dim: usize,
    groups: Vec<Vec<Vec<f64>>>,
}

impl VectorFamily {
    pub fn new(ambient_dim: usize, groups: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        for v in groups.iter().flatten() {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
            if let Some(pos) = v.iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFinite(pos));
            }
        }
        Ok(Self { ambient_dim, groups })
    }

    /// One singleton group per vector.
    pub fn singletons(ambient_dim: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(ambient_dim, vectors.into_iter().map(|v| vec![v]).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn group(&self, i: usize) -> &[Vec<f64>] {
        &self.groups[i]
    }

    pub fn groups(&self) -> &[Vec<Vec<f64>>] {
        &self.groups
    }

    pub fn flatten(&self) -> Vec<Vec<f64>> {
        self.groups.iter().flatten().cloned().collect()
    }

    pub fn vector_count(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn coincides_at(&self, other: &VectorFamily, i: usize) -> bool {
        let (a, b) = (&self.groups[i], &other.groups[i]);
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|(x, y)| x.iter().zip(y).all(|(p, q)| p.to_bits() == q.to_bits()))
    }
}
