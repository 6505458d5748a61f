//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weaving_fusion::frames::{Subspace, VectorFamily, WeightedFamily};
use weaving_fusion::lifting::LocalFrameSystem;
use weaving_fusion::numerics::Matrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Span of `k` random vectors: generically of dimension `k`.
pub fn subspace(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Subspace {
    let vs: Vec<Vec<f64>> = (0..k).map(|_| vector(rng, n)).collect();
    Subspace::span(n, &vs).unwrap()
}

/// `m` random subspaces of dimension `1..=max_dim` with weights drawn from `weights`.
pub fn family(rng: &mut ChaCha8Rng, n: usize, m: usize, max_dim: usize, weights: (f64, f64)) -> WeightedFamily {
    let members = (0..m)
        .map(|_| {
            let k = rng.random_range(1..=max_dim.min(n));
            let w = rng.random_range(weights.0..=weights.1);
            (subspace(rng, n, k), w)
        })
        .collect();
    WeightedFamily::new(n, members).unwrap()
}

/// A random family that is a fusion frame.
pub fn fusion_frame(rng: &mut ChaCha8Rng, n: usize, m: usize, weights: (f64, f64)) -> WeightedFamily {
    loop {
        let f = family(rng, n, m, n, weights);
        if f.bounds().unwrap().is_frame {
            return f;
        }
    }
}

/// A frame for each member: its basis with random scales plus 1 to 3 random combinations.
pub fn local_frames(rng: &mut ChaCha8Rng, fam: &WeightedFamily) -> VectorFamily {
    let groups = fam
        .iter()
        .map(|(s, _)| {
            let basis = s.basis().columns();
            let mut group: Vec<Vec<f64>> = basis
                .iter()
                .map(|b| {
                    let c = rng.random_range(0.5..1.5);
                    b.iter().map(|x| c * x).collect()
                })
                .collect();
            for _ in 0..rng.random_range(1..=3) {
                let mut x = vec![0.0; fam.ambient_dim()];
                for b in &basis {
                    let c: f64 = rng.random_range(-1.0..1.0);
                    for (xi, bi) in x.iter_mut().zip(b) {
                        *xi += c * bi;
                    }
                }
                group.push(x);
            }
            group
        })
        .collect();
    VectorFamily::new(fam.ambient_dim(), groups).unwrap()
}

/// One randomized lifting trial: two families with local frames.
pub struct Trial {
    pub v: LocalFrameSystem,
    pub w: LocalFrameSystem,
}

/// Ambient dimension at most 8, at most 5 indices, weights in `[1, 2]`.
pub fn trial(seed: u64) -> Trial {
    let mut r = rng(seed);
    let n = r.random_range(1..=8);
    let m = r.random_range(1..=5);
    let v = family(&mut r, n, m, n, (1.0, 2.0));
    let w = family(&mut r, n, m, n, (1.0, 2.0));
    let lv = local_frames(&mut r, &v);
    let lw = local_frames(&mut r, &w);
    Trial {
        v: LocalFrameSystem::new(v, lv).unwrap(),
        w: LocalFrameSystem::new(w, lw).unwrap(),
    }
}

/// Two families over one index set whose dimensions partition `n`.
pub fn riesz_pair(rng: &mut ChaCha8Rng, n: usize) -> (WeightedFamily, WeightedFamily) {
    let mut dims = Vec::new();
    let mut left = n;
    while left > 0 {
        let k = rng.random_range(1..=left.min(3));
        dims.push(k);
        left -= k;
    }
    let build = |rng: &mut ChaCha8Rng| {
        let members = dims
            .iter()
            .map(|&k| (subspace(rng, n, k), rng.random_range(0.5..2.0)))
            .collect();
        WeightedFamily::new(n, members).unwrap()
    };
    let v = build(rng);
    let w = build(rng);
    (v, w)
}

pub fn to_dmatrix(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

/// Ascending eigenvalues from nalgebra's symmetric eigensolver.
pub fn oracle_eigenvalues(m: &Matrix) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(to_dmatrix(m)).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Largest singular value from nalgebra's SVD.
pub fn oracle_operator_norm(m: &Matrix) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0.0;
    }
    to_dmatrix(m).singular_values().iter().copied().fold(0.0, f64::max)
}

pub fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    let d: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    let s: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt();
    d / s.max(f64::MIN_POSITIVE)
}
