//! Built-in family pairs on coordinate subspaces.

use crate::error::{Error, Result};
use crate::frames::{Subspace, WeightedFamily};

/// `{(span{e_i}, 1)}` for `i = 0..n`: an orthonormal fusion basis of ℝⁿ.
pub fn coordinate_spans(n: usize) -> WeightedFamily {
    let subs = (0..n)
        .map(|i| Subspace::coordinate(n, &[i]).expect("coordinate index in range"))
        .collect();
    WeightedFamily::unit(n, subs).expect("unit weights are positive")
}

/// Cyclic analog in ℝⁿ of a woven pair: `V_i = span{e_i}`, `W_i = span{e_i, e_{(i+1) mod n}}`,
/// unit weights. Every weaving is a fusion frame with bounds between 1 and 2.
pub fn example1(n: usize) -> Result<(WeightedFamily, WeightedFamily)> {
    if n < 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: n });
    }
    let w = (0..n)
        .map(|i| Subspace::coordinate(n, &[i, (i + 1) % n]))
        .collect::<Result<Vec<_>>>()?;
    Ok((coordinate_spans(n), WeightedFamily::unit(n, w)?))
}

/// A non-woven pair in ℝⁿ: `V_i = span{e_i}`; `W` swaps the first two coordinates
/// (`W_0 = span{e_1}`, `W_1 = span{e_0}`) and agrees with `V` elsewhere. Drawing `W`
/// on index 1 alone misses `e_1`.
pub fn example2(n: usize) -> Result<(WeightedFamily, WeightedFamily)> {
    if n < 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: n });
    }
    let w = (0..n)
        .map(|i| {
            let c = match i {
                0 => 1,
                1 => 0,
                k => k,
            };
            Subspace::coordinate(n, &[c])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((coordinate_spans(n), WeightedFamily::unit(n, w)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let (v, w) = example1(5).unwrap();
        assert_eq!((v.len(), w.len()), (5, 5));
        assert_eq!(w.subspace(4).dim(), 2);
        let (v, w) = example2(3).unwrap();
        assert!(!v.coincides_at(&w, 0));
        assert!(!v.coincides_at(&w, 1));
        assert!(v.coincides_at(&w, 2));
        assert!(example1(1).is_err());
    }
}
