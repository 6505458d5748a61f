use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_INDICES: usize = 64;

/// A subset σ of `{0..size}`: bit `i` set means index `i` is drawn from the first
/// family (V), clear means from the second (W). Empty and full masks are both legal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeavingPattern {
    size: usize,
    mask: u64,
}

pub(crate) fn full_mask(size: usize) -> u64 {
    if size >= 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

impl WeavingPattern {
    pub fn new(size: usize, mask: u64) -> Result<Self> {
        if size > MAX_INDICES {
            return Err(Error::IndexSetTooLarge(size));
        }
        if mask & !full_mask(size) != 0 {
            return Err(Error::DimensionMismatch {
                expected: size,
                got: 64 - mask.leading_zeros() as usize,
            });
        }
        Ok(Self { size, mask })
    }

    pub fn full(size: usize) -> Result<Self> {
        Self::new(size, full_mask(size))
    }

    pub fn empty(size: usize) -> Result<Self> {
        Self::new(size, 0)
    }

    /// Pattern drawing from V exactly on `indices` (0-based).
    pub fn from_v_indices(size: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &i in indices {
            if i >= size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    got: i + 1,
                });
            }
            mask |= 1 << i;
        }
        Self::new(size, mask)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn draws_from_v(&self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    pub fn v_indices(&self) -> Vec<usize> {
        (0..self.size).filter(|&i| self.draws_from_v(i)).collect()
    }

    pub fn w_indices(&self) -> Vec<usize> {
        (0..self.size).filter(|&i| !self.draws_from_v(i)).collect()
    }

    /// σᶜ: swaps the roles of the two families.
    pub fn complement(&self) -> Self {
        Self {
            size: self.size,
            mask: !self.mask & full_mask(self.size),
        }
    }
}

/// Bit string with index 0 first, e.g. `"101"` for V on {0, 2}.
impl fmt::Display for WeavingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            f.write_str(if self.draws_from_v(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for WeavingPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let size = s.len();
        if size > MAX_INDICES {
            return Err(Error::IndexSetTooLarge(size));
        }
        let mut mask = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => mask |= 1 << i,
                '0' => {}
                _ => return Err(Error::DimensionMismatch { expected: size, got: i }),
            }
        }
        Self::new(size, mask)
    }
}

impl Serialize for WeavingPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for WeavingPattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
