//! Pattern enumeration as a deterministic parallel map-reduce.
//!
//! Every pattern is evaluated independently; partial results are merged with an
//! associative, commutative rule whose ties break on the smallest bitmask, so the
//! outcome does not depend on how work is split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::FRAME_TOL;
use crate::weaving::pattern::{full_mask, MAX_INDICES};

pub const DEFAULT_PATTERN_CAP: usize = 20;
/// Per-pattern tables are emitted automatically below this many indices.
pub const PER_PATTERN_AUTO_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub count: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeavingOptions {
    /// Relative frame tolerance: a bound counts as positive above `rel_tol * max(1, upper)`.
    pub rel_tol: f64,
    pub pattern_cap: usize,
    /// Used only when the index set exceeds `pattern_cap`.
    pub sampling: Option<Sampling>,
    /// `None` emits the table only below [`PER_PATTERN_AUTO_LIMIT`] indices.
    pub per_pattern: Option<bool>,
    /// Worker count; `None` uses the global rayon pool. Never affects results.
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl Default for WeavingOptions {
    fn default() -> Self {
        Self {
            rel_tol: FRAME_TOL,
            pattern_cap: DEFAULT_PATTERN_CAP,
            sampling: None,
            per_pattern: None,
            threads: None,
        }
    }
}

impl WeavingOptions {
    pub(crate) fn wants_table(&self, size: usize) -> bool {
        self.per_pattern.unwrap_or(size < PER_PATTERN_AUTO_LIMIT)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    Exhaustive,
    Sampled,
}

/// The masks a sweep visits.
///
/// Bits in `fixed` mark indices where both families coincide exactly; those bits are
/// pinned to V so each distinct weaving is visited once.
pub(crate) fn pattern_masks(size: usize, fixed: u64, options: &WeavingOptions) -> Result<(SweepMode, Vec<u64>)> {
    if size > MAX_INDICES {
        return Err(Error::IndexSetTooLarge(size));
    }
    let all = full_mask(size);
    if size <= options.pattern_cap && size < 64 {
        let free = all & !fixed;
        // enumerate submasks of `free` in increasing order
        let mut masks = Vec::with_capacity(1usize << free.count_ones());
        let mut sub = 0u64;
        loop {
            masks.push(sub | fixed);
            if sub == free {
                break;
            }
            sub = (sub | !free).wrapping_add(1) & free;
        }
        return Ok((SweepMode::Exhaustive, masks));
    }
    let Some(sampling) = options.sampling else {
        return Err(Error::PatternCapExceeded {
            size,
            cap: options.pattern_cap,
        });
    };
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let masks = (0..sampling.count)
        .map(|_| (rng.random::<u64>() & all) | fixed)
        .collect();
    Ok((SweepMode::Sampled, masks))
}

/// Runs `f` on the configured pool.
pub(crate) fn on_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

/// Extremal values over patterns with smallest-mask tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Extremes {
    pub lower: f64,
    pub lower_mask: u64,
    pub upper: f64,
    pub upper_mask: u64,
    pub count: usize,
}

impl Extremes {
    pub const EMPTY: Self = Self {
        lower: f64::INFINITY,
        lower_mask: u64::MAX,
        upper: f64::NEG_INFINITY,
        upper_mask: u64::MAX,
        count: 0,
    };

    pub fn single(mask: u64, lower: f64, upper: f64) -> Self {
        Self {
            lower,
            lower_mask: mask,
            upper,
            upper_mask: mask,
            count: 1,
        }
    }

    pub fn merge(self, other: Self) -> Self {
        use std::cmp::Ordering::*;
        let (lower, lower_mask) = match self.lower.total_cmp(&other.lower) {
            Less => (self.lower, self.lower_mask),
            Greater => (other.lower, other.lower_mask),
            Equal => (self.lower, self.lower_mask.min(other.lower_mask)),
        };
        let (upper, upper_mask) = match self.upper.total_cmp(&other.upper) {
            Greater => (self.upper, self.upper_mask),
            Less => (other.upper, other.upper_mask),
            Equal => (self.upper, self.upper_mask.min(other.upper_mask)),
        };
        Self {
            lower,
            lower_mask,
            upper,
            upper_mask,
            count: self.count + other.count,
        }
    }
}

/// Evaluates every mask in parallel and folds the results with `merge`.
///
/// When `keep` is set, the per-mask values are also returned in mask order.
pub(crate) fn map_reduce<T, A>(
    masks: &[u64],
    threads: Option<usize>,
    keep: bool,
    eval: impl Fn(u64) -> Result<T> + Sync,
    lift: impl Fn(u64, &T) -> A + Sync,
    identity: A,
    merge: impl Fn(A, A) -> A + Sync,
) -> Result<(A, Option<Vec<T>>)>
where
    T: Send,
    A: Send + Copy + Sync,
{
    on_pool(threads, || {
        if keep {
            let items: Vec<T> = masks.par_iter().map(|&m| eval(m)).collect::<Result<_>>()?;
            let acc = masks
                .iter()
                .zip(&items)
                .fold(identity, |acc, (&m, t)| merge(acc, lift(m, t)));
            Ok((acc, Some(items)))
        } else {
            let acc = masks
                .par_iter()
                .map(|&m| eval(m).map(|t| lift(m, &t)))
                .try_reduce(|| identity, |a, b| Ok(merge(a, b)))?;
            Ok((acc, None))
        }
    })
}
