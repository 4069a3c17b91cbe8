//! Classical circles of partition C(n, M).

use serde::{Deserialize, Serialize};

use crate::baseset::BaseSet;
use crate::error::{Error, Result};

/// The circle of partition generated by `n` over a base set: every weight
/// `x` with both `x` and `n - x` in the base set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoP {
    n: u64,
    base: String,
    weights: Vec<u64>,
}

/// An unordered pair `{low, high}` with `low + high = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Axis {
    pub low: u64,
    pub high: u64,
}

impl Axis {
    /// Canonical orientation regardless of argument order.
    pub fn new(a: u64, b: u64) -> Self {
        Axis {
            low: a.min(b),
            high: a.max(b),
        }
    }

    pub fn generator(&self) -> u64 {
        self.low + self.high
    }

    /// The center axis `{n/2, n/2}`.
    pub fn is_degenerate(&self) -> bool {
        self.low == self.high
    }
}

/// Real axes plus the center, kept apart so the center is not counted in ν.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxisSet {
    pub real: Vec<Axis>,
    pub degenerate: Option<Axis>,
}

impl AxisSet {
    /// Real axes followed by the center, if any.
    pub fn all(&self) -> impl Iterator<Item = Axis> + '_ {
        self.real.iter().copied().chain(self.degenerate)
    }
}

impl CoP {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.weights.binary_search(&x).is_ok()
    }

    /// Whether `n/2` is a point.
    pub fn has_center(&self) -> bool {
        self.n.is_multiple_of(2) && self.contains(self.n / 2)
    }
}

pub fn cop_build(n: u64, base: &BaseSet) -> Result<CoP> {
    if n < 2 {
        return Err(Error::InvalidGenerator(n));
    }
    base.ensure_covers(n)?;
    let weights = (1..n)
        .filter(|&x| base.contains_unchecked(x) && base.contains_unchecked(n - x))
        .collect();
    Ok(CoP {
        n,
        base: base.label().to_string(),
        weights,
    })
}

pub fn axes(cop: &CoP) -> AxisSet {
    let n = cop.n;
    let real = cop
        .weights
        .iter()
        .take_while(|&&x| 2 * x < n)
        .map(|&x| Axis {
            low: x,
            high: n - x,
        })
        .collect();
    let degenerate = cop.has_center().then_some(Axis {
        low: n / 2,
        high: n / 2,
    });
    AxisSet { real, degenerate }
}

/// ν(n, M) = ⌊k/2⌋ for a CoP with k points.
pub fn nu(cop: &CoP) -> usize {
    cop.weights.len() / 2
}

pub fn axis_partner(cop: &CoP, x: u64) -> Result<u64> {
    if cop.contains(x) {
        Ok(cop.n - x)
    } else {
        Err(Error::NotAPoint { n: cop.n, x })
    }
}

/// Least generator `n ≥ 2` with a non-empty CoP, searched up to the base
/// set's materialized bound. `None` when no such generator exists there.
pub fn least_generator(base: &BaseSet) -> Option<u64> {
    let limit = base.bound();
    (2..=limit).find(|&n| {
        (1..=n / 2).any(|x| base.contains_unchecked(x) && base.contains_unchecked(n - x))
    })
}
