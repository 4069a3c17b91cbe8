//! Base sets: the subsets of ℕ from which partition summands are drawn.
//!
//! Naturals and odds are answered arithmetically and have no upper bound.
//! Primes and custom sets are materialized once up to an explicit bound;
//! membership queries beyond that bound fail instead of growing the table.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseKind {
    Naturals,
    Primes,
    Odds,
    Custom,
}

impl BaseKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BaseKind::Naturals => "nat",
            BaseKind::Primes => "primes",
            BaseKind::Odds => "odds",
            BaseKind::Custom => "custom",
        }
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Membership {
    Arithmetic,
    Table {
        flags: Vec<bool>,
        elements: Vec<u64>,
    },
}

/// An immutable subset of ℕ = {1, 2, 3, ...}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseSet {
    kind: BaseKind,
    label: String,
    bound: u64,
    membership: Membership,
}

impl BaseSet {
    /// All of ℕ.
    pub fn naturals() -> Self {
        BaseSet {
            kind: BaseKind::Naturals,
            label: BaseKind::Naturals.as_str().to_string(),
            bound: u64::MAX,
            membership: Membership::Arithmetic,
        }
    }

    pub fn odds() -> Self {
        BaseSet {
            kind: BaseKind::Odds,
            label: BaseKind::Odds.as_str().to_string(),
            bound: u64::MAX,
            membership: Membership::Arithmetic,
        }
    }

    /// Primes up to `bound`, by the sieve of Eratosthenes.
    pub fn primes(bound: u64) -> Result<Self> {
        if bound < 2 {
            return Err(Error::InvalidBound { bound, min: 2 });
        }
        let len = usize::try_from(bound)
            .ok()
            .and_then(|b| b.checked_add(1))
            .ok_or(Error::InvalidBound { bound, min: 2 })?;
        let mut flags = vec![true; len];
        flags[0] = false;
        flags[1] = false;
        let mut p = 2usize;
        while p * p < len {
            if flags[p] {
                for multiple in (p * p..len).step_by(p) {
                    flags[multiple] = false;
                }
            }
            p += 1;
        }
        let elements = flags
            .iter()
            .enumerate()
            .filter_map(|(i, &is_prime)| is_prime.then_some(i as u64))
            .collect();
        Ok(BaseSet {
            kind: BaseKind::Primes,
            label: BaseKind::Primes.as_str().to_string(),
            bound,
            membership: Membership::Table { flags, elements },
        })
    }

    /// A custom set from arbitrary naturals. Duplicates are dropped; the bound
    /// is the largest element.
    pub fn custom<I>(label: impl Into<String>, values: I) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
    {
        let mut elements: Vec<u64> = values.into_iter().collect();
        if elements.contains(&0) {
            return Err(Error::InvalidQuery("0 is not a natural number".into()));
        }
        elements.sort_unstable();
        elements.dedup();
        let bound = *elements.last().ok_or(Error::EmptySet)?;
        let len = usize::try_from(bound)
            .ok()
            .and_then(|b| b.checked_add(1))
            .ok_or(Error::InvalidBound { bound, min: 1 })?;
        let mut flags = vec![false; len];
        for &e in &elements {
            flags[e as usize] = true;
        }
        Ok(BaseSet {
            kind: BaseKind::Custom,
            label: label.into(),
            bound,
            membership: Membership::Table { flags, elements },
        })
    }

    pub fn kind(&self) -> BaseKind {
        self.kind
    }

    /// Name used in exports, e.g. `primes` or `custom`.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Largest value membership is defined for (`u64::MAX` for arithmetic kinds).
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn is_materialized(&self) -> bool {
        matches!(self.membership, Membership::Table { .. })
    }

    pub fn is_naturals(&self) -> bool {
        self.kind == BaseKind::Naturals
    }

    /// Fails if `value` exceeds the materialized bound.
    pub fn ensure_covers(&self, value: u64) -> Result<()> {
        if value > self.bound {
            Err(Error::OutOfRange {
                base: self.label.clone(),
                value,
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }

    pub fn contains(&self, x: u64) -> Result<bool> {
        self.ensure_covers(x)?;
        Ok(self.contains_unchecked(x))
    }

    /// Membership without the bound check; values beyond the bound read as absent.
    pub(crate) fn contains_unchecked(&self, x: u64) -> bool {
        if x == 0 {
            return false;
        }
        match (&self.membership, self.kind) {
            (Membership::Arithmetic, BaseKind::Odds) => x % 2 == 1,
            (Membership::Arithmetic, _) => true,
            (Membership::Table { flags, .. }, _) => flags.get(x as usize).copied().unwrap_or(false),
        }
    }

    /// Members in `[1, limit]`, ascending.
    pub fn members_up_to(&self, limit: u64) -> Vec<u64> {
        match &self.membership {
            Membership::Table { elements, .. } => {
                let end = elements.partition_point(|&e| e <= limit);
                elements[..end].to_vec()
            }
            Membership::Arithmetic => match self.kind {
                BaseKind::Odds => (1..=limit).step_by(2).collect(),
                _ => (1..=limit).collect(),
            },
        }
    }

    /// Every member of a materialized set; `None` for the unbounded kinds.
    pub fn elements(&self) -> Option<&[u64]> {
        match &self.membership {
            Membership::Table { elements, .. } => Some(elements),
            Membership::Arithmetic => None,
        }
    }

    /// Whether every member of `self` up to `limit` also lies in `other`.
    pub fn is_subset_up_to(&self, other: &BaseSet, limit: u64) -> bool {
        self.members_up_to(limit)
            .into_iter()
            .all(|x| other.contains_unchecked(x))
    }

    /// Newline form, ascending, one natural per line.
    pub fn serialize(&self) -> String {
        let limit = if self.is_materialized() {
            self.bound
        } else {
            0
        };
        let mut out = String::new();
        for e in self.members_up_to(limit) {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }
}

/// Parses a custom base set: one natural per line (`#` comments allowed) or
/// a single JSON array.
pub fn parse_custom(text: &str) -> Result<BaseSet> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let first_line = text.len() - trimmed.len();
        let line = text[..first_line].matches('\n').count() + 1;
        return parse_json_array(trimmed, line);
    }
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: u64 = line.parse().map_err(|_| Error::Parse {
            line: idx + 1,
            message: format!("`{line}` is not a natural number"),
        })?;
        if value == 0 {
            return Err(Error::Parse {
                line: idx + 1,
                message: "0 is not a natural number".into(),
            });
        }
        values.push(value);
    }
    BaseSet::custom(BaseKind::Custom.as_str(), values)
}

fn parse_json_array(text: &str, line: usize) -> Result<BaseSet> {
    let raw: Vec<serde_json::Value> = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: line + e.line().saturating_sub(1),
        message: e.to_string(),
    })?;
    let mut values = Vec::with_capacity(raw.len());
    for (idx, v) in raw.iter().enumerate() {
        match v.as_u64() {
            Some(0) | None => {
                return Err(Error::Parse {
                    line,
                    message: format!("array entry {} (`{v}`) is not a natural number", idx + 1),
                })
            }
            Some(x) => values.push(x),
        }
    }
    BaseSet::custom(BaseKind::Custom.as_str(), values)
}

pub fn load_custom(path: impl AsRef<Path>) -> Result<BaseSet> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_custom(&text)
}

/// Optional restriction on admissible generators. Absent means all of ℕ.
#[derive(Debug, Clone, Default)]
pub struct GeneratorFilter {
    pub allowed: Option<BaseSet>,
}

impl GeneratorFilter {
    pub fn any() -> Self {
        GeneratorFilter { allowed: None }
    }

    pub fn only(set: BaseSet) -> Self {
        GeneratorFilter { allowed: Some(set) }
    }

    pub fn admits(&self, n: u64) -> Result<bool> {
        match &self.allowed {
            None => Ok(n >= 1),
            Some(set) => set.contains(n),
        }
    }
}
