//! Name-keyed registry of base-set sources.
//!
//! A spec string is `name` or `name:argument`, e.g. `primes` or
//! `custom:sets/evens.txt`. The registry resolves the name to a source and
//! hands it the argument and the configured sieve bound.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::baseset::{load_custom, BaseSet};
use crate::error::{Error, Result};

/// Something that can produce a [`BaseSet`] on request.
pub trait BaseSetSource: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// `bound` is the sieve bound from configuration; `arg` is the text after
    /// the first `:` in the spec string, if any.
    fn build(&self, bound: u64, arg: Option<&str>) -> Result<BaseSet>;
}

struct Naturals;

impl BaseSetSource for Naturals {
    fn name(&self) -> &'static str {
        "nat"
    }
    fn description(&self) -> &'static str {
        "all natural numbers"
    }
    fn build(&self, _bound: u64, _arg: Option<&str>) -> Result<BaseSet> {
        Ok(BaseSet::naturals())
    }
}

struct Primes;

impl BaseSetSource for Primes {
    fn name(&self) -> &'static str {
        "primes"
    }
    fn description(&self) -> &'static str {
        "primes up to the sieve bound"
    }
    fn build(&self, bound: u64, _arg: Option<&str>) -> Result<BaseSet> {
        BaseSet::primes(bound)
    }
}

struct Odds;

impl BaseSetSource for Odds {
    fn name(&self) -> &'static str {
        "odds"
    }
    fn description(&self) -> &'static str {
        "odd natural numbers"
    }
    fn build(&self, _bound: u64, _arg: Option<&str>) -> Result<BaseSet> {
        Ok(BaseSet::odds())
    }
}

struct CustomFile;

impl BaseSetSource for CustomFile {
    fn name(&self) -> &'static str {
        "custom"
    }
    fn description(&self) -> &'static str {
        "naturals read from a file (custom:PATH)"
    }
    fn build(&self, _bound: u64, arg: Option<&str>) -> Result<BaseSet> {
        let path = arg.ok_or_else(|| {
            Error::InvalidQuery("custom base set needs a path: custom:PATH".into())
        })?;
        load_custom(path)
    }
}

#[derive(Clone)]
pub struct BaseSetRegistry {
    sources: BTreeMap<String, Arc<dyn BaseSetSource>>,
}

impl BaseSetRegistry {
    pub fn empty() -> Self {
        BaseSetRegistry {
            sources: BTreeMap::new(),
        }
    }

    /// Registry with `nat`, `primes`, `odds` and `custom`, plus the aliases
    /// `naturals` and `prime`.
    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        let nat: Arc<dyn BaseSetSource> = Arc::new(Naturals);
        let primes: Arc<dyn BaseSetSource> = Arc::new(Primes);
        reg.register_as("naturals", nat.clone());
        reg.register_as("prime", primes.clone());
        reg.register(nat);
        reg.register(primes);
        reg.register(Arc::new(Odds));
        reg.register(Arc::new(CustomFile));
        reg
    }

    pub fn register(&mut self, source: Arc<dyn BaseSetSource>) {
        self.sources.insert(source.name().to_string(), source);
    }

    pub fn register_as(&mut self, name: &str, source: Arc<dyn BaseSetSource>) {
        self.sources.insert(name.to_string(), source);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn BaseSetSource>> {
        self.sources.get(name).cloned()
    }

    /// Registered names in sorted order, aliases included.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.sources.keys().map(String::as_str)
    }

    pub fn resolve(&self, spec: &str, bound: u64) -> Result<BaseSet> {
        let (name, arg) = match spec.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (spec, None),
        };
        let source = self
            .get(name)
            .ok_or_else(|| Error::UnknownBase(spec.to_string()))?;
        source.build(bound, arg)
    }
}

impl Default for BaseSetRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}
