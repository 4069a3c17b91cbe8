//! `key = value` configuration with environment and flag overrides.

use std::path::Path;

use crate::Failure;

pub const DEFAULT_SIEVE_BOUND: u64 = 10_000;
pub const SIEVE_BOUND_ENV: &str = "COPKIT_SIEVE_BOUND";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            "text" => Some(Format::Text),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub sieve_bound: u64,
    pub default_base: String,
    pub output_format: Option<Format>,
    pub seed: u64,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            sieve_bound: DEFAULT_SIEVE_BOUND,
            default_base: "nat".into(),
            output_format: None,
            seed: 0,
        }
    }
}

fn unquote(v: &str) -> &str {
    v.strip_prefix('"')
        .and_then(|v| v.strip_suffix('"'))
        .unwrap_or(v)
}

fn natural(key: &str, value: &str, line: usize) -> Result<u64, Failure> {
    value.parse().map_err(|_| {
        Failure::usage(
            "config",
            format!("line {line}: `{key}` must be a natural number, got `{value}`"),
        )
    })
}

impl CliConfig {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let mut cfg = CliConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| {
                Failure::usage("config", format!("line {line}: expected `key = value`"))
            })?;
            let (key, value) = (key.trim(), unquote(value.trim()));
            match key {
                "sieve_bound" => cfg.sieve_bound = natural(key, value, line)?,
                "seed" => cfg.seed = natural(key, value, line)?,
                "default_base" => cfg.default_base = value.to_string(),
                "output_format" => {
                    cfg.output_format = Some(Format::parse(value).ok_or_else(|| {
                        Failure::usage(
                            "config",
                            format!("line {line}: unknown output_format `{value}`"),
                        )
                    })?)
                }
                other => {
                    return Err(Failure::usage(
                        "config",
                        format!("line {line}: unknown key `{other}`"),
                    ))
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Failure::usage("config", format!("cannot read {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    /// Applies `COPKIT_SIEVE_BOUND` (given as `env`), then the flag.
    pub fn with_overrides(mut self, env: Option<&str>, flag: Option<u64>) -> Result<Self, Failure> {
        if let Some(v) = env {
            self.sieve_bound = natural(SIEVE_BOUND_ENV, v.trim(), 0)?;
        }
        if let Some(v) = flag {
            self.sieve_bound = v;
        }
        Ok(self)
    }
}
