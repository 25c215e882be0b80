//! INI-style experiment configuration.
//!
//! Sections hold whitespace-separated `key=value` pairs, either on the section line itself
//! (`[extract] N=12 m=3 seed=7`) or on the lines below it. Every key must appear in
//! [`DEFAULT_CONFIG`]; values given in a file override the defaults.

use std::collections::BTreeMap;
use std::str::FromStr;

use thiserror::Error;

/// Built-in values, including every seed.
pub const DEFAULT_CONFIG: &str = "\
[tau] circuits=100 max_inputs=4 max_outputs=6 max_gates=12 seed=1
[universality] N=6 m=3
[extract] N=12 m=3 support=2048 trials=1000000 seed=7
[demibreak] n=4 N=18 m=5 gate_budget=60 keys=2000 y_samples=200 seed=3
[degree] generators=50 seed=5
[reduction] cases=50 max_inputs=6 seed=6
[transform] cases=30 seed=8
[lautemann] m=10 t=300 trials=200 seed=9
[ilango] n=3 N=8 t=8 gate_budget=24 tuples=10000 seed=10
[gs] universe=10 large=512 small=128 threshold=512 reps=31 runs=300 hash_len=auto seed=11
[duality] cases=50 seed=12
[encoder] m=16 s=2 d=2
";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unknown section [{0}]")]
    UnknownSection(String),
    #[error("unknown key {key} in section [{section}]")]
    UnknownKey { section: String, key: String },
    #[error("[{section}] {key}={value} is not a valid value")]
    BadValue {
        section: String,
        key: String,
        value: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

fn parse_sections(text: &str) -> Result<BTreeMap<String, BTreeMap<String, String>>, ConfigError> {
    let mut out: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split(['#', ';']).next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut rest = line;
        if let Some(after) = line.strip_prefix('[') {
            let (name, tail) = after.split_once(']').ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                msg: "unterminated section header".into(),
            })?;
            let name = name.trim().to_string();
            out.entry(name.clone()).or_default();
            current = Some(name);
            rest = tail;
        }
        for tok in rest.split_whitespace() {
            let section = current.as_ref().ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                msg: "key outside any section".into(),
            })?;
            let (k, v) = tok.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                msg: format!("expected key=value, found {tok:?}"),
            })?;
            out.entry(section.clone())
                .or_default()
                .insert(k.to_string(), v.to_string());
        }
    }
    Ok(out)
}

impl Default for Config {
    fn default() -> Self {
        Config {
            sections: parse_sections(DEFAULT_CONFIG).expect("built-in config parses"),
        }
    }
}

impl Config {
    /// Defaults overridden by `text`; unknown sections or keys are rejected.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Config::default();
        for (section, kvs) in parse_sections(text)? {
            let known = cfg
                .sections
                .get_mut(&section)
                .ok_or_else(|| ConfigError::UnknownSection(section.clone()))?;
            for (k, v) in kvs {
                let slot = known.get_mut(&k).ok_or_else(|| ConfigError::UnknownKey {
                    section: section.clone(),
                    key: k.clone(),
                })?;
                *slot = v;
            }
        }
        Ok(cfg)
    }

    pub fn raw(&self, section: &str, key: &str) -> &str {
        self.sections
            .get(section)
            .and_then(|s| s.get(key))
            .unwrap_or_else(|| panic!("no built-in key [{section}] {key}"))
    }

    pub fn get<T: FromStr>(&self, section: &str, key: &str) -> Result<T, ConfigError> {
        let v = self.raw(section, key);
        v.parse().map_err(|_| ConfigError::BadValue {
            section: section.into(),
            key: key.into(),
            value: v.into(),
        })
    }

    /// `None` for the value `auto`.
    pub fn get_opt<T: FromStr>(&self, section: &str, key: &str) -> Result<Option<T>, ConfigError> {
        if self.raw(section, key) == "auto" {
            Ok(None)
        } else {
            self.get(section, key).map(Some)
        }
    }

    pub fn set(
        &mut self,
        section: &str,
        key: &str,
        value: impl ToString,
    ) -> Result<(), ConfigError> {
        let slot = self
            .sections
            .get_mut(section)
            .and_then(|s| s.get_mut(key))
            .ok_or_else(|| ConfigError::UnknownKey {
                section: section.into(),
                key: key.into(),
            })?;
        *slot = value.to_string();
        Ok(())
    }

    /// All `key=value` pairs of a section in key order.
    pub fn section(&self, section: &str) -> Vec<(String, String)> {
        self.sections
            .get(section)
            .map(|s| s.iter().map(|(k, v)| (k.clone(), v.clone())).collect())
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_and_rejections() {
        let c = Config::parse("[extract] N=18 m=5 seed=7\n[gs]\nreps=9 # odd\n").unwrap();
        assert_eq!(c.get::<usize>("extract", "N").unwrap(), 18);
        assert_eq!(c.get::<usize>("gs", "reps").unwrap(), 9);
        assert_eq!(c.get::<u64>("tau", "seed").unwrap(), 1);
        assert_eq!(c.get_opt::<usize>("gs", "hash_len").unwrap(), None);
        assert_eq!(
            Config::parse("[nope]\n"),
            Err(ConfigError::UnknownSection("nope".into()))
        );
        assert!(matches!(
            Config::parse("[tau] bogus=1"),
            Err(ConfigError::UnknownKey { .. })
        ));
        assert!(matches!(
            Config::parse("seed=1"),
            Err(ConfigError::Syntax { line: 1, .. })
        ));
    }
}
