//! Flat `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. A [`Resolver`] merges
//! a file with command-line flags (flags win) and records every resolved value
//! so the run can be echoed and replayed.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KeyValues {
    entries: BTreeMap<String, String>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) =
                line.split_once('=').ok_or_else(|| Error::Parse(format!("line {}: expected key = value", i + 1)))?;
            let k = k.trim();
            if k.is_empty() {
                return Err(Error::Parse(format!("line {}: empty key", i + 1)));
            }
            if entries.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Parse(format!("line {}: duplicate key {k}", i + 1)));
            }
        }
        Ok(KeyValues { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn insert(&mut self, key: &str, value: impl Display) {
        self.entries.insert(key.to_string(), value.to_string());
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// One `key = value` line per entry, sorted by key.
    pub fn render(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

/// Merges flags over a file over defaults, keeping the resolved values.
#[derive(Debug, Default)]
pub struct Resolver {
    file: KeyValues,
    resolved: KeyValues,
}

impl Resolver {
    pub fn new(file: KeyValues) -> Self {
        Resolver { file, resolved: KeyValues::default() }
    }

    /// `flag`, else the file entry, else `default`.
    pub fn value<T>(&mut self, key: &str, flag: Option<T>, default: T) -> Result<T>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        let v = match (flag, self.file.get(key)) {
            (Some(v), _) => v,
            (None, Some(s)) => s.parse().map_err(|e| Error::Parse(format!("{key} = {s}: {e}")))?,
            (None, None) => default,
        };
        self.resolved.insert(key, &v);
        Ok(v)
    }

    /// Like [`Resolver::value`] with no default.
    pub fn required<T>(&mut self, key: &str, flag: Option<T>) -> Result<T>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        let v = match (flag, self.file.get(key)) {
            (Some(v), _) => v,
            (None, Some(s)) => s.parse().map_err(|e| Error::Parse(format!("{key} = {s}: {e}")))?,
            (None, None) => return Err(Error::Parse(format!("missing required setting {key}"))),
        };
        self.resolved.insert(key, &v);
        Ok(v)
    }

    /// Records a value that is not read from flags or file.
    pub fn record(&mut self, key: &str, value: impl Display) {
        self.resolved.insert(key, value);
    }

    /// File keys that no lookup consumed.
    pub fn unused_keys(&self) -> Vec<String> {
        self.file.keys().filter(|k| self.resolved.get(k).is_none()).map(str::to_string).collect()
    }

    pub fn resolved(&self) -> &KeyValues {
        &self.resolved
    }
}
