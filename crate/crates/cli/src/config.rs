//! `key=value` run configuration files. Command-line flags always win.

use std::fs;
use std::path::Path;

use crate::CliError;

pub const KEYS: [&str; 16] = [
    "wordnet",
    "seed",
    "seeds",
    "out",
    "json",
    "format",
    "data",
    "gold",
    "definitions",
    "world",
    "solver",
    "normalization",
    "ladder",
    "z",
    "wilson",
    "verdicts",
];

/// Entries in file order. `data`, `gold` and `definitions` may repeat.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigFile {
    entries: Vec<(String, String)>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Input(format!("{}:{e}", path.display())))
    }

    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("{}: expected key=value, got {line:?}", i + 1));
            };
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(format!("{}: unknown key {key:?}", i + 1));
            }
            entries.push((key.to_string(), value.trim().to_string()));
        }
        Ok(ConfigFile { entries })
    }

    /// Last value given for `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn get_all(&self, key: &str) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .collect()
    }

    pub fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.parse()
                    .map_err(|e| CliError::Input(format!("config key {key}: {e}")))
            })
            .transpose()
    }

    pub fn flag(&self, key: &str) -> Result<bool, CliError> {
        match self.get(key) {
            None => Ok(false),
            Some("true" | "1" | "yes") => Ok(true),
            Some("false" | "0" | "no") => Ok(false),
            Some(other) => Err(CliError::Input(format!(
                "config key {key}: expected true or false, got {other:?}"
            ))),
        }
    }
}
