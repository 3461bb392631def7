//! `key=value` run configuration.
//!
//! Config files hold one `key=value` pair per line; keys are the long flag
//! names without dashes prefix (`delta-ratio=0.5`). A leading `#` is
//! stripped first, so a manifest header copied from an output file is itself
//! a valid config. Lines whose key is not a bare lowercase identifier are
//! comments.

use std::collections::BTreeMap;

use crate::error::CliError;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

fn is_key(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-')
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for line in text.lines() {
            let line = line.trim();
            let line = line.strip_prefix('#').map(str::trim_start).unwrap_or(line);
            let Some((key, value)) = line.split_once('=') else {
                continue;
            };
            let key = key.trim();
            if !is_key(key) {
                continue;
            }
            if entries
                .insert(key.to_string(), value.trim().to_string())
                .is_some()
            {
                return Err(CliError::Usage(format!("config key `{key}` given twice")));
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Parsed value of `key`, if present.
    pub fn value<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.get(key)
            .map(|raw| {
                raw.parse::<T>().map_err(|_| {
                    CliError::Usage(format!("config: invalid value `{raw}` for `{key}`"))
                })
            })
            .transpose()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Rejects keys outside `allowed` and a mismatching `command` entry.
    pub fn check(&self, command: &str, allowed: &[&str]) -> Result<(), CliError> {
        if let Some(found) = self.get("command") {
            if found != command {
                return Err(CliError::Usage(format!(
                    "config was written for `{found}`, not `{command}`"
                )));
            }
        }
        for key in self.keys() {
            if key != "command" && key != "version" && !allowed.contains(&key) {
                return Err(CliError::Usage(format!(
                    "config: unknown key `{key}` for `{command}`"
                )));
            }
        }
        Ok(())
    }
}

/// Flag value, else config value, else `default`.
pub fn pick<T: std::str::FromStr>(
    flag: Option<T>,
    config: &ConfigFile,
    key: &str,
    default: T,
) -> Result<T, CliError> {
    match flag {
        Some(v) => Ok(v),
        None => Ok(config.value(key)?.unwrap_or(default)),
    }
}
