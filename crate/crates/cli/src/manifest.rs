//! Provenance header embedded at the top of every data file.

use std::fmt::Write as _;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything needed to regenerate an output file.
#[derive(Clone, Debug, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    /// Resolved inputs, rendered as re-readable `key=value` lines.
    pub params: Vec<(String, String)>,
    /// Informational lines (not read back).
    pub notes: Vec<String>,
    pub output: String,
}

impl RunManifest {
    pub fn new(command: &str, output: &str) -> Self {
        Self {
            command: command.to_string(),
            version: VERSION.to_string(),
            params: Vec::new(),
            notes: Vec::new(),
            output: output.to_string(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn note(&mut self, line: impl Into<String>) -> &mut Self {
        self.notes.push(line.into());
        self
    }

    /// `#`-prefixed header block. Feeding it back through `--config`
    /// reproduces the run.
    pub fn header(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# dotent {}", self.command).unwrap();
        writeln!(out, "# command={}", self.command).unwrap();
        writeln!(out, "# version={}", self.version).unwrap();
        for (k, v) in &self.params {
            writeln!(out, "# {k}={v}").unwrap();
        }
        writeln!(out, "# out={}", self.output).unwrap();
        for n in &self.notes {
            writeln!(out, "#   {n}").unwrap();
        }
        out
    }
}
