use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, Result};

/// Where a command writes its files.
#[derive(Debug, Clone)]
pub struct RunContext {
    pub out_dir: PathBuf,
    /// Overrides the seed stored in the config.
    pub seed: Option<u64>,
    pub svg: bool,
}

impl RunContext {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        Self { out_dir: out_dir.into(), seed: None, svg: true }
    }

    pub fn seed_or(&self, config_seed: u64) -> u64 {
        self.seed.unwrap_or(config_seed)
    }

    fn prepare(&self) -> Result<()> {
        std::fs::create_dir_all(&self.out_dir).map_err(|source| CliError::Io { path: self.out_dir.clone(), source })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }

    /// Writes `bytes` to `name` inside the output directory and returns the name.
    pub fn write(&self, name: &str, bytes: &[u8]) -> Result<String> {
        self.prepare()?;
        let path = self.path(name);
        std::fs::write(&path, bytes).map_err(|source| CliError::Io { path, source })?;
        Ok(name.to_owned())
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<String> {
        let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
        text.push('\n');
        self.write(name, text.as_bytes())
    }

    /// Renders a CSV through `fill` into memory, then writes it.
    pub fn write_csv<F>(&self, name: &str, fill: F) -> Result<String>
    where
        F: FnOnce(&mut Vec<u8>) -> qens_core::Result<()>,
    {
        let mut buf = Vec::new();
        fill(&mut buf)?;
        self.write(name, &buf)
    }

    pub fn write_svg(&self, name: &str, svg: impl FnOnce() -> String) -> Result<Option<String>> {
        if !self.svg {
            return Ok(None);
        }
        self.write(name, svg().as_bytes()).map(Some)
    }
}

/// Pass/fail line of an internal consistency check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_owned(), passed, detail: detail.into() }
    }
}

/// What a command did, for the console summary and the exit code.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub command: String,
    pub checks: Vec<Check>,
    pub files: Vec<String>,
}

impl Outcome {
    pub fn new(command: &str) -> Self {
        Self { command: command.to_owned(), ..Self::default() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn file(&mut self, name: String) {
        self.files.push(name);
    }

    pub fn maybe_file(&mut self, name: Option<String>) {
        self.files.extend(name);
    }
}

pub fn fmt_num(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn relative_to(path: &Path, base: &Path) -> String {
    path.strip_prefix(base).unwrap_or(path).display().to_string()
}
