//! Deterministic data files and their sidecar manifests.
//!
//! Data files never contain timestamps; those live in the manifest so that
//! repeated runs produce byte-identical CSV.

use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};
use coboson_core::constants::CONSTANTS_VERSION;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Default output directory for relative `--out` paths.
pub const OUT_DIR_ENV: &str = "COBOSON_OUT_DIR";

/// 17 significant digits, lowercase exponent.
/// Negative zero is written as zero.
pub fn fmt_f64(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => fmt_f64(*v),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<i32> for Cell {
    fn from(v: i32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::Config(format!("csv encoding: {e}"));
        w.write_record(&self.header).map_err(fail)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(fail)?;
        }
        w.into_inner().map_err(|e| CliError::Config(format!("csv encoding: {e}")))
    }
}

/// Resolves `--out`: relative paths go under `$COBOSON_OUT_DIR` when set.
pub fn resolve_out(out: Option<&Path>, default_name: &str) -> PathBuf {
    let base = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match (out, base) {
        (Some(p), _) if p.is_absolute() => p.to_path_buf(),
        (Some(p), Some(b)) => b.join(p),
        (Some(p), None) => p.to_path_buf(),
        (None, Some(b)) => b.join(default_name),
        (None, None) => PathBuf::from(default_name),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputFile {
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    /// SHA-256 of the configuration inputs (files and normalized flags).
    pub config_hash: String,
    pub constants_version: &'static str,
    pub coefficient_set: Option<String>,
    pub library_version: &'static str,
    pub started: String,
    pub finished: String,
    pub outputs: Vec<OutputFile>,
    /// Command-specific metadata (grids, diagnostics).
    pub details: serde_json::Value,
}

/// Collects what a command wrote and emits the manifest.
pub struct Run {
    command: String,
    arguments: Vec<String>,
    hasher: Sha256,
    coefficient_set: Option<String>,
    started: DateTime<Utc>,
    outputs: Vec<OutputFile>,
    details: serde_json::Map<String, serde_json::Value>,
}

impl Run {
    pub fn new(command: &str, arguments: &[String]) -> Self {
        let mut hasher = Sha256::new();
        for a in arguments {
            hasher.update(a.as_bytes());
            hasher.update([0u8]);
        }
        Self {
            command: command.to_string(),
            arguments: arguments.to_vec(),
            hasher,
            coefficient_set: None,
            started: Utc::now(),
            outputs: Vec::new(),
            details: serde_json::Map::new(),
        }
    }

    /// Folds an input file into the configuration hash.
    pub fn hash_input(&mut self, path: &Path) -> Result<()> {
        let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
        self.hasher.update(&bytes);
        Ok(())
    }

    pub fn coefficient_set(&mut self, name: impl Into<String>) {
        self.coefficient_set = Some(name.into());
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.details.insert(key.to_string(), v);
    }

    pub fn write(&mut self, path: &Path, bytes: &[u8]) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
        std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))?;
        self.outputs.push(OutputFile {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
            bytes: bytes.len(),
        });
        Ok(())
    }

    pub fn write_table(&mut self, path: &Path, table: &Table) -> Result<()> {
        self.write(path, &table.to_bytes()?)
    }

    pub fn write_json(&mut self, path: &Path, value: &impl Serialize) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Config(e.to_string()))?;
        text.push('\n');
        self.write(path, text.as_bytes())
    }

    /// Writes the manifest next to `anchor`: `<anchor>.manifest.json` for a
    /// file, `<anchor>/manifest.json` for a directory.
    pub fn finish(self, anchor: &Path) -> Result<PathBuf> {
        let path = if anchor.is_dir() {
            anchor.join("manifest.json")
        } else {
            let mut name = anchor.file_name().unwrap_or_default().to_os_string();
            name.push(".manifest.json");
            anchor.with_file_name(name)
        };
        let manifest = RunManifest {
            command: self.command,
            arguments: self.arguments,
            config_hash: hex::encode(self.hasher.finalize()),
            constants_version: CONSTANTS_VERSION,
            coefficient_set: self.coefficient_set,
            library_version: env!("CARGO_PKG_VERSION"),
            started: self.started.to_rfc3339_opts(SecondsFormat::Millis, true),
            finished: Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true),
            outputs: self.outputs,
            details: serde_json::Value::Object(self.details),
        };
        let mut text = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Config(e.to_string()))?;
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_round_trips() {
        for v in [0.1, -1.0 / 3.0, 6.02214076e23, 1e-300, 0.0] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
            assert!(!s.contains('E'));
        }
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_f64(-0.0), fmt_f64(0.0));
    }

    #[test]
    fn table_has_header_and_unix_newlines() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec![Cell::Int(1), Cell::Real(2.0)]);
        let text = String::from_utf8(t.to_bytes().unwrap()).unwrap();
        assert_eq!(text, "a,b\n1,2.0000000000000000e0\n");
    }
}
