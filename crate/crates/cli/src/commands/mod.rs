mod clock;
mod figures;
mod gpe;
mod scatter;
mod spectrum;

use std::path::Path;

use coboson_core::WilsonCoefficients;

use crate::config::{species_arg, wilson_arg, Species, SpeciesConfig, WilsonConfig};
use crate::error::Result;
use crate::output::{Run, Table};
use crate::Context;

pub use clock::clock;
pub use figures::figures;
pub use gpe::gpe;
pub use scatter::scatter;
pub use spectrum::{constants, oracle, spectrum};

impl Context {
    /// Flag, then configuration file, then hydrogen.
    pub fn species(&self, flag: Option<&str>) -> Result<Species> {
        let cfg = match flag {
            Some(text) => species_arg(text)?,
            None => match &self.config {
                Some(c) => c.species.clone(),
                None => SpeciesConfig::preset("hydrogen"),
            },
        };
        cfg.resolve()
    }

    /// Flag, then configuration file, then the tree-level preset.
    pub fn wilson(&self, flag: Option<&str>, species: &Species) -> Result<(WilsonCoefficients, String)> {
        let cfg = match flag {
            Some(text) => wilson_arg(text)?,
            None => self
                .config
                .as_ref()
                .and_then(|c| c.wilson.clone())
                .unwrap_or_else(|| WilsonConfig::preset("tree")),
        };
        Ok((cfg.resolve(species)?, cfg.identity()))
    }

    /// Paths named inside the configuration file are relative to that file.
    pub fn config_relative(&self, path: &Path) -> std::path::PathBuf {
        match self.config_path.as_deref().and_then(Path::parent) {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.to_path_buf(),
        }
    }

    /// A manifest collector that already hashes the configuration file.
    pub fn run(&self, command: &str) -> Result<Run> {
        let mut run = Run::new(command, &self.argv);
        if let Some(p) = &self.config_path {
            run.hash_input(p)?;
        }
        Ok(run)
    }
}

/// Writes one CSV and its sidecar manifest.
pub(crate) fn emit_table(
    ctx: &Context,
    command: &str,
    path: &Path,
    table: &Table,
    coefficient_set: Option<&str>,
    details: &[(&str, serde_json::Value)],
) -> Result<()> {
    let mut run = ctx.run(command)?;
    if let Some(c) = coefficient_set {
        run.coefficient_set(c);
    }
    for (k, v) in details {
        run.detail(k, v);
    }
    run.write_table(path, table)?;
    run.finish(path)?;
    Ok(())
}
