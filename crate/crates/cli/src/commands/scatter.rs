use std::path::PathBuf;

use coboson_core::scattering::{coulomb_sum, multipole_for_configs, potential_components, CobosonConfig};
use coboson_core::Unit;
use nalgebra::Vector3;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;

use crate::args::ScatterArgs;
use crate::config::{parse_file, Sweep};
use crate::error::{CliError, Result};
use crate::output::{resolve_out, Cell, Table};
use crate::Context;

/// Geometry file: two composites, vectors in atomic units.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Geometry {
    pub cfg1: CobosonConfig,
    pub cfg2: CobosonConfig,
}

/// (ΔR, θ) pairs; missing keys keep the geometry's own value.
fn sweep_points(text: Option<&str>, geometry: &Geometry) -> Result<Vec<(f64, f64)>> {
    let d = Vector3::from(geometry.cfg1.r_cm) - Vector3::from(geometry.cfg2.r_cm);
    let mut delta_r = vec![d.norm()];
    let mut theta = vec![if d.norm() > 0.0 { (d.z / d.norm()).clamp(-1.0, 1.0).acos() } else { 0.0 }];
    if let Some(text) = text {
        for part in text.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("sweep '{part}': expected key=start:stop:count")))?;
            match key.trim() {
                "DeltaR" => delta_r = Sweep::parse(value, Unit::Bohr)?.values,
                "theta" => theta = Sweep::parse_plain(value)?.values,
                other => {
                    return Err(CliError::Config(format!("sweep key '{other}': expected DeltaR or theta")))
                }
            }
        }
    }
    Ok(delta_r.iter().flat_map(|&r| theta.iter().map(move |&t| (r, t))).collect())
}

pub fn scatter(ctx: &Context, args: ScatterArgs) -> Result<()> {
    let species = ctx.species(args.species.as_deref())?;
    let (w, wilson_id) = ctx.wilson(args.wilson.as_deref(), &species)?;
    let section = ctx.config.as_ref().and_then(|c| c.scatter.clone()).unwrap_or_default();
    let geometry_path: PathBuf = args
        .geometry
        .clone()
        .or_else(|| section.geometry.as_deref().map(|g| ctx.config_relative(g)))
        .ok_or_else(|| CliError::Config("scatter needs --geometry file.json".into()))?;
    let geometry: Geometry = parse_file(&geometry_path)?;
    let points = sweep_points(args.sweep.as_deref().or(section.sweep.as_deref()), &geometry)?;
    let h = species.params;
    let rows = points
        .par_iter()
        .map(|&(dr, th)| -> Result<Vec<Cell>> {
            let mut c1 = geometry.cfg1;
            let base = Vector3::from(geometry.cfg2.r_cm);
            let pos = base + dr * Vector3::new(th.sin(), 0.0, th.cos());
            c1.r_cm = [pos.x, pos.y, pos.z];
            let comp = potential_components(&h, &w, &c1, &geometry.cfg2)?;
            let multipole = multipole_for_configs(&h, &c1, &geometry.cfg2)?.total();
            let exact = coulomb_sum(&h, &c1, &geometry.cfg2)?;
            Ok(vec![
                dr.into(),
                th.into(),
                comp.c.into(),
                comp.ll.into(),
                comp.ls.into(),
                comp.ss.into(),
                comp.total().into(),
                multipole.into(),
                exact.into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new([
        "DeltaR",
        "theta",
        "V_C",
        "V_LL",
        "V_LS",
        "V_SS",
        "V_sum",
        "V_multipole",
        "V_coulomb_exact",
    ]);
    for r in rows {
        table.push(r);
    }
    let path = resolve_out(args.out.as_deref(), "scatter.csv");
    let mut run = ctx.run("scatter")?;
    run.hash_input(&geometry_path)?;
    run.coefficient_set(wilson_id);
    run.detail("species", json!({ "name": species.name, "params": h }));
    run.detail("geometry", json!({ "path": geometry_path.display().to_string(), "cfg1": geometry.cfg1, "cfg2": geometry.cfg2 }));
    run.write_table(&path, &table)?;
    run.finish(&path)?;
    Ok(())
}
