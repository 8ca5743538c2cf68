use std::io::Write;

use coboson_core::constants::{constants_table, CONSTANTS_VERSION};
use coboson_core::spectrum::{energy1, level_table};
use coboson_core::wavefunctions::{c6_sum_over_states, energy1_oracle};
use coboson_core::{QuantumNumbers, SpeciesParams};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::emit_table;
use crate::args::{ConstantsArgs, Format, OracleArgs, SpectrumArgs};
use crate::config::parse_beta;
use crate::error::{CliError, Result};
use crate::output::{resolve_out, Cell, Table};
use crate::Context;

#[derive(Serialize)]
struct Preset {
    name: &'static str,
    species: SpeciesParams,
}

pub fn constants(ctx: &Context, args: ConstantsArgs) -> Result<()> {
    let table = constants_table();
    let text = if args.dump {
        let presets: Vec<Preset> = [
            ("hydrogen", SpeciesParams::hydrogen()),
            ("helium-ion", SpeciesParams::helium_ion()),
            ("positronium", SpeciesParams::positronium()),
        ]
        .into_iter()
        .map(|(name, species)| Preset { name, species })
        .collect();
        let mut s = serde_json::to_string_pretty(&json!({ "table": table, "species_presets": presets }))
            .map_err(|e| CliError::Config(e.to_string()))?;
        s.push('\n');
        s
    } else {
        let c = &table.constants;
        let mut s = format!("constants version {} ({} units)\n", table.version, table.unit_system);
        for (k, v) in serde_json::to_value(c).map_err(|e| CliError::Config(e.to_string()))?.as_object().into_iter().flatten() {
            s.push_str(&format!("  {k:<34} {v}\n"));
        }
        s
    };
    match args.out {
        Some(out) => {
            let path = resolve_out(Some(&out), "constants.json");
            let mut run = ctx.run("constants")?;
            run.write(&path, text.as_bytes())?;
            run.finish(&path)?;
        }
        None => {
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io("stdout", e))?;
        }
    }
    Ok(())
}

pub fn spectrum(ctx: &Context, args: SpectrumArgs) -> Result<()> {
    let species = ctx.species(args.species.as_deref())?;
    let (w, wilson_id) = ctx.wilson(args.wilson.as_deref(), &species)?;
    let nmax = args
        .nmax
        .or(ctx.config.as_ref().and_then(|c| c.spectrum.as_ref()).and_then(|s| s.nmax))
        .unwrap_or(2);
    let levels = level_table(&species.params, &w, nmax)?;
    let details = [
        ("species", json!({ "name": species.name, "params": species.params })),
        ("wilson", json!(w)),
        ("nmax", json!(nmax)),
    ];
    match args.format {
        Format::Csv => {
            let mut table = Table::new(["n", "ell", "S", "j", "m_j", "E0_hartree", "E1_hartree", "M_alpha_rel_shift"]);
            for l in &levels {
                let b = l.beta;
                table.push(vec![
                    b.n.into(),
                    b.ell.into(),
                    b.s.into(),
                    b.j.into(),
                    b.m_j.into(),
                    l.e0.into(),
                    l.e1.into(),
                    l.m_alpha_rel_shift.into(),
                ]);
            }
            let path = resolve_out(args.out.as_deref(), "levels.csv");
            emit_table(ctx, "spectrum", &path, &table, Some(&wilson_id), &details)
        }
        Format::Json => {
            let path = resolve_out(args.out.as_deref(), "levels.json");
            let doc = json!({
                "constants_version": CONSTANTS_VERSION,
                "coefficient_set": wilson_id,
                "species": { "name": species.name, "params": species.params },
                "wilson": w,
                "levels": levels,
            });
            let mut run = ctx.run("spectrum")?;
            run.coefficient_set(wilson_id);
            run.write_json(&path, &doc)?;
            run.finish(&path)?;
            Ok(())
        }
    }
}

pub fn oracle(ctx: &Context, args: OracleArgs) -> Result<()> {
    let species = ctx.species(args.species.as_deref())?;
    let (w, wilson_id) = ctx.wilson(args.wilson.as_deref(), &species)?;
    let h = species.params;
    if let Some(text) = &args.beta {
        let beta = parse_beta(text)?;
        let breakdown = energy1_oracle(&h, &w, &beta)?;
        let closed = energy1(&h, &w, &beta)?;
        let doc = json!({
            "species": species.name,
            "coefficient_set": wilson_id,
            "beta": beta,
            "closed_form": closed,
            "relative_difference": (closed - breakdown.total) / breakdown.total.abs(),
            "terms": breakdown,
        });
        let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Config(e.to_string()))?;
        text.push('\n');
        match &args.out {
            Some(out) => {
                let path = resolve_out(Some(out), "oracle.json");
                let mut run = ctx.run("oracle")?;
                run.coefficient_set(wilson_id);
                run.write(&path, text.as_bytes())?;
                run.finish(&path)?;
            }
            None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io("stdout", e))?,
        }
        return Ok(());
    }
    if args.report {
        return Err(CliError::Config("--report needs --beta n,l,S,j,mj".into()));
    }
    if let Some(n_basis) = args.c6_basis {
        if n_basis < 2 {
            return Err(CliError::Config("--c6-basis must be at least 2".into()));
        }
        let reports = (2..=n_basis)
            .into_par_iter()
            .map(|n| c6_sum_over_states(&h, n))
            .collect::<coboson_core::Result<Vec<_>>>()?;
        let mut table = Table::new(["n_basis", "C6", "coupled_states", "fraction_of_literature"]);
        for r in &reports {
            table.push(vec![r.n_basis.into(), r.value.into(), r.coupled_states.into(), r.fraction_of_literature.into()]);
        }
        let path = resolve_out(args.out.as_deref(), "c6.csv");
        return emit_table(ctx, "oracle", &path, &table, Some(&wilson_id), &[("species", json!(species.name))]);
    }
    let nmax = args.nmax.unwrap_or(2);
    if nmax < 1 {
        return Err(CliError::Config("--nmax must be at least 1".into()));
    }
    let states: Vec<QuantumNumbers> = (1..=nmax).flat_map(QuantumNumbers::enumerate).collect();
    let rows = states
        .par_iter()
        .map(|b| -> Result<Vec<Cell>> {
            let o = energy1_oracle(&h, &w, b)?;
            let c = energy1(&h, &w, b)?;
            Ok(vec![
                b.n.into(),
                b.ell.into(),
                b.s.into(),
                b.j.into(),
                b.m_j.into(),
                c.into(),
                o.total.into(),
                ((c - o.total) / o.total.abs()).into(),
                o.hermiticity_gap.into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new([
        "n",
        "ell",
        "S",
        "j",
        "m_j",
        "E1_closed",
        "E1_oracle",
        "relative_difference",
        "hermiticity_gap",
    ]);
    for r in rows {
        table.push(r);
    }
    let path = resolve_out(args.out.as_deref(), "oracle.csv");
    emit_table(ctx, "oracle", &path, &table, Some(&wilson_id), &[("species", json!(species.name)), ("nmax", json!(nmax))])
}
