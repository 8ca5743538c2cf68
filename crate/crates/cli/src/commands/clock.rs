use coboson_core::clock::{doppler_relative_shift, doppler_shift, packet_evolve, reduce_to_clock, ClockParams, GaussianPacket};
use coboson_core::constants::parse_quantity;
use coboson_core::Unit;
use serde_json::json;

use super::emit_table;
use crate::args::{ClockArgs, ClockSub, PacketArgs};
use crate::config::{parse_beta, ClockSection, Sweep};
use crate::error::{CliError, Result};
use crate::output::{resolve_out, Table};
use crate::Context;

fn is_strontium(name: &str) -> bool {
    matches!(name.to_ascii_lowercase().as_str(), "sr88" | "strontium88" | "sr")
}

/// Clock parameters and a label for the manifest.
fn params(ctx: &Context, args: &ClockArgs, section: &ClockSection) -> Result<(ClockParams, serde_json::Value)> {
    let scale = args.c_scale.unwrap_or(1.0);
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(CliError::Config(format!("--c-scale must be positive, got {scale}")));
    }
    if args.species.as_deref().is_some_and(is_strontium) {
        if args.g.is_some() || args.e.is_some() {
            return Err(CliError::Config("--g/--e do not apply to the sr88 preset".into()));
        }
        let sr = ClockParams::strontium88();
        let p = ClockParams::from_energies(sr.mass, sr.e_g0, sr.e_e0, sr.c * scale)?;
        return Ok((p, json!({ "preset": "sr88", "c_scale": scale })));
    }
    let species = ctx.species(args.species.as_deref())?;
    let h = species.params.with_speed_of_light(species.params.c() * scale)?;
    let g = parse_beta(args.g.as_deref().or(section.g.as_deref()).unwrap_or("1,0,0,0,0"))?;
    let e = parse_beta(args.e.as_deref().or(section.e.as_deref()).unwrap_or("2,0,0,0,0"))?;
    let p = reduce_to_clock(&h, &g, &e)?;
    Ok((p, json!({ "species": species.name, "g": g, "e": e, "c_scale": scale })))
}

pub fn clock(ctx: &Context, args: ClockArgs) -> Result<()> {
    let section = ctx.config.as_ref().and_then(|c| c.clock.clone()).unwrap_or_default();
    let (p, label) = params(ctx, &args, &section)?;
    let details = [("clock", json!(p)), ("source", label)];
    match &args.sub {
        Some(ClockSub::Packet(pa)) => packet(ctx, &args, pa, &section, &p, &details),
        None => {
            let sweep = args.vsweep.as_deref().or(section.vsweep.as_deref()).unwrap_or("0:0.03:31 c");
            let vs = Sweep::parse(sweep, Unit::AtomicVelocity)?.values;
            // the "c" suffix means the physical speed of light; scale it
            // along with the model's c so fractions of c stay fractions of c
            let vs: Vec<f64> = if sweep.trim_end().ends_with(" c") {
                vs.iter().map(|v| v * p.c / coboson_core::constants::SPEED_OF_LIGHT_AU).collect()
            } else {
                vs
            };
            let mut table = Table::new([
                "v",
                "Omega_shifted",
                "relative_shift",
                "P",
                "transition_energy",
                "relative_shift_dispersion",
            ]);
            for v in vs {
                let shifted = doppler_shift(p.omega, v, p.c)?;
                let rel = doppler_relative_shift(v, p.c)?;
                let mom = p.m_bar * v;
                let de = p.transition_energy(mom);
                table.push(vec![
                    v.into(),
                    shifted.into(),
                    rel.into(),
                    mom.into(),
                    de.into(),
                    (-(mom * mom) / (2.0 * p.c * p.c * p.m_e * p.m_g)).into(),
                ]);
            }
            let path = resolve_out(args.out.as_deref(), "clock.csv");
            emit_table(ctx, "clock", &path, &table, None, &details)
        }
    }
}

fn packet(
    ctx: &Context,
    args: &ClockArgs,
    pa: &PacketArgs,
    section: &ClockSection,
    p: &ClockParams,
    details: &[(&str, serde_json::Value)],
) -> Result<()> {
    let q = |flag: &Option<String>, cfg: Option<f64>, unit: Unit, default: f64| -> Result<f64> {
        match flag {
            Some(t) => Ok(parse_quantity(t, unit)?),
            None => Ok(cfg.unwrap_or(default)),
        }
    };
    let sigma0 = q(&pa.sigma0, section.sigma0, Unit::Bohr, 5.0)?;
    let p0 = q(&pa.p0, section.p0, Unit::AtomicMomentum, 1.0)?;
    let x0 = q(&pa.x0, None, Unit::Bohr, 0.0)?;
    let ts = Sweep::parse(
        pa.t_sweep.as_deref().or(section.t_sweep.as_deref()).unwrap_or("0:1e5:11"),
        Unit::AtomicTime,
    )?
    .values;
    let g = GaussianPacket { mass: p.m_g, x0, sigma0, p0, t: 0.0 };
    let e = GaussianPacket { mass: p.m_e, ..g };
    let mut table = Table::new(["t", "center_g", "width_g", "center_e", "width_e"]);
    for t in ts {
        let (cg, wg) = packet_evolve(&g.at(t))?;
        let (ce, we) = packet_evolve(&e.at(t))?;
        table.push(vec![t.into(), cg.into(), wg.into(), ce.into(), we.into()]);
    }
    let path = resolve_out(args.out.as_deref(), "packet.csv");
    let mut details = details.to_vec();
    details.push(("packet", json!({ "sigma0": sigma0, "p0": p0, "x0": x0 })));
    emit_table(ctx, "clock packet", &path, &table, None, &details)
}
