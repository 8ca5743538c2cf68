//! Data for the level/dispersion diagram, the angular pair potential of
//! neutral and charged composites, and the state-dependent wave packets.

use std::collections::BTreeMap;

use coboson_core::clock::{reduce_to_clock, GaussianPacket};
use coboson_core::scattering::dd_angular;
use coboson_core::spectrum::{level_table, state_mass};
use coboson_core::QuantumNumbers;
use serde_json::json;

use super::emit_table;
use crate::args::{Figure, FiguresArgs};
use crate::error::{CliError, Result};
use crate::output::{resolve_out, Table};
use crate::Context;

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| a + (b - a) * i as f64 / (n - 1) as f64)
}

pub fn figures(ctx: &Context, args: FiguresArgs) -> Result<()> {
    let scale = args.c_scale.unwrap_or(1.0);
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(CliError::Config(format!("--c-scale must be positive, got {scale}")));
    }
    let dir = resolve_out(args.out.as_deref(), "figures");
    match args.figure {
        Figure::Fig4 => fig4(ctx, &args, scale, &dir),
        Figure::Fig5a => fig5(ctx, args.z.unwrap_or(2.0), "fig5a", &dir),
        Figure::Fig5b => fig5(ctx, args.z.unwrap_or(1.0), "fig5b", &dir),
        Figure::Fig6 => fig6(ctx, &args, scale, &dir),
    }
}

/// E(P) − Mc² per principal level, and the (j, S, ℓ) sublevels.
fn fig4(ctx: &Context, args: &FiguresArgs, scale: f64, dir: &std::path::Path) -> Result<()> {
    let species = ctx.species(args.species.as_deref())?;
    let (w, wilson_id) = ctx.wilson(None, &species)?;
    let h = species.params.with_speed_of_light(species.params.c() * scale)?;
    let nmax = 3;
    let m = h.total_mass();
    let c2 = h.c() * h.c();
    let masses: Vec<f64> = (1..=nmax)
        .map(|n| state_mass(&h, &QuantumNumbers::new(n, 0, 0, 0, 0)))
        .collect::<coboson_core::Result<_>>()?;
    let mut disp = Table::new(["P", "E_n1", "E_n2", "E_n3"]);
    for p in linspace(0.0, 40.0, 81) {
        let mut row = vec![p.into()];
        for (n, m_n) in (1..=nmax).zip(&masses) {
            // rest offset (M_n − M)c² = E0_n, kept out of the large Mc²
            let e0 = coboson_core::spectrum::energy0(&h, n)?;
            row.push((e0 + p * p / (2.0 * m_n) - p.powi(4) / (8.0 * m * m * m * c2)).into());
        }
        disp.push(row);
    }
    let mut levels = Table::new(["n", "ell", "S", "j", "E0", "E1", "E_total"]);
    let mut seen = BTreeMap::new();
    for l in level_table(&h, &w, nmax)? {
        let b = l.beta;
        seen.entry((b.n, b.ell, b.s, b.j)).or_insert((l.e0, l.e1));
    }
    for ((n, ell, s, j), (e0, e1)) in seen {
        levels.push(vec![n.into(), ell.into(), s.into(), j.into(), e0.into(), e1.into(), (e0 + e1).into()]);
    }
    let details = [("species", json!(species.name)), ("c_scale", json!(scale))];
    emit_table(ctx, "figures fig4", &dir.join("fig4_dispersion.csv"), &disp, Some(&wilson_id), &details)?;
    emit_table(ctx, "figures fig4", &dir.join("fig4_levels.csv"), &levels, Some(&wilson_id), &details)
}

fn fig5(ctx: &Context, z: f64, name: &str, dir: &std::path::Path) -> Result<()> {
    if !(z >= 1.0) {
        return Err(CliError::Config(format!("--Z must be at least 1, got {z}")));
    }
    let mut table = Table::new(["DeltaR", "theta", "V"]);
    for dr in linspace(2.0, 20.0, 37) {
        for th in linspace(0.0, std::f64::consts::PI, 37) {
            table.push(vec![dr.into(), th.into(), dd_angular(z, 1.0, dr, th)?.into()]);
        }
    }
    let details = [("Z", json!(z)), ("a", json!(1.0))];
    emit_table(ctx, &format!("figures {name}"), &dir.join(format!("{name}.csv")), &table, None, &details)
}

/// 1S and 2S packets with equal initial momentum at three times.
fn fig6(ctx: &Context, args: &FiguresArgs, scale: f64, dir: &std::path::Path) -> Result<()> {
    let species = ctx.species(args.species.as_deref())?;
    let h = species.params.with_speed_of_light(species.params.c() * scale)?;
    let p = reduce_to_clock(&h, &QuantumNumbers::new(1, 0, 0, 0, 0), &QuantumNumbers::new(2, 0, 0, 0, 0))?;
    let g = GaussianPacket { mass: p.m_g, x0: 0.0, sigma0: 5.0, p0: 1.0, t: 0.0 };
    let e = GaussianPacket { mass: p.m_e, ..g };
    let mut table = Table::new(["t", "x", "rho_g", "rho_e"]);
    for t in [0.0, 5e4, 1e5] {
        let (g, e) = (g.at(t), e.at(t));
        for x in linspace(-30.0, 90.0, 241) {
            table.push(vec![t.into(), x.into(), g.density(x).into(), e.density(x).into()]);
        }
    }
    let details = [("species", json!(species.name)), ("c_scale", json!(scale)), ("clock", json!(p))];
    emit_table(ctx, "figures fig6", &dir.join("fig6.csv"), &table, None, &details)
}
