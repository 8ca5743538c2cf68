use std::path::{Path, PathBuf};

use coboson_gpe::{ground_state_with, observables, GpeProblem, GpeState, GroundStateOptions, Observables, Propagator};
use serde_json::json;

use crate::args::{GpeArgs, GpeSub, GroundArgs};
use crate::error::{CliError, Result};
use crate::output::{resolve_out, Cell, Run, Table};
use crate::Context;

fn load(path: Option<&Path>) -> Result<(PathBuf, GpeProblem)> {
    let path = path.ok_or_else(|| CliError::Config("gpe needs --problem problem.json".into()))?;
    if !path.is_file() {
        return Err(CliError::io(path, std::io::Error::new(std::io::ErrorKind::NotFound, "problem file not found")));
    }
    let problem = GpeProblem::from_path(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    Ok((path.to_path_buf(), problem))
}

fn field_table(problem: &GpeProblem, state: &GpeState) -> Table {
    let mut header = vec!["x".to_string()];
    for m in &problem.modes {
        header.push(format!("re_{}", m.label));
        header.push(format!("im_{}", m.label));
    }
    let mut table = Table::new(header);
    for j in 0..problem.grid.points {
        let mut row: Vec<Cell> = vec![problem.grid.x(j).into()];
        for psi in &state.psi {
            row.push(psi[j].re.into());
            row.push(psi[j].im.into());
        }
        table.push(row);
    }
    table
}

fn observables_header(problem: &GpeProblem) -> Vec<String> {
    let mut h: Vec<String> = ["t", "total_norm", "energy", "center", "width"].map(String::from).to_vec();
    for m in &problem.modes {
        h.push(format!("population_{}", m.label));
    }
    if problem.modes.len() >= 2 {
        h.push("relative_phase".into());
    }
    h
}

fn observables_row(o: &Observables, two_modes: bool) -> Vec<Cell> {
    let mut row: Vec<Cell> = vec![o.t.into(), o.total_norm.into(), o.total_energy().into(), o.center.into(), o.width.into()];
    row.extend(o.populations.iter().map(|&p| Cell::from(p)));
    if two_modes {
        row.push(o.relative_phase.unwrap_or(f64::NAN).into());
    }
    row
}

pub fn gpe(ctx: &Context, args: GpeArgs) -> Result<()> {
    let (path, problem) = load(args.problem.as_deref())?;
    let out = resolve_out(args.out.as_deref(), "gpe_out");
    std::fs::create_dir_all(&out).map_err(|e| CliError::io(&out, e))?;
    let mut run = ctx.run(if args.sub.is_some() { "gpe ground" } else { "gpe" })?;
    run.hash_input(&path)?;
    run.detail("grid", problem.grid);
    run.detail(
        "modes",
        problem
            .modes
            .iter()
            .map(|m| json!({ "label": m.label, "mass": m.mass, "energy_offset": m.energy_offset }))
            .collect::<Vec<_>>(),
    );
    run.detail(
        "parameters",
        json!({ "include_p4": problem.include_p4, "bare_mass": problem.bare_mass, "c": problem.c, "reference_energy": problem.reference_energy }),
    );
    match &args.sub {
        Some(GpeSub::Ground(g)) => ground(&problem, g, &out, &mut run)?,
        None => evolve(&problem, &args, &out, &mut run)?,
    }
    run.finish(&out)?;
    Ok(())
}

fn evolve(problem: &GpeProblem, args: &GpeArgs, out: &Path, run: &mut Run) -> Result<()> {
    let tmax = args.tmax.ok_or_else(|| CliError::Config("gpe needs --tmax".into()))?;
    let dt = args.dt.ok_or_else(|| CliError::Config("gpe needs --dt".into()))?;
    if !(dt > 0.0 && tmax > 0.0 && dt.is_finite() && tmax.is_finite()) {
        return Err(CliError::Config(format!("--tmax and --dt must be positive (got {tmax}, {dt})")));
    }
    let steps = (tmax / dt).round().max(1.0) as u64;
    let mut state = GpeState::initial(problem)?;
    let mut prop = Propagator::new(problem);
    let two = problem.modes.len() >= 2;
    let mut obs = Table::new(observables_header(problem));
    let first = observables(&state, problem);
    obs.push(observables_row(&first, two));
    run.write_table(&out.join(format!("snap_{:06}.csv", 0)), &field_table(problem, &state))?;
    let mut last = first.clone();
    for s in 1..=steps {
        prop.step(&mut state, dt)?;
        let snap = (args.snap_every > 0 && s % args.snap_every == 0) || s == steps;
        if snap {
            last = observables(&state, problem);
            obs.push(observables_row(&last, two));
            run.write_table(&out.join(format!("snap_{s:06}.csv")), &field_table(problem, &state))?;
        }
    }
    run.write_table(&out.join("observables.csv"), &obs)?;
    let e0 = first.total_energy();
    run.detail("run", json!({ "dt": dt, "steps": steps, "tmax": steps as f64 * dt, "snap_every": args.snap_every }));
    run.detail(
        "diagnostics",
        json!({
            "norm_initial": first.total_norm,
            "norm_final": last.total_norm,
            "norm_drift": last.total_norm - first.total_norm,
            "energy_initial": e0,
            "energy_final": last.total_energy(),
            "energy_drift_relative": (last.total_energy() - e0) / e0.abs().max(f64::MIN_POSITIVE),
            "cfl_limit": 2.0 * std::f64::consts::PI / problem.max_kinetic(),
        }),
    );
    Ok(())
}

fn ground(problem: &GpeProblem, args: &GroundArgs, out: &Path, run: &mut Run) -> Result<()> {
    let n = problem.mode_count();
    let weights: Vec<f64> = match &args.weights {
        Some(text) => text
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| CliError::Config(format!("--weights: '{s}' is not a number"))))
            .collect::<Result<_>>()?,
        None => (0..n).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect(),
    };
    let mut options = GroundStateOptions::default();
    if let Some(m) = args.max_iterations {
        options.max_iterations = m;
    }
    let gs = ground_state_with(problem, &weights, args.tol, &options, None)?;
    run.write_table(&out.join("ground.csv"), &field_table(problem, &gs.state))?;
    let o = observables(&gs.state, problem);
    let mut obs = Table::new(observables_header(problem));
    obs.push(observables_row(&o, n >= 2));
    run.write_table(&out.join("observables.csv"), &obs)?;
    run.detail(
        "ground_state",
        json!({
            "tol": args.tol,
            "weights": weights,
            "energy": gs.energy,
            "chemical_potential": gs.chemical_potential,
            "iterations": gs.iterations,
            "dtau_schedule": options.dtau_schedule,
        }),
    );
    Ok(())
}
