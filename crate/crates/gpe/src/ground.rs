use serde::Serialize;

use crate::error::{GpeError, Result};
use crate::grid::Grid;
use crate::observables::energy;
use crate::problem::GpeProblem;
use crate::state::GpeState;
use crate::stepper::Propagator;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundStateOptions {
    /// Imaginary time steps, used in order; each stage runs to convergence.
    pub dtau_schedule: Vec<f64>,
    pub max_iterations: usize,
}

impl Default for GroundStateOptions {
    fn default() -> Self {
        Self {
            dtau_schedule: vec![0.05, 0.01, 0.002],
            max_iterations: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundState {
    pub state: GpeState,
    pub energy: f64,
    pub chemical_potential: f64,
    pub iterations: usize,
    /// Energy after each iteration of the last stage.
    pub history: Vec<f64>,
}

/// Renormalization used between imaginary-time steps: each mode keeps its
/// own weight unless couplings can move population between modes, in which
/// case only the total is fixed.
fn renormalize(state: &mut GpeState, grid: &Grid, weights: &[f64], per_mode: bool) {
    let dx = grid.dx();
    if per_mode {
        for (m, &w) in weights.iter().enumerate() {
            let n = state.mode_norm(m, dx);
            if n > 0.0 {
                let s = (w / n).sqrt();
                state.psi[m].iter_mut().for_each(|v| *v *= s);
            }
        }
    } else {
        let total: f64 = weights.iter().sum();
        let n = state.total_norm(dx);
        if n > 0.0 {
            let s = (total / n).sqrt();
            state.psi.iter_mut().flatten().for_each(|v| *v *= s);
        }
    }
}

fn default_guess(problem: &GpeProblem, weights: &[f64]) -> GpeState {
    let mut state = GpeState::zeros(problem);
    let grid = problem.grid;
    let sigma = grid.length / 10.0;
    for (m, psi) in state.psi.iter_mut().enumerate() {
        if weights[m] == 0.0 {
            continue;
        }
        for (j, v) in psi.iter_mut().enumerate() {
            let u = grid.x(j) / sigma;
            *v = (-0.25 * u * u).exp().into();
        }
    }
    state
}

/// Imaginary-time relaxation to the lowest stationary state with the given
/// mode populations.
pub fn ground_state(problem: &GpeProblem, mode_weights: &[f64], tol: f64) -> Result<GroundState> {
    ground_state_with(problem, mode_weights, tol, &GroundStateOptions::default(), None)
}

pub fn ground_state_with(
    problem: &GpeProblem,
    mode_weights: &[f64],
    tol: f64,
    options: &GroundStateOptions,
    initial: Option<GpeState>,
) -> Result<GroundState> {
    if !(tol > 0.0) {
        return Err(GpeError::Config(format!("tol must be positive, got {tol}")));
    }
    if mode_weights.len() != problem.mode_count() || mode_weights.iter().any(|w| !(*w >= 0.0)) {
        return Err(GpeError::Config(format!(
            "mode_weights: expected {} non-negative numbers",
            problem.mode_count()
        )));
    }
    if mode_weights.iter().sum::<f64>() <= 0.0 {
        return Err(GpeError::Config("mode_weights must not all be zero".into()));
    }
    if options.dtau_schedule.is_empty() {
        return Err(GpeError::Config("dtau_schedule is empty".into()));
    }
    let per_mode = !problem.has_couplings();
    let mut state = match initial {
        Some(s) => s,
        None => default_guess(problem, mode_weights),
    };
    renormalize(&mut state, &problem.grid, mode_weights, per_mode);
    if state.total_norm(problem.grid.dx()) == 0.0 {
        return Err(GpeError::Config("initial guess is zero".into()));
    }
    let mut prop = Propagator::new(problem);
    let mut e_prev = energy(problem, &state).total();
    let mut iterations = 0;
    let mut history = Vec::new();
    for (stage, &dtau) in options.dtau_schedule.iter().enumerate() {
        let last = stage + 1 == options.dtau_schedule.len();
        let mut converged = false;
        history.clear();
        while iterations < options.max_iterations {
            prop.imaginary_step(&mut state, dtau)?;
            renormalize(&mut state, &problem.grid, mode_weights, per_mode);
            iterations += 1;
            let e = energy(problem, &state).total();
            let change = (e - e_prev).abs() / e.abs().max(f64::MIN_POSITIVE);
            e_prev = e;
            if last {
                history.push(e);
            }
            if change < tol {
                converged = true;
                break;
            }
        }
        if !converged {
            let tail: Vec<f64> = history.windows(2).rev().take(10).map(|w| (w[1] - w[0]) / w[1]).collect();
            return Err(GpeError::NotConverged { iterations, history: tail });
        }
    }
    let obs = crate::observables::observables(&state, problem);
    Ok(GroundState {
        energy: obs.total_energy(),
        chemical_potential: obs.chemical_potential,
        state,
        iterations,
        history,
    })
}
