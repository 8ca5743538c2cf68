use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::problem::GpeProblem;
use crate::state::GpeState;

/// Discrete energy functional, split by term. Offsets enter relative to the
/// problem's reference energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyBreakdown {
    pub kinetic: f64,
    /// Offsets and external potentials.
    pub potential: f64,
    pub coupling: f64,
    pub interaction: f64,
}

impl EnergyBreakdown {
    pub fn total(&self) -> f64 {
        self.kinetic + self.potential + self.coupling + self.interaction
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observables {
    pub t: f64,
    pub norms: Vec<f64>,
    pub total_norm: f64,
    /// norms / total_norm.
    pub populations: Vec<f64>,
    pub energy: EnergyBreakdown,
    pub reference_energy: f64,
    pub chemical_potential: f64,
    pub center: f64,
    pub width: f64,
    pub mode_centers: Vec<f64>,
    pub mode_widths: Vec<f64>,
    /// arg ∫Ψ₀*Ψ₁ dx when there are at least two modes.
    pub relative_phase: Option<f64>,
}

impl Observables {
    pub fn total_energy(&self) -> f64 {
        self.energy.total()
    }

    /// Energy including the subtracted rest-energy reference.
    pub fn energy_with_reference(&self) -> f64 {
        self.energy.total() + self.reference_energy * self.total_norm
    }
}

pub fn energy(problem: &GpeProblem, state: &GpeState) -> EnergyBreakdown {
    let grid = problem.grid;
    let dx = grid.dx();
    let n = problem.mode_count();
    let points = grid.points;
    let ks = grid.wavenumbers();
    let fft = FftPlanner::new().plan_fft_forward(points);

    let mut kinetic = 0.0;
    let mut potential = 0.0;
    for (m, psi) in state.psi.iter().enumerate() {
        let mut buf = psi.clone();
        fft.process(&mut buf);
        kinetic += buf
            .iter()
            .zip(&ks)
            .map(|(v, &k)| problem.kinetic(m, k) * v.norm_sqr())
            .sum::<f64>()
            * dx
            / points as f64;
        let mode = &problem.modes[m];
        potential += psi
            .iter()
            .zip(&mode.potential)
            .map(|(v, vx)| (mode.energy_offset - problem.reference_energy + vx) * v.norm_sqr())
            .sum::<f64>()
            * dx;
    }

    let mut coupling = 0.0;
    let mut interaction = 0.0;
    let nonlinear = !problem.eta.is_zero();
    let mut local = vec![Complex64::new(0.0, 0.0); n];
    let mut mat = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..points {
        for (slot, psi) in local.iter_mut().zip(&state.psi) {
            *slot = psi[j];
        }
        if problem.has_couplings() {
            mat.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            problem.add_coupling(grid.x(j), state.t, &mut mat);
            coupling += quadratic_form(&mat, &local, n) * dx;
        }
        if nonlinear {
            problem.eta.local_matrix(&local, &mut mat);
            interaction += 0.5 * quadratic_form(&mat, &local, n) * dx;
        }
    }
    EnergyBreakdown {
        kinetic,
        potential,
        coupling,
        interaction,
    }
}

fn quadratic_form(mat: &[Complex64], psi: &[Complex64], n: usize) -> f64 {
    let mut s = Complex64::new(0.0, 0.0);
    for a in 0..n {
        for b in 0..n {
            s += psi[a].conj() * mat[a * n + b] * psi[b];
        }
    }
    s.re
}

fn moments(grid: &crate::grid::Grid, density: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut w, mut m1, mut m2) = (0.0, 0.0, 0.0);
    for (j, d) in density.enumerate() {
        let x = grid.x(j);
        w += d;
        m1 += d * x;
        m2 += d * x * x;
    }
    if w == 0.0 {
        return (0.0, 0.0);
    }
    let c = m1 / w;
    (c, (m2 / w - c * c).max(0.0).sqrt())
}

pub fn observables(state: &GpeState, problem: &GpeProblem) -> Observables {
    let grid = problem.grid;
    let dx = grid.dx();
    let norms: Vec<f64> = (0..problem.mode_count()).map(|m| state.mode_norm(m, dx)).collect();
    let total_norm: f64 = norms.iter().sum();
    let e = energy(problem, state);
    let (center, width) = moments(
        &grid,
        (0..grid.points).map(|j| state.psi.iter().map(|p| p[j].norm_sqr()).sum()),
    );
    let (mode_centers, mode_widths) = state
        .psi
        .iter()
        .map(|p| moments(&grid, p.iter().map(|v| v.norm_sqr())))
        .unzip();
    let relative_phase = (problem.mode_count() >= 2).then(|| {
        state.psi[0]
            .iter()
            .zip(&state.psi[1])
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .arg()
    });
    let chemical_potential = if total_norm > 0.0 {
        (e.kinetic + e.potential + e.coupling + 2.0 * e.interaction) / total_norm
    } else {
        0.0
    };
    Observables {
        t: state.t,
        populations: norms.iter().map(|v| if total_norm > 0.0 { v / total_norm } else { 0.0 }).collect(),
        norms,
        total_norm,
        energy: e,
        reference_energy: problem.reference_energy,
        chemical_potential,
        center,
        width,
        mode_centers,
        mode_widths,
        relative_phase,
    }
}
