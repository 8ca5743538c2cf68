use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{GpeError, Result};
use crate::problem::GpeProblem;
use crate::state::GpeState;

/// exp(−zH) for a Hermitian n×n matrix stored row-major.
///
/// z = i·dt gives the real-time propagator and z = dτ the imaginary-time
/// one. One and two modes use closed forms.
pub fn expm_hermitian(h: &[Complex64], n: usize, z: Complex64, out: &mut [Complex64]) {
    match n {
        1 => out[0] = (-z * h[0].re).exp(),
        2 => {
            let a = 0.5 * (h[0].re + h[3].re);
            let bz = 0.5 * (h[0].re - h[3].re);
            let beta = (bz * bz + h[1].norm_sqr()).sqrt();
            let phase = (-z * a).exp();
            let cosh = (z * beta).cosh();
            // sinh(zβ)/β, continuous at β = 0
            let sinhc = if beta > 0.0 { (z * beta).sinh() / beta } else { z };
            out[0] = phase * (cosh - sinhc * bz);
            out[1] = -phase * sinhc * h[1];
            out[2] = -phase * sinhc * h[2];
            out[3] = phase * (cosh + sinhc * bz);
        }
        _ => {
            let m = DMatrix::from_row_slice(n, n, h);
            let eig = m.symmetric_eigen();
            let v = &eig.eigenvectors;
            for r in 0..n {
                for c in 0..n {
                    let mut s = Complex64::new(0.0, 0.0);
                    for k in 0..n {
                        s += v[(r, k)] * (-z * eig.eigenvalues[k]).exp() * v[(c, k)].conj();
                    }
                    out[r * n + c] = s;
                }
            }
        }
    }
}

/// Strang-split propagator bound to one problem.
pub struct Propagator<'a> {
    problem: &'a GpeProblem,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    ks: Vec<f64>,
    /// Cached half-step kinetic factors per mode and the z they belong to.
    half_kinetic: Vec<Vec<Complex64>>,
    cached_z: Option<Complex64>,
    steps: u64,
    cfl_warned: bool,
}

impl<'a> Propagator<'a> {
    pub fn new(problem: &'a GpeProblem) -> Self {
        let mut planner = FftPlanner::new();
        let n = problem.grid.points;
        Self {
            problem,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            ks: problem.grid.wavenumbers(),
            half_kinetic: Vec::new(),
            cached_z: None,
            steps: 0,
            cfl_warned: false,
        }
    }

    pub fn problem(&self) -> &GpeProblem {
        self.problem
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps
    }

    fn kinetic_factors(&mut self, z: Complex64) {
        if self.cached_z == Some(z) {
            return;
        }
        self.half_kinetic = (0..self.problem.mode_count())
            .map(|m| self.ks.iter().map(|&k| (-0.5 * z * self.problem.kinetic(m, k)).exp()).collect())
            .collect();
        self.cached_z = Some(z);
    }

    fn kinetic_half(&self, state: &mut GpeState) {
        let scale = 1.0 / self.problem.grid.points as f64;
        for (psi, factors) in state.psi.iter_mut().zip(&self.half_kinetic) {
            self.forward.process(psi);
            for (v, f) in psi.iter_mut().zip(factors) {
                *v *= f * scale;
            }
            self.inverse.process(psi);
        }
    }

    /// Full local substep: frozen-density exponential, one Picard correction
    /// of the nonlinear part, couplings evaluated at t_mid.
    fn local(&self, state: &mut GpeState, z: Complex64, t_mid: f64) {
        let p = self.problem;
        let n = p.mode_count();
        let points = p.grid.points;
        let nonlinear = !p.eta.is_zero();
        let mut packed = vec![Complex64::new(0.0, 0.0); points * n];
        for (m, psi) in state.psi.iter().enumerate() {
            for (j, v) in psi.iter().enumerate() {
                packed[j * n + m] = *v;
            }
        }
        packed.par_chunks_mut(n).enumerate().for_each(|(j, psi)| {
            let x = p.grid.x(j);
            let mut base = vec![Complex64::new(0.0, 0.0); n * n];
            for (m, mode) in p.modes.iter().enumerate() {
                base[m * n + m] = Complex64::new(mode.energy_offset - p.reference_energy + mode.potential[j], 0.0);
            }
            p.add_coupling(x, t_mid, &mut base);
            let mut h = base.clone();
            let mut nl = vec![Complex64::new(0.0, 0.0); n * n];
            let mut u = vec![Complex64::new(0.0, 0.0); n * n];
            if nonlinear {
                p.eta.local_matrix(psi, &mut nl);
                for (hv, v) in h.iter_mut().zip(&nl) {
                    *hv += v;
                }
                expm_hermitian(&h, n, z, &mut u);
                let trial = apply(&u, psi, n);
                let mut nl1 = vec![Complex64::new(0.0, 0.0); n * n];
                p.eta.local_matrix(&trial, &mut nl1);
                for k in 0..n * n {
                    h[k] = base[k] + 0.5 * (nl[k] + nl1[k]);
                }
            }
            expm_hermitian(&h, n, z, &mut u);
            let out = apply(&u, psi, n);
            psi.copy_from_slice(&out);
        });
        for (m, psi) in state.psi.iter_mut().enumerate() {
            for (j, v) in psi.iter_mut().enumerate() {
                *v = packed[j * n + m];
            }
        }
    }

    /// One Strang step with propagator exp(−z·h): z = i·dt in real time.
    fn split_step(&mut self, state: &mut GpeState, z: Complex64, dt_real: f64) -> Result<()> {
        self.kinetic_factors(z);
        self.kinetic_half(state);
        self.local(state, z, state.t + 0.5 * dt_real);
        self.kinetic_half(state);
        state.t += dt_real;
        self.steps += 1;
        if !state.is_finite() {
            return Err(GpeError::Numeric {
                step: self.steps,
                time: state.t,
                detail: "field became non-finite".into(),
            });
        }
        Ok(())
    }

    /// Real-time step of length dt.
    pub fn step(&mut self, state: &mut GpeState, dt: f64) -> Result<()> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(GpeError::Config(format!("dt must be positive, got {dt}")));
        }
        let limit = 2.0 * std::f64::consts::PI / self.problem.max_kinetic();
        if dt >= limit && !self.cfl_warned {
            log::warn!("dt = {dt:e} exceeds 2π/E_max = {limit:e}; the fastest grid modes are aliased in phase");
            self.cfl_warned = true;
        }
        self.split_step(state, Complex64::new(0.0, dt), dt)
    }

    /// Imaginary-time step of length dτ, without renormalization.
    pub fn imaginary_step(&mut self, state: &mut GpeState, dtau: f64) -> Result<()> {
        if !(dtau > 0.0 && dtau.is_finite()) {
            return Err(GpeError::Config(format!("dtau must be positive, got {dtau}")));
        }
        self.split_step(state, Complex64::new(dtau, 0.0), 0.0)
    }
}

fn apply(u: &[Complex64], psi: &[Complex64], n: usize) -> Vec<Complex64> {
    (0..n).map(|r| (0..n).map(|c| u[r * n + c] * psi[c]).sum()).collect()
}

/// One real-time step with a fresh propagator; prefer [`Propagator`] in loops.
pub fn step(problem: &GpeProblem, state: &GpeState, dt: f64) -> Result<GpeState> {
    let mut next = state.clone();
    Propagator::new(problem).step(&mut next, dt)?;
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(h: &[Complex64], n: usize, z: Complex64) -> Vec<Complex64> {
        // Taylor series with scaling and squaring
        let m = DMatrix::from_row_slice(n, n, h) * (-z);
        let norm = m.norm();
        let s = (norm.log2().ceil().max(0.0) as i32) + 4;
        let a = m / Complex64::new(2f64.powi(s), 0.0);
        let mut term = DMatrix::<Complex64>::identity(n, n);
        let mut sum = term.clone();
        for k in 1..30 {
            term = &term * &a / Complex64::new(k as f64, 0.0);
            sum += &term;
        }
        for _ in 0..s {
            sum = &sum * &sum;
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in 0..n {
                out[r * n + c] = sum[(r, c)];
            }
        }
        out
    }

    fn hermitian(n: usize, seed: f64) -> Vec<Complex64> {
        let mut h = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in r..n {
                let v = Complex64::new((seed * (r * 7 + c * 3 + 1) as f64).sin(), if r == c { 0.0 } else { (seed * (r + 2 * c + 5) as f64).cos() });
                h[r * n + c] = v;
                h[c * n + r] = v.conj();
            }
        }
        h
    }

    #[test]
    fn closed_forms_match_series() {
        for n in 1..=4 {
            for seed in [0.3, 1.7, 2.9] {
                let h = hermitian(n, seed);
                for z in [Complex64::new(0.0, 0.37), Complex64::new(0.21, 0.0)] {
                    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
                    expm_hermitian(&h, n, z, &mut out);
                    let reference = naive(&h, n, z);
                    for (a, b) in out.iter().zip(&reference) {
                        assert!((a - b).norm() < 1e-12, "n={n} {a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_two_by_two() {
        let h = [Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)];
        let mut out = [Complex64::new(0.0, 0.0); 4];
        expm_hermitian(&h, 2, Complex64::new(0.0, 2.0), &mut out);
        let expect = Complex64::from_polar(1.0, -1.0);
        assert!((out[0] - expect).norm() < 1e-15 && out[1].norm() < 1e-15);
    }
}
