use num_complex::Complex64;
use serde::Serialize;

use crate::error::{GpeError, Result};
use crate::problem::{GpeProblem, InitialField};

/// Mode fields on the grid, psi[mode][point].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GpeState {
    pub psi: Vec<Vec<Complex64>>,
    pub t: f64,
}

impl GpeState {
    pub fn zeros(problem: &GpeProblem) -> Self {
        Self {
            psi: vec![vec![Complex64::new(0.0, 0.0); problem.grid.points]; problem.mode_count()],
            t: 0.0,
        }
    }

    /// Builds the initial fields given in the problem. Wavenumbers are
    /// snapped to the nearest value that fits the periodic box.
    pub fn initial(problem: &GpeProblem) -> Result<Self> {
        let mut state = Self::zeros(problem);
        let grid = problem.grid;
        for (m, mode) in problem.modes.iter().enumerate() {
            let target = match &mode.initial {
                InitialField::Zero => continue,
                InitialField::Gaussian { x0, sigma, k0, norm } => {
                    if !(*sigma > 0.0) {
                        return Err(GpeError::Config(format!("modes[{m}].initial.sigma must be positive")));
                    }
                    let k = grid.commensurate(*k0);
                    for (j, v) in state.psi[m].iter_mut().enumerate() {
                        let x = grid.x(j);
                        let u = (x - x0) / sigma;
                        *v = Complex64::from_polar((-0.25 * u * u).exp(), k * x);
                    }
                    *norm
                }
                InitialField::PlaneWave { k, norm } => {
                    let k = grid.commensurate(*k);
                    for (j, v) in state.psi[m].iter_mut().enumerate() {
                        *v = Complex64::from_polar(1.0, k * grid.x(j));
                    }
                    *norm
                }
            };
            if target < 0.0 {
                return Err(GpeError::Config(format!("modes[{m}].initial.norm must be non-negative")));
            }
            let current = state.mode_norm(m, grid.dx());
            let scale = if current > 0.0 { (target / current).sqrt() } else { 0.0 };
            for v in &mut state.psi[m] {
                *v *= scale;
            }
        }
        Ok(state)
    }

    /// ∫|Ψ_α|² dx.
    pub fn mode_norm(&self, mode: usize, dx: f64) -> f64 {
        self.psi[mode].iter().map(|v| v.norm_sqr()).sum::<f64>() * dx
    }

    pub fn total_norm(&self, dx: f64) -> f64 {
        (0..self.psi.len()).map(|m| self.mode_norm(m, dx)).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.psi.iter().flatten().all(|v| v.re.is_finite() && v.im.is_finite())
    }
}
