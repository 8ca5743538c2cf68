use serde::{Deserialize, Serialize};

use crate::error::{GpeError, Result};

/// Periodic 1D grid on [−L/2, L/2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub length: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(length: f64, points: usize) -> Result<Self> {
        let g = Self { length, points };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(GpeError::Config(format!("grid.length must be positive, got {}", self.length)));
        }
        if self.points < 2 {
            return Err(GpeError::Config(format!("grid.points must be at least 2, got {}", self.points)));
        }
        Ok(())
    }

    /// Only 1D grids are solved; the shape is kept for file headers.
    pub fn shape(&self) -> Vec<usize> {
        vec![self.points]
    }

    pub fn dx(&self) -> f64 {
        self.length / self.points as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        -0.5 * self.length + j as f64 * self.dx()
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.points).map(|j| self.x(j)).collect()
    }

    /// Angular wavenumbers in FFT order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.points as i64;
        let dk = 2.0 * std::f64::consts::PI / self.length;
        (0..n)
            .map(|j| {
                let m = if j <= (n - 1) / 2 { j } else { j - n };
                m as f64 * dk
            })
            .collect()
    }

    /// Nearest wavenumber that fits the box.
    pub fn commensurate(&self, k: f64) -> f64 {
        let dk = 2.0 * std::f64::consts::PI / self.length;
        (k / dk).round() * dk
    }
}
