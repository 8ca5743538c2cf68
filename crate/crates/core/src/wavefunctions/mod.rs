//! Explicit relative-motion wavefunctions, spin coupling and brute-force
//! expectation values used as an independent check of the closed forms.

mod angular;
mod oracle;
mod radial;

pub use angular::{
    direction_product_matrices, orbital_matrices, spherical_harmonic, spin_half, unit_vector,
    AngularGrid,
};
pub use oracle::{
    c6_sum_over_states, energy1_oracle, p4_expectation, transition_dipole, virial_energy,
    C6Report, OracleBreakdown, P4Routes, C6_HYDROGEN_LITERATURE,
};
pub use radial::{radial_expectation, radial_expectation_quadrature, RadialFunction};

use nalgebra::{DMatrix, DVector, Matrix4};
use num_complex::Complex64;

use crate::constants::SpeciesParams;
use crate::error::Result;
use crate::spectrum::{clebsch_gordan, QuantumNumbers};

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Two-spin state χ_{S,m_S} in the product basis |s_n s_e⟩ ordered
/// (↑↑, ↑↓, ↓↑, ↓↓).
pub fn spin_state(s: u32, m_s: i32) -> [f64; 4] {
    match (s, m_s) {
        (1, 1) => [1.0, 0.0, 0.0, 0.0],
        (1, 0) => [0.0, SQRT_HALF, SQRT_HALF, 0.0],
        (1, -1) => [0.0, 0.0, 0.0, 1.0],
        (0, 0) => [0.0, SQRT_HALF, -SQRT_HALF, 0.0],
        _ => [0.0; 4],
    }
}

/// Spin operators of nucleus and electron on the 4-dimensional pair space.
pub fn pair_spin_operators() -> ([Matrix4<Complex64>; 3], [Matrix4<Complex64>; 3]) {
    let s = spin_half();
    let id = nalgebra::Matrix2::<Complex64>::identity();
    let nucleus = std::array::from_fn(|a| s[a].kronecker(&id).fixed_view::<4, 4>(0, 0).into_owned());
    let electron = std::array::from_fn(|a| id.kronecker(&s[a]).fixed_view::<4, 4>(0, 0).into_owned());
    (nucleus, electron)
}

/// Operators on the |ℓ m⟩ ⊗ |s_n s_e⟩ space of one orbital manifold.
#[derive(Debug, Clone)]
pub struct AngularSpinSpace {
    pub ell: u32,
    pub l: [DMatrix<Complex64>; 3],
    pub s_n: [DMatrix<Complex64>; 3],
    pub s_e: [DMatrix<Complex64>; 3],
    /// r̂_a r̂_b ⊗ 1_spin.
    pub rr: [[DMatrix<Complex64>; 3]; 3],
}

fn embed_spin(op: &Matrix4<Complex64>, dim_l: usize) -> DMatrix<Complex64> {
    let id = DMatrix::<Complex64>::identity(dim_l, dim_l);
    id.kronecker(&DMatrix::from_iterator(4, 4, op.iter().cloned()))
}

fn embed_orbital(op: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    op.kronecker(&DMatrix::<Complex64>::identity(4, 4))
}

impl AngularSpinSpace {
    pub fn new(ell: u32) -> Self {
        let dim_l = (2 * ell + 1) as usize;
        let lo = orbital_matrices(ell);
        let (sn, se) = pair_spin_operators();
        let g = direction_product_matrices(ell);
        Self {
            ell,
            l: std::array::from_fn(|a| embed_orbital(&lo[a])),
            s_n: std::array::from_fn(|a| embed_spin(&sn[a], dim_l)),
            s_e: std::array::from_fn(|a| embed_spin(&se[a], dim_l)),
            rr: std::array::from_fn(|a| std::array::from_fn(|b| embed_orbital(&g[a][b]))),
        }
    }

    pub fn dim(&self) -> usize {
        (2 * self.ell as usize + 1) * 4
    }

    pub fn total_spin(&self) -> [DMatrix<Complex64>; 3] {
        std::array::from_fn(|a| &self.s_n[a] + &self.s_e[a])
    }

    pub fn total_angular(&self) -> [DMatrix<Complex64>; 3] {
        std::array::from_fn(|a| &self.l[a] + &self.s_n[a] + &self.s_e[a])
    }

    /// Relative spin s = (m_n s_e − m_e s_n)/M.
    pub fn relative_spin(&self, species: &SpeciesParams) -> [DMatrix<Complex64>; 3] {
        let m = species.total_mass();
        let wn = Complex64::new(species.nucleus_mass() / m, 0.0);
        let we = Complex64::new(species.electron_mass() / m, 0.0);
        std::array::from_fn(|a| &self.s_e[a] * wn - &self.s_n[a] * we)
    }

    pub fn dot(a: &[DMatrix<Complex64>; 3], b: &[DMatrix<Complex64>; 3]) -> DMatrix<Complex64> {
        &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
    }

    /// Tensor operator S_ne = −s_n·s_e + 3(s_n·r̂)(s_e·r̂).
    pub fn tensor(&self) -> DMatrix<Complex64> {
        let mut t = -Self::dot(&self.s_n, &self.s_e);
        let three = Complex64::new(3.0, 0.0);
        for a in 0..3 {
            for b in 0..3 {
                t += &self.rr[a][b] * &self.s_n[a] * &self.s_e[b] * three;
            }
        }
        t
    }
}

/// Coupled state of Table-IV form: Σ_{m_S} α_{j,S,m_S} ψ_{n,ℓ,m_j−m_S} χ_{S,m_S}.
#[derive(Debug, Clone)]
pub struct SpinorWavefunction {
    pub beta: QuantumNumbers,
    pub radial: RadialFunction,
    /// Coefficients in the |ℓ m⟩ ⊗ |s_n s_e⟩ basis, m-major.
    pub coefficients: DVector<Complex64>,
}

/// Eigenvalue residuals ‖Oψ − λψ‖ of the four defining operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenResiduals {
    pub orbital_squared: f64,
    pub spin_squared: f64,
    pub total_squared: f64,
    pub total_z: f64,
}

impl EigenResiduals {
    pub fn max(&self) -> f64 {
        self.orbital_squared
            .max(self.spin_squared)
            .max(self.total_squared)
            .max(self.total_z)
    }
}

impl SpinorWavefunction {
    pub fn new(species: &SpeciesParams, beta: QuantumNumbers) -> Result<Self> {
        beta.validate()?;
        let radial = RadialFunction::new(species, beta.n, beta.ell)?;
        let ell = beta.ell as i32;
        let mut coefficients = DVector::<Complex64>::zeros(((2 * ell + 1) * 4) as usize);
        for m_s in [1, 0, -1] {
            let m = beta.m_j - m_s;
            if m.abs() > ell {
                continue;
            }
            let a = clebsch_gordan(beta.j, beta.s, m_s, beta.ell, beta.m_j)?;
            let chi = spin_state(beta.s, m_s);
            let base = ((m + ell) * 4) as usize;
            for (k, c) in chi.iter().enumerate() {
                coefficients[base + k] += Complex64::new(a * c, 0.0);
            }
        }
        Ok(Self {
            beta,
            radial,
            coefficients,
        })
    }

    /// Squared norm of the angular/spin part; the radial part is normalized
    /// separately.
    pub fn angular_spin_norm_squared(&self) -> f64 {
        self.coefficients.norm_squared()
    }

    /// Full norm ∫|ψ|² over space and spin.
    pub fn norm_squared(&self) -> Result<f64> {
        Ok(self.radial.norm_squared()? * self.angular_spin_norm_squared())
    }

    pub fn expectation(&self, op: &DMatrix<Complex64>) -> Complex64 {
        self.coefficients.dotc(&(op * &self.coefficients))
    }

    pub fn eigen_residuals(&self, space: &AngularSpinSpace) -> EigenResiduals {
        let psi = &self.coefficients;
        let residual = |op: DMatrix<Complex64>, lambda: f64| {
            (op * psi - psi * Complex64::new(lambda, 0.0)).norm()
        };
        let l = f64::from(self.beta.ell);
        let s = f64::from(self.beta.s);
        let j = f64::from(self.beta.j);
        let spin = space.total_spin();
        let total = space.total_angular();
        EigenResiduals {
            orbital_squared: residual(AngularSpinSpace::dot(&space.l, &space.l), l * (l + 1.0)),
            spin_squared: residual(AngularSpinSpace::dot(&spin, &spin), s * (s + 1.0)),
            total_squared: residual(AngularSpinSpace::dot(&total, &total), j * (j + 1.0)),
            total_z: residual(total[2].clone(), f64::from(self.beta.m_j)),
        }
    }

    /// Angular/spin part evaluated at a direction: a 4-component spinor.
    pub fn angular_spinor(&self, theta: f64, phi: f64) -> [Complex64; 4] {
        let ell = self.beta.ell as i32;
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for m in -ell..=ell {
            let y = spherical_harmonic(self.beta.ell, m, theta, phi);
            let base = ((m + ell) * 4) as usize;
            for (k, o) in out.iter_mut().enumerate() {
                *o += y * self.coefficients[base + k];
            }
        }
        out
    }

    /// ψ(r, θ, φ) as a 4-spinor.
    pub fn eval(&self, r: f64, theta: f64, phi: f64) -> [Complex64; 4] {
        let radial = self.radial.eval(r);
        self.angular_spinor(theta, phi).map(|c| c * radial)
    }
}

/// ⟨β|β′⟩ by radial quadrature times angular-grid quadrature of the spinors.
pub fn overlap(a: &SpinorWavefunction, b: &SpinorWavefunction) -> Result<Complex64> {
    let grid = AngularGrid::for_degree(a.beta.ell + b.beta.ell + 2);
    let angular: Complex64 = grid
        .points
        .iter()
        .map(|&(t, p, w)| {
            let (x, y) = (a.angular_spinor(t, p), b.angular_spinor(t, p));
            x.iter().zip(&y).map(|(u, v)| u.conj() * v).sum::<Complex64>() * w
        })
        .sum();
    if angular.norm() < 1e-14 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let radial = a
        .radial
        .integrate_tol(|r| a.radial.eval(r) * b.radial.eval(r) * r * r, 1e-12, 1e-14)?
        .value;
    Ok(angular * radial)
}
