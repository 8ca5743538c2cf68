use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{AngularGrid, AngularSpinSpace, RadialFunction, SpinorWavefunction};
use crate::constants::SpeciesParams;
use crate::error::{CoreError, Result};
use crate::quadrature::integrate_with_breaks;
use crate::spectrum::{alpha_coefficients, energy0, QuantumNumbers, WilsonCoefficients};

/// Literature value of the hydrogen–hydrogen C₆ coefficient (atomic units,
/// infinite nuclear mass).
pub const C6_HYDROGEN_LITERATURE: f64 = 6.499;

/// Term-by-term expectation values of the first-order relative Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleBreakdown {
    pub beta: QuantumNumbers,
    /// Kinetic correction with ⟨p⁴⟩ = 4m_r²⟨(E − V)²⟩.
    pub kinetic: f64,
    /// Same term with ⟨p⁴⟩ = ‖∇²ψ‖² from finite differences.
    pub kinetic_direct: f64,
    /// Orbit term with (r·p)² applied as written.
    pub orbit: f64,
    /// Orbit term in the manifestly Hermitian ordering (p·r) r⁻³ (r·p).
    pub orbit_symmetric: f64,
    /// orbit − orbit_symmetric.
    pub hermiticity_gap: f64,
    pub darwin: f64,
    pub contact: f64,
    pub spin_orbit_total: f64,
    pub spin_orbit_relative: f64,
    pub dipole_dipole: f64,
    pub total: f64,
    pub expect_l_dot_s_total: f64,
    pub expect_l_dot_s_relative: f64,
    pub expect_sn_dot_se: f64,
    pub expect_tensor: f64,
    /// ⟨1/r³⟩, zero for ℓ = 0 where no spin-orbit term survives.
    pub inv_r3: f64,
    /// R_{nℓ}(0)², which fixes |ψ(0)|² = R(0)²/(4π) for s waves.
    pub radial_at_origin_sq: f64,
}

/// Both routes to ⟨p⁴⟩.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct P4Routes {
    pub via_schrodinger: f64,
    pub direct: f64,
}

// Fixed step: near the origin the stencil reaches r < 0, where the
// polynomial-times-exponential form continues R smoothly.
fn five_point(radial: &RadialFunction, r: f64) -> (f64, f64, f64) {
    let h = 1e-3 * f64::from(radial.n()) * radial.bohr_length();
    let f = |x: f64| radial.eval(x);
    let (fm2, fm1, f0, fp1, fp2) = (f(r - 2.0 * h), f(r - h), f(r), f(r + h), f(r + 2.0 * h));
    let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    let d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    (f0, d1, d2)
}

/// ⟨p⁴⟩ for the (n, ℓ) orbital by the Schrödinger-equation identity and by
/// squaring a finite-difference Laplacian.
pub fn p4_expectation(species: &SpeciesParams, n: u32, ell: u32) -> Result<P4Routes> {
    let radial = RadialFunction::new(species, n, ell)?;
    let e = energy0(species, n)?;
    let z = f64::from(species.z());
    let mr = species.reduced_mass();
    // R²(E + Z/r)² r² = R²(E r + Z)²
    let via = radial
        .integrate(|r| {
            let v = radial.eval(r) * (e * r + z);
            v * v
        })?
        .value
        * 4.0
        * mr
        * mr;
    let l2 = f64::from(ell * (ell + 1));
    let direct = integrate_with_breaks(
        |r| {
            let (f, d1, d2) = five_point(&radial, r);
            let lap = d2 + 2.0 * d1 / r - l2 * f / (r * r);
            lap * lap * r * r
        },
        &radial.breakpoints(),
        1e-10,
        1e-300,
    )?
    .value;
    Ok(P4Routes {
        via_schrodinger: via,
        direct,
    })
}

/// ⟨p²⟩/(2m_r) + ⟨V⟩ by quadrature; equals E⁽⁰⁾ₙ for an exact eigenstate.
pub fn virial_energy(species: &SpeciesParams, n: u32, ell: u32) -> Result<f64> {
    let radial = RadialFunction::new(species, n, ell)?;
    let l2 = f64::from(ell * (ell + 1));
    let p2 = radial
        .integrate(|r| {
            let (f, d1, _) = radial.eval_with_derivatives(r);
            d1 * d1 * r * r + l2 * f * f
        })?
        .value;
    let v = radial
        .integrate(|r| {
            let f = radial.eval(r);
            f * f * r
        })?
        .value;
    Ok(p2 / (2.0 * species.reduced_mass()) - f64::from(species.z()) * v)
}

/// Brute-force ⟨β|h⁽¹⁾|β⟩ from explicit wavefunctions and operator matrices.
pub fn energy1_oracle(
    species: &SpeciesParams,
    w: &WilsonCoefficients,
    beta: &QuantumNumbers,
) -> Result<OracleBreakdown> {
    let psi = SpinorWavefunction::new(species, *beta)?;
    let space = AngularSpinSpace::new(beta.ell);
    let radial = &psi.radial;
    let alpha = alpha_coefficients(w, species);

    let c2 = species.c() * species.c();
    let (me, mn, m, mr) = (
        species.electron_mass(),
        species.nucleus_mass(),
        species.total_mass(),
        species.reduced_mass(),
    );
    let z = f64::from(species.z());
    let kappa = z / (mr * m * c2);

    let p4 = p4_expectation(species, beta.n, beta.ell)?;
    let kin_factor = -(me.powi(3) + mn.powi(3)) / (8.0 * mr.powi(3) * c2 * m.powi(3));

    let l2 = f64::from(beta.ell * (beta.ell + 1));
    let as_written = radial.integrate(|r| {
        let (f, d1, d2) = radial.eval_with_derivatives(r);
        // R (½ℓ(ℓ+1) R − r²R'' − rR') r⁻³ · r²
        let angular = if l2 == 0.0 { 0.0 } else { 0.5 * l2 * f / r };
        f * (angular - r * d2 - d1)
    })?;
    let symmetric = radial.integrate(|r| {
        let (f, d1, _) = radial.eval_with_derivatives(r);
        let angular = if l2 == 0.0 { 0.0 } else { 0.5 * l2 * f * f / r };
        r * d1 * d1 + angular
    })?;
    if !as_written.value.is_finite() || !symmetric.value.is_finite() {
        return Err(CoreError::Numeric(format!(
            "orbit-term quadrature for {beta} produced non-finite values \
             (as written {:e} ± {:e}, symmetric {:e} ± {:e})",
            as_written.value, as_written.error, symmetric.value, symmetric.error
        )));
    }

    let r0_sq = radial.eval(0.0).powi(2);
    let real = |op: &nalgebra::DMatrix<Complex64>| psi.expectation(op).re;
    let s_tot = space.total_spin();
    let s_rel = space.relative_spin(species);
    let ls_total = real(&AngularSpinSpace::dot(&space.l, &s_tot));
    let ls_relative = real(&AngularSpinSpace::dot(&space.l, &s_rel));
    let sn_se = real(&AngularSpinSpace::dot(&space.s_n, &space.s_e));
    let tensor = real(&space.tensor());

    // Every ℓ = 0 angular factor above vanishes identically; skip the
    // divergent radial integral rather than multiply zero by infinity.
    let inv_r3 = if beta.ell == 0 {
        0.0
    } else {
        radial
            .integrate(|r| {
                let f = radial.eval(r);
                f * f / r
            })?
            .value
    };

    let kinetic = kin_factor * p4.via_schrodinger;
    let kinetic_direct = kin_factor * p4.direct;
    let orbit = -kappa * as_written.value;
    let orbit_symmetric = -kappa * symmetric.value;
    // π|ψ(0)|² = R(0)²/4
    let darwin = kappa * alpha.alpha_d * r0_sq / 4.0;
    let contact = kappa * alpha.alpha_ss * r0_sq / 4.0 * sn_se;
    let spin_orbit_total = kappa * alpha.alpha_ls_total * inv_r3 * ls_total;
    let spin_orbit_relative = kappa * alpha.alpha_ls_relative * inv_r3 * ls_relative;
    let dipole_dipole = kappa * w.c_f_n * w.c_f_e * inv_r3 * tensor;
    let total = kinetic + orbit + darwin + contact + spin_orbit_total + spin_orbit_relative + dipole_dipole;
    if !total.is_finite() {
        return Err(CoreError::Numeric(format!("oracle total for {beta} is not finite")));
    }
    Ok(OracleBreakdown {
        beta: *beta,
        kinetic,
        kinetic_direct,
        orbit,
        orbit_symmetric,
        hermiticity_gap: orbit - orbit_symmetric,
        darwin,
        contact,
        spin_orbit_total,
        spin_orbit_relative,
        dipole_dipole,
        total,
        expect_l_dot_s_total: ls_total,
        expect_l_dot_s_relative: ls_relative,
        expect_sn_dot_se: sn_se,
        expect_tensor: tensor,
        inv_r3,
        radial_at_origin_sq: r0_sq,
    })
}

/// ⟨β|d|β′⟩ with d = m_r(q_e/m_e − q_n/m_n) r, as (x, y, z) components.
pub fn transition_dipole(
    species: &SpeciesParams,
    beta: &QuantumNumbers,
    beta_prime: &QuantumNumbers,
) -> Result<[Complex64; 3]> {
    let a = SpinorWavefunction::new(species, *beta)?;
    let b = SpinorWavefunction::new(species, *beta_prime)?;
    let grid = AngularGrid::for_degree(beta.ell + beta_prime.ell + 3);
    let mut angular = [Complex64::new(0.0, 0.0); 3];
    for &(t, p, wt) in &grid.points {
        let (u, v) = (a.angular_spinor(t, p), b.angular_spinor(t, p));
        let inner: Complex64 = u.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
        let e = super::unit_vector(t, p);
        for k in 0..3 {
            angular[k] += inner * e[k] * wt;
        }
    }
    if angular.iter().all(|c| c.norm() < 1e-14) {
        return Ok([Complex64::new(0.0, 0.0); 3]);
    }
    let radial = a
        .radial
        .integrate_tol(|r| a.radial.eval(r) * b.radial.eval(r) * r * r * r, 1e-12, 1e-14)?
        .value;
    let mr = species.reduced_mass();
    let prefactor = mr
        * (species.electron_charge() / species.electron_mass()
            - species.nucleus_charge() / species.nucleus_mass());
    Ok(angular.map(|c| c * radial * prefactor))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct C6Report {
    pub n_basis: u32,
    pub value: f64,
    /// Intermediate one-atom states with a nonzero dipole from the ground state.
    pub coupled_states: usize,
    pub literature: f64,
    pub fraction_of_literature: f64,
}

/// Second-order dispersion coefficient from discrete bound pair states with
/// n ≤ n_basis, for two atoms in the singlet ground state and ΔR along z.
pub fn c6_sum_over_states(species: &SpeciesParams, n_basis: u32) -> Result<C6Report> {
    if n_basis < 2 {
        return Err(CoreError::Domain("n_basis must be >= 2".into()));
    }
    let ground = QuantumNumbers::new(1, 0, 0, 0, 0);
    let e_ground = energy0(species, 1)?;
    let candidates: Vec<QuantumNumbers> = (2..=n_basis).flat_map(QuantumNumbers::enumerate).collect();
    let coupled: Vec<(f64, [Complex64; 3])> = candidates
        .par_iter()
        .map(|k| -> Result<Option<(f64, [Complex64; 3])>> {
            let d = transition_dipole(species, &ground, k)?;
            if d.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt() < 1e-12 {
                return Ok(None);
            }
            Ok(Some((energy0(species, k.n)?, d)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    // T = 1 − 3 ẑẑ
    let t = [1.0, 1.0, -2.0];
    let mut value = 0.0;
    for (ek, dk) in &coupled {
        for (el, dl) in &coupled {
            let element: Complex64 = (0..3).map(|a| dk[a] * dl[a] * t[a]).sum();
            value += element.norm_sqr() / (ek + el - 2.0 * e_ground);
        }
    }
    Ok(C6Report {
        n_basis,
        value,
        coupled_states: coupled.len(),
        literature: C6_HYDROGEN_LITERATURE,
        fraction_of_literature: value / C6_HYDROGEN_LITERATURE,
    })
}
