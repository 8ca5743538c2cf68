//! Mass-defect kinematics of a two-level composite particle.
//!
//! Energies are in Hartree, masses in electron masses, ħ = 1, and the speed
//! of light is always passed explicitly so that c-scaling can be probed.

use serde::Serialize;

use crate::constants::{SpeciesParams, DALTON_IN_ELECTRON_MASS, HARTREE_IN_HZ};
use crate::error::{CoreError, Result};
use crate::spectrum::{energy0, mean_mass, QuantumNumbers};

/// Free dispersion of one internal state.
///
/// The canonical momentum P stands in for the minimally coupled one, since no
/// external field is modelled here. `light_shift` is a user-supplied
/// diagonal shift of the state (Zeeman, AC Stark, ...).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Dispersion {
    pub m_alpha: f64,
    /// Bare mass M entering the P⁴ correction.
    pub bare_mass: f64,
    pub e1: f64,
    pub light_shift: f64,
    pub c: f64,
    pub include_p4: bool,
}

impl Dispersion {
    pub fn energy(&self, p: f64) -> f64 {
        let p2 = p * p;
        let mut e = self.m_alpha * self.c * self.c + self.e1 + self.light_shift + p2 / (2.0 * self.m_alpha);
        if self.include_p4 {
            e -= p2 * p2 / (8.0 * self.bare_mass.powi(3) * self.c * self.c);
        }
        e
    }

    /// dE/dP.
    pub fn group_velocity(&self, p: f64) -> f64 {
        let mut v = p / self.m_alpha;
        if self.include_p4 {
            v -= p.powi(3) / (2.0 * self.bare_mass.powi(3) * self.c * self.c);
        }
        v
    }

    /// Size of the P⁴ term relative to the quadratic kinetic energy.
    pub fn p4_relative_size(&self, p: f64) -> f64 {
        let p4 = p.powi(4) / (8.0 * self.bare_mass.powi(3) * self.c * self.c);
        p4 / (p * p / (2.0 * self.m_alpha))
    }

    /// Momentum where the truncated expansion stops increasing,
    /// √2·Mc·√(M/M_α). None without the P⁴ term.
    pub fn turnover(&self) -> Option<f64> {
        self.include_p4
            .then(|| (2.0 * self.bare_mass.powi(3) / self.m_alpha).sqrt() * self.c)
    }

    /// The same turnover located by bisection on the group velocity.
    pub fn turnover_numeric(&self) -> Option<f64> {
        let guess = self.turnover()?;
        let (mut lo, mut hi) = (0.5 * guess, 2.0 * guess);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.group_velocity(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }
}

/// E(P) = M_α c² + E⁽¹⁾ + P²/2M_α − P⁴/8M³c², the last term optional.
pub fn dispersion(m_alpha: f64, bare_mass: f64, e1: f64, p: f64, c: f64, include_p4: bool) -> f64 {
    Dispersion {
        m_alpha,
        bare_mass,
        e1,
        light_shift: 0.0,
        c,
        include_p4,
    }
    .energy(p)
}

/// Two internal levels reduced to a mean mass and a clock frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClockParams {
    /// Mass M that the internal energies are measured against.
    pub mass: f64,
    pub c: f64,
    pub m_bar: f64,
    /// ħΩ, equal to Ω in these units.
    pub omega: f64,
    pub m_g: f64,
    pub m_e: f64,
    pub e_g0: f64,
    pub e_e0: f64,
}

impl ClockParams {
    pub fn from_energies(mass: f64, e_g0: f64, e_e0: f64, c: f64) -> Result<Self> {
        if !(mass > 0.0 && c > 0.0) {
            return Err(CoreError::Domain("clock needs positive mass and speed of light".into()));
        }
        if !(e_g0 < e_e0) {
            return Err(CoreError::Domain(format!(
                "clock needs E_g < E_e (got {e_g0} and {e_e0})"
            )));
        }
        let c2 = c * c;
        Ok(Self {
            mass,
            c,
            m_bar: mean_mass(e_g0, e_e0, mass, c),
            omega: e_e0 - e_g0,
            m_g: mass + e_g0 / c2,
            m_e: mass + e_e0 / c2,
            e_g0,
            e_e0,
        })
    }

    /// ⁸⁸Sr on its 698 nm ¹S₀–³P₀ line, with the atomic mass taken as the
    /// ground-state mass.
    pub fn strontium88() -> Self {
        let mass = STRONTIUM88_MASS_DALTON * DALTON_IN_ELECTRON_MASS;
        let omega = STRONTIUM88_CLOCK_HZ / HARTREE_IN_HZ;
        Self::from_energies(mass, 0.0, omega, crate::constants::SPEED_OF_LIGHT_AU)
            .expect("preset energies are ordered")
    }

    /// Eigenvalues (−ħΩ/2, +ħΩ/2) of the clock Hamiltonian.
    pub fn clock_eigenvalues(&self) -> [f64; 2] {
        [-0.5 * self.omega, 0.5 * self.omega]
    }

    /// ħΩ/(M̄c²).
    pub fn fractional_frequency(&self) -> f64 {
        self.omega / (self.m_bar * self.c * self.c)
    }

    /// E_e(P) − E_g(P) from the two state-dependent dispersions (no P⁴ term).
    /// Uses M_e − M_g = Ω/c² to avoid cancelling the rest energies.
    pub fn transition_energy(&self, p: f64) -> f64 {
        let c2 = self.c * self.c;
        self.omega - p * p * self.omega / (2.0 * c2 * self.m_e * self.m_g)
    }

    /// ħΩ(1 − P²/(2M̄²c²)), the time-dilated clock splitting.
    pub fn transition_energy_clock(&self, p: f64) -> f64 {
        self.omega * (1.0 - p * p / (2.0 * self.m_bar * self.m_bar * self.c * self.c))
    }

    pub fn dispersion(&self, excited: bool, include_p4: bool) -> Dispersion {
        Dispersion {
            m_alpha: if excited { self.m_e } else { self.m_g },
            bare_mass: self.mass,
            e1: 0.0,
            light_shift: 0.0,
            c: self.c,
            include_p4,
        }
    }
}

pub const STRONTIUM88_MASS_DALTON: f64 = 87.905_612_257_1;
pub const STRONTIUM88_CLOCK_HZ: f64 = 429_228_004_229_873.0;

/// Clock reduction of two bound levels of a species.
pub fn reduce_to_clock(species: &SpeciesParams, beta_g: &QuantumNumbers, beta_e: &QuantumNumbers) -> Result<ClockParams> {
    beta_g.validate()?;
    beta_e.validate()?;
    if beta_g == beta_e {
        return Err(CoreError::Domain("clock states must differ".into()));
    }
    let e_g = energy0(species, beta_g.n)?;
    let e_e = energy0(species, beta_e.n)?;
    ClockParams::from_energies(species.total_mass(), e_g, e_e, species.c())
}

/// How the P⁴ correction enters the two Hamiltonians being compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum P4Treatment {
    /// Neither form carries a P⁴ term.
    Omitted,
    /// Both forms use −P⁴/(8M³c²); the term cancels identically.
    BareMass,
    /// The mean-mass form uses M̄³ instead of M³.
    MeanMass,
}

/// Per-state difference between the expanded Hamiltonian in (M, E_j⁽⁰⁾) and
/// in (M̄, ±ħΩ/2), returned as (ground, excited).
///
/// With x_j = E_j/(Mc²), η = (x_g + x_e)/2 and d_j = x_j − η the rest
/// energies agree exactly and the kinetic parts differ by
/// −(P²/2M)·η[η(1+η) + d_j(2+η)]/(1+η)², which is evaluated directly
/// because the naive subtraction cancels catastrophically.
pub fn equivalence_differences(params: &ClockParams, p: f64, p4: P4Treatment) -> [f64; 2] {
    let mc2 = params.mass * params.c * params.c;
    let eta = 0.5 * (params.e_g0 + params.e_e0) / mc2;
    let kinetic = p * p / (2.0 * params.mass);
    let one = 1.0 + eta;
    let p4_diff = match p4 {
        P4Treatment::Omitted | P4Treatment::BareMass => 0.0,
        // −P⁴/8M³c² + P⁴/8M̄³c² = (P⁴/8M³c²)((1+η)^−3 − 1)
        P4Treatment::MeanMass => {
            let base = p.powi(4) / (8.0 * params.mass.powi(3) * params.c * params.c);
            -base * eta * (3.0 + 3.0 * eta + eta * eta) / one.powi(3)
        }
    };
    [params.e_g0, params.e_e0].map(|e| {
        let d = e / mc2 - eta;
        -kinetic * eta * (eta * one + d * (2.0 + eta)) / (one * one) + p4_diff
    })
}

/// max_j |h_j(M, E_j) − h_j(M̄, ±ħΩ/2)| for a species with c multiplied by
/// `c_scale`. P is held fixed, so the residual falls off as c⁻⁴.
pub fn equivalence_residual(
    species: &SpeciesParams,
    beta_g: &QuantumNumbers,
    beta_e: &QuantumNumbers,
    p: f64,
    c_scale: f64,
) -> Result<f64> {
    equivalence_residual_with(species, beta_g, beta_e, p, c_scale, P4Treatment::Omitted)
}

pub fn equivalence_residual_with(
    species: &SpeciesParams,
    beta_g: &QuantumNumbers,
    beta_e: &QuantumNumbers,
    p: f64,
    c_scale: f64,
    p4: P4Treatment,
) -> Result<f64> {
    if !(c_scale > 0.0) {
        return Err(CoreError::Domain("c_scale must be positive".into()));
    }
    let scaled = species.with_speed_of_light(species.c() * c_scale)?;
    let params = reduce_to_clock(&scaled, beta_g, beta_e)?;
    let [g, e] = equivalence_differences(&params, p, p4);
    Ok(g.abs().max(e.abs()))
}

/// Ω′ = Ω[1 − (v/c)²/2].
pub fn doppler_shift(omega: f64, v: f64, c: f64) -> Result<f64> {
    if !(v.abs() < c) {
        return Err(CoreError::Domain(format!("|v| = {} must be below c = {c}", v.abs())));
    }
    Ok(omega * (1.0 + doppler_relative_shift(v, c)?))
}

/// (Ω′ − Ω)/Ω = −(v/c)²/2, without the rounding of forming Ω′ first.
pub fn doppler_relative_shift(v: f64, c: f64) -> Result<f64> {
    if !(v.abs() < c) {
        return Err(CoreError::Domain(format!("|v| = {} must be below c = {c}", v.abs())));
    }
    let beta = v / c;
    Ok(-0.5 * beta * beta)
}

/// Ω′ = Ω[1 − ⟨P²⟩/(2M̄²c²)] for a c.m. momentum distribution.
pub fn doppler_shift_expectation(omega: f64, p_sq_expectation: f64, m_bar: f64, c: f64) -> Result<f64> {
    if p_sq_expectation < 0.0 {
        return Err(CoreError::Domain("<P^2> must be non-negative".into()));
    }
    Ok(omega * (1.0 - 0.5 * p_sq_expectation / (m_bar * m_bar * c * c)))
}

/// Free Gaussian wave packet of a given state mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianPacket {
    pub mass: f64,
    pub x0: f64,
    pub sigma0: f64,
    pub p0: f64,
    pub t: f64,
}

impl GaussianPacket {
    pub fn at(self, t: f64) -> Self {
        Self { t, ..self }
    }

    pub fn center(&self) -> f64 {
        self.x0 + self.p0 / self.mass * self.t
    }

    /// σ(t) = σ₀√(1 + (t/(2mσ₀²))²).
    pub fn width(&self) -> f64 {
        let tau = self.t / (2.0 * self.mass * self.sigma0 * self.sigma0);
        self.sigma0 * tau.hypot(1.0)
    }

    /// |Ψ(x, t)|², normalized to one.
    pub fn density(&self, x: f64) -> f64 {
        let s = self.width();
        let u = (x - self.center()) / s;
        (-0.5 * u * u).exp() / (s * (2.0 * std::f64::consts::PI).sqrt())
    }

    /// Complex amplitude at time zero, used to seed grid solvers.
    pub fn initial_amplitude(&self, x: f64) -> num_complex::Complex64 {
        let u = (x - self.x0) / self.sigma0;
        let a = (2.0 * std::f64::consts::PI * self.sigma0 * self.sigma0).powf(-0.25);
        num_complex::Complex64::from_polar(a * (-0.25 * u * u).exp(), self.p0 * x)
    }
}

/// (center, width) of the packet at its stored time.
pub fn packet_evolve(packet: &GaussianPacket) -> Result<(f64, f64)> {
    if !(packet.sigma0 > 0.0 && packet.mass > 0.0) {
        return Err(CoreError::Domain("packet needs sigma0 > 0 and mass > 0".into()));
    }
    Ok((packet.center(), packet.width()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{HARTREE_IN_EV, SPEED_OF_LIGHT_AU};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{FromPrimitive, ToPrimitive};

    fn s1() -> QuantumNumbers {
        QuantumNumbers::new(1, 0, 0, 0, 0)
    }
    fn s2() -> QuantumNumbers {
        QuantumNumbers::new(2, 0, 0, 0, 0)
    }

    #[test]
    fn rest_dispersion() {
        let c = SPEED_OF_LIGHT_AU;
        assert_eq!(dispersion(3.0, 3.0, 0.25, 0.0, c, true), 3.0 * c * c + 0.25);
    }

    #[test]
    fn fountain_scale_p4_size() {
        let h = SpeciesParams::hydrogen();
        let m = h.total_mass();
        let c = h.c();
        let d = Dispersion {
            m_alpha: m,
            bare_mass: m,
            e1: 0.0,
            light_shift: 0.0,
            c,
            include_p4: true,
        };
        // (P⁴/8M³c²)/(P²/2M) = (v/c)²/4
        let rel = d.p4_relative_size(1e-7 * m * c);
        assert!((rel / 2.5e-15 - 1.0).abs() < 1e-12, "{rel}");
    }

    #[test]
    fn turnover_is_near_root_two_mc() {
        let h = SpeciesParams::hydrogen();
        let params = reduce_to_clock(&h, &s1(), &s2()).unwrap();
        let d = params.dispersion(true, true);
        let analytic = d.turnover().unwrap();
        let numeric = d.turnover_numeric().unwrap();
        assert!((numeric / analytic - 1.0).abs() < 1e-12);
        let mc = 2f64.sqrt() * params.mass * params.c;
        assert!((analytic / mc - 1.0).abs() < 1e-8);
        for k in 1..100 {
            let p = analytic * f64::from(k) / 100.0;
            assert!(d.group_velocity(p) > 0.0);
        }
    }

    #[test]
    fn hydrogen_one_s_two_s() {
        let h = SpeciesParams::hydrogen();
        let params = reduce_to_clock(&h, &s1(), &s2()).unwrap();
        let ev = params.omega * HARTREE_IN_EV;
        assert!((ev - 10.20).abs() < 0.01, "{ev}");
        assert!(params.m_g < params.m_bar && params.m_bar < params.m_e);
        assert_eq!(params.clock_eigenvalues(), [-params.omega / 2.0, params.omega / 2.0]);
        assert!(reduce_to_clock(&h, &s1(), &s1()).is_err());
        assert!(reduce_to_clock(&h, &s2(), &s1()).is_err());
    }

    #[test]
    fn symmetric_levels_leave_mass_unchanged() {
        let p = ClockParams::from_energies(100.0, -0.3, 0.3, 137.0).unwrap();
        assert_eq!(p.m_bar, 100.0);
    }

    #[test]
    fn strontium_fractional_frequency() {
        let sr = ClockParams::strontium88();
        assert!((sr.omega * HARTREE_IN_EV - 1.775).abs() < 1e-3);
        let f = sr.fractional_frequency();
        assert!((f / 2.2e-11 - 1.0).abs() < 0.05, "{f}");
    }

    #[test]
    fn mass_reexpansion() {
        let h = SpeciesParams::hydrogen();
        let p = reduce_to_clock(&h, &s1(), &QuantumNumbers::new(3, 2, 1, 3, 0)).unwrap();
        let c2 = p.c * p.c;
        let bound = 10.0 * p.fractional_frequency().powi(2);
        let g = (p.mass * (1.0 + p.e_g0 / (p.mass * c2)) - (p.m_bar - p.omega / (2.0 * c2))).abs();
        let e = (p.mass * (1.0 + p.e_e0 / (p.mass * c2)) - (p.m_bar + p.omega / (2.0 * c2))).abs();
        assert!(g / p.mass < bound && e / p.mass < bound);
    }

    #[test]
    fn equal_momentum_splitting() {
        let h = SpeciesParams::hydrogen();
        let p = reduce_to_clock(&h, &s1(), &s2()).unwrap();
        let mom = 1e-3 * p.mass * p.c;
        let exact = p.dispersion(true, false).energy(mom) - p.dispersion(false, false).energy(mom);
        let stable = p.transition_energy(mom);
        let clock = p.transition_energy_clock(mom);
        // the rest energies are ~1e11 Eh, so the direct difference keeps ~5 digits
        assert!((exact - stable).abs() < 1e-4);
        assert!(((stable - clock) / p.omega).abs() < 1e-20);
    }

    #[test]
    fn zero_momentum_residual_vanishes() {
        let h = SpeciesParams::hydrogen();
        assert_eq!(equivalence_residual(&h, &s1(), &s2(), 0.0, 1.0).unwrap(), 0.0);
    }

    fn exact_difference(params: &ClockParams, p: f64, state: usize) -> f64 {
        let q = |x: f64| BigRational::from_f64(x).unwrap();
        let two = BigRational::from_integer(BigInt::from(2));
        let one = BigRational::from_integer(BigInt::from(1));
        let (m, c2, p2) = (q(params.mass), q(params.c) * q(params.c), q(p) * q(p));
        let (eg, ee) = (q(params.e_g0), q(params.e_e0));
        let e = if state == 0 { eg.clone() } else { ee.clone() };
        let m_bar = &m + (&eg + &ee) / (&two * &c2);
        let half = (&ee - &eg) / &two;
        let eps = if state == 0 { -half } else { half };
        let form1 = &m * &c2 + &e + &p2 / (&two * &m) * (&one - &e / (&m * &c2));
        let form2 = &m_bar * &c2 + &eps + &p2 / (&two * &m_bar) * (&one - &eps / (&m_bar * &c2));
        (form1 - form2).to_f64().unwrap()
    }

    #[test]
    fn stable_residual_matches_exact_rationals() {
        let h = SpeciesParams::hydrogen();
        for scale in [1.0, 2.0, 4.0, 8.0] {
            let sp = h.with_speed_of_light(h.c() * scale).unwrap();
            let params = reduce_to_clock(&sp, &s1(), &s2()).unwrap();
            for p in [0.1, 3.0, 40.0] {
                let stable = equivalence_differences(&params, p, P4Treatment::Omitted);
                for (j, st) in stable.into_iter().enumerate() {
                    let exact = exact_difference(&params, p, j);
                    assert!(((st - exact) / exact).abs() < 1e-10, "{scale} {p} {j}: {st} {exact}");
                }
            }
        }
    }

    #[test]
    fn residual_scales_as_inverse_fourth_power() {
        let h = SpeciesParams::hydrogen();
        for p4 in [P4Treatment::Omitted, P4Treatment::BareMass, P4Treatment::MeanMass] {
            let r1 = equivalence_residual_with(&h, &s1(), &s2(), 5.0, 1.0, p4).unwrap();
            let r2 = equivalence_residual_with(&h, &s1(), &s2(), 5.0, 2.0, p4).unwrap();
            let exponent = (r1 / r2).log2();
            assert!((exponent - 4.0).abs() < 0.1, "{p4:?}: {exponent}");
        }
    }

    #[test]
    fn residual_small_against_clock_frequency() {
        let h = SpeciesParams::hydrogen();
        let params = reduce_to_clock(&h, &s1(), &s2()).unwrap();
        // room-temperature thermal momentum
        let p = (params.mass * 300.0 / crate::constants::HARTREE_IN_KELVIN).sqrt();
        let r = equivalence_residual(&h, &s1(), &s2(), p, 1.0).unwrap();
        let beta2 = (p / (params.mass * params.c)).powi(2);
        assert!(r / params.omega < 1e-3 * beta2);
    }

    #[test]
    fn doppler_examples() {
        let c = SPEED_OF_LIGHT_AU;
        assert_eq!(doppler_shift(2.0, 0.0, c).unwrap(), 2.0);
        let rel = doppler_relative_shift(0.03 * c, c).unwrap();
        assert!((rel / -4.5e-4 - 1.0).abs() < 1e-15, "{rel}");
        let shifted = doppler_shift(1.0, 0.03 * c, c).unwrap();
        assert!((shifted + 0.5 * (0.03f64).powi(2) - 1.0).abs() <= f64::EPSILON);
        assert!(doppler_shift(1.0, c, c).is_err());
        assert!(doppler_shift(1.0, -2.0 * c, c).is_err());
        // thermal 1D ensemble, <P²> = M̄ kT
        let (m_bar, kt, c) = (2.0, 1e-3, 3.0);
        let w = doppler_shift_expectation(1.0, m_bar * kt, m_bar, c).unwrap();
        assert!(((1.0 - w) / (kt / (2.0 * m_bar * c * c)) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn packets() {
        let h = SpeciesParams::hydrogen();
        let p = reduce_to_clock(&h, &s1(), &s2()).unwrap();
        let g = GaussianPacket {
            mass: p.m_g,
            x0: 1.0,
            sigma0: 2.0,
            p0: 3.0,
            t: 0.0,
        };
        let e = GaussianPacket { mass: p.m_e, ..g };
        assert_eq!(packet_evolve(&g).unwrap(), (1.0, 2.0));
        let t = 1e12;
        let (cg, wg) = packet_evolve(&g.at(t)).unwrap();
        let (ce, we) = packet_evolve(&e.at(t)).unwrap();
        assert!(cg > ce && wg > we);
        let ratio = ((cg - 1.0) / (ce - 1.0)) / (p.m_e / p.m_g);
        assert!((ratio - 1.0).abs() < 1e-12);
        let long = e.at(1e20);
        let w_ratio = g.at(1e20).width() / long.width();
        assert!((w_ratio / (p.m_e / p.m_g) - 1.0).abs() < 1e-12);
        assert!(packet_evolve(&GaussianPacket { sigma0: 0.0, ..g }).is_err());
    }
}
