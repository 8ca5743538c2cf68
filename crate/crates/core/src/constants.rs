//! Physical constants, the atomic unit system and species construction.
//!
//! Everything inside the library is expressed in Hartree atomic units
//! (ħ = mₑ = e = 4πε₀ = 1, c = 1/α). Conversions to laboratory units happen
//! only at the I/O boundary through [`convert`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Identifier of the pinned constants table.
pub const CONSTANTS_VERSION: &str = "CODATA-2018";

/// Fine-structure constant.
pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;
/// Speed of light in atomic units, exactly 1/α.
pub const SPEED_OF_LIGHT_AU: f64 = 1.0 / FINE_STRUCTURE;

pub const SPEED_OF_LIGHT_SI: f64 = 299_792_458.0;
pub const HBAR_SI: f64 = 1.054_571_817e-34;
pub const PLANCK_SI: f64 = 6.626_070_15e-34;
pub const VACUUM_PERMITTIVITY_SI: f64 = 8.854_187_812_8e-12;
pub const ELEMENTARY_CHARGE_SI: f64 = 1.602_176_634e-19;
pub const BOLTZMANN_SI: f64 = 1.380_649e-23;
pub const ELECTRON_MASS_SI: f64 = 9.109_383_701_5e-31;

pub const HARTREE_IN_EV: f64 = 27.211_386_245_988;
pub const HARTREE_IN_JOULE: f64 = 4.359_744_722_207_1e-18;
/// Hartree energy divided by Planck's constant.
pub const HARTREE_IN_HZ: f64 = 6.579_683_920_502e15;
/// Hartree energy divided by Boltzmann's constant.
pub const HARTREE_IN_KELVIN: f64 = 3.157_750_248_040_7e5;
pub const BOHR_IN_METER: f64 = 5.291_772_109_03e-11;
pub const ATOMIC_TIME_IN_SECOND: f64 = 2.418_884_326_585_7e-17;
pub const ATOMIC_VELOCITY_IN_METER_PER_SECOND: f64 = 2.187_691_263_64e6;
pub const ATOMIC_MOMENTUM_IN_SI: f64 = 1.992_851_914_10e-24;

/// Proton-to-electron mass ratio.
pub const PROTON_ELECTRON_MASS_RATIO: f64 = 1_836.152_673_43;
/// Alpha-particle-to-electron mass ratio.
pub const ALPHA_PARTICLE_ELECTRON_MASS_RATIO: f64 = 7_294.299_541_42;
/// Unified atomic mass unit in electron masses.
pub const DALTON_IN_ELECTRON_MASS: f64 = 1_822.888_486_209;

/// Electron anomalous magnetic moment (g−2)/2.
pub const ELECTRON_ANOMALY: f64 = 1.159_652_181_28e-3;
/// Proton anomalous magnetic moment μ_p/μ_N − 1.
pub const PROTON_ANOMALY: f64 = 1.792_847_344_63;

/// The pinned constants table, serializable for fixture dumps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub alpha: f64,
    /// Speed of light in atomic units.
    pub c: f64,
    /// Reduced Planck constant in atomic units.
    pub hbar: f64,
    /// Vacuum permittivity in atomic units (4πε₀ = 1).
    pub eps0: f64,
    pub c_si: f64,
    pub hbar_si: f64,
    pub eps0_si: f64,
    pub electron_mass_si: f64,
    pub elementary_charge_si: f64,
    pub hartree_in_ev: f64,
    pub hartree_in_joule: f64,
    pub hartree_in_hz: f64,
    pub hartree_in_kelvin: f64,
    pub bohr_in_meter: f64,
    pub atomic_time_in_second: f64,
    pub atomic_velocity_in_si: f64,
    pub atomic_momentum_in_si: f64,
    pub proton_electron_mass_ratio: f64,
    pub alpha_particle_electron_mass_ratio: f64,
    pub dalton_in_electron_mass: f64,
    pub electron_anomaly: f64,
    pub proton_anomaly: f64,
}

impl PhysicalConstants {
    pub const fn codata2018() -> Self {
        Self {
            alpha: FINE_STRUCTURE,
            c: SPEED_OF_LIGHT_AU,
            hbar: 1.0,
            eps0: 1.0 / (4.0 * std::f64::consts::PI),
            c_si: SPEED_OF_LIGHT_SI,
            hbar_si: HBAR_SI,
            eps0_si: VACUUM_PERMITTIVITY_SI,
            electron_mass_si: ELECTRON_MASS_SI,
            elementary_charge_si: ELEMENTARY_CHARGE_SI,
            hartree_in_ev: HARTREE_IN_EV,
            hartree_in_joule: HARTREE_IN_JOULE,
            hartree_in_hz: HARTREE_IN_HZ,
            hartree_in_kelvin: HARTREE_IN_KELVIN,
            bohr_in_meter: BOHR_IN_METER,
            atomic_time_in_second: ATOMIC_TIME_IN_SECOND,
            atomic_velocity_in_si: ATOMIC_VELOCITY_IN_METER_PER_SECOND,
            atomic_momentum_in_si: ATOMIC_MOMENTUM_IN_SI,
            proton_electron_mass_ratio: PROTON_ELECTRON_MASS_RATIO,
            alpha_particle_electron_mass_ratio: ALPHA_PARTICLE_ELECTRON_MASS_RATIO,
            dalton_in_electron_mass: DALTON_IN_ELECTRON_MASS,
            electron_anomaly: ELECTRON_ANOMALY,
            proton_anomaly: PROTON_ANOMALY,
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

/// Versioned wrapper used by `constants --dump`.
#[derive(Debug, Clone, Serialize)]
pub struct ConstantsTable {
    pub version: &'static str,
    pub unit_system: &'static str,
    pub constants: PhysicalConstants,
}

pub fn constants_table() -> ConstantsTable {
    ConstantsTable {
        version: CONSTANTS_VERSION,
        unit_system: "hartree-atomic",
        constants: PhysicalConstants::codata2018(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Energy,
    Length,
    Time,
    Mass,
    Momentum,
    Velocity,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Dimension::Energy => "energy",
            Dimension::Length => "length",
            Dimension::Time => "time",
            Dimension::Mass => "mass",
            Dimension::Momentum => "momentum",
            Dimension::Velocity => "velocity",
        };
        f.write_str(s)
    }
}

/// Units understood at the I/O boundary. Frequency-like units (Hz, K) are
/// energy equivalents E/h and E/k_B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unit {
    Hartree,
    ElectronVolt,
    MilliElectronVolt,
    Joule,
    Hertz,
    MegaHertz,
    GigaHertz,
    Kelvin,
    Bohr,
    Meter,
    Nanometer,
    Angstrom,
    AtomicTime,
    Second,
    Millisecond,
    Microsecond,
    ElectronMass,
    Kilogram,
    Dalton,
    AtomicMomentum,
    KilogramMeterPerSecond,
    AtomicVelocity,
    MeterPerSecond,
    /// Velocity as a fraction of the speed of light.
    SpeedOfLight,
}

impl Unit {
    pub const ALL: [Unit; 24] = [
        Unit::Hartree,
        Unit::ElectronVolt,
        Unit::MilliElectronVolt,
        Unit::Joule,
        Unit::Hertz,
        Unit::MegaHertz,
        Unit::GigaHertz,
        Unit::Kelvin,
        Unit::Bohr,
        Unit::Meter,
        Unit::Nanometer,
        Unit::Angstrom,
        Unit::AtomicTime,
        Unit::Second,
        Unit::Millisecond,
        Unit::Microsecond,
        Unit::ElectronMass,
        Unit::Kilogram,
        Unit::Dalton,
        Unit::AtomicMomentum,
        Unit::KilogramMeterPerSecond,
        Unit::AtomicVelocity,
        Unit::MeterPerSecond,
        Unit::SpeedOfLight,
    ];

    pub fn dimension(self) -> Dimension {
        use Unit::*;
        match self {
            Hartree | ElectronVolt | MilliElectronVolt | Joule | Hertz | MegaHertz | GigaHertz
            | Kelvin => Dimension::Energy,
            Bohr | Meter | Nanometer | Angstrom => Dimension::Length,
            AtomicTime | Second | Millisecond | Microsecond => Dimension::Time,
            ElectronMass | Kilogram | Dalton => Dimension::Mass,
            AtomicMomentum | KilogramMeterPerSecond => Dimension::Momentum,
            AtomicVelocity | MeterPerSecond | SpeedOfLight => Dimension::Velocity,
        }
    }

    /// Size of one of this unit expressed in atomic units.
    pub fn in_atomic_units(self) -> f64 {
        use Unit::*;
        match self {
            Hartree | Bohr | AtomicTime | ElectronMass | AtomicMomentum | AtomicVelocity => 1.0,
            ElectronVolt => 1.0 / HARTREE_IN_EV,
            MilliElectronVolt => 1e-3 / HARTREE_IN_EV,
            Joule => 1.0 / HARTREE_IN_JOULE,
            Hertz => 1.0 / HARTREE_IN_HZ,
            MegaHertz => 1e6 / HARTREE_IN_HZ,
            GigaHertz => 1e9 / HARTREE_IN_HZ,
            Kelvin => 1.0 / HARTREE_IN_KELVIN,
            Meter => 1.0 / BOHR_IN_METER,
            Nanometer => 1e-9 / BOHR_IN_METER,
            Angstrom => 1e-10 / BOHR_IN_METER,
            Second => 1.0 / ATOMIC_TIME_IN_SECOND,
            Millisecond => 1e-3 / ATOMIC_TIME_IN_SECOND,
            Microsecond => 1e-6 / ATOMIC_TIME_IN_SECOND,
            Kilogram => 1.0 / ELECTRON_MASS_SI,
            Dalton => DALTON_IN_ELECTRON_MASS,
            KilogramMeterPerSecond => 1.0 / ATOMIC_MOMENTUM_IN_SI,
            MeterPerSecond => 1.0 / ATOMIC_VELOCITY_IN_METER_PER_SECOND,
            SpeedOfLight => SPEED_OF_LIGHT_AU,
        }
    }

    /// The SI unit of the same dimension (energy-equivalents map to joule).
    pub fn si_counterpart(self) -> Unit {
        match self.dimension() {
            Dimension::Energy => Unit::Joule,
            Dimension::Length => Unit::Meter,
            Dimension::Time => Unit::Second,
            Dimension::Mass => Unit::Kilogram,
            Dimension::Momentum => Unit::KilogramMeterPerSecond,
            Dimension::Velocity => Unit::MeterPerSecond,
        }
    }

    /// The atomic unit of the same dimension.
    pub fn atomic_counterpart(self) -> Unit {
        match self.dimension() {
            Dimension::Energy => Unit::Hartree,
            Dimension::Length => Unit::Bohr,
            Dimension::Time => Unit::AtomicTime,
            Dimension::Mass => Unit::ElectronMass,
            Dimension::Momentum => Unit::AtomicMomentum,
            Dimension::Velocity => Unit::AtomicVelocity,
        }
    }

    pub fn symbol(self) -> &'static str {
        use Unit::*;
        match self {
            Hartree => "Eh",
            ElectronVolt => "eV",
            MilliElectronVolt => "meV",
            Joule => "J",
            Hertz => "Hz",
            MegaHertz => "MHz",
            GigaHertz => "GHz",
            Kelvin => "K",
            Bohr => "a0",
            Meter => "m",
            Nanometer => "nm",
            Angstrom => "angstrom",
            AtomicTime => "t_au",
            Second => "s",
            Millisecond => "ms",
            Microsecond => "us",
            ElectronMass => "me",
            Kilogram => "kg",
            Dalton => "u",
            AtomicMomentum => "p_au",
            KilogramMeterPerSecond => "kg*m/s",
            AtomicVelocity => "v_au",
            MeterPerSecond => "m/s",
            SpeedOfLight => "c",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Unit {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        let unit = match s.trim() {
            "Eh" | "hartree" | "Hartree" => Unit::Hartree,
            "eV" | "ev" => Unit::ElectronVolt,
            "meV" => Unit::MilliElectronVolt,
            "J" => Unit::Joule,
            "Hz" => Unit::Hertz,
            "MHz" => Unit::MegaHertz,
            "GHz" => Unit::GigaHertz,
            "K" => Unit::Kelvin,
            "a0" | "bohr" => Unit::Bohr,
            "m" => Unit::Meter,
            "nm" => Unit::Nanometer,
            "angstrom" | "Å" => Unit::Angstrom,
            "t_au" => Unit::AtomicTime,
            "s" => Unit::Second,
            "ms" => Unit::Millisecond,
            "us" | "µs" => Unit::Microsecond,
            "me" | "m_e" => Unit::ElectronMass,
            "kg" => Unit::Kilogram,
            "u" | "Da" => Unit::Dalton,
            "p_au" => Unit::AtomicMomentum,
            "kg*m/s" => Unit::KilogramMeterPerSecond,
            "v_au" => Unit::AtomicVelocity,
            "m/s" => Unit::MeterPerSecond,
            "c" => Unit::SpeedOfLight,
            other => return Err(CoreError::UnknownUnit(other.to_string())),
        };
        Ok(unit)
    }
}

/// Converts `value` from one unit to another of the same dimension.
pub fn convert(value: f64, from: Unit, to: Unit) -> Result<f64> {
    if from.dimension() != to.dimension() {
        return Err(CoreError::Unit {
            from: from.to_string(),
            from_dim: from.dimension().to_string(),
            to: to.to_string(),
            to_dim: to.dimension().to_string(),
        });
    }
    if from == to {
        return Ok(value);
    }
    Ok(value * from.in_atomic_units() / to.in_atomic_units())
}

/// Parses `"<number> [unit]"`; a bare number is taken in `default` units and
/// the result is returned in atomic units of `default`'s dimension.
pub fn parse_quantity(text: &str, default: Unit) -> Result<f64> {
    let text = text.trim();
    let split = text
        .find(|c: char| c.is_whitespace())
        .unwrap_or(text.len());
    let (number, unit) = text.split_at(split);
    let value: f64 = number
        .parse()
        .map_err(|_| CoreError::Domain(format!("'{number}' is not a number")))?;
    let unit = if unit.trim().is_empty() {
        default
    } else {
        unit.parse()?
    };
    convert(value, unit, default.atomic_counterpart())
}

/// One hydrogenlike composite: a nucleus of charge +Ze bound to an electron.
///
/// Masses are in electron masses and `c` is the speed of light used by every
/// relativistic correction (it defaults to 1/α and may be rescaled to probe
/// the c⁻² structure of the theory).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpeciesParams {
    m_e: f64,
    m_n: f64,
    z: u32,
    c: f64,
    total_mass: f64,
    reduced_mass: f64,
    mass_difference: f64,
}

/// Builds a species from constituent masses and nuclear charge number.
pub fn make_species(m_e: f64, m_n: f64, z: u32) -> Result<SpeciesParams> {
    if !(m_e > 0.0 && m_e.is_finite()) {
        return Err(CoreError::Domain(format!("electron mass must be positive, got {m_e}")));
    }
    if !(m_n > 0.0 && m_n.is_finite()) {
        return Err(CoreError::Domain(format!("nucleus mass must be positive, got {m_n}")));
    }
    if z < 1 {
        return Err(CoreError::Domain("nuclear charge number Z must be at least 1".into()));
    }
    let total_mass = m_e + m_n;
    Ok(SpeciesParams {
        m_e,
        m_n,
        z,
        c: SPEED_OF_LIGHT_AU,
        total_mass,
        reduced_mass: m_e * m_n / total_mass,
        mass_difference: m_n - m_e,
    })
}

impl SpeciesParams {
    pub fn hydrogen() -> Self {
        make_species(1.0, PROTON_ELECTRON_MASS_RATIO, 1).expect("valid preset")
    }

    /// Hydrogenlike helium ion He⁺.
    pub fn helium_ion() -> Self {
        make_species(1.0, ALPHA_PARTICLE_ELECTRON_MASS_RATIO, 2).expect("valid preset")
    }

    /// Equal-mass bound state (positronium-like).
    pub fn positronium() -> Self {
        make_species(1.0, 1.0, 1).expect("valid preset")
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "hydrogen" | "h" => Ok(Self::hydrogen()),
            "helium-ion" | "helium_ion" | "he+" => Ok(Self::helium_ion()),
            "positronium" | "ps" => Ok(Self::positronium()),
            other => Err(CoreError::Domain(format!(
                "unknown species preset '{other}' (expected hydrogen, helium-ion or positronium)"
            ))),
        }
    }

    /// Same species with a different speed of light.
    pub fn with_speed_of_light(mut self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(CoreError::Domain(format!("speed of light must be positive, got {c}")));
        }
        self.c = c;
        Ok(self)
    }

    pub fn electron_mass(&self) -> f64 {
        self.m_e
    }
    pub fn nucleus_mass(&self) -> f64 {
        self.m_n
    }
    pub fn z(&self) -> u32 {
        self.z
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    /// Effective coupling 1/c entering the Wilson-coefficient contact terms.
    pub fn alpha(&self) -> f64 {
        1.0 / self.c
    }
    /// M = mₑ + mₙ.
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }
    /// m_r = mₑ mₙ / M.
    pub fn reduced_mass(&self) -> f64 {
        self.reduced_mass
    }
    /// Δm = mₙ − mₑ.
    pub fn mass_difference(&self) -> f64 {
        self.mass_difference
    }
    pub fn electron_charge(&self) -> f64 {
        -1.0
    }
    pub fn nucleus_charge(&self) -> f64 {
        f64::from(self.z)
    }
    /// Q = qₙ + qₑ = (Z − 1)e.
    pub fn total_charge(&self) -> f64 {
        f64::from(self.z) - 1.0
    }
    /// Reduced Bohr length a_Z = 1/(Z m_r).
    pub fn bohr_length(&self) -> f64 {
        1.0 / (f64::from(self.z) * self.reduced_mass)
    }
    /// Rest energy Mc².
    pub fn rest_energy(&self) -> f64 {
        self.total_mass * self.c * self.c
    }
}
