//! Closed-form internal-state energetics of a hydrogenlike coboson.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constants::{SpeciesParams, ELECTRON_ANOMALY, PROTON_ANOMALY};
use crate::error::{CoreError, Result};

/// Internal-state label β = (n, ℓ, S, j, m_j).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub ell: u32,
    #[serde(rename = "S")]
    pub s: u32,
    pub j: u32,
    pub m_j: i32,
}

impl QuantumNumbers {
    pub const fn new(n: u32, ell: u32, s: u32, j: u32, m_j: i32) -> Self {
        Self { n, ell, s, j, m_j }
    }

    /// Checks the coupling rules. The error message names the broken rule.
    pub fn validate(&self) -> Result<()> {
        let QuantumNumbers { n, ell, s, j, m_j } = *self;
        if n < 1 {
            return Err(CoreError::Validation("principal quantum number n must be >= 1".into()));
        }
        if ell >= n {
            return Err(CoreError::Validation(format!(
                "orbital quantum number must satisfy 0 <= l <= n-1 (got l={ell}, n={n})"
            )));
        }
        match s {
            0 => {
                if j != ell {
                    return Err(CoreError::Validation(format!(
                        "singlet S=0 requires j=l (got j={j}, l={ell})"
                    )));
                }
            }
            1 => {
                if ell == 0 && j != 1 {
                    return Err(CoreError::Validation(format!(
                        "triplet with l=0 requires j=1 since j in {{l-1, l}} needs l>=1 (got j={j})"
                    )));
                }
                if j + 1 != ell && j != ell && j != ell + 1 {
                    return Err(CoreError::Validation(format!(
                        "triplet S=1 requires j in {{l-1, l, l+1}} (got j={j}, l={ell})"
                    )));
                }
            }
            _ => {
                return Err(CoreError::Validation(format!(
                    "total spin S must be 0 or 1 (got S={s})"
                )))
            }
        }
        if m_j.unsigned_abs() > j {
            return Err(CoreError::Validation(format!(
                "magnetic quantum number must satisfy |m_j| <= j (got m_j={m_j}, j={j})"
            )));
        }
        Ok(())
    }

    /// All valid states with the given principal quantum number, in
    /// (ℓ, S, j, m_j) order.
    pub fn enumerate(n: u32) -> Vec<QuantumNumbers> {
        let mut out = Vec::new();
        for ell in 0..n {
            out.extend(allowed_j(0, ell).into_iter().flat_map(|j| magnetic(n, ell, 0, j)));
            out.extend(allowed_j(1, ell).into_iter().flat_map(|j| magnetic(n, ell, 1, j)));
        }
        out
    }
}

fn allowed_j(s: u32, ell: u32) -> Vec<u32> {
    match (s, ell) {
        (0, _) => vec![ell],
        (_, 0) => vec![1],
        _ => vec![ell - 1, ell, ell + 1],
    }
}

fn magnetic(n: u32, ell: u32, s: u32, j: u32) -> impl Iterator<Item = QuantumNumbers> {
    let j_i = j as i32;
    (-j_i..=j_i).map(move |m| QuantumNumbers::new(n, ell, s, j, m))
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(n={}, l={}, S={}, j={}, m_j={})",
            self.n, self.ell, self.s, self.j, self.m_j
        )
    }
}

/// Shorthand used across the crate.
pub fn validate(beta: &QuantumNumbers) -> Result<()> {
    beta.validate()
}

/// Coupling coefficient α_{j,S,m_S} of |ℓ, m_j − m_S⟩ χ_{S,m_S} in the
/// |n j m_j ℓ S⟩ state. Returns 0 outside the support of the row.
pub fn clebsch_gordan(j: u32, s: u32, m_s: i32, ell: u32, m_j: i32) -> Result<f64> {
    let row_ok = match s {
        0 => j == ell,
        1 => j == ell + 1 || (ell >= 1 && (j == ell || j + 1 == ell)),
        _ => false,
    };
    if !row_ok {
        return Err(CoreError::Domain(format!(
            "no coupling row for (j={j}, S={s}) at l={ell}"
        )));
    }
    if m_s.unsigned_abs() > s || m_j.unsigned_abs() > j || (m_j - m_s).unsigned_abs() > ell {
        return Ok(0.0);
    }
    if s == 0 {
        return Ok(1.0);
    }
    let l = f64::from(ell);
    let m = f64::from(m_j);
    let root = |num: f64, den: f64| (num.max(0.0) / den).sqrt();
    let value = if j == ell + 1 {
        let den = (l + 1.0) * (2.0 * l + 1.0);
        match m_s {
            1 => root((l + m) * (l + m + 1.0), 2.0 * den),
            0 => root((l - m + 1.0) * (l + m + 1.0), den),
            _ => root((l - m) * (l - m + 1.0), 2.0 * den),
        }
    } else if j == ell {
        let den = l * (l + 1.0);
        match m_s {
            1 => root((l + m) * (l - m + 1.0), 2.0 * den),
            0 => -m / den.sqrt(),
            _ => -root((l - m) * (l + m + 1.0), 2.0 * den),
        }
    } else {
        let den = l * (2.0 * l + 1.0);
        match m_s {
            1 => root((l - m) * (l - m + 1.0), 2.0 * den),
            0 => -root((l - m) * (l + m), den),
            _ => root((l + m) * (l + m + 1.0), 2.0 * den),
        }
    };
    Ok(value)
}

/// Unperturbed level E⁽⁰⁾ₙ = −m_r Z²/(2n²) Hartree.
pub fn energy0(species: &SpeciesParams, n: u32) -> Result<f64> {
    if n < 1 {
        return Err(CoreError::Domain("principal quantum number n must be >= 1".into()));
    }
    let z = f64::from(species.z());
    let n = f64::from(n);
    Ok(-species.reduced_mass() * z * z / (2.0 * n * n))
}

/// High-energy matching coefficients of both constituents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WilsonCoefficients {
    pub c_f_e: f64,
    pub c_f_n: f64,
    pub c_d_e: f64,
    pub c_d_n: f64,
    pub c_s_e: f64,
    pub c_s_n: f64,
    /// Magnetic-field coefficients; stored but not used by the energy shift.
    pub c_w1_e: f64,
    pub c_w1_n: f64,
    pub c_a1_e: f64,
    pub c_a1_n: f64,
    pub d1_en: f64,
    pub d1_ne: f64,
    pub d2_en: f64,
    pub d2_ne: f64,
}

impl WilsonCoefficients {
    /// Every c̄ equal to one and no contact terms.
    pub const fn pure() -> Self {
        Self {
            c_f_e: 1.0,
            c_f_n: 1.0,
            c_d_e: 1.0,
            c_d_n: 1.0,
            c_s_e: 1.0,
            c_s_n: 1.0,
            c_w1_e: 1.0,
            c_w1_n: 1.0,
            c_a1_e: 1.0,
            c_a1_n: 1.0,
            d1_en: 0.0,
            d1_ne: 0.0,
            d2_en: 0.0,
            d2_ne: 0.0,
        }
    }

    /// Tree level with anomalous moments: c̄_F = 1 + a/Z per constituent,
    /// where the electron has unit charge number.
    pub fn tree_level(a_e: f64, a_n: f64, z: u32) -> Self {
        Self {
            c_f_e: 1.0 + a_e,
            c_f_n: 1.0 + a_n / f64::from(z),
            ..Self::pure()
        }
    }

    /// Electron and proton anomalous moments.
    pub fn hydrogen() -> Self {
        Self::tree_level(ELECTRON_ANOMALY, PROTON_ANOMALY, 1)
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "pure" | "bare" => Ok(Self::pure()),
            "hydrogen" | "tree" => Ok(Self::hydrogen()),
            other => Err(CoreError::Domain(format!(
                "unknown Wilson preset '{other}' (expected pure or hydrogen)"
            ))),
        }
    }
}

impl Default for WilsonCoefficients {
    fn default() -> Self {
        Self::pure()
    }
}

/// Low-energy coefficients α_v of the relative-motion corrections.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaCoefficients {
    pub alpha_d: f64,
    pub alpha_ls_total: f64,
    pub alpha_ls_relative: f64,
    pub alpha_ss: f64,
}

pub fn alpha_coefficients(w: &WilsonCoefficients, species: &SpeciesParams) -> AlphaCoefficients {
    let (me, mn) = (species.electron_mass(), species.nucleus_mass());
    let m = species.total_mass();
    let mr = species.reduced_mass();
    let z_alpha_pi = std::f64::consts::PI * f64::from(species.z()) * species.alpha();
    AlphaCoefficients {
        alpha_d: (mn * mn * w.c_d_e + me * me * w.c_d_n) / (2.0 * mr * m)
            + (w.d1_en + w.d1_ne) / z_alpha_pi,
        alpha_ls_total: (me * w.c_f_e + mn * w.c_f_n) / m + (me * w.c_s_n + mn * w.c_s_e) / (2.0 * m),
        alpha_ls_relative: w.c_f_e - w.c_f_n
            + (w.c_s_e * mn * mn - w.c_s_n * me * me) / (2.0 * mr * m),
        alpha_ss: 8.0 / 3.0 * w.c_f_n * w.c_f_e - 4.0 * (w.d2_en + w.d2_ne) / z_alpha_pi,
    }
}

/// Combined spin-orbit and tensor coefficient C_{j,ℓ} for triplet states.
pub fn c_jl(w: &WilsonCoefficients, species: &SpeciesParams, j: u32, ell: u32) -> Result<f64> {
    if ell == 0 {
        return Err(CoreError::Domain(
            "C_{j,l} is only defined for l >= 1 triplet states".into(),
        ));
    }
    let a = alpha_coefficients(w, species);
    let spin_orbit =
        a.alpha_ls_total + species.mass_difference() / (2.0 * species.total_mass()) * a.alpha_ls_relative;
    let f = w.c_f_e * w.c_f_n;
    let l = f64::from(ell);
    if j == ell + 1 {
        Ok(l / (2.0 * l + 3.0) * (2.0 * (2.0 * l + 3.0) * spin_orbit - f))
    } else if j == ell {
        Ok(-2.0 * spin_orbit + f)
    } else if j + 1 == ell {
        Ok(-(l + 1.0) / (2.0 * l - 1.0) * (2.0 * (2.0 * l - 1.0) * spin_orbit + f))
    } else {
        Err(CoreError::Domain(format!("j={j} cannot couple with l={ell} and S=1")))
    }
}

/// Common prefactor m_r² c² (Zα)⁴ / M = m_r² Z⁴ / (M c²).
pub fn energy1_prefactor(species: &SpeciesParams) -> f64 {
    let z2 = f64::from(species.z()).powi(2);
    let mr = species.reduced_mass();
    let c = species.c();
    mr * mr * z2 * z2 / (species.total_mass() * c * c)
}

/// First-order shift split by physical origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Energy1Terms {
    pub kinetic: f64,
    pub orbit: f64,
    pub darwin: f64,
    pub contact: f64,
    /// Spin-orbit plus magnetic dipole-dipole (the C_{j,ℓ} term).
    pub spin_structure: f64,
}

impl Energy1Terms {
    pub fn total(&self) -> f64 {
        self.kinetic + self.orbit + self.darwin + self.contact + self.spin_structure
    }
}

/// First-order shift ⟨β|h⁽¹⁾|β⟩ in closed form.
///
/// The ℓ = 0 orbit term carries an extra δ_{ℓ0}/n³ piece and the C_{j,ℓ}
/// term is weighted by (1 − δ_{ℓ0})/n³; see [`energy1_printed`] for the
/// variant without these and the README for how they were settled.
pub fn energy1_terms(
    species: &SpeciesParams,
    w: &WilsonCoefficients,
    beta: &QuantumNumbers,
) -> Result<Energy1Terms> {
    beta.validate()?;
    let p = energy1_prefactor(species);
    let a = alpha_coefficients(w, species);
    let (me, mn, m, mr) = (
        species.electron_mass(),
        species.nucleus_mass(),
        species.total_mass(),
        species.reduced_mass(),
    );
    let n = f64::from(beta.n);
    let l = f64::from(beta.ell);
    let n3 = n.powi(3);
    let n4 = n.powi(4);
    let s_wave = if beta.ell == 0 { 1.0 } else { 0.0 };
    let triplet = if beta.s == 1 { 1.0 } else { 0.0 };

    let kinetic = p * (me.powi(3) + mn.powi(3)) / (8.0 * mr * m * m) * (3.0 - 8.0 * n / (2.0 * l + 1.0)) / n4;
    let orbit = p * ((1.0 - 3.0 * n / (2.0 * l + 1.0)) / n4 + s_wave / n3);
    let darwin = p * a.alpha_d * s_wave / n3;
    let contact = p * a.alpha_ss * (triplet - 0.75) * s_wave / n3;
    let spin_structure = if beta.ell >= 1 && beta.s == 1 {
        p * c_jl(w, species, beta.j, beta.ell)? / (l * (l + 1.0) * (2.0 * l + 1.0) * n3)
    } else {
        0.0
    };
    Ok(Energy1Terms {
        kinetic,
        orbit,
        darwin,
        contact,
        spin_structure,
    })
}

pub fn energy1(species: &SpeciesParams, w: &WilsonCoefficients, beta: &QuantumNumbers) -> Result<f64> {
    Ok(energy1_terms(species, w, beta)?.total())
}

/// The first-order shift exactly as the literature closed form is commonly
/// printed: no ℓ = 0 orbit contact piece, C_{j,ℓ} weighted by
/// (δ_{ℓ0} − 1) without 1/n³. Kept for comparison only.
pub fn energy1_printed(
    species: &SpeciesParams,
    w: &WilsonCoefficients,
    beta: &QuantumNumbers,
) -> Result<f64> {
    beta.validate()?;
    let p = energy1_prefactor(species);
    let a = alpha_coefficients(w, species);
    let (me, mn, m, mr) = (
        species.electron_mass(),
        species.nucleus_mass(),
        species.total_mass(),
        species.reduced_mass(),
    );
    let n = f64::from(beta.n);
    let l = f64::from(beta.ell);
    let s_wave = if beta.ell == 0 { 1.0 } else { 0.0 };
    let triplet = if beta.s == 1 { 1.0 } else { 0.0 };
    let mut brace = (me.powi(3) + mn.powi(3)) / (8.0 * mr * m * m) * (3.0 - 8.0 * n / (2.0 * l + 1.0))
        / n.powi(4)
        + (1.0 - 3.0 * n / (2.0 * l + 1.0)) / n.powi(4)
        + (a.alpha_d - 0.75 * a.alpha_ss + a.alpha_ss * triplet) * s_wave / n.powi(3);
    if beta.ell >= 1 && beta.s == 1 {
        brace -= c_jl(w, species, beta.j, beta.ell)? / (l * (l + 1.0) * (2.0 * l + 1.0));
    }
    Ok(p * brace)
}

/// M_α = M + E⁽⁰⁾_α / c².
pub fn state_mass(species: &SpeciesParams, beta: &QuantumNumbers) -> Result<f64> {
    beta.validate()?;
    let e0 = energy0(species, beta.n)?;
    Ok(species.total_mass() + e0 / (species.c() * species.c()))
}

/// M̄ = M + (E_g + E_e)/(2c²).
pub fn mean_mass(e_g: f64, e_e: f64, total_mass: f64, c: f64) -> f64 {
    total_mass + (e_g + e_e) / (2.0 * c * c)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub beta: QuantumNumbers,
    pub e0: f64,
    pub e1: f64,
    pub m_alpha: f64,
    /// (M_α − M)/M.
    pub m_alpha_rel_shift: f64,
    /// Size 2j+1 of the m_j multiplet this row belongs to.
    pub degeneracy: u32,
}

/// Every valid level with n ≤ n_max, sorted by (n, E1, ℓ, S, j, m_j).
pub fn level_table(
    species: &SpeciesParams,
    w: &WilsonCoefficients,
    n_max: u32,
) -> Result<Vec<EnergyLevel>> {
    if n_max < 1 {
        return Err(CoreError::Domain("n_max must be >= 1".into()));
    }
    let m = species.total_mass();
    let c2 = species.c() * species.c();
    let mut levels = Vec::new();
    for n in 1..=n_max {
        let e0 = energy0(species, n)?;
        for beta in QuantumNumbers::enumerate(n) {
            let e1 = energy1(species, w, &beta)?;
            levels.push(EnergyLevel {
                beta,
                e0,
                e1,
                m_alpha: m + e0 / c2,
                m_alpha_rel_shift: e0 / (m * c2),
                degeneracy: 2 * beta.j + 1,
            });
        }
    }
    levels.sort_by(|a, b| {
        a.beta
            .n
            .cmp(&b.beta.n)
            .then(a.e1.total_cmp(&b.e1))
            .then(a.beta.ell.cmp(&b.beta.ell))
            .then(a.beta.s.cmp(&b.beta.s))
            .then(a.beta.j.cmp(&b.beta.j))
            .then(a.beta.m_j.cmp(&b.beta.m_j))
    });
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{make_species, HARTREE_IN_EV, HARTREE_IN_HZ};

    #[test]
    fn validation_examples() {
        assert!(QuantumNumbers::new(1, 0, 0, 0, 0).validate().is_ok());
        assert!(QuantumNumbers::new(2, 1, 1, 2, 2).validate().is_ok());
        let err = QuantumNumbers::new(1, 0, 1, 0, 0).validate().unwrap_err();
        assert!(err.to_string().contains("l>=1"), "{err}");
        assert!(QuantumNumbers::new(0, 0, 0, 0, 0).validate().is_err());
        assert!(QuantumNumbers::new(2, 2, 0, 2, 0).validate().is_err());
        assert!(QuantumNumbers::new(2, 1, 0, 2, 0).validate().is_err());
        assert!(QuantumNumbers::new(2, 1, 2, 1, 0).validate().is_err());
        assert!(QuantumNumbers::new(2, 1, 1, 1, 2).validate().is_err());
        assert!(QuantumNumbers::new(3, 1, 1, 0, 0).validate().is_ok());
    }

    #[test]
    fn enumeration_counts_match_4n2() {
        for n in 1..=6 {
            let states = QuantumNumbers::enumerate(n);
            assert_eq!(states.len() as u32, 4 * n * n);
            assert!(states.iter().all(|b| b.validate().is_ok()));
        }
    }

    #[test]
    fn clebsch_gordan_examples() {
        assert_eq!(clebsch_gordan(3, 0, 0, 3, 1).unwrap(), 1.0);
        assert_eq!(clebsch_gordan(1, 1, 0, 1, 0).unwrap(), 0.0);
        let v = clebsch_gordan(2, 1, 1, 1, 1).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(clebsch_gordan(0, 1, 0, 0, 0).is_err());
        assert!(clebsch_gordan(2, 0, 0, 1, 0).is_err());
        assert_eq!(clebsch_gordan(2, 1, 1, 1, -2).unwrap(), 0.0);
    }

    #[test]
    fn energy0_examples() {
        let h = SpeciesParams::hydrogen();
        let e = energy0(&h, 1).unwrap();
        assert!((e + 0.4997278).abs() < 1e-7);
        assert!((e * HARTREE_IN_EV + 13.5984).abs() < 2e-4);
        let mut prev = e;
        for n in 2..50 {
            let en = energy0(&h, n).unwrap();
            assert!(en > prev && en < 0.0);
            prev = en;
        }
        let he = SpeciesParams::helium_ion();
        let ratio = energy0(&he, 1).unwrap() / e;
        assert!((ratio - 4.0 * he.reduced_mass() / h.reduced_mass()).abs() < 1e-12);
        assert!(energy0(&h, 0).is_err());
    }

    #[test]
    fn alpha_coefficient_examples() {
        let heavy = make_species(1.0, 1e9, 1).unwrap();
        let a = alpha_coefficients(&WilsonCoefficients::pure(), &heavy);
        let direct = (1e18 + 1.0) / (2.0 * heavy.reduced_mass() * heavy.total_mass());
        assert!((a.alpha_d / direct - 1.0).abs() < 1e-14);

        let ps = SpeciesParams::positronium();
        let a = alpha_coefficients(&WilsonCoefficients::pure(), &ps);
        assert_eq!(a.alpha_ls_relative, 0.0);

        let w = WilsonCoefficients {
            c_f_e: 1.0011597,
            c_f_n: 2.7928474,
            ..WilsonCoefficients::pure()
        };
        let a = alpha_coefficients(&w, &SpeciesParams::hydrogen());
        assert!((a.alpha_ss / 7.4561 - 1.0).abs() < 1e-4);
    }

    #[test]
    fn c_jl_branches() {
        let ps = SpeciesParams::positronium();
        let w = WilsonCoefficients::pure();
        let a = alpha_coefficients(&w, &ps);
        assert!((c_jl(&w, &ps, 1, 1).unwrap() - (1.0 - 2.0 * a.alpha_ls_total)).abs() < 1e-15);
        let h = SpeciesParams::hydrogen();
        let w = WilsonCoefficients::hydrogen();
        let a = alpha_coefficients(&w, &h);
        let so = a.alpha_ls_total + h.mass_difference() / (2.0 * h.total_mass()) * a.alpha_ls_relative;
        let expected = (10.0 * so - w.c_f_e * w.c_f_n) / 5.0;
        assert!((c_jl(&w, &h, 2, 1).unwrap() / expected - 1.0).abs() < 1e-13);
        assert!(c_jl(&w, &h, 1, 0).is_err());
        assert!(c_jl(&w, &h, 4, 1).is_err());
    }

    #[test]
    fn hydrogen_ground_state_shift_and_hyperfine() {
        let h = SpeciesParams::hydrogen();
        let w = WilsonCoefficients::hydrogen();
        let singlet = energy1(&h, &w, &QuantumNumbers::new(1, 0, 0, 0, 0)).unwrap();
        let triplet = energy1(&h, &w, &QuantumNumbers::new(1, 0, 1, 1, 0)).unwrap();
        let ratio = (singlet / energy0(&h, 1).unwrap()).abs();
        assert!(ratio > 3e-6 && ratio < 3e-5, "{ratio}");
        let split_mhz = (triplet - singlet) * HARTREE_IN_HZ / 1e6;
        assert!((split_mhz / 1420.4 - 1.0).abs() < 0.01, "{split_mhz}");
    }

    #[test]
    fn singlet_p_states_have_no_spin_structure() {
        let h = SpeciesParams::hydrogen();
        let t = energy1_terms(&h, &WilsonCoefficients::hydrogen(), &QuantumNumbers::new(3, 2, 0, 2, 1)).unwrap();
        assert_eq!(t.spin_structure, 0.0);
        assert_eq!(t.darwin, 0.0);
    }

    #[test]
    fn printed_and_corrected_forms_differ_only_where_expected() {
        let h = SpeciesParams::hydrogen();
        let w = WilsonCoefficients::hydrogen();
        // singlet with l >= 1: no spin term and no s-wave piece, so both agree
        let b = QuantumNumbers::new(3, 1, 0, 1, 0);
        let a = energy1(&h, &w, &b).unwrap();
        let p = energy1_printed(&h, &w, &b).unwrap();
        assert!((a - p).abs() < 1e-15 * a.abs());
        let b = QuantumNumbers::new(1, 0, 0, 0, 0);
        let diff = energy1(&h, &w, &b).unwrap() - energy1_printed(&h, &w, &b).unwrap();
        assert!((diff - energy1_prefactor(&h)).abs() < 1e-12 * diff.abs());
    }

    #[test]
    fn level_table_ground_manifold() {
        let h = SpeciesParams::hydrogen();
        let levels = level_table(&h, &WilsonCoefficients::hydrogen(), 1).unwrap();
        assert_eq!(levels.len(), 4);
        assert_eq!(levels[0].beta, QuantumNumbers::new(1, 0, 0, 0, 0));
        let triplet: Vec<_> = levels.iter().filter(|l| l.beta.s == 1).collect();
        assert_eq!(triplet.len(), 3);
        assert!(triplet.iter().all(|l| l.e1 == triplet[0].e1));
        let levels = level_table(&h, &WilsonCoefficients::hydrogen(), 2).unwrap();
        assert_eq!(levels.len(), 20);
        assert!(levels.windows(2).all(|w| w[0].beta.n <= w[1].beta.n));
    }

    #[test]
    fn state_mass_of_hydrogen_ground_state() {
        let h = SpeciesParams::hydrogen();
        let m = state_mass(&h, &QuantumNumbers::new(1, 0, 0, 0, 0)).unwrap();
        let rel = (h.total_mass() - m) / h.total_mass();
        assert!((rel / 1.45e-8 - 1.0).abs() < 0.01, "{rel}");
        assert_eq!(mean_mass(-1.0, 1.0, 5.0, 137.0), 5.0);
    }
}
