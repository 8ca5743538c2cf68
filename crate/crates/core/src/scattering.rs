//! Interaction energy of two hydrogenlike composites at classical
//! phase-space points.
//!
//! Atomic units throughout: 1/(4πε₀) = 1 and μ₀/(4π) = 1/c². Every public
//! potential is the physical pair energy. The tabulated rows carry a
//! 1/(8πε₀) normalization and enter the equations of motion twice; the
//! `raw` accessors return those halves.

use nalgebra::{Matrix3, Rotation3, Vector3};
use serde::{Deserialize, Serialize};

use crate::constants::SpeciesParams;
use crate::error::{CoreError, Result};
use crate::spectrum::WilsonCoefficients;

/// Below this length a relative coordinate has no usable direction.
pub const DIRECTION_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Constituent {
    Nucleus,
    Electron,
}

impl Constituent {
    pub const BOTH: [Constituent; 2] = [Constituent::Nucleus, Constituent::Electron];

    fn index(self) -> usize {
        match self {
            Constituent::Nucleus => 0,
            Constituent::Electron => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Constituent::Nucleus => "n",
            Constituent::Electron => "e",
        }
    }

    fn charge(self, species: &SpeciesParams) -> f64 {
        match self {
            Constituent::Nucleus => species.nucleus_charge(),
            Constituent::Electron => species.electron_charge(),
        }
    }

    fn mass(self, species: &SpeciesParams) -> f64 {
        match self {
            Constituent::Nucleus => species.nucleus_mass(),
            Constituent::Electron => species.electron_mass(),
        }
    }

    fn c_f(self, w: &WilsonCoefficients) -> f64 {
        match self {
            Constituent::Nucleus => w.c_f_n,
            Constituent::Electron => w.c_f_e,
        }
    }
}

/// One composite: c.m. position and momentum, relative position, and the
/// classical spin vectors of both constituents. Vectors are plain arrays so
/// that geometry files stay readable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CobosonConfig {
    #[serde(rename = "R")]
    pub r_cm: [f64; 3],
    pub r: [f64; 3],
    #[serde(rename = "P", default)]
    pub p: [f64; 3],
    #[serde(default)]
    pub spin_n: [f64; 3],
    #[serde(default)]
    pub spin_e: [f64; 3],
}

fn v(a: [f64; 3]) -> Vector3<f64> {
    Vector3::from(a)
}

fn arr(x: Vector3<f64>) -> [f64; 3] {
    [x.x, x.y, x.z]
}

impl CobosonConfig {
    /// At rest and spinless.
    pub fn at(r_cm: [f64; 3], r: [f64; 3]) -> Self {
        Self {
            r_cm,
            r,
            p: [0.0; 3],
            spin_n: [0.0; 3],
            spin_e: [0.0; 3],
        }
    }

    pub fn with_momentum(self, p: [f64; 3]) -> Self {
        Self { p, ..self }
    }

    pub fn with_spins(self, spin_n: [f64; 3], spin_e: [f64; 3]) -> Self {
        Self { spin_n, spin_e, ..self }
    }

    /// x_i = R ∓ (m_r/m_i) r, minus for the nucleus.
    pub fn position(&self, species: &SpeciesParams, which: Constituent) -> Vector3<f64> {
        let mr = species.reduced_mass();
        match which {
            Constituent::Nucleus => v(self.r_cm) - v(self.r) * (mr / species.nucleus_mass()),
            Constituent::Electron => v(self.r_cm) + v(self.r) * (mr / species.electron_mass()),
        }
    }

    pub fn spin(&self, which: Constituent) -> Vector3<f64> {
        match which {
            Constituent::Nucleus => v(self.spin_n),
            Constituent::Electron => v(self.spin_e),
        }
    }

    /// Magnetic moment c̄_F q s/m of one constituent.
    pub fn magnetic_moment(&self, species: &SpeciesParams, w: &WilsonCoefficients, which: Constituent) -> Vector3<f64> {
        self.spin(which) * (which.c_f(w) * which.charge(species) / which.mass(species))
    }

    /// Applies the same rotation to every vector.
    pub fn rotated(&self, rot: &Rotation3<f64>) -> Self {
        let r = |a: [f64; 3]| arr(rot * v(a));
        Self {
            r_cm: r(self.r_cm),
            r: r(self.r),
            p: r(self.p),
            spin_n: r(self.spin_n),
            spin_e: r(self.spin_e),
        }
    }
}

/// Separations between the constituents of two composites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairGeometry {
    /// R₁ − R₂.
    pub delta_r: Vector3<f64>,
    /// chi[i][j] = x₁,ᵢ − x₂,ⱼ, indexed nucleus = 0, electron = 1.
    pub chi: [[Vector3<f64>; 2]; 2],
}

impl PairGeometry {
    pub fn new(species: &SpeciesParams, cfg1: &CobosonConfig, cfg2: &CobosonConfig) -> Self {
        let chi = Constituent::BOTH.map(|i| {
            Constituent::BOTH.map(|j| cfg1.position(species, i) - cfg2.position(species, j))
        });
        Self {
            delta_r: v(cfg1.r_cm) - v(cfg2.r_cm),
            chi,
        }
    }

    pub fn chi(&self, i: Constituent, j: Constituent) -> Vector3<f64> {
        self.chi[i.index()][j.index()]
    }

    /// Errors on the first pair of coincident constituents.
    pub fn check_separated(&self) -> Result<()> {
        for i in Constituent::BOTH {
            for j in Constituent::BOTH {
                if self.chi(i, j).norm() == 0.0 {
                    return Err(CoreError::Singular(format!(
                        "constituent {} of coboson 1 coincides with constituent {} of coboson 2",
                        i.label(),
                        j.label()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Σ_ij q_i q_j/|χ_ij|, the exact electrostatic pair energy.
pub fn coulomb_sum(species: &SpeciesParams, cfg1: &CobosonConfig, cfg2: &CobosonConfig) -> Result<f64> {
    let geo = PairGeometry::new(species, cfg1, cfg2);
    geo.check_separated()?;
    let mut sum = 0.0;
    for i in Constituent::BOTH {
        for j in Constituent::BOTH {
            sum += i.charge(species) * j.charge(species) / geo.chi(i, j).norm();
        }
    }
    Ok(sum)
}

/// d = m_r(q_e/m_e − q_n/m_n) r.
pub fn dipole_moment(species: &SpeciesParams, r: [f64; 3]) -> Vector3<f64> {
    let k = species.reduced_mass()
        * (species.electron_charge() / species.electron_mass() - species.nucleus_charge() / species.nucleus_mass());
    v(r) * k
}

/// 𝒬_uv = −r_u r_v m_r²(q_e/m_e² + q_n/m_n²)/2.
pub fn quadrupole_tensor(species: &SpeciesParams, r: [f64; 3]) -> Matrix3<f64> {
    let mr = species.reduced_mass();
    let k = -0.5
        * mr
        * mr
        * (species.electron_charge() / species.electron_mass().powi(2)
            + species.nucleus_charge() / species.nucleus_mass().powi(2));
    let rv = v(r);
    rv * rv.transpose() * k
}

/// The four far-field terms of the pair energy, physical normalization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultipoleTerms {
    pub monopole: f64,
    pub monopole_dipole: f64,
    pub monopole_quadrupole: f64,
    pub dipole_dipole: f64,
}

impl MultipoleTerms {
    pub fn total(&self) -> f64 {
        self.monopole + self.monopole_dipole + self.monopole_quadrupole + self.dipole_dipole
    }

    /// The terms with the tabulated 1/(8πε₀) prefactor and with the
    /// monopole–dipole term carrying +e·(d − d′) as written. Expanding the
    /// exact Coulomb sum in the constituent offsets gives −e·(d − d′) for
    /// ΔR = R₁ − R₂, which is what `monopole_dipole` holds.
    pub fn printed(&self) -> Self {
        Self {
            monopole: 0.5 * self.monopole,
            monopole_dipole: -0.5 * self.monopole_dipole,
            monopole_quadrupole: 0.5 * self.monopole_quadrupole,
            dipole_dipole: 0.5 * self.dipole_dipole,
        }
    }
}

/// Generalized dipole–dipole expansion of the pair energy.
pub fn multipole_potential(
    d1: &Vector3<f64>,
    d2: &Vector3<f64>,
    q1_tensor: &Matrix3<f64>,
    q2_tensor: &Matrix3<f64>,
    charge: f64,
    delta_r: &Vector3<f64>,
) -> Result<MultipoleTerms> {
    let dist = delta_r.norm();
    if dist == 0.0 {
        return Err(CoreError::Singular("centres of mass coincide".into()));
    }
    let e = delta_r / dist;
    let quad = q1_tensor + q2_tensor;
    let d3 = dist.powi(3);
    Ok(MultipoleTerms {
        monopole: charge * charge / dist,
        monopole_dipole: -charge * e.dot(&(d1 - d2)) / (dist * dist),
        monopole_quadrupole: charge * (quad.trace() - 3.0 * e.dot(&(quad * e))) / d3,
        dipole_dipole: (d1.dot(d2) - 3.0 * e.dot(d1) * e.dot(d2)) / d3,
    })
}

/// Multipole expansion for two configurations of the same species.
pub fn multipole_for_configs(species: &SpeciesParams, cfg1: &CobosonConfig, cfg2: &CobosonConfig) -> Result<MultipoleTerms> {
    multipole_potential(
        &dipole_moment(species, cfg1.r),
        &dipole_moment(species, cfg2.r),
        &quadrupole_tensor(species, cfg1.r),
        &quadrupole_tensor(species, cfg2.r),
        species.total_charge(),
        &(v(cfg1.r_cm) - v(cfg2.r_cm)),
    )
}

/// (Z−1)²/ΔR + Z a²(1 − 3cos²θ)/ΔR³ for parallel relative vectors of
/// length a at angle θ to ΔR.
pub fn dd_angular(z: f64, a: f64, delta_r: f64, theta: f64) -> Result<f64> {
    if !(delta_r > 0.0) {
        return Err(CoreError::Domain(format!("separation must be positive, got {delta_r}")));
    }
    let cos = theta.cos();
    Ok((z - 1.0).powi(2) / delta_r + z * a * a * (1.0 - 3.0 * cos * cos) / delta_r.powi(3))
}

/// Pair energy split into Coulomb, orbit–orbit, spin–orbit and spin–spin
/// parts, each summed over the four constituent pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialComponents {
    pub c: f64,
    pub ll: f64,
    pub ls: f64,
    pub ss: f64,
    /// Set when a relative vector was too short for its direction to enter
    /// the Coulomb correction; that correction was then taken as zero.
    pub c_correction_dropped: bool,
    /// Set when |ΔR| < 2(|r₁| + |r₂|), outside the far-field regime.
    pub outside_far_field: bool,
    /// Σ|pair term| for C, LL, LS, SS: the scale against which each
    /// (possibly strongly cancelling) row sum should be judged.
    pub magnitudes: [f64; 4],
}

impl PotentialComponents {
    pub fn total(&self) -> f64 {
        self.c + self.ll + self.ls + self.ss
    }

    /// Halves, matching the tabulated row normalization.
    pub fn raw(&self) -> Self {
        Self {
            c: 0.5 * self.c,
            ll: 0.5 * self.ll,
            ls: 0.5 * self.ls,
            ss: 0.5 * self.ss,
            magnitudes: self.magnitudes.map(|m| 0.5 * m),
            ..*self
        }
    }
}

fn unit_or_none(x: Vector3<f64>) -> Option<Vector3<f64>> {
    let n = x.norm();
    (n >= DIRECTION_CUTOFF).then(|| x / n)
}

/// Evaluates every row at the given classical configuration.
pub fn potential_components(
    species: &SpeciesParams,
    w: &WilsonCoefficients,
    cfg1: &CobosonConfig,
    cfg2: &CobosonConfig,
) -> Result<PotentialComponents> {
    let geo = PairGeometry::new(species, cfg1, cfg2);
    geo.check_separated()?;

    let m = species.total_mass();
    let c2 = species.c() * species.c();
    let (qe, qn) = (species.electron_charge(), species.nucleus_charge());
    let (p1, p2) = (v(cfg1.p), v(cfg2.p));

    let units = unit_or_none(v(cfg1.r)).zip(unit_or_none(v(cfg2.r)));
    let mut out = PotentialComponents {
        c: 0.0,
        ll: 0.0,
        ls: 0.0,
        ss: 0.0,
        c_correction_dropped: units.is_none(),
        outside_far_field: geo.delta_r.norm() < 2.0 * (v(cfg1.r).norm() + v(cfg2.r).norm()),
        magnitudes: [0.0; 4],
    };
    if out.outside_far_field {
        log::warn!(
            "pair separation {:.3e} is not large against the composite sizes; far-field rows are unreliable",
            geo.delta_r.norm()
        );
    }

    for i in Constituent::BOTH {
        for j in Constituent::BOTH {
            let chi = geo.chi(i, j);
            let dist = chi.norm();
            let e = chi / dist;
            let (qi, qj) = (i.charge(species), j.charge(species));
            let (mi, mj) = (i.mass(species), j.mass(species));
            let coulomb = qi * qj / (2.0 * dist);

            // row C: Coulomb plus its mass-asymmetry correction
            let mut c = coulomb;
            if let Some((e1, e2)) = units {
                c += species.mass_difference() / m * e.dot(&(e1 - e2)) / (m * c2) * (qe * qn / (qi * qj))
                    * coulomb
                    * coulomb;
            }

            let l1 = chi.cross(&p1);
            let l2 = chi.cross(&p2);
            let mag = 1.0 / (2.0 * c2 * dist.powi(3));

            // row LL: orbit-orbit with the retardation term
            let ll = -mag * qi * qj / (m * m) * (0.5 * l1.dot(&l2) + chi.dot(&p1) * chi.dot(&p2));

            // row LS
            let mu1 = cfg1.magnetic_moment(species, w, i);
            let mu2 = cfg2.magnetic_moment(species, w, j);
            let s1 = cfg1.spin(i);
            let s2 = cfg2.spin(j);
            let ls = -mag
                * (qi / m * (l1 - l2).dot(&(mu1 * (qj / qi) + mu2)) - 0.5 * qi * qj / (m * mi) * l1.dot(&s1)
                    + 0.5 * qi * qj / (m * mj) * l2.dot(&s2));

            // row SS: magnetic dipole-dipole, sign as tabulated
            let ss = -mag * (mu1.dot(&mu2) - 3.0 * mu1.dot(&e) * mu2.dot(&e));

            out.c += 2.0 * c;
            out.ll += 2.0 * ll;
            out.ls += 2.0 * ls;
            out.ss += 2.0 * ss;
            for (acc, term) in out.magnitudes.iter_mut().zip([c, ll, ls, ss]) {
                *acc += 2.0 * term.abs();
            }
        }
    }
    Ok(out)
}
