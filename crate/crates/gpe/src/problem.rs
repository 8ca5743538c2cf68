use std::path::Path;

use coboson_core::spectrum::{energy1, state_mass};
use coboson_core::{QuantumNumbers, SpeciesParams, WilsonCoefficients};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GpeError, Result};
use crate::grid::Grid;

/// External potential of one mode, standing in for ⟨h_I⟩_α.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Potential {
    #[default]
    None,
    Constant { value: f64 },
    /// ½ M_α ω² (x − center)².
    Harmonic {
        omega: f64,
        #[serde(default)]
        center: f64,
    },
    /// One value per grid point.
    Table { values: Vec<f64> },
}

/// Initial field of one mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialField {
    /// √(norm) × normalized Gaussian of position width σ, centre x0 and
    /// mean wavenumber k0.
    Gaussian {
        #[serde(default)]
        x0: f64,
        sigma: f64,
        #[serde(default)]
        k0: f64,
        #[serde(default = "one")]
        norm: f64,
    },
    /// e^{ikx} rescaled to the given norm; k is snapped to the grid.
    PlaneWave {
        #[serde(default)]
        k: f64,
        #[serde(default = "one")]
        norm: f64,
    },
    Zero,
}

fn one() -> f64 {
    1.0
}

/// Mass and rest offset from a bound level of a species instead of numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelSpec {
    pub species: String,
    #[serde(default = "default_wilson")]
    pub wilson: String,
    /// (n, ℓ, S, j, m_j).
    pub state: [i64; 5],
}

fn default_wilson() -> String {
    "hydrogen".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    pub label: String,
    #[serde(default)]
    pub mass: Option<f64>,
    /// M_α c² + E⁽¹⁾_α.
    #[serde(default)]
    pub energy_offset: Option<f64>,
    #[serde(default)]
    pub level: Option<LevelSpec>,
    #[serde(default)]
    pub potential: Potential,
    #[serde(default)]
    pub initial: Option<InitialField>,
}

/// T_ab(x, t) = amplitude·e^{i(kx − ωt)}; the (b, a) element is the conjugate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingSpec {
    pub from: usize,
    pub to: usize,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    #[serde(default)]
    pub k: f64,
    #[serde(default)]
    pub frequency: f64,
}

/// One element η̃_{αν;βμ}; its exchange and conjugate partners are filled in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaSpec {
    pub index: [usize; 4],
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// Rest-energy gauge subtracted from every offset before stepping.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceEnergy {
    /// The smallest mode offset.
    #[default]
    Lowest,
    None,
    Value(f64),
}

/// The on-disk problem description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub grid: Grid,
    pub modes: Vec<ModeSpec>,
    #[serde(default)]
    pub couplings: Vec<CouplingSpec>,
    #[serde(default)]
    pub eta: Vec<EtaSpec>,
    #[serde(default)]
    pub include_p4: bool,
    /// Bare mass M in the P⁴ term; defaults to the first mode's mass.
    #[serde(default)]
    pub bare_mass: Option<f64>,
    #[serde(default)]
    pub c: Option<f64>,
    #[serde(default)]
    pub reference_energy: ReferenceEnergy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mode {
    pub label: String,
    pub mass: f64,
    pub energy_offset: f64,
    pub potential: Vec<f64>,
    pub initial: InitialField,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub from: usize,
    pub to: usize,
    pub amplitude: Complex64,
    pub k: f64,
    pub frequency: f64,
}

/// Dense η̃ over modes, stored at ((α·n + ν)·n + β)·n + μ.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaTensor {
    modes: usize,
    data: Vec<Complex64>,
}

impl EtaTensor {
    pub fn zeros(modes: usize) -> Self {
        Self {
            modes,
            data: vec![Complex64::new(0.0, 0.0); modes.pow(4)],
        }
    }

    fn idx(&self, a: usize, n: usize, b: usize, m: usize) -> usize {
        ((a * self.modes + n) * self.modes + b) * self.modes + m
    }

    pub fn get(&self, a: usize, n: usize, b: usize, m: usize) -> Complex64 {
        self.data[self.idx(a, n, b, m)]
    }

    /// Sets (αν;βμ) together with its exchange image (να;μβ) and the
    /// conjugates (βμ;αν), (μβ;να), which keeps the energy real.
    pub fn set_symmetric(&mut self, [a, n, b, m]: [usize; 4], value: Complex64) {
        // an index that is its own conjugate partner (directly or after
        // exchange) can only hold a real value
        let value = if (a == b && n == m) || (a == m && n == b) {
            if value.im != 0.0 {
                log::warn!("eta[{a},{n},{b},{m}] must be real; imaginary part {} dropped", value.im);
            }
            Complex64::new(value.re, 0.0)
        } else {
            value
        };
        for (idx, v) in [
            ([a, n, b, m], value),
            ([n, a, m, b], value),
            ([b, m, a, n], value.conj()),
            ([m, b, n, a], value.conj()),
        ] {
            let i = self.idx(idx[0], idx[1], idx[2], idx[3]);
            self.data[i] = v;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| *v == Complex64::new(0.0, 0.0))
    }

    /// Largest violation of η_{αν;βμ} = conj(η_{βμ;αν}).
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.modes;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for v in 0..n {
                for b in 0..n {
                    for m in 0..n {
                        worst = worst.max((self.get(a, v, b, m) - self.get(b, m, a, v).conj()).norm());
                    }
                }
            }
        }
        worst
    }

    /// H_NL[α][β] = Σ_{νμ} η_{αν;βμ} ψ_ν* ψ_μ, written row-major into `out`.
    pub fn local_matrix(&self, psi: &[Complex64], out: &mut [Complex64]) {
        let n = self.modes;
        for a in 0..n {
            for b in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for v in 0..n {
                    let pv = psi[v].conj();
                    for (m, pm) in psi.iter().enumerate() {
                        s += self.get(a, v, b, m) * pv * pm;
                    }
                }
                out[a * n + b] = s;
            }
        }
    }
}

/// Validated solver input.
#[derive(Debug, Clone, PartialEq)]
pub struct GpeProblem {
    pub grid: Grid,
    pub modes: Vec<Mode>,
    pub couplings: Vec<Coupling>,
    pub eta: EtaTensor,
    pub include_p4: bool,
    pub bare_mass: f64,
    pub c: f64,
    pub reference_energy: f64,
}

fn resolve_level(level: &LevelSpec) -> Result<(f64, f64)> {
    let species = SpeciesParams::preset(&level.species)?;
    let w = WilsonCoefficients::preset(&level.wilson)?;
    let [n, l, s, j, mj] = level.state;
    let conv = |v: i64, name: &str| {
        u32::try_from(v).map_err(|_| GpeError::Config(format!("level.state {name} must be non-negative, got {v}")))
    };
    let beta = QuantumNumbers::new(
        conv(n, "n")?,
        conv(l, "l")?,
        conv(s, "S")?,
        conv(j, "j")?,
        i32::try_from(mj).map_err(|_| GpeError::Config("level.state m_j out of range".into()))?,
    );
    let m_alpha = state_mass(&species, &beta)?;
    let offset = m_alpha * species.c() * species.c() + energy1(&species, &w, &beta)?;
    Ok((m_alpha, offset))
}

impl GpeProblem {
    pub fn from_spec(spec: &ProblemSpec) -> Result<Self> {
        spec.grid.validate()?;
        if spec.modes.is_empty() {
            return Err(GpeError::Config("modes: at least one mode is required".into()));
        }
        let n = spec.modes.len();
        let xs = spec.grid.xs();
        let mut modes = Vec::with_capacity(n);
        for (i, m) in spec.modes.iter().enumerate() {
            let (mass, offset) = match (&m.level, m.mass, m.energy_offset) {
                (Some(level), None, None) => resolve_level(level)?,
                (None, Some(mass), offset) => (mass, offset.unwrap_or(0.0)),
                (Some(_), _, _) => {
                    return Err(GpeError::Config(format!(
                        "modes[{i}]: give either 'level' or 'mass'/'energy_offset', not both"
                    )))
                }
                (None, None, _) => return Err(GpeError::Config(format!("modes[{i}].mass: expected a positive number"))),
            };
            if !(mass > 0.0 && mass.is_finite()) {
                return Err(GpeError::Config(format!("modes[{i}].mass: expected a positive number, got {mass}")));
            }
            let potential = match &m.potential {
                Potential::None => vec![0.0; xs.len()],
                Potential::Constant { value } => vec![*value; xs.len()],
                Potential::Harmonic { omega, center } => {
                    xs.iter().map(|x| 0.5 * mass * omega * omega * (x - center).powi(2)).collect()
                }
                Potential::Table { values } => {
                    if values.len() != xs.len() {
                        return Err(GpeError::Config(format!(
                            "modes[{i}].potential.values: expected {} entries, got {}",
                            xs.len(),
                            values.len()
                        )));
                    }
                    values.clone()
                }
            };
            modes.push(Mode {
                label: m.label.clone(),
                mass,
                energy_offset: offset,
                potential,
                initial: m.initial.clone().unwrap_or(InitialField::Zero),
            });
        }

        let mut couplings = Vec::with_capacity(spec.couplings.len());
        for (i, c) in spec.couplings.iter().enumerate() {
            if c.from >= n || c.to >= n {
                return Err(GpeError::Config(format!("couplings[{i}]: mode index out of range (have {n} modes)")));
            }
            if c.from == c.to {
                return Err(GpeError::Config(format!(
                    "couplings[{i}]: diagonal couplings belong in the mode potential"
                )));
            }
            couplings.push(Coupling {
                from: c.from,
                to: c.to,
                amplitude: Complex64::new(c.re, c.im),
                k: c.k,
                frequency: c.frequency,
            });
        }

        let mut eta = EtaTensor::zeros(n);
        for (i, e) in spec.eta.iter().enumerate() {
            if e.index.iter().any(|&k| k >= n) {
                return Err(GpeError::Config(format!("eta[{i}].index: mode index out of range (have {n} modes)")));
            }
            eta.set_symmetric(e.index, Complex64::new(e.re, e.im));
        }

        let offsets: Vec<f64> = modes.iter().map(|m| m.energy_offset).collect();
        let reference_energy = match spec.reference_energy {
            ReferenceEnergy::Lowest => offsets.iter().cloned().fold(f64::INFINITY, f64::min),
            ReferenceEnergy::None => 0.0,
            ReferenceEnergy::Value(v) => v,
        };
        let bare_mass = spec.bare_mass.unwrap_or(modes[0].mass);
        let c = spec.c.unwrap_or(coboson_core::constants::SPEED_OF_LIGHT_AU);
        if !(c > 0.0 && bare_mass > 0.0) {
            return Err(GpeError::Config("c and bare_mass must be positive".into()));
        }
        Ok(Self {
            grid: spec.grid,
            modes,
            couplings,
            eta,
            include_p4: spec.include_p4,
            bare_mass,
            c,
            reference_energy,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: ProblemSpec = serde_json::from_str(text).map_err(|e| GpeError::Config(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GpeError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    /// k²/2M_α − [P⁴ on] k⁴/8M³c².
    pub fn kinetic(&self, mode: usize, k: f64) -> f64 {
        let k2 = k * k;
        let mut e = k2 / (2.0 * self.modes[mode].mass);
        if self.include_p4 {
            e -= k2 * k2 / (8.0 * self.bare_mass.powi(3) * self.c * self.c);
        }
        e
    }

    /// Largest |kinetic energy| on the grid.
    pub fn max_kinetic(&self) -> f64 {
        let ks = self.grid.wavenumbers();
        (0..self.mode_count())
            .flat_map(|m| ks.iter().map(move |&k| (m, k)))
            .map(|(m, k)| self.kinetic(m, k).abs())
            .fold(0.0, f64::max)
    }

    /// Off-diagonal coupling matrix at (x, t), row-major, added into `out`.
    pub fn add_coupling(&self, x: f64, t: f64, out: &mut [Complex64]) {
        let n = self.mode_count();
        for c in &self.couplings {
            let v = c.amplitude * Complex64::from_polar(1.0, c.k * x - c.frequency * t);
            out[c.from * n + c.to] += v;
            out[c.to * n + c.from] += v.conj();
        }
    }

    pub fn has_couplings(&self) -> bool {
        !self.couplings.is_empty()
    }
}
