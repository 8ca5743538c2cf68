//! Run configuration files (TOML, or JSON by extension) and the small text
//! formats shared with the command line: sweeps, quantum-number tuples and
//! quantities with an optional unit suffix.

use std::fmt;
use std::path::{Path, PathBuf};

use coboson_core::constants::{parse_quantity, ELECTRON_ANOMALY, PROTON_ANOMALY};
use coboson_core::{make_species, QuantumNumbers, SpeciesParams, Unit, WilsonCoefficients};
use serde::de::{self, DeserializeOwned, Deserializer, Visitor};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub species: SpeciesConfig,
    #[serde(default)]
    pub wilson: Option<WilsonConfig>,
    #[serde(default)]
    pub spectrum: Option<SpectrumSection>,
    #[serde(default)]
    pub clock: Option<ClockSection>,
    #[serde(default)]
    pub scatter: Option<ScatterSection>,
}

/// A preset, optionally with overrides, or a fully explicit species.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesConfig {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default, deserialize_with = "mass")]
    pub electron_mass: Option<f64>,
    #[serde(default, deserialize_with = "mass")]
    pub nucleus_mass: Option<f64>,
    #[serde(default)]
    pub z: Option<u32>,
    /// Multiplies the speed of light.
    #[serde(default)]
    pub c_scale: Option<f64>,
}

/// Wilson coefficients: a preset plus per-coefficient overrides.
#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct WilsonConfig {
    #[serde(default)]
    pub preset: Option<String>,
    /// Anomalous moments used by the "tree" preset.
    #[serde(default)]
    pub a_e: Option<f64>,
    #[serde(default)]
    pub a_n: Option<f64>,
    #[serde(default)]
    pub c_f_e: Option<f64>,
    #[serde(default)]
    pub c_f_n: Option<f64>,
    #[serde(default)]
    pub c_d_e: Option<f64>,
    #[serde(default)]
    pub c_d_n: Option<f64>,
    #[serde(default)]
    pub c_s_e: Option<f64>,
    #[serde(default)]
    pub c_s_n: Option<f64>,
    #[serde(default)]
    pub d1_en: Option<f64>,
    #[serde(default)]
    pub d1_ne: Option<f64>,
    #[serde(default)]
    pub d2_en: Option<f64>,
    #[serde(default)]
    pub d2_ne: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumSection {
    #[serde(default)]
    pub nmax: Option<u32>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClockSection {
    #[serde(default)]
    pub g: Option<String>,
    #[serde(default)]
    pub e: Option<String>,
    #[serde(default)]
    pub vsweep: Option<String>,
    #[serde(default)]
    pub t_sweep: Option<String>,
    #[serde(default, deserialize_with = "length")]
    pub sigma0: Option<f64>,
    #[serde(default, deserialize_with = "momentum")]
    pub p0: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatterSection {
    #[serde(default)]
    pub geometry: Option<PathBuf>,
    #[serde(default)]
    pub sweep: Option<String>,
}

/// A species together with the name it was resolved from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Species {
    pub name: &'static str,
    pub params: SpeciesParams,
}

/// Reads and validates a configuration file. Unknown keys are rejected and
/// errors name the offending key.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    parse_file(path)
}

pub(crate) fn parse_file<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_text(&text, is_json(path)).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

pub(crate) fn parse_text<T: DeserializeOwned>(text: &str, json: bool) -> std::result::Result<T, String> {
    if text.trim().is_empty() {
        return Err("empty configuration; expected a table with at least the required keys".into());
    }
    if json {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| describe(e.path().to_string(), e.inner().to_string()))
    } else {
        let de = toml::Deserializer::parse(text).map_err(|e| e.to_string())?;
        serde_path_to_error::deserialize(de).map_err(|e| describe(e.path().to_string(), e.inner().to_string()))
    }
}

fn describe(path: String, inner: String) -> String {
    let inner = inner.lines().filter(|l| !l.trim().is_empty()).collect::<Vec<_>>().join(" ");
    if path == "." {
        inner
    } else {
        format!("key '{path}': {inner}")
    }
}

impl SpeciesConfig {
    pub fn preset(name: &str) -> Self {
        Self {
            preset: Some(name.to_string()),
            ..Self::default()
        }
    }

    pub fn resolve(&self) -> Result<Species> {
        let (name, base) = match &self.preset {
            Some(p) => {
                let params = SpeciesParams::preset(p)?;
                (canonical_name(p), Some(params))
            }
            None => ("custom", None),
        };
        let pick = |v: Option<f64>, from: Option<f64>, key: &str| {
            v.or(from)
                .ok_or_else(|| CliError::Config(format!("species.{key}: required when no preset is given")))
        };
        let params = match (base, self.electron_mass, self.nucleus_mass, self.z) {
            (Some(b), None, None, None) => b,
            (b, me, mn, z) => {
                let me = pick(me, b.map(|s| s.electron_mass()), "electron_mass")?;
                let mn = pick(mn, b.map(|s| s.nucleus_mass()), "nucleus_mass")?;
                let z = z.or(b.map(|s| s.z())).ok_or_else(|| {
                    CliError::Config("species.z: required when no preset is given".into())
                })?;
                make_species(me, mn, z)?
            }
        };
        let params = match self.c_scale {
            Some(k) => params.with_speed_of_light(params.c() * k)?,
            None => params,
        };
        let name = if name != "custom" && (self.electron_mass.is_some() || self.nucleus_mass.is_some() || self.z.is_some()) {
            "custom"
        } else {
            name
        };
        Ok(Species { name, params })
    }
}

fn canonical_name(preset: &str) -> &'static str {
    match preset.to_ascii_lowercase().as_str() {
        "hydrogen" | "h" => "hydrogen",
        "helium-ion" | "helium_ion" | "he+" => "helium-ion",
        "positronium" | "ps" => "positronium",
        _ => "custom",
    }
}

/// Nuclear anomalous moment used by the "tree" preset: the proton's for
/// hydrogen, the positron's for positronium, none otherwise.
fn nuclear_anomaly(species: &Species) -> f64 {
    match species.name {
        "hydrogen" => PROTON_ANOMALY,
        "positronium" => ELECTRON_ANOMALY,
        _ => 0.0,
    }
}

impl WilsonConfig {
    pub fn preset(name: &str) -> Self {
        Self {
            preset: Some(name.to_string()),
            ..Self::default()
        }
    }

    /// Name recorded in manifests.
    pub fn identity(&self) -> String {
        let base = self.preset.clone().unwrap_or_else(|| "pure".into());
        let overridden = [
            self.a_e, self.a_n, self.c_f_e, self.c_f_n, self.c_d_e, self.c_d_n, self.c_s_e, self.c_s_n, self.d1_en,
            self.d1_ne, self.d2_en, self.d2_ne,
        ]
        .iter()
        .any(Option::is_some);
        if overridden {
            format!("{base}+overrides")
        } else {
            base
        }
    }

    pub fn resolve(&self, species: &Species) -> Result<WilsonCoefficients> {
        let z = species.params.z();
        let preset = self.preset.as_deref().unwrap_or("pure").to_ascii_lowercase();
        let mut w = match preset.as_str() {
            "tree" => WilsonCoefficients::tree_level(
                self.a_e.unwrap_or(ELECTRON_ANOMALY),
                self.a_n.unwrap_or_else(|| nuclear_anomaly(species)),
                z,
            ),
            "pure" | "bare" => WilsonCoefficients::pure(),
            "hydrogen" => WilsonCoefficients::hydrogen(),
            other => {
                return Err(CliError::Config(format!(
                    "wilson.preset: unknown preset '{other}' (expected tree, pure or hydrogen)"
                )))
            }
        };
        if preset != "tree" && (self.a_e.is_some() || self.a_n.is_some()) {
            return Err(CliError::Config("wilson.a_e/a_n: only meaningful with preset \"tree\"".into()));
        }
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut w.c_f_e, self.c_f_e);
        set(&mut w.c_f_n, self.c_f_n);
        set(&mut w.c_d_e, self.c_d_e);
        set(&mut w.c_d_n, self.c_d_n);
        set(&mut w.c_s_e, self.c_s_e);
        set(&mut w.c_s_n, self.c_s_n);
        set(&mut w.d1_en, self.d1_en);
        set(&mut w.d1_ne, self.d1_ne);
        set(&mut w.d2_en, self.d2_en);
        set(&mut w.d2_ne, self.d2_ne);
        Ok(w)
    }
}

/// `<preset>` or a path to a TOML/JSON file with the matching table.
pub fn species_arg(text: &str) -> Result<SpeciesConfig> {
    if looks_like_file(text) {
        parse_file(Path::new(text))
    } else {
        Ok(SpeciesConfig::preset(text))
    }
}

pub fn wilson_arg(text: &str) -> Result<WilsonConfig> {
    if looks_like_file(text) {
        parse_file(Path::new(text))
    } else {
        Ok(WilsonConfig::preset(text))
    }
}

fn looks_like_file(text: &str) -> bool {
    text.ends_with(".toml") || text.ends_with(".json") || Path::new(text).is_file()
}

/// Parses `n,l,S,j,mj` and checks the coupling rules.
pub fn parse_beta(text: &str) -> Result<QuantumNumbers> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || CliError::Config(format!("'{text}': expected five integers n,l,S,j,mj"));
    if parts.len() != 5 {
        return Err(bad());
    }
    let u = |s: &str| s.parse::<u32>().map_err(|_| bad());
    let beta = QuantumNumbers::new(u(parts[0])?, u(parts[1])?, u(parts[2])?, u(parts[3])?, parts[4].parse().map_err(|_| bad())?);
    beta.validate()?;
    Ok(beta)
}

/// Evenly spaced values from `start:stop:count` or a single value, each
/// with an optional trailing unit (`0:0.03:31 c`).
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub values: Vec<f64>,
}

impl Sweep {
    pub fn parse(text: &str, default: Unit) -> Result<Self> {
        Self::parse_with(text, Some(default))
    }

    /// Dimensionless values such as angles in radians; no unit suffix.
    pub fn parse_plain(text: &str) -> Result<Self> {
        Self::parse_with(text, None)
    }

    fn parse_with(text: &str, default: Option<Unit>) -> Result<Self> {
        let text = text.trim();
        let (body, unit) = match text.split_once(char::is_whitespace) {
            Some((b, u)) => (b, Some(u.trim())),
            None => (text, None),
        };
        let q = |s: &str| -> Result<f64> {
            match (default, unit) {
                (Some(d), Some(u)) => Ok(parse_quantity(&format!("{s} {u}"), d)?),
                (Some(d), None) => Ok(parse_quantity(s, d)?),
                (None, Some(u)) => Err(CliError::Config(format!("sweep '{text}': unexpected unit '{u}'"))),
                (None, None) => s
                    .parse()
                    .map_err(|_| CliError::Config(format!("sweep '{text}': '{s}' is not a number"))),
            }
        };
        let parts: Vec<&str> = body.split(':').collect();
        let values = match parts.as_slice() {
            [v] => vec![q(v)?],
            [a, b, n] => {
                let n: usize = n
                    .parse()
                    .map_err(|_| CliError::Config(format!("sweep '{text}': count '{n}' is not a positive integer")))?;
                let (a, b) = (q(a)?, q(b)?);
                match n {
                    0 => return Err(CliError::Config(format!("sweep '{text}': count must be at least 1"))),
                    1 => vec![a],
                    _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
                }
            }
            _ => {
                return Err(CliError::Config(format!(
                    "sweep '{text}': expected start:stop:count or a single value"
                )))
            }
        };
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Config(format!("sweep '{text}': values must be finite")));
        }
        Ok(Self { values })
    }
}

struct QuantityVisitor(Unit);

impl Visitor<'_> for QuantityVisitor {
    type Value = Option<f64>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a number in atomic units or a string such as \"1.5 {}\"", self.0.si_counterpart())
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Self::Value, E> {
        Ok(Some(v * self.0.in_atomic_units()))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
        self.visit_f64(v as f64)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
        self.visit_f64(v as f64)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
        parse_quantity(v, self.0).map(Some).map_err(E::custom)
    }
}

fn mass<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<f64>, D::Error> {
    d.deserialize_any(QuantityVisitor(Unit::ElectronMass))
}

fn length<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<f64>, D::Error> {
    d.deserialize_any(QuantityVisitor(Unit::Bohr))
}

fn momentum<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<f64>, D::Error> {
    d.deserialize_any(QuantityVisitor(Unit::AtomicMomentum))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toml_config(text: &str) -> std::result::Result<RunConfig, String> {
        parse_text(text, false)
    }

    #[test]
    fn empty_file_is_a_schema_error() {
        assert!(toml_config("").is_err());
        assert!(toml_config("  \n").is_err());
        let err = toml_config("[spectrum]\nnmax = 2\n").unwrap_err();
        assert!(err.contains("species"), "{err}");
    }

    #[test]
    fn unknown_keys_are_named() {
        let err = toml_config("[species]\npreset = \"hydrogen\"\nmas = 3\n").unwrap_err();
        assert!(err.contains("mas"), "{err}");
        let err = parse_text::<RunConfig>(r#"{"species": {"preset": "hydrogen"}, "wilson": {"c_f": 1}}"#, true).unwrap_err();
        assert!(err.contains("wilson") && err.contains("c_f"), "{err}");
    }

    #[test]
    fn wrong_type_names_key_and_type() {
        let err = toml_config("[species]\npreset = \"hydrogen\"\n[spectrum]\nnmax = \"two\"\n").unwrap_err();
        assert!(err.contains("spectrum.nmax") && err.contains("u32"), "{err}");
    }

    #[test]
    fn hydrogen_preset_uses_pinned_masses() {
        let c = toml_config("[species]\npreset = \"hydrogen\"\n").unwrap();
        let s = c.species.resolve().unwrap();
        assert_eq!(s.params, SpeciesParams::hydrogen());
        assert_eq!(s.name, "hydrogen");
    }

    #[test]
    fn masses_accept_unit_suffixes() {
        let c = toml_config("[species]\nelectron_mass = 1\nnucleus_mass = \"1.00727646688 u\"\nz = 1\n").unwrap();
        let s = c.species.resolve().unwrap();
        assert!((s.params.nucleus_mass() / SpeciesParams::hydrogen().nucleus_mass() - 1.0).abs() < 1e-9);
        assert_eq!(s.name, "custom");
        let err = toml_config("[species]\nelectron_mass = \"1 m\"\n").unwrap_err();
        assert!(err.contains("species.electron_mass"), "{err}");
    }

    #[test]
    fn tree_preset_modifies_only_fermi_coefficients() {
        let h = SpeciesConfig::preset("hydrogen").resolve().unwrap();
        let w = WilsonConfig::preset("tree").resolve(&h).unwrap();
        assert_eq!(w, WilsonCoefficients::hydrogen());
        assert_eq!((w.c_d_e, w.c_s_n, w.d1_en, w.d2_ne), (1.0, 1.0, 0.0, 0.0));
        let he = SpeciesConfig::preset("helium-ion").resolve().unwrap();
        let w = WilsonConfig { a_n: Some(0.5), ..WilsonConfig::preset("tree") }.resolve(&he).unwrap();
        assert!((w.c_f_n - 1.25).abs() < 1e-15);
    }

    #[test]
    fn sweeps() {
        assert_eq!(Sweep::parse("0:1:3", Unit::Bohr).unwrap().values, vec![0.0, 0.5, 1.0]);
        assert_eq!(Sweep::parse("2.5", Unit::Bohr).unwrap().values, vec![2.5]);
        let v = Sweep::parse("0:0.03:2 c", Unit::AtomicVelocity).unwrap().values;
        assert!((v[1] - 0.03 * coboson_core::constants::SPEED_OF_LIGHT_AU).abs() < 1e-12);
        assert!(Sweep::parse("0:1", Unit::Bohr).is_err());
        assert!(Sweep::parse("0:1:0", Unit::Bohr).is_err());
        assert_eq!(Sweep::parse_plain("0:3:4").unwrap().values, vec![0.0, 1.0, 2.0, 3.0]);
        assert!(Sweep::parse_plain("0:3:4 rad").is_err());
    }

    #[test]
    fn beta_parsing() {
        assert_eq!(parse_beta("2,1,1,2,-1").unwrap(), QuantumNumbers::new(2, 1, 1, 2, -1));
        assert!(parse_beta("1,0,1,0,0").is_err());
        assert!(parse_beta("1,0,0").is_err());
    }
}
