use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Composite-boson numerics: level tables, oracles, clock and scattering
/// sweeps, mean-field dynamics and figure data.
///
/// Numbers are in Hartree atomic units unless a unit suffix is given
/// (for example `0:0.03:31 c` or `"1.5 u"`). Relative output paths are
/// placed under $COBOSON_OUT_DIR when it is set.
#[derive(Debug, Parser)]
#[command(name = "coboson", version)]
pub struct Cli {
    /// Worker threads for parallel sweeps and grid updates.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    /// TOML or JSON run configuration supplying defaults for the flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pinned physical constants.
    Constants(ConstantsArgs),
    /// Level table with first-order shifts and state-dependent masses.
    Spectrum(SpectrumArgs),
    /// Closed-form first-order shifts against explicit-wavefunction expectation values.
    Oracle(OracleArgs),
    /// Two-level clock: Doppler sweep, or `clock packet` for wave packets.
    Clock(ClockArgs),
    /// Pair potentials of two composites over a geometry sweep.
    Scatter(ScatterArgs),
    /// Multi-mode mean-field evolution, or `gpe ground` for ground states.
    Gpe(GpeArgs),
    /// Data behind the level, potential and wave-packet figures.
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    /// Emit the full versioned table as JSON.
    #[arg(long)]
    pub dump: bool,

    /// Write to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Species preset (hydrogen, helium-ion, positronium) or a TOML/JSON file.
    #[arg(long)]
    pub species: Option<String>,

    /// Wilson coefficient preset (tree, pure, hydrogen) or a TOML/JSON file.
    #[arg(long)]
    pub wilson: Option<String>,

    #[arg(long)]
    pub nmax: Option<u32>,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub species: Option<String>,

    #[arg(long)]
    pub wilson: Option<String>,

    /// Single state n,l,S,j,mj; prints the per-term breakdown as JSON.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,

    /// Print the breakdown (the default when --beta is given).
    #[arg(long)]
    pub report: bool,

    /// Compare every state with n <= NMAX (CSV).
    #[arg(long, conflicts_with = "beta")]
    pub nmax: Option<u32>,

    /// Sum-over-states C6 for basis sizes 2..=N (CSV).
    #[arg(long, value_name = "N", conflicts_with_all = ["beta", "nmax"])]
    pub c6_basis: Option<u32>,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClockArgs {
    #[command(subcommand)]
    pub sub: Option<ClockSub>,

    /// Species preset or file; `sr88` selects the strontium clock.
    #[arg(long, global = true)]
    pub species: Option<String>,

    /// Ground state n,l,S,j,mj.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub g: Option<String>,

    /// Excited state n,l,S,j,mj.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub e: Option<String>,

    /// Multiplies the speed of light.
    #[arg(long, global = true)]
    pub c_scale: Option<f64>,

    /// Velocities start:stop:count with optional unit (default atomic units).
    #[arg(long)]
    pub vsweep: Option<String>,

    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ClockSub {
    /// Ground- and excited-state Gaussian packets with equal initial momentum.
    Packet(PacketArgs),
}

#[derive(Debug, Args)]
pub struct PacketArgs {
    /// Times start:stop:count with optional unit.
    #[arg(long)]
    pub t_sweep: Option<String>,

    /// Initial width (bohr unless suffixed).
    #[arg(long)]
    pub sigma0: Option<String>,

    /// Initial mean momentum (atomic units unless suffixed).
    #[arg(long)]
    pub p0: Option<String>,

    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    #[arg(long)]
    pub species: Option<String>,

    #[arg(long)]
    pub wilson: Option<String>,

    /// JSON file with the two configurations `cfg1` and `cfg2`.
    #[arg(long)]
    pub geometry: Option<PathBuf>,

    /// `DeltaR=start:stop:count,theta=start:stop:count`; cfg1 is placed at
    /// cfg2.R + DeltaR (sin theta, 0, cos theta).
    #[arg(long)]
    pub sweep: Option<String>,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GpeArgs {
    #[command(subcommand)]
    pub sub: Option<GpeSub>,

    /// Problem description (JSON).
    #[arg(long, global = true)]
    pub problem: Option<PathBuf>,

    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Total evolution time
    #[arg(long)]
    pub tmax: Option<f64>,

    /// Time step
    #[arg(long)]
    pub dt: Option<f64>,

    /// Write a field snapshot every K steps (and at the end).
    #[arg(long, value_name = "K", default_value_t = 0)]
    pub snap_every: u64,
}

#[derive(Debug, Subcommand)]
pub enum GpeSub {
    /// Imaginary-time ground state.
    Ground(GroundArgs),
}

#[derive(Debug, Args)]
pub struct GroundArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,

    /// Per-mode norms, comma separated (default: all population in mode 0).
    #[arg(long)]
    pub weights: Option<String>,

    #[arg(long)]
    pub max_iterations: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig4,
    Fig5a,
    Fig5b,
    Fig6,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(value_enum)]
    pub figure: Figure,

    /// Nuclear charge number for the angular potential (fig5a: 2, fig5b: 1).
    #[arg(long = "Z")]
    pub z: Option<f64>,

    #[arg(long)]
    pub species: Option<String>,

    /// Multiplies the speed of light (fig4, fig6).
    #[arg(long)]
    pub c_scale: Option<f64>,

    #[arg(long)]
    pub out: Option<PathBuf>,
}
