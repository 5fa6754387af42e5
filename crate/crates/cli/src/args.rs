use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "thirdq", version, about = "Spectra, PT checks and dynamics of open quadratic bosonic systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Liouvillian eigenvalues up to a total order, as CSV.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = thirdq::spectrum::DEFAULT_MAX_ORDER)]
        max_order: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Rapidities and Liouvillian gap, as JSON.
    Gap {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Huber and matrix-level PT checks, as JSON.
    PtCheck {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = Parity::Reflection)]
        parity: Parity,
        /// Residual threshold.
        #[arg(long, default_value_t = thirdq::symmetry::SYMMETRY_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exceptional points of a preset family over a parameter grid, as CSV.
    EpScan {
        #[command(flatten)]
        model: ModelArgs,
        /// `name=start:stop:n` with name one of gg, gl, g, gamma, omega; repeatable.
        #[arg(long = "grid", value_name = "SPEC")]
        grid: Vec<String>,
        /// Relative rank threshold of the Jordan analysis.
        #[arg(long, default_value_t = thirdq::numerics::RANK_TOL_REL)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// First and second moments on a time grid, as CSV.
    Dynamics {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: TimeArgs,
        #[command(flatten)]
        init: InitArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Stationary second moments, or with `--lindblad` the finite-spin steady state, as JSON.
    Steady {
        #[command(flatten)]
        model: ModelArgs,
        /// Solve the finite-spin master equation instead (needs --spin).
        #[arg(long)]
        lindblad: bool,
        /// Residual tolerance of the finite-spin steady state.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Time limit of the finite-spin relaxation.
        #[arg(long, default_value_t = 2000.0)]
        max_time: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Quantum-jump trajectories of the finite-spin model, as CSV.
    Trajectory {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: TimeArgs,
        #[arg(long, default_value_t = 200)]
        ntraj: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Fixed step; defaults to a rate-based choice.
        #[arg(long)]
        dt: Option<f64>,
        /// Initial `m` of spin A (defaults to -S).
        #[arg(long, allow_hyphen_values = true)]
        ma0: Option<f64>,
        /// Initial `m` of spin B (defaults to S).
        #[arg(long, allow_hyphen_values = true)]
        mb0: Option<f64>,
        /// Skip the master-equation reference column.
        #[arg(long)]
        no_lindblad: bool,
        /// Also write every trajectory to this CSV.
        #[arg(long)]
        traj_out: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Lists the built-in presets and their parameters, as JSON.
    Presets {
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Parity {
    Reflection,
    SectorSwap,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub model_file: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub gg: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gl: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    /// Spin size: HP frame of the quadratic model, or the finite-spin model.
    #[arg(long)]
    pub spin: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct TimeArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t0: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    pub t1: f64,
    /// Number of intervals; the grid has steps + 1 points.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct InitArgs {
    /// Initial `<S^z>` per site (not divided by S), or one value giving every site the same occupation.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub sz0: Vec<f64>,
    /// Initial occupations `<a_i† a_i>`.
    #[arg(long, value_delimiter = ',')]
    pub occ: Vec<f64>,
    /// Real parts of the initial `<a_i>`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub mean: Vec<f64>,
    /// Imaginary parts of the initial `<a_i>`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub mean_im: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Output file; stdout when absent. CSV outputs get a `<out>.meta.json` sidecar.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
