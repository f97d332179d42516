use std::path::PathBuf;

use agrivolt::optimizer::Backend;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "agrivolt", version, about = "Agrivoltaic tracking experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Scenario configuration (TOML).
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides the configuration's seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    OpenLoop,
    Mpc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Analytic,
    Barrier,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Analytic => Backend::Analytic,
            BackendArg::Barrier => Backend::Barrier,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Affine shading fits per daylight step, plus hourly R² summary.
    FitShading {
        #[command(flatten)]
        common: Common,
    },
    /// One season, open loop with true weather or closed-loop MPC.
    Run {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "open-loop")]
        mode: Mode,
        /// Overrides control.omega.
        #[arg(long)]
        omega: Option<f64>,
        /// Overrides forecast.max_std_fraction (MPC only).
        #[arg(long)]
        noise: Option<f64>,
        /// Overrides control.backend.
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
    },
    /// Pareto sweep over the weight omega.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Grid spacing; the grid always contains 0 and 1.
        #[arg(long, default_value_t = 0.05, conflicts_with = "omegas")]
        step: f64,
        /// Explicit comma-separated weights.
        #[arg(long, value_delimiter = ',')]
        omegas: Option<Vec<f64>>,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
    },
    /// Crop-only yield and sun-tracking revenue used to normalise LERs.
    Baselines {
        #[command(flatten)]
        common: Common,
    },
    /// Noise schedule and one sample forecast trajectory.
    ForecastDemo {
        #[command(flatten)]
        common: Common,
        /// Issue step of the sample trajectory.
        #[arg(long, default_value_t = 0)]
        t0: usize,
        /// Longest lead in the schedule table, hours.
        #[arg(long, default_value_t = 400)]
        max_lead: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::FitShading { .. } => "fit-shading",
            Command::Run { .. } => "run",
            Command::Sweep { .. } => "sweep",
            Command::Baselines { .. } => "baselines",
            Command::ForecastDemo { .. } => "forecast-demo",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::FitShading { common }
            | Command::Run { common, .. }
            | Command::Sweep { common, .. }
            | Command::Baselines { common }
            | Command::ForecastDemo { common, .. } => common,
        }
    }
}

/// `0, step, 2·step, …, 1`, with 1 always included.
pub fn omega_grid(step: f64) -> Option<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return None;
    }
    let n = (1.0 / step).round() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|k| (k as f64 * step).min(1.0)).collect();
    if grid.last() != Some(&1.0) {
        grid.push(1.0);
    }
    grid.dedup();
    Some(grid)
}
