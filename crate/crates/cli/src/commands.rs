use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use agrivolt::mpc_engine::{best_row, step_seed, Scenario, ScenarioConfig};
use agrivolt::optimizer::Backend;
use agrivolt::report;
use agrivolt::weather::make_forecast_with_ranges;

use crate::args::{omega_grid, Command, Mode};
use crate::manifest::{config_hash, RunManifest};

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<agrivolt::Error> for Failure {
    fn from(e: agrivolt::Error) -> Self {
        use agrivolt::Error;
        let text = e.to_string();
        if e.is_numerical() {
            Failure::Numerical(text)
        } else if matches!(e, Error::Config(_) | Error::InvalidParameter(_)) {
            Failure::Usage(text)
        } else {
            Failure::Data(text)
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

struct Outputs {
    dir: PathBuf,
    files: Vec<PathBuf>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self, Failure> {
        std::fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    fn write(
        &mut self,
        name: &str,
        body: impl FnOnce(&mut BufWriter<File>) -> agrivolt::Result<()>,
    ) -> Result<(), Failure> {
        let path = self.dir.join(name);
        let mut w = BufWriter::new(File::create(&path)?);
        body(&mut w)?;
        w.flush()?;
        self.files.push(path);
        Ok(())
    }
}

fn load(cmd: &Command) -> Result<ScenarioConfig, Failure> {
    let common = cmd.common();
    let mut cfg = ScenarioConfig::load(&common.config).map_err(|e| match e {
        agrivolt::Error::Io(io) => {
            Failure::Usage(format!("cannot read {}: {io}", common.config.display()))
        }
        other => other.into(),
    })?;
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

pub fn execute(cmd: &Command) -> Result<(), Failure> {
    let started = Instant::now();
    let mut cfg = load(cmd)?;
    let mut out = Outputs::new(&cmd.common().out)?;
    let mut seeds = vec![cfg.seed];

    match cmd {
        Command::FitShading { .. } => {
            let scenario = Scenario::prepare(cfg.clone())?;
            out.write("fits.csv", |w| report::write_fits(w, &scenario.fits))?;
            out.write("fit_hourly.csv", |w| {
                report::write_fit_hourly(w, &scenario.fits, &scenario.weather)
            })?;
            println!(
                "fits={} daylight steps",
                scenario.fits.iter().flatten().count()
            );
        }
        Command::Run {
            mode,
            omega,
            noise,
            backend,
            ..
        } => {
            if let Some(w) = omega {
                cfg.control.omega = *w;
            }
            if let Some(n) = noise {
                cfg.forecast.max_std_fraction = *n;
            }
            if let Some(b) = backend {
                cfg.control.backend = (*b).into();
            }
            cfg.validate()?;
            let scenario = Scenario::prepare(cfg.clone())?;
            let (w, b) = (cfg.control.omega, cfg.control.backend);
            let result = match mode {
                Mode::OpenLoop => {
                    seeds.clear();
                    scenario.run_open_loop(w, b)?
                }
                Mode::Mpc => scenario.run_mpc(w, b, &cfg.forecast, cfg.seed)?,
            };
            out.write("decisions.csv", |f| report::write_decisions(f, &result))?;
            out.write("power.csv", |f| report::write_power(f, &result))?;
            out.write("par.csv", |f| report::write_par(f, &result))?;
            out.write("crop.csv", |f| report::write_crop(f, &result))?;
            out.write("summary.csv", |f| report::write_summary(f, &[&result]))?;
            println!("{}", report::summary_line(&result));
        }
        Command::Sweep {
            step,
            omegas,
            backend,
            ..
        } => {
            let grid = match omegas {
                Some(list) => list.clone(),
                None => omega_grid(*step)
                    .ok_or_else(|| Failure::Usage(format!("--step {step} must be in (0, 1]")))?,
            };
            if let Some(bad) = grid.iter().find(|w| !(0.0..=1.0).contains(*w)) {
                return Err(Failure::Usage(format!("omega {bad} outside [0, 1]")));
            }
            let backend: Backend = backend.map(Into::into).unwrap_or(cfg.control.backend);
            seeds.clear();
            let scenario = Scenario::prepare(cfg.clone())?;
            let rows = scenario.sweep_pareto(&grid, backend)?;
            out.write("pareto.csv", |f| report::write_pareto(f, &rows))?;
            if let Some(best) = best_row(&rows) {
                println!(
                    "rows={} best omega={} LER_crop={:.6} LER_pv={:.6} LER_total={:.6}",
                    rows.len(),
                    best.omega,
                    best.ler_crop,
                    best.ler_pv,
                    best.ler_total
                );
            }
        }
        Command::Baselines { .. } => {
            seeds.clear();
            let scenario = Scenario::prepare(cfg.clone())?;
            let b = scenario.baselines;
            out.write("baselines.csv", |f| {
                writeln!(
                    f,
                    "y_crop_only,revenue_tracking\n{},{}",
                    b.y_crop_only, b.revenue_tracking
                )?;
                Ok(())
            })?;
            println!(
                "y_crop_only={} revenue_tracking={}",
                b.y_crop_only, b.revenue_tracking
            );
        }
        Command::ForecastDemo { t0, max_lead, .. } => {
            let scenario = Scenario::prepare(cfg.clone())?;
            let seed = step_seed(cfg.seed, *t0);
            let fc = make_forecast_with_ranges(
                &scenario.weather,
                *t0,
                &cfg.forecast,
                &scenario.ranges,
                seed,
            )?;
            out.write("noise_schedule.csv", |f| {
                report::write_noise_schedule(f, &cfg.forecast, &scenario.ranges, *max_lead)
            })?;
            out.write("forecast.csv", |f| {
                report::write_forecast(f, &scenario.weather, &fc)
            })?;
            println!("forecast issued at t={t0} with {} leads", fc.samples.len());
        }
    }

    let manifest = RunManifest {
        command: cmd.name().to_string(),
        config_path: cmd.common().config.clone(),
        config_hash: config_hash(&cfg),
        seeds,
        outputs: out.files.clone(),
        wall_clock: started.elapsed(),
    };
    manifest.write(&out.dir)?;
    Ok(())
}
