//! Season simulation: baselines, open-loop and receding-horizon control, and
//! weight sweeps.
//!
//! Decisions come from the linearised horizon problem; outcomes always come
//! from the exact models (incidence, polygon shading, EPIC growth) driven by
//! the true weather.

use chrono::{Duration, NaiveDate, Timelike};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::crop_epic::{advance_day, crop_yield, CropParams, CropState, DailyClimate};
use crate::error::{Error, Result};
use crate::optimizer::{
    build_problem, is_decision_step, price_hour, solve_horizon, Backend, HorizonInputs,
    HorizonProblem, HorizonSolution, StepDecision,
};
use crate::pv_array::{panel_irradiance, power, revenue, PvParams};
use crate::shading::{
    fit_season, par_field, shading_factor, ArrayLayout, ShadingAffineFit, ShadingModel,
};
use crate::solar_geometry::{
    sun_position, sun_tracking_orientation, AngleRange, OrientationLimits, PanelOrientation, Site,
    SolarPosition, Tracking,
};
use crate::weather::{
    load_weather_csv, make_forecast_with_ranges, synthesize_clear_sky, ClearSkyParams, ColumnMap,
    ForecastConfig, VariableRanges, WeatherSample,
};

/// Simulation time step, hours.
pub const DT_HOURS: f64 = 1.0;
pub const STEPS_PER_DAY: usize = 24;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum WeatherSource {
    Csv {
        path: std::path::PathBuf,
        #[serde(default)]
        columns: ColumnMap,
    },
    Synthetic(ClearSkyParams),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Season {
    pub start_date: NaiveDate,
    pub days: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResolveCadence {
    /// Re-solve at every time step.
    #[default]
    EveryStep,
    /// Skip solves at steps without a decision.
    DaylightOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Control {
    pub omega: f64,
    #[serde(default)]
    pub backend: Backend,
    #[serde(default)]
    pub resolve: ResolveCadence,
}

/// Fixed single-use baselines, replacing the simulated ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaselineOverride {
    pub y_crop_only: f64,
    pub revenue_tracking: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub site: Site,
    pub season: Season,
    pub weather: WeatherSource,
    pub layout: ArrayLayout,
    pub limits: OrientationLimits,
    /// Orientation held at steps without a decision.
    pub park: PanelOrientation,
    pub pv: PvParams,
    pub crop: CropParams,
    pub control: Control,
    pub forecast: ForecastConfig,
    pub seed: u64,
    #[serde(default)]
    pub baselines: Option<BaselineOverride>,
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let mut cfg = Self::from_toml_str(&text)?;
        // Relative weather paths are resolved against the config file.
        if let WeatherSource::Csv { path: csv, .. } = &mut cfg.weather {
            if csv.is_relative() {
                if let Some(dir) = path.parent() {
                    *csv = dir.join(&*csv);
                }
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.site.validate()?;
        self.layout.validate()?;
        self.pv.validate()?;
        self.crop.validate()?;
        self.forecast.validate()?;
        AngleRange::new(self.limits.tilt.min, self.limits.tilt.max)?;
        AngleRange::new(self.limits.azimuth.min, self.limits.azimuth.max)?;
        if self.season.days == 0 {
            return Err(Error::Config("season.days must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.control.omega) {
            return Err(Error::Config(format!(
                "omega {} outside [0, 1]",
                self.control.omega
            )));
        }
        if let Some(b) = &self.baselines {
            if !(b.y_crop_only > 0.0 && b.revenue_tracking > 0.0) {
                return Err(Error::Config("baseline overrides must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn horizon(&self) -> usize {
        STEPS_PER_DAY * self.season.days
    }
}

/// Single-use yield and revenue every LER is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Baselines {
    pub y_crop_only: f64,
    pub revenue_tracking: f64,
}

/// A configuration with every decision-independent series precomputed.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub config: ScenarioConfig,
    /// True weather; irradiance is zero whenever the sun is down.
    pub weather: Vec<WeatherSample>,
    pub suns: Vec<SolarPosition>,
    pub tracking: Vec<Tracking>,
    pub fits: Vec<Option<ShadingAffineFit>>,
    /// Power of the sun-tracking baseline at each step, W.
    pub tracking_power: Vec<f64>,
    pub ranges: VariableRanges,
    pub baselines: Baselines,
}

fn season_weather(cfg: &ScenarioConfig) -> Result<Vec<WeatherSample>> {
    let season = &cfg.season;
    let series = match &cfg.weather {
        WeatherSource::Synthetic(p) => {
            synthesize_clear_sky(&cfg.site, season.start_date, season.days, p)?
        }
        WeatherSource::Csv { path, columns } => {
            let all = load_weather_csv(path, columns)?;
            let end = season.start_date + Duration::days(season.days as i64);
            all.into_iter()
                .filter(|s| s.timestamp.date() >= season.start_date && s.timestamp.date() < end)
                .collect()
        }
    };
    if series.len() != cfg.horizon() {
        return Err(Error::OutOfRange(format!(
            "weather covers {} steps of the season's {}",
            series.len(),
            cfg.horizon()
        )));
    }
    if series[0].timestamp.hour() != 0 || series[0].timestamp.date() != season.start_date {
        return Err(Error::OutOfRange(
            "season weather must start in hour 0 of start_date".into(),
        ));
    }
    Ok(series)
}

impl Scenario {
    pub fn prepare(config: ScenarioConfig) -> Result<Self> {
        config.validate()?;
        let weather = season_weather(&config)?;
        Self::with_weather(config, weather)
    }

    /// Prepares a scenario on an explicit hourly weather series.
    pub fn with_weather(config: ScenarioConfig, mut weather: Vec<WeatherSample>) -> Result<Self> {
        config.validate()?;
        if weather.len() != config.horizon() {
            return Err(Error::OutOfRange(format!(
                "{} weather samples for a {}-step season",
                weather.len(),
                config.horizon()
            )));
        }
        let suns = weather
            .iter()
            .map(|w| sun_position(&config.site, w.timestamp))
            .collect::<Result<Vec<_>>>()?;
        for (w, sun) in weather.iter_mut().zip(&suns) {
            if !sun.is_daylight() {
                w.dni = 0.0;
                w.dhi = 0.0;
            }
        }
        let tracking: Vec<Tracking> = suns
            .iter()
            .map(|s| sun_tracking_orientation(s, &config.limits))
            .collect();
        let fits = fit_season(&config.layout, &suns, &tracking, &config.limits.tilt)?;
        let tracking_power: Vec<f64> = (0..weather.len())
            .map(|t| {
                let panel = baseline_orientation(&config, &weather[t], &suns[t], &tracking[t]);
                let (i_db, i_diff) = panel_irradiance(&weather[t], &suns[t], &panel);
                power(&config.pv, i_db, i_diff)
            })
            .collect();
        let ranges = VariableRanges::of(&weather);
        let mut scenario = Self {
            config,
            weather,
            suns,
            tracking,
            fits,
            tracking_power,
            ranges,
            baselines: Baselines {
                y_crop_only: 0.0,
                revenue_tracking: 0.0,
            },
        };
        scenario.baselines = match scenario.config.baselines {
            Some(b) => Baselines {
                y_crop_only: b.y_crop_only,
                revenue_tracking: b.revenue_tracking,
            },
            None => scenario.simulate_baselines()?,
        };
        Ok(scenario)
    }

    pub fn horizon(&self) -> usize {
        self.weather.len()
    }

    pub fn days(&self) -> usize {
        self.horizon() / STEPS_PER_DAY
    }

    pub fn is_decision_step(&self, t: usize) -> bool {
        is_decision_step(&self.weather[t], &self.suns[t])
    }

    fn climate(&self, day: usize) -> Result<DailyClimate> {
        let temps: Vec<f64> = self.weather[day * STEPS_PER_DAY..(day + 1) * STEPS_PER_DAY]
            .iter()
            .map(|w| w.temperature)
            .collect();
        DailyClimate::from_hourly(&temps)
    }

    /// Crop-only yield (no shading anywhere) and sun-tracking revenue.
    pub fn simulate_baselines(&self) -> Result<Baselines> {
        let alpha = self.config.pv.alpha;
        let unshaded: Vec<f64> = self
            .weather
            .iter()
            .map(|w| alpha * (w.dni + w.dhi))
            .collect();
        let states = self.grow(&unshaded)?;
        let y_crop_only = crop_yield(states.last().expect("at least one day"), &self.config.crop);
        let revenue_tracking = revenue(&self.tracking_power, &self.config.pv, DT_HOURS)?;
        Ok(Baselines {
            y_crop_only,
            revenue_tracking,
        })
    }

    /// Daily crop states for a season of field PAR, starting with the
    /// initial state.
    pub fn grow(&self, par: &[f64]) -> Result<Vec<CropState>> {
        let mut state = CropState::initial();
        let mut states = vec![state];
        for day in 0..self.days() {
            let slice = &par[day * STEPS_PER_DAY..(day + 1) * STEPS_PER_DAY];
            state = advance_day(
                &state,
                &self.climate(day)?,
                slice,
                &self.config.crop,
                DT_HOURS,
            );
            states.push(state);
        }
        Ok(states)
    }

    /// Exact outcome of holding `tilt` (or the park position when `None`)
    /// at step `t` under the true weather.
    pub fn realize(&self, t: usize, tilt: Option<f64>) -> StepRecord {
        let (w, sun) = (&self.weather[t], &self.suns[t]);
        let panel = match (tilt, self.tracking[t]) {
            (Some(tilt), Tracking::Track { orientation, .. }) => {
                PanelOrientation::new(orientation.azimuth, tilt)
            }
            _ => self.config.park,
        };
        let (i_db, i_diff) = panel_irradiance(w, sun, &panel);
        let p = power(&self.config.pv, i_db, i_diff);
        let shading = shading_factor(&self.config.layout, sun, &panel);
        let alpha = self.config.pv.alpha;
        let par = par_field(
            ShadingModel::Exact(shading),
            alpha * w.dni,
            alpha * w.dhi,
            0.0,
        );
        StepRecord {
            t,
            timestamp: w.timestamp,
            azimuth: panel.azimuth,
            tilt: panel.tilt,
            i_db,
            i_diff,
            power: p,
            delta_power: p - self.tracking_power[t],
            shading,
            par_field: par,
            decision: None,
        }
    }

    fn horizon_inputs<'a>(
        &'a self,
        weather: &'a [WeatherSample],
        run: &RunState,
        t0: usize,
    ) -> HorizonInputs<'a> {
        HorizonInputs {
            t0,
            dt: DT_HOURS,
            steps_per_day: STEPS_PER_DAY,
            weather,
            suns: &self.suns,
            tracking: &self.tracking,
            fits: &self.fits,
            tilt_limits: self.config.limits.tilt,
            pv: &self.config.pv,
            crop: &self.config.crop,
            state: run.state,
            day_par_realized: run.day_par.iter().sum(),
            revenue_realized: run.revenue,
            y_crop_only: self.baselines.y_crop_only,
            revenue_tracking: self.baselines.revenue_tracking,
        }
    }

    /// Solves the whole season once with the true weather.
    /// Whole-season problem with true weather, as solved by the open loop.
    pub fn open_loop_problem(&self, omega: f64) -> Result<HorizonProblem> {
        let run = RunState::new();
        build_problem(&self.horizon_inputs(&self.weather, &run, 0), omega)
    }

    pub fn solve_open_loop(&self, omega: f64, backend: Backend) -> Result<HorizonSolution> {
        solve_horizon(&self.open_loop_problem(omega)?, backend)
    }

    pub fn run_open_loop(&self, omega: f64, backend: Backend) -> Result<SeasonResult> {
        let solution = self.solve_open_loop(omega, backend)?;
        let mut plan = vec![None; self.horizon()];
        for d in &solution.plan {
            plan[d.t] = Some(*d);
        }
        let mut run = RunState::new();
        for (t, decision) in plan.into_iter().enumerate() {
            self.apply(&mut run, t, decision)?;
        }
        self.finish(run, omega, RunMode::OpenLoop, None, &solution)
    }

    /// Receding-horizon run: forecast, re-solve, apply only the first step.
    pub fn run_mpc(
        &self,
        omega: f64,
        backend: Backend,
        forecast: &ForecastConfig,
        seed: u64,
    ) -> Result<SeasonResult> {
        forecast.validate()?;
        let horizon = self.horizon();
        let mut run = RunState::new();
        let mut mixed = self.weather.clone();
        let mut initial: Option<HorizonSolution> = None;
        for t in 0..horizon {
            let decide = self.is_decision_step(t);
            let solve_now =
                t == 0 || decide || self.config.control.resolve == ResolveCadence::EveryStep;
            let mut decision = None;
            if solve_now {
                let fc = make_forecast_with_ranges(
                    &self.weather,
                    t,
                    forecast,
                    &self.ranges,
                    step_seed(seed, t),
                )?;
                mixed[t..].copy_from_slice(&fc.samples);
                let problem = build_problem(&self.horizon_inputs(&mixed, &run, t), omega)?;
                let solution = solve_horizon(&problem, backend)?;
                // The plan covers steps the forecast calls daylight; the
                // applied step must also be a true decision step.
                if decide {
                    decision = solution.plan.first().filter(|d| d.t == t).copied();
                    if decision.is_none() {
                        return Err(Error::Solver(format!("no decision produced for step {t}")));
                    }
                }
                if initial.is_none() {
                    initial = Some(solution);
                }
            }
            mixed[t] = self.weather[t];
            self.apply(&mut run, t, decision)?;
        }
        let initial = initial.ok_or_else(|| Error::Solver("empty season".into()))?;
        self.finish(run, omega, RunMode::Mpc, Some(seed), &initial)
    }

    fn apply(&self, run: &mut RunState, t: usize, decision: Option<StepDecision>) -> Result<()> {
        let mut rec = self.realize(t, decision.map(|d| d.tilt));
        rec.decision = decision;
        run.revenue +=
            self.config.pv.price_at_hour(price_hour(&self.weather[t])) * rec.power * DT_HOURS;
        run.day_par.push(rec.par_field);
        run.records.push(rec);
        if run.day_par.len() == STEPS_PER_DAY {
            let day = t / STEPS_PER_DAY;
            run.state = advance_day(
                &run.state,
                &self.climate(day)?,
                &run.day_par,
                &self.config.crop,
                DT_HOURS,
            );
            run.daily.push(run.state);
            run.day_par.clear();
        }
        Ok(())
    }

    fn finish(
        &self,
        run: RunState,
        omega: f64,
        mode: RunMode,
        seed: Option<u64>,
        predicted_from: &HorizonSolution,
    ) -> Result<SeasonResult> {
        let final_state = *run.daily.last().expect("season has days");
        let yield_realized = crop_yield(&final_state, &self.config.crop);
        let powers: Vec<f64> = run.records.iter().map(|r| r.power).collect();
        let revenue_realized = revenue(&powers, &self.config.pv, DT_HOURS)?;
        let b = self.baselines;
        if b.y_crop_only.is_nan() || b.y_crop_only <= 0.0 {
            return Err(Error::UndefinedLer(format!(
                "crop-only yield is {}",
                b.y_crop_only
            )));
        }
        if b.revenue_tracking.is_nan() || b.revenue_tracking <= 0.0 {
            return Err(Error::UndefinedLer(format!(
                "tracking revenue is {}",
                b.revenue_tracking
            )));
        }
        let ler_crop = yield_realized / b.y_crop_only;
        let ler_pv = revenue_realized / b.revenue_tracking;
        let predicted = Prediction {
            ler_pv: predicted_from.predicted_ler_pv,
            ler_crop: predicted_from.predicted_ler_crop,
            yield_: predicted_from.predicted_ler_crop * b.y_crop_only,
            revenue: predicted_from.predicted_ler_pv * b.revenue_tracking,
        };
        let decisions: Vec<&StepDecision> = run
            .records
            .iter()
            .filter_map(|r| r.decision.as_ref())
            .collect();
        let exactness = Exactness {
            decision_steps: decisions.len(),
            inexact_steps: decisions.iter().filter(|d| !d.exact).count(),
            clamped_steps: decisions.iter().filter(|d| d.tilt_clamped).count(),
        };
        Ok(SeasonResult {
            mode,
            omega,
            seed,
            records: run.records,
            daily: run.daily,
            yield_realized,
            revenue_realized,
            ler_crop,
            ler_pv,
            ler_total: ler_crop + ler_pv,
            yield_pct_error: percent_error(yield_realized, predicted.yield_),
            revenue_pct_error: percent_error(revenue_realized, predicted.revenue),
            predicted,
            exactness,
        })
    }

    /// Open-loop runs over a weight grid, normalised by the `ω = 0` yield
    /// and the `ω = 1` revenue.
    pub fn sweep_pareto(&self, omegas: &[f64], backend: Backend) -> Result<Vec<ParetoRow>> {
        if let Some(w) = omegas.iter().find(|w| !(0.0..=1.0).contains(*w)) {
            return Err(Error::InvalidParameter(format!("omega {w} outside [0, 1]")));
        }
        let mut grid: Vec<f64> = omegas.to_vec();
        grid.extend([0.0, 1.0]);
        let results = grid
            .par_iter()
            .map(|&w| self.run_open_loop(w, backend))
            .collect::<Result<Vec<_>>>()?;
        let (rows, anchors) = results.split_at(omegas.len());
        let yield_anchor = anchors[0].yield_realized;
        let revenue_anchor = anchors[1].revenue_realized;
        if !(yield_anchor > 0.0 && revenue_anchor > 0.0) {
            return Err(Error::UndefinedLer("sweep anchors are not positive".into()));
        }
        Ok(rows
            .iter()
            .map(|r| ParetoRow {
                omega: r.omega,
                yield_realized: r.yield_realized,
                revenue_realized: r.revenue_realized,
                normalized_yield: r.yield_realized / yield_anchor,
                normalized_revenue: r.revenue_realized / revenue_anchor,
                ler_crop: r.ler_crop,
                ler_pv: r.ler_pv,
                ler_total: r.ler_total,
                predicted_ler_crop: r.predicted.ler_crop,
                predicted_ler_pv: r.predicted.ler_pv,
                yield_pct_error: r.yield_pct_error,
                revenue_pct_error: r.revenue_pct_error,
                inexact_fraction: r.exactness.inexact_fraction(),
                clamped_fraction: r.exactness.clamped_fraction(),
            })
            .collect())
    }
}

/// Orientation of the sun-tracking baseline at one step.
fn baseline_orientation(
    cfg: &ScenarioConfig,
    weather: &WeatherSample,
    sun: &SolarPosition,
    tracking: &Tracking,
) -> PanelOrientation {
    if is_decision_step(weather, sun) {
        tracking.orientation_or(cfg.park)
    } else {
        cfg.park
    }
}

/// Seed of the forecast issued at step `t` of a run seeded with `seed`.
pub fn step_seed(seed: u64, t: usize) -> u64 {
    // SplitMix64 finaliser over the pair.
    let mut z = seed
        ^ (t as u64)
            .wrapping_add(1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn percent_error(realized: f64, predicted: f64) -> f64 {
    if realized == 0.0 {
        if predicted == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        100.0 * (realized - predicted).abs() / realized.abs()
    }
}

struct RunState {
    state: CropState,
    day_par: Vec<f64>,
    revenue: f64,
    records: Vec<StepRecord>,
    daily: Vec<CropState>,
}

impl RunState {
    fn new() -> Self {
        Self {
            state: CropState::initial(),
            day_par: Vec::with_capacity(STEPS_PER_DAY),
            revenue: 0.0,
            records: Vec::new(),
            daily: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunMode {
    OpenLoop,
    Mpc,
}

impl RunMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunMode::OpenLoop => "open-loop",
            RunMode::Mpc => "mpc",
        }
    }
}

/// Realized state of one time step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepRecord {
    pub t: usize,
    pub timestamp: chrono::NaiveDateTime,
    pub azimuth: f64,
    pub tilt: f64,
    pub i_db: f64,
    pub i_diff: f64,
    pub power: f64,
    pub delta_power: f64,
    pub shading: f64,
    pub par_field: f64,
    pub decision: Option<StepDecision>,
}

/// Linear-model predictions of the season outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prediction {
    pub ler_pv: f64,
    pub ler_crop: f64,
    pub yield_: f64,
    pub revenue: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Exactness {
    pub decision_steps: usize,
    pub inexact_steps: usize,
    pub clamped_steps: usize,
}

impl Exactness {
    pub fn inexact_fraction(&self) -> f64 {
        ratio(self.inexact_steps, self.decision_steps)
    }

    pub fn clamped_fraction(&self) -> f64 {
        ratio(self.clamped_steps, self.decision_steps)
    }
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeasonResult {
    pub mode: RunMode,
    pub omega: f64,
    pub seed: Option<u64>,
    pub records: Vec<StepRecord>,
    /// Crop state at the end of each day.
    pub daily: Vec<CropState>,
    pub yield_realized: f64,
    pub revenue_realized: f64,
    pub ler_crop: f64,
    pub ler_pv: f64,
    pub ler_total: f64,
    pub predicted: Prediction,
    pub yield_pct_error: f64,
    pub revenue_pct_error: f64,
    pub exactness: Exactness,
}

impl SeasonResult {
    /// Outcome fields only, for comparing runs made in different modes.
    pub fn outcome_eq(&self, other: &Self) -> bool {
        self.omega == other.omega
            && self.records == other.records
            && self.daily == other.daily
            && self.yield_realized == other.yield_realized
            && self.revenue_realized == other.revenue_realized
            && self.ler_total == other.ler_total
            && self.predicted == other.predicted
            && self.exactness == other.exactness
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParetoRow {
    pub omega: f64,
    pub yield_realized: f64,
    pub revenue_realized: f64,
    pub normalized_yield: f64,
    pub normalized_revenue: f64,
    pub ler_crop: f64,
    pub ler_pv: f64,
    pub ler_total: f64,
    pub predicted_ler_crop: f64,
    pub predicted_ler_pv: f64,
    pub yield_pct_error: f64,
    pub revenue_pct_error: f64,
    pub inexact_fraction: f64,
    pub clamped_fraction: f64,
}

/// Index of the highest total LER in a sweep.
pub fn best_row(rows: &[ParetoRow]) -> Option<&ParetoRow> {
    rows.iter()
        .max_by(|a, b| a.ler_total.total_cmp(&b.ler_total))
}
