//! EPIC crop growth: heat units, leaf area, intercepted PAR, biomass and
//! yield.
//!
//! Each day splits into a phenology step (heat units, temperature stress,
//! leaf area), which depends only on temperature, and a biomass step, which
//! depends on the PAR reaching the field. The optimizer relies on this
//! split: the phenology schedule is fixed before any tilt is chosen.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canopy light extinction coefficient.
pub const EXTINCTION: f64 = 0.65;
/// Conversion from `BE × PAR` (PAR in Wh/m²) to biomass units.
pub const BIOMASS_FACTOR: f64 = 0.001;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CropParams {
    /// Base temperature, °C.
    pub t_base: f64,
    /// Optimal growth temperature, °C.
    pub t_opt: f64,
    /// Potential heat units to maturity, °C-days.
    pub phu: f64,
    pub lai_max: f64,
    pub ah1: f64,
    pub ah2: f64,
    /// Biomass-energy ratio.
    pub be: f64,
    /// Harvest index.
    pub hi: f64,
}

impl CropParams {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            (self.t_opt > self.t_base, "t_opt must exceed t_base"),
            (self.phu > 0.0, "phu must be > 0"),
            (self.lai_max > 0.0, "lai_max must be > 0"),
            (self.be > 0.0, "be must be > 0"),
            (self.hi > 0.0 && self.hi <= 1.0, "hi must be in (0, 1]"),
            (
                [self.t_base, self.t_opt, self.ah1, self.ah2]
                    .iter()
                    .all(|v| v.is_finite()),
                "crop parameters must be finite",
            ),
        ];
        for (ok, msg) in checks {
            if !ok {
                return Err(Error::InvalidParameter(msg.into()));
            }
        }
        Ok(())
    }
}

/// `(ah1, ah2)` of the leaf-area S-curve `f(h) = h / (h + exp(ah1 − ah2·h))`
/// passing through two `(heat-unit index, fraction)` points.
pub fn s_curve_coefficients(p1: (f64, f64), p2: (f64, f64)) -> Result<(f64, f64)> {
    let ok = |(h, f): (f64, f64)| h > 0.0 && f > 0.0 && f < 1.0;
    if !ok(p1) || !ok(p2) || p1.0 == p2.0 {
        return Err(Error::InvalidParameter(
            "S-curve points need distinct h > 0 and 0 < f < 1".into(),
        ));
    }
    let z = |(h, f): (f64, f64)| (h / f - h).ln();
    let ah2 = (z(p1) - z(p2)) / (p2.0 - p1.0);
    Ok((z(p1) + ah2 * p1.0, ah2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DailyClimate {
    pub t_min: f64,
    pub t_max: f64,
    /// Daily mean, also used as the soil surface temperature.
    pub t_avg: f64,
}

impl DailyClimate {
    pub fn from_hourly(temperatures: &[f64]) -> Result<Self> {
        if temperatures.is_empty() {
            return Err(Error::InvalidParameter("no hourly temperatures".into()));
        }
        let t_min = temperatures.iter().copied().fold(f64::INFINITY, f64::min);
        let t_max = temperatures
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        let t_avg = temperatures.iter().sum::<f64>() / temperatures.len() as f64;
        Ok(Self {
            t_min,
            t_max,
            t_avg,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CropState {
    pub day: usize,
    pub hui: f64,
    pub reg: f64,
    pub huf: f64,
    pub lai: f64,
    pub biomass: f64,
}

impl CropState {
    /// State before the first day of the season.
    pub fn initial() -> Self {
        Self {
            day: 0,
            hui: 0.0,
            reg: 0.0,
            huf: 0.0,
            lai: 0.0,
            biomass: 0.0,
        }
    }

    /// Fraction of field PAR captured by the canopy.
    pub fn interception(&self) -> f64 {
        interception(self.lai)
    }
}

pub fn interception(lai: f64) -> f64 {
    1.0 - (-EXTINCTION * lai).exp()
}

pub fn heat_unit(climate: &DailyClimate, params: &CropParams) -> f64 {
    (0.5 * (climate.t_min + climate.t_max) - params.t_base).max(0.0)
}

pub fn temperature_stress(climate: &DailyClimate, params: &CropParams) -> f64 {
    let tg = climate.t_avg;
    if tg <= params.t_base || tg > 1.5 * params.t_opt {
        return 0.0;
    }
    let ratio = (tg - params.t_base) / (params.t_opt - params.t_base);
    (std::f64::consts::FRAC_PI_2 * ratio).sin().clamp(0.0, 1.0)
}

pub fn heat_unit_factor(hui: f64, params: &CropParams) -> f64 {
    if hui <= 0.0 {
        return 0.0;
    }
    hui / (hui + (params.ah1 - params.ah2 * hui).exp())
}

/// Day-`d` phenology from the day `d−1` state. Biomass is carried over
/// unchanged; [`grow_biomass`] adds the day's increment.
pub fn advance_phenology(
    state: &CropState,
    climate: &DailyClimate,
    params: &CropParams,
) -> CropState {
    let hui = state.hui + heat_unit(climate, params) / params.phu;
    let reg = temperature_stress(climate, params);
    let huf = heat_unit_factor(hui, params);
    let room = 1.0 - (5.0 * (state.lai - params.lai_max)).exp();
    let d_lai = ((huf - state.huf) * params.lai_max * room * reg.sqrt()).max(0.0);
    CropState {
        day: state.day + 1,
        hui,
        reg,
        huf,
        lai: (state.lai + d_lai).min(params.lai_max),
        biomass: state.biomass,
    }
}

/// Biomass gained on a day with stress `reg`, intercepting with the leaf
/// area `lai_used`, from hourly field PAR (W/m²) over steps of `dt` hours.
pub fn biomass_increment(
    par_field_day: &[f64],
    lai_used: f64,
    reg: f64,
    params: &CropParams,
    dt: f64,
) -> f64 {
    let par_crop: f64 = par_field_day.iter().sum::<f64>() * interception(lai_used) * dt;
    BIOMASS_FACTOR * params.be * par_crop * reg
}

/// Completes a day begun with [`advance_phenology`]. Interception uses the
/// leaf area at the end of the previous day.
pub fn grow_biomass(
    previous: &CropState,
    phenology: &CropState,
    par_field_day: &[f64],
    params: &CropParams,
    dt: f64,
) -> CropState {
    CropState {
        biomass: phenology.biomass
            + biomass_increment(par_field_day, previous.lai, phenology.reg, params, dt),
        ..*phenology
    }
}

pub fn advance_day(
    state: &CropState,
    climate: &DailyClimate,
    par_field_day: &[f64],
    params: &CropParams,
    dt: f64,
) -> CropState {
    let next = advance_phenology(state, climate, params);
    grow_biomass(state, &next, par_field_day, params, dt)
}

pub fn crop_yield(state: &CropState, params: &CropParams) -> f64 {
    params.hi * state.biomass
}

/// `(yield, yield / y_crop_only)`.
pub fn yield_and_ler(
    final_state: &CropState,
    params: &CropParams,
    y_crop_only: f64,
) -> Result<(f64, f64)> {
    if !(y_crop_only > 0.0 && y_crop_only.is_finite()) {
        return Err(Error::UndefinedLer(format!(
            "crop-only yield is {y_crop_only}"
        )));
    }
    let y = crop_yield(final_state, params);
    Ok((y, y / y_crop_only))
}
