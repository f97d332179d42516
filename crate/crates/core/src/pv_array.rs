//! Panel-plane irradiance, array power and revenue, and the deviation of
//! each from the sun-tracking trajectory.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solar_geometry::{incidence_cosine, PanelOrientation, SolarPosition};
use crate::weather::WeatherSample;

pub const HOURS_PER_DAY: usize = 24;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PvParams {
    /// Total collector area, m².
    pub area_total: f64,
    pub efficiency: f64,
    /// Electricity price per hour of day, $/Wh. Repeats every day.
    pub price_profile: Vec<f64>,
    /// Ratio of PAR to broadband irradiance.
    pub alpha: f64,
}

impl PvParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.area_total > 0.0 && self.area_total.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "area_total must be > 0, got {}",
                self.area_total
            )));
        }
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "efficiency must be in (0, 1], got {}",
                self.efficiency
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.price_profile.len() != HOURS_PER_DAY {
            return Err(Error::InvalidParameter(format!(
                "price_profile needs {HOURS_PER_DAY} hourly values, got {}",
                self.price_profile.len()
            )));
        }
        if let Some(p) = self
            .price_profile
            .iter()
            .find(|p| !(**p >= 0.0 && p.is_finite()))
        {
            return Err(Error::InvalidParameter(format!(
                "negative or non-finite price {p}"
            )));
        }
        Ok(())
    }

    /// Price at an hour of day; hours wrap modulo 24.
    pub fn price_at_hour(&self, hour: usize) -> f64 {
        self.price_profile[hour % HOURS_PER_DAY]
    }

    /// Energy yield per unit of panel-plane irradiance, W per W/m².
    pub fn gain(&self) -> f64 {
        self.area_total * self.efficiency
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerRecord {
    pub t: usize,
    pub i_db: f64,
    pub i_diff: f64,
    pub power: f64,
    /// Power minus the sun-tracking power at the same step.
    pub delta_power: f64,
}

/// Direct-beam and sky-diffuse irradiance on the panel plane, W/m².
/// Back-side incidence is clamped to zero.
pub fn panel_irradiance(
    weather: &WeatherSample,
    sun: &SolarPosition,
    panel: &PanelOrientation,
) -> (f64, f64) {
    let cos_inc = incidence_cosine(sun, panel).max(0.0);
    let i_db = weather.dni * cos_inc;
    let i_diff = weather.dhi * (1.0 + panel.tilt.to_radians().cos()) / 2.0;
    (i_db, i_diff)
}

pub fn power(params: &PvParams, i_db: f64, i_diff: f64) -> f64 {
    params.gain() * (i_db + i_diff)
}

/// Revenue of a power series whose step `t` falls in hour of day
/// `floor(t·dt) mod 24`.
pub fn revenue(powers: &[f64], params: &PvParams, dt: f64) -> Result<f64> {
    if params.price_profile.len() != HOURS_PER_DAY {
        return Err(Error::InvalidParameter(format!(
            "price profile has {} entries, expected {HOURS_PER_DAY}",
            params.price_profile.len()
        )));
    }
    Ok(powers
        .iter()
        .enumerate()
        .map(|(t, p)| params.price_at_hour(((t as f64) * dt).floor() as usize) * p * dt)
        .sum())
}

/// `(b1, b2)` of the linear diffuse deviation for a sun altitude in degrees.
pub fn diffuse_coefficients(dhi: f64, altitude: f64) -> (f64, f64) {
    let s = (90.0 - altitude).to_radians();
    (0.5 * dhi * s.cos(), -0.5 * dhi * s.sin())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviation {
    pub i_db: f64,
    pub i_diff: f64,
    pub power: f64,
}

/// Deviations from sun tracking as linear functions of
/// `x = cos δΣ`, `y = sin δΣ`.
pub fn deviations(
    params: &PvParams,
    weather: &WeatherSample,
    sun: &SolarPosition,
    x: f64,
    y: f64,
) -> Deviation {
    let (b1, b2) = diffuse_coefficients(weather.dhi, sun.altitude);
    let i_db = weather.dni * x - weather.dni;
    let i_diff = b1 * x + b2 * y - b1;
    Deviation {
        i_db,
        i_diff,
        power: params.gain() * (i_db + i_diff),
    }
}

/// The same deviations evaluated from the tilted-panel trigonometry at
/// `Σ = 90° − β + δΣ` with the panel azimuth following the sun.
pub fn deviations_trig(
    params: &PvParams,
    weather: &WeatherSample,
    sun: &SolarPosition,
    delta_tilt: f64,
) -> Deviation {
    let tilt_st = (90.0 - sun.altitude).to_radians();
    let d = delta_tilt.to_radians();
    let i_db = weather.dni * d.cos() - weather.dni;
    let i_diff = 0.5 * weather.dhi * ((tilt_st + d).cos() - tilt_st.cos());
    Deviation {
        i_db,
        i_diff,
        power: params.gain() * (i_db + i_diff),
    }
}

/// Revenue of `P_st + δP` relative to the revenue of `P_st`.
pub fn ler_pv(
    delta_powers: &[f64],
    tracking_powers: &[f64],
    params: &PvParams,
    dt: f64,
) -> Result<f64> {
    if delta_powers.len() != tracking_powers.len() {
        return Err(Error::InvalidParameter(format!(
            "{} deviations for {} tracking samples",
            delta_powers.len(),
            tracking_powers.len()
        )));
    }
    let base = revenue(tracking_powers, params, dt)?;
    if !(base > 0.0 && base.is_finite()) {
        return Err(Error::UndefinedLer(format!("tracking revenue is {base}")));
    }
    let actual: Vec<f64> = tracking_powers
        .iter()
        .zip(delta_powers)
        .map(|(p, d)| p + d)
        .collect();
    Ok(revenue(&actual, params, dt)? / base)
}
