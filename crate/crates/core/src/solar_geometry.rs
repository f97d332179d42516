//! Sun position, angle of incidence and the sun-tracking trajectory.
//!
//! Angles at every public boundary are in degrees. Azimuths are measured from
//! true south with east of south positive; see [`south_azimuth_from_north`]
//! for converting the north-referenced, clockwise convention used by most
//! weather and ephemeris sources.
//!
//! The ephemeris follows the NOAA / Meeus low-precision solar coordinates,
//! which stay well within 0.05° of NREL SPA for years 1901-2099. No
//! atmospheric refraction correction is applied: altitudes are geometric.

use chrono::{Datelike, Duration, NaiveDate, NaiveDateTime, NaiveTime, Timelike};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MIN_YEAR: i32 = 1901;
const MAX_YEAR: i32 = 2099;

/// Geographic site. Timestamps handed to [`sun_position`] are civil times at
/// the fixed `timezone_offset` (hours east of UTC, no daylight saving).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Site {
    pub latitude: f64,
    pub longitude: f64,
    pub timezone_offset: f64,
}

impl Site {
    pub fn new(latitude: f64, longitude: f64, timezone_offset: f64) -> Result<Self> {
        let site = Self {
            latitude,
            longitude,
            timezone_offset,
        };
        site.validate()?;
        Ok(site)
    }

    pub fn validate(&self) -> Result<()> {
        if !(-90.0..=90.0).contains(&self.latitude) {
            return Err(Error::InvalidParameter(format!(
                "latitude {} outside [-90, 90]",
                self.latitude
            )));
        }
        if !(-180.0..=180.0).contains(&self.longitude) {
            return Err(Error::InvalidParameter(format!(
                "longitude {} outside [-180, 180]",
                self.longitude
            )));
        }
        if !(-12.0..=14.0).contains(&self.timezone_offset) {
            return Err(Error::InvalidParameter(format!(
                "timezone offset {} h outside [-12, 14]",
                self.timezone_offset
            )));
        }
        Ok(())
    }

    fn to_utc(self, local: NaiveDateTime) -> NaiveDateTime {
        local - Duration::milliseconds((self.timezone_offset * 3_600_000.0).round() as i64)
    }

    fn to_local(self, utc: NaiveDateTime) -> NaiveDateTime {
        utc + Duration::milliseconds((self.timezone_offset * 3_600_000.0).round() as i64)
    }
}

/// Sun direction: azimuth from true south (east positive) and altitude above
/// the horizon, both in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolarPosition {
    pub azimuth: f64,
    pub altitude: f64,
}

impl SolarPosition {
    pub fn new(azimuth: f64, altitude: f64) -> Self {
        Self { azimuth, altitude }
    }

    pub fn is_daylight(&self) -> bool {
        self.altitude > 0.0
    }

    /// Unit vector pointing from the ground towards the sun in the
    /// (east, north, up) frame.
    pub fn direction(&self) -> [f64; 3] {
        let (sa, ca) = self.azimuth.to_radians().sin_cos();
        let (sb, cb) = self.altitude.to_radians().sin_cos();
        [cb * sa, -cb * ca, sb]
    }
}

/// Panel normal orientation: azimuth from true south (east positive) and
/// tilt of the collector surface from horizontal, in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PanelOrientation {
    pub azimuth: f64,
    pub tilt: f64,
}

impl PanelOrientation {
    pub fn new(azimuth: f64, tilt: f64) -> Self {
        Self { azimuth, tilt }
    }

    /// Unit normal of the collector surface in the (east, north, up) frame.
    pub fn normal(&self) -> [f64; 3] {
        let (sa, ca) = self.azimuth.to_radians().sin_cos();
        let (st, ct) = self.tilt.to_radians().sin_cos();
        [st * sa, -st * ca, ct]
    }
}

/// Closed interval of admissible angles, degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleRange {
    pub min: f64,
    pub max: f64,
}

impl AngleRange {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min > max {
            return Err(Error::InvalidParameter(format!(
                "angle range [{min}, {max}] is empty or not finite"
            )));
        }
        Ok(Self { min, max })
    }

    pub fn contains(&self, angle: f64) -> bool {
        angle >= self.min && angle <= self.max
    }

    /// Clamps `angle` into the range, reporting whether it moved.
    pub fn clamp(&self, angle: f64) -> (f64, bool) {
        if angle < self.min {
            (self.min, true)
        } else if angle > self.max {
            (self.max, true)
        } else {
            (angle, false)
        }
    }
}

/// Physical design limits of the tracker.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientationLimits {
    pub azimuth: AngleRange,
    pub tilt: AngleRange,
}

impl OrientationLimits {
    pub fn contains(&self, panel: &PanelOrientation) -> bool {
        self.azimuth.contains(panel.azimuth) && self.tilt.contains(panel.tilt)
    }
}

/// Baseline tracker position for one time step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tracking {
    /// Sun above the horizon. `clamped` is set when the ideal orientation
    /// had to be moved into the limits.
    Track {
        orientation: PanelOrientation,
        clamped: bool,
    },
    /// Sun at or below the horizon; the tracker sits at its park position.
    Parked,
}

impl Tracking {
    pub fn orientation_or(&self, park: PanelOrientation) -> PanelOrientation {
        match self {
            Tracking::Track { orientation, .. } => *orientation,
            Tracking::Parked => park,
        }
    }
}

/// Converts a north-referenced, clockwise azimuth (east = 90°) into the
/// south-referenced, east-positive convention, normalised to (-180, 180].
pub fn south_azimuth_from_north(north_azimuth: f64) -> f64 {
    wrap_degrees(180.0 - north_azimuth)
}

fn wrap_degrees(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(360.0);
    if a > 180.0 {
        a -= 360.0;
    }
    a
}

fn check_year(year: i32) -> Result<()> {
    if !(MIN_YEAR..=MAX_YEAR).contains(&year) {
        return Err(Error::OutOfRange(format!(
            "year {year} outside supported range {MIN_YEAR}-{MAX_YEAR}"
        )));
    }
    Ok(())
}

fn julian_day(utc: NaiveDateTime) -> f64 {
    let ts = utc.and_utc();
    let seconds = ts.timestamp() as f64 + f64::from(ts.timestamp_subsec_nanos()) * 1e-9;
    seconds / 86_400.0 + 2_440_587.5
}

/// Declination (deg) and equation of time (minutes) at a UTC instant.
fn solar_coordinates(utc: NaiveDateTime) -> (f64, f64) {
    let jc = (julian_day(utc) - 2_451_545.0) / 36_525.0;

    let mean_long = (280.46646 + jc * (36_000.769_83 + jc * 0.000_303_2)).rem_euclid(360.0);
    let mean_anom = 357.52911 + jc * (35_999.050_29 - 0.000_153_7 * jc);
    let ecc = 0.016_708_634 - jc * (0.000_042_037 + 0.000_000_126_7 * jc);
    let m = mean_anom.to_radians();
    let center = m.sin() * (1.914602 - jc * (0.004817 + 0.000014 * jc))
        + (2.0 * m).sin() * (0.019993 - 0.000101 * jc)
        + (3.0 * m).sin() * 0.000289;
    let omega = (125.04 - 1934.136 * jc).to_radians();
    let apparent_long = (mean_long + center - 0.00569 - 0.00478 * omega.sin()).to_radians();

    let mean_obliq =
        23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0;
    let obliq = (mean_obliq + 0.00256 * omega.cos()).to_radians();
    let declination = (obliq.sin() * apparent_long.sin()).asin();

    let y = (obliq / 2.0).tan().powi(2);
    let l0 = mean_long.to_radians();
    let eot = y * (2.0 * l0).sin() - 2.0 * ecc * m.sin()
        + 4.0 * ecc * y * m.sin() * (2.0 * l0).cos()
        - 0.5 * y * y * (4.0 * l0).sin()
        - 1.25 * ecc * ecc * (2.0 * m).sin();
    (declination.to_degrees(), 4.0 * eot.to_degrees())
}

/// Sun position at a site for a local civil timestamp.
pub fn sun_position(site: &Site, timestamp: NaiveDateTime) -> Result<SolarPosition> {
    site.validate()?;
    let utc = site.to_utc(timestamp);
    check_year(utc.year())?;

    let (declination, eot) = solar_coordinates(utc);
    let minutes =
        f64::from(utc.num_seconds_from_midnight()) / 60.0 + f64::from(utc.nanosecond()) / 6e10;
    let true_solar_minutes = (minutes + eot + 4.0 * site.longitude).rem_euclid(1440.0);
    let hour_angle = (true_solar_minutes / 4.0 - 180.0).to_radians();

    let lat = site.latitude.to_radians();
    let dec = declination.to_radians();
    let sin_alt = lat.sin() * dec.sin() + lat.cos() * dec.cos() * hour_angle.cos();
    let altitude = sin_alt.clamp(-1.0, 1.0).asin().to_degrees();

    // West-positive azimuth from south, then flipped to the east-positive convention.
    let west_of_south = hour_angle
        .sin()
        .atan2(hour_angle.cos() * lat.sin() - dec.tan() * lat.cos());
    Ok(SolarPosition {
        azimuth: wrap_degrees(-west_of_south.to_degrees()),
        altitude,
    })
}

/// Local civil time of solar transit (local solar noon) on `date`.
pub fn solar_noon(site: &Site, date: NaiveDate) -> Result<NaiveDateTime> {
    site.validate()?;
    check_year(date.year())?;
    let midnight_utc = date.and_time(NaiveTime::MIN);
    // Two fixed-point passes converge well below a second.
    let mut noon_minutes = 720.0 - 4.0 * site.longitude;
    for _ in 0..3 {
        let at = midnight_utc + Duration::milliseconds((noon_minutes * 60_000.0) as i64);
        let (_, eot) = solar_coordinates(at);
        noon_minutes = 720.0 - 4.0 * site.longitude - eot;
    }
    let utc = midnight_utc + Duration::milliseconds((noon_minutes * 60_000.0).round() as i64);
    Ok(site.to_local(utc))
}

/// Cosine of the angle between the sun's rays and the panel normal.
pub fn incidence_cosine(sun: &SolarPosition, panel: &PanelOrientation) -> f64 {
    let beta = sun.altitude.to_radians();
    let tilt = panel.tilt.to_radians();
    let dphi = (sun.azimuth - panel.azimuth).to_radians();
    let c = beta.cos() * dphi.cos() * tilt.sin() + beta.sin() * tilt.cos();
    c.clamp(-1.0, 1.0)
}

/// Orientation that points the panel normal at the sun, clamped into
/// `limits`. Returns [`Tracking::Parked`] when the sun is not up.
pub fn sun_tracking_orientation(sun: &SolarPosition, limits: &OrientationLimits) -> Tracking {
    if !sun.is_daylight() {
        return Tracking::Parked;
    }
    let (tilt, tilt_clamped) = limits.tilt.clamp(90.0 - sun.altitude);
    let (azimuth, az_clamped) = limits.azimuth.clamp(sun.azimuth);
    Tracking::Track {
        orientation: PanelOrientation { azimuth, tilt },
        clamped: tilt_clamped || az_clamped,
    }
}

/// Ideal (unclamped) sun-tracking tilt, degrees.
pub fn tracking_tilt(sun: &SolarPosition) -> f64 {
    90.0 - sun.altitude
}
