//! Hourly weather: CSV ingestion, clear-sky synthesis and AR(1) forecasts.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use chrono::{Duration, NaiveDate, NaiveDateTime, NaiveTime};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solar_geometry::{sun_position, Site};

/// One hour of exogenous weather. Irradiances in W/m², temperature in °C.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeatherSample {
    pub timestamp: NaiveDateTime,
    pub dni: f64,
    pub dhi: f64,
    pub temperature: f64,
}

impl WeatherSample {
    /// Both irradiance components are zero: treated as a night hour.
    pub fn is_dark(&self) -> bool {
        self.dni == 0.0 && self.dhi == 0.0
    }
}

/// Column names of an NSRDB-style CSV export. `skip_rows` counts metadata
/// lines above the header (NSRDB downloads carry two).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ColumnMap {
    pub year: String,
    pub month: String,
    pub day: String,
    pub hour: String,
    pub minute: Option<String>,
    pub dni: String,
    pub dhi: String,
    pub temperature: String,
    pub skip_rows: usize,
}

impl Default for ColumnMap {
    fn default() -> Self {
        Self {
            year: "Year".into(),
            month: "Month".into(),
            day: "Day".into(),
            hour: "Hour".into(),
            minute: Some("Minute".into()),
            dni: "DNI".into(),
            dhi: "DHI".into(),
            temperature: "Temperature".into(),
            skip_rows: 2,
        }
    }
}

struct ColumnIndex {
    year: usize,
    month: usize,
    day: usize,
    hour: usize,
    minute: Option<usize>,
    dni: usize,
    dhi: usize,
    temperature: usize,
}

impl ColumnIndex {
    fn resolve(header: &csv::StringRecord, map: &ColumnMap, row: usize) -> Result<Self> {
        let find = |name: &str| -> Result<usize> {
            header
                .iter()
                .position(|h| h.trim() == name)
                .ok_or_else(|| Error::Parse {
                    row,
                    message: format!("missing required column '{name}'"),
                })
        };
        Ok(Self {
            year: find(&map.year)?,
            month: find(&map.month)?,
            day: find(&map.day)?,
            hour: find(&map.hour)?,
            minute: map.minute.as_deref().map(find).transpose()?,
            dni: find(&map.dni)?,
            dhi: find(&map.dhi)?,
            temperature: find(&map.temperature)?,
        })
    }
}

/// Reads an hourly weather CSV file.
pub fn load_weather_csv(path: impl AsRef<Path>, map: &ColumnMap) -> Result<Vec<WeatherSample>> {
    let path = path.as_ref();
    let file = File::open(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    parse_weather_csv(file, map)
}

/// Parses hourly weather from any reader. Rows must be strictly hourly with
/// no gaps or repeats; irradiances must be finite and non-negative.
pub fn parse_weather_csv<R: Read>(reader: R, map: &ColumnMap) -> Result<Vec<WeatherSample>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut records = rdr.records();

    for skipped in 0..map.skip_rows {
        if records.next().transpose()?.is_none() {
            return Err(Error::Parse {
                row: skipped + 1,
                message: "file ends inside the metadata block".into(),
            });
        }
    }
    let header_row = map.skip_rows + 1;
    let header = records.next().transpose()?.ok_or_else(|| Error::Parse {
        row: header_row,
        message: "missing header row".into(),
    })?;
    let cols = ColumnIndex::resolve(&header, map, header_row)?;

    let mut samples: Vec<WeatherSample> = Vec::new();
    for (i, record) in records.enumerate() {
        let row = header_row + i + 1;
        let record = record?;
        let field = |idx: usize, name: &str| -> Result<&str> {
            record.get(idx).map(str::trim).ok_or_else(|| Error::Parse {
                row,
                message: format!("missing value for column '{name}'"),
            })
        };
        let int = |idx: usize, name: &str| -> Result<u32> {
            let raw = field(idx, name)?;
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.fract() == 0.0 && *v >= 0.0)
                .map(|v| v as u32)
                .ok_or_else(|| Error::Parse {
                    row,
                    message: format!("column '{name}': '{raw}' is not a non-negative integer"),
                })
        };
        let real = |idx: usize, name: &str| -> Result<f64> {
            let raw = field(idx, name)?;
            let v: f64 = raw.parse().map_err(|_| Error::Parse {
                row,
                message: format!("column '{name}': '{raw}' is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row,
                    message: format!("column '{name}' is not finite"),
                });
            }
            Ok(v)
        };

        let year = int(cols.year, &map.year)? as i32;
        let month = int(cols.month, &map.month)?;
        let day = int(cols.day, &map.day)?;
        let hour = int(cols.hour, &map.hour)?;
        let minute = match (cols.minute, &map.minute) {
            (Some(idx), Some(name)) => int(idx, name)?,
            _ => 0,
        };
        let timestamp = NaiveDate::from_ymd_opt(year, month, day)
            .and_then(|d| d.and_hms_opt(hour, minute, 0))
            .ok_or_else(|| Error::Parse {
                row,
                message: format!("invalid date/time {year}-{month}-{day} {hour}:{minute}"),
            })?;

        let dni = real(cols.dni, &map.dni)?;
        let dhi = real(cols.dhi, &map.dhi)?;
        let temperature = real(cols.temperature, &map.temperature)?;
        if dni < 0.0 || dhi < 0.0 {
            return Err(Error::Parse {
                row,
                message: format!("negative irradiance (DNI {dni}, DHI {dhi}) at {timestamp}"),
            });
        }

        if let Some(prev) = samples.last() {
            let step = timestamp - prev.timestamp;
            if step <= Duration::zero() && samples.iter().any(|s| s.timestamp == timestamp) {
                return Err(Error::Parse {
                    row,
                    message: format!("duplicate timestamp {timestamp}"),
                });
            }
            if step < Duration::zero() {
                return Err(Error::Parse {
                    row,
                    message: format!(
                        "non-monotonic timestamp {timestamp} after {}",
                        prev.timestamp
                    ),
                });
            }
            if step != Duration::hours(1) {
                return Err(Error::Parse {
                    row,
                    message: format!(
                        "gap in hourly series: expected {}, found {timestamp}",
                        prev.timestamp + Duration::hours(1)
                    ),
                });
            }
        }
        samples.push(WeatherSample {
            timestamp,
            dni,
            dhi,
            temperature,
        });
    }
    if samples.is_empty() {
        return Err(Error::Parse {
            row: header_row,
            message: "no data rows".into(),
        });
    }
    Ok(samples)
}

/// Daily temperature cycle: `mean + amplitude * cos(2π (h - peak_hour) / 24)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DailyTemperature {
    pub mean: f64,
    pub amplitude: f64,
    pub peak_hour: f64,
}

/// Optional day-to-day variation layered on the clear-sky shapes. Each day
/// draws a clearness in `[clearness_min, 1]` scaling DNI, and a temperature
/// offset in `[-temperature_swing, temperature_swing]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DayToDayVariation {
    pub clearness_min: f64,
    pub temperature_swing: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClearSkyParams {
    pub peak_dni: f64,
    pub peak_dhi: f64,
    pub temperature: DailyTemperature,
    #[serde(default)]
    pub variation: Option<DayToDayVariation>,
}

/// Deterministic hourly weather for desk-scale runs. Samples are stamped at
/// the middle of each local hour, starting at 00:30 on `start_day`.
///
/// DNI follows the Meinel air-mass attenuation normalised so that an
/// overhead sun gives `peak_dni`; DHI scales with the sine of the altitude.
pub fn synthesize_clear_sky(
    site: &Site,
    start_day: NaiveDate,
    num_days: usize,
    params: &ClearSkyParams,
) -> Result<Vec<WeatherSample>> {
    if num_days == 0 {
        return Err(Error::InvalidParameter(
            "num_days must be at least 1".into(),
        ));
    }
    if !(params.peak_dni >= 0.0 && params.peak_dhi >= 0.0) {
        return Err(Error::InvalidParameter(
            "peak irradiances must be non-negative".into(),
        ));
    }
    if let Some(v) = &params.variation {
        if !(0.0..=1.0).contains(&v.clearness_min) || v.temperature_swing < 0.0 {
            return Err(Error::InvalidParameter(
                "clearness_min must lie in [0, 1] and temperature_swing be >= 0".into(),
            ));
        }
    }
    let mut rng = params.variation.map(|v| ChaCha8Rng::seed_from_u64(v.seed));

    let start = start_day.and_time(NaiveTime::from_hms_opt(0, 30, 0).unwrap());
    let mut out = Vec::with_capacity(num_days * 24);
    for day in 0..num_days {
        let (clearness, offset) = match (&mut rng, &params.variation) {
            (Some(rng), Some(v)) => {
                let c = v.clearness_min + (1.0 - v.clearness_min) * rng.random::<f64>();
                let o = v.temperature_swing * (2.0 * rng.random::<f64>() - 1.0);
                (c, o)
            }
            _ => (1.0, 0.0),
        };
        for hour in 0..24 {
            let timestamp = start + Duration::hours((day * 24 + hour) as i64);
            let sun = sun_position(site, timestamp)?;
            let (dni, dhi) = if sun.is_daylight() {
                let sin_alt = sun.altitude.to_radians().sin();
                let air_mass = 1.0 / sin_alt;
                let dni = params.peak_dni * 0.7f64.powf(air_mass.powf(0.678) - 1.0);
                // Cloudier days trade beam for a little extra diffuse light.
                let dhi = params.peak_dhi * sin_alt * (1.0 + 0.5 * (1.0 - clearness));
                (clearness * dni, dhi)
            } else {
                (0.0, 0.0)
            };
            let t = &params.temperature;
            let phase = 2.0 * std::f64::consts::PI * (hour as f64 + 0.5 - t.peak_hour) / 24.0;
            out.push(WeatherSample {
                timestamp,
                dni,
                dhi,
                temperature: t.mean + offset + t.amplitude * phase.cos(),
            });
        }
    }
    Ok(out)
}

/// AR(1) forecast-error model parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForecastConfig {
    /// Autocorrelation of the error feedback, in [0, 1).
    pub gamma: f64,
    /// Noise standard deviation plateau as a fraction of each variable's range.
    pub max_std_fraction: f64,
    /// Lead time (hours) at which the noise standard deviation stops growing.
    pub cap_lead: f64,
}

impl ForecastConfig {
    /// A forecast that reproduces the truth.
    pub fn perfect() -> Self {
        Self {
            gamma: 0.0,
            max_std_fraction: 0.0,
            cap_lead: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(Error::InvalidParameter(format!(
                "gamma {} outside [0, 1)",
                self.gamma
            )));
        }
        if !(self.max_std_fraction >= 0.0 && self.max_std_fraction.is_finite()) {
            return Err(Error::InvalidParameter(
                "max_std_fraction must be finite and >= 0".into(),
            ));
        }
        if !(self.cap_lead > 0.0 && self.cap_lead.is_finite()) {
            return Err(Error::InvalidParameter("cap_lead must be > 0".into()));
        }
        Ok(())
    }

    /// Noise standard deviation at `lead` hours for a variable whose
    /// expected range is `range`: grows with √lead, flat beyond `cap_lead`.
    pub fn noise_std(&self, range: f64, lead: usize) -> f64 {
        let growth = ((lead as f64) / self.cap_lead).sqrt().min(1.0);
        self.max_std_fraction * range * growth
    }
}

/// Max minus min of each variable over a season, used to scale noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariableRanges {
    pub dni: f64,
    pub dhi: f64,
    pub temperature: f64,
}

impl VariableRanges {
    pub fn of(samples: &[WeatherSample]) -> Self {
        let range = |f: fn(&WeatherSample) -> f64| {
            let (lo, hi) = samples
                .iter()
                .map(f)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                    (lo.min(v), hi.max(v))
                });
            if samples.is_empty() {
                0.0
            } else {
                hi - lo
            }
        };
        Self {
            dni: range(|s| s.dni),
            dhi: range(|s| s.dhi),
            temperature: range(|s| s.temperature),
        }
    }
}

/// Forecast issued at time index `issued_at`; `samples[k]` covers
/// `issued_at + k` and `samples[0]` is the measurement itself.
#[derive(Debug, Clone, PartialEq)]
pub struct ForecastTrajectory {
    pub issued_at: usize,
    pub samples: Vec<WeatherSample>,
}

/// Issues a forecast at `t0` for the rest of `truth`.
///
/// The error at lead ℓ follows `e(ℓ) = -γ e(ℓ-1) + ε(ℓ)`, i.e. the forecast
/// equals `truth + γ (truth_prev - forecast_prev) + ε`, with
/// `ε(ℓ) ~ N(0, σ(ℓ)²)` drawn independently for DNI, DHI and temperature.
/// The recursion runs on the unclamped error; irradiance is then clamped at
/// zero and forced to zero on night hours (hours whose true DNI and DHI are
/// both zero). Temperature is never clamped.
pub fn make_forecast(
    truth: &[WeatherSample],
    t0: usize,
    cfg: &ForecastConfig,
    seed: u64,
) -> Result<ForecastTrajectory> {
    make_forecast_with_ranges(truth, t0, cfg, &VariableRanges::of(truth), seed)
}

/// As [`make_forecast`], with the noise-scaling ranges supplied by the caller.
pub fn make_forecast_with_ranges(
    truth: &[WeatherSample],
    t0: usize,
    cfg: &ForecastConfig,
    ranges: &VariableRanges,
    seed: u64,
) -> Result<ForecastTrajectory> {
    cfg.validate()?;
    if t0 >= truth.len() {
        return Err(Error::OutOfRange(format!(
            "forecast issue index {t0} outside series of length {}",
            truth.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(truth.len() - t0);
    samples.push(truth[t0]);
    let noisy = cfg.max_std_fraction > 0.0;
    let mut err = [0.0f64; 3];
    for (lead, actual) in truth[t0..].iter().enumerate().skip(1) {
        if noisy {
            let z: [f64; 3] = [
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            ];
            let sigma = [
                cfg.noise_std(ranges.dni, lead),
                cfg.noise_std(ranges.dhi, lead),
                cfg.noise_std(ranges.temperature, lead),
            ];
            for k in 0..3 {
                err[k] = -cfg.gamma * err[k] + sigma[k] * z[k];
            }
        }
        let mut s = *actual;
        if actual.is_dark() {
            s.dni = 0.0;
            s.dhi = 0.0;
        } else {
            s.dni = (actual.dni + err[0]).max(0.0);
            s.dhi = (actual.dhi + err[1]).max(0.0);
        }
        s.temperature = actual.temperature + err[2];
        samples.push(s);
    }
    Ok(ForecastTrajectory {
        issued_at: t0,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str =
        "Source,Location ID\nNSRDB,12345\nYear,Month,Day,Hour,Minute,DNI,DHI,Temperature\n";

    fn rows(n: usize) -> String {
        let mut s = String::from(HEADER);
        let start = NaiveDate::from_ymd_opt(2023, 7, 1)
            .unwrap()
            .and_hms_opt(0, 30, 0)
            .unwrap();
        for i in 0..n {
            let t = start + Duration::hours(i as i64);
            let h = i % 24;
            let dni = if (6..20).contains(&h) { 500.0 } else { 0.0 };
            s.push_str(&format!(
                "{},{},{},{},30,{dni},{},{}\n",
                t.format("%Y"),
                t.format("%-m"),
                t.format("%-d"),
                t.format("%-H"),
                dni / 5.0,
                20.0 + (h as f64 / 3.0)
            ));
        }
        s
    }

    fn parse(s: &str) -> Result<Vec<WeatherSample>> {
        parse_weather_csv(s.as_bytes(), &ColumnMap::default())
    }

    #[test]
    fn loads_full_season() {
        let samples = parse(&rows(1440)).unwrap();
        assert_eq!(samples.len(), 1440);
        assert_eq!(samples[0].timestamp.to_string(), "2023-07-01 00:30:00");
        assert_eq!(samples[1439].timestamp.to_string(), "2023-08-29 23:30:00");
    }

    #[test]
    fn duplicate_hour_is_rejected() {
        let mut s = rows(5);
        let dup = s.lines().nth(5).unwrap().to_string();
        s.push_str(&dup);
        s.push('\n');
        match parse(&s).unwrap_err() {
            Error::Parse { row, message } => {
                assert_eq!(row, 9);
                assert!(
                    message.contains("duplicate timestamp 2023-07-01 02:30:00"),
                    "{message}"
                );
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn negative_irradiance_is_rejected() {
        let s = rows(12).replace("500,100", "-5,100");
        let err = parse(&s).unwrap_err();
        assert!(err.to_string().contains("negative irradiance"), "{err}");
    }

    #[test]
    fn gaps_and_missing_columns_and_nan() {
        let mut lines: Vec<String> = rows(6).lines().map(String::from).collect();
        lines.remove(5);
        let err = parse(&lines.join("\n")).unwrap_err();
        assert!(err.to_string().contains("gap"), "{err}");

        let err = parse(&rows(3).replace("DHI", "GHI")).unwrap_err();
        assert!(
            err.to_string().contains("missing required column 'DHI'"),
            "{err}"
        );

        let s = rows(3).replacen(",0,0,20", ",0,NaN,20", 1);
        let err = parse(&s).unwrap_err();
        assert!(matches!(err, Error::Parse { row: 4, .. }), "{err}");
    }

    #[test]
    fn custom_column_map() {
        let s = "ts_y,ts_m,ts_d,ts_h,beam,diffuse,air\n2023,7,1,0,0,0,18\n2023,7,1,1,0,0,17.5\n";
        let map = ColumnMap {
            year: "ts_y".into(),
            month: "ts_m".into(),
            day: "ts_d".into(),
            hour: "ts_h".into(),
            minute: None,
            dni: "beam".into(),
            dhi: "diffuse".into(),
            temperature: "air".into(),
            skip_rows: 0,
        };
        let samples = parse_weather_csv(s.as_bytes(), &map).unwrap();
        assert_eq!(samples.len(), 2);
        assert_eq!(samples[1].temperature, 17.5);
    }

    fn ann_arbor() -> Site {
        Site::new(42.28, -83.74, -5.0).unwrap()
    }

    fn clear_params() -> ClearSkyParams {
        ClearSkyParams {
            peak_dni: 900.0,
            peak_dhi: 120.0,
            temperature: DailyTemperature {
                mean: 22.0,
                amplitude: 5.0,
                peak_hour: 15.0,
            },
            variation: None,
        }
    }

    #[test]
    fn clear_sky_counts_bounds_and_night() {
        let site = ann_arbor();
        let start = NaiveDate::from_ymd_opt(2023, 7, 1).unwrap();
        let samples = synthesize_clear_sky(&site, start, 60, &clear_params()).unwrap();
        assert_eq!(samples.len(), 1440);
        let max_dni = samples.iter().map(|s| s.dni).fold(0.0, f64::max);
        assert!(max_dni <= 900.0 && max_dni > 600.0, "{max_dni}");
        for s in &samples {
            let sun = sun_position(&site, s.timestamp).unwrap();
            if !sun.is_daylight() {
                assert_eq!((s.dni, s.dhi), (0.0, 0.0));
            }
        }
        // Peak close to solar noon (about 13:39 local standard time here).
        let day0 = &samples[..24];
        let peak = day0
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.dni.total_cmp(&b.1.dni))
            .unwrap()
            .0;
        assert!((12..=14).contains(&peak), "{peak}");
        assert!(synthesize_clear_sky(&site, start, 0, &clear_params()).is_err());
    }

    #[test]
    fn clear_sky_is_deterministic() {
        let mut p = clear_params();
        p.variation = Some(DayToDayVariation {
            clearness_min: 0.6,
            temperature_swing: 3.0,
            seed: 7,
        });
        let start = NaiveDate::from_ymd_opt(2023, 7, 1).unwrap();
        let a = synthesize_clear_sky(&ann_arbor(), start, 5, &p).unwrap();
        let b = synthesize_clear_sky(&ann_arbor(), start, 5, &p).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|s| s.dni <= 900.0));
    }

    fn season() -> Vec<WeatherSample> {
        let p = clear_params();
        synthesize_clear_sky(
            &ann_arbor(),
            NaiveDate::from_ymd_opt(2023, 7, 1).unwrap(),
            20,
            &p,
        )
        .unwrap()
    }

    #[test]
    fn zero_noise_forecast_is_truth() {
        let truth = season();
        let cfg = ForecastConfig {
            gamma: 0.8,
            max_std_fraction: 0.0,
            cap_lead: 336.0,
        };
        let f = make_forecast(&truth, 30, &cfg, 1).unwrap();
        assert_eq!(f.samples, truth[30..].to_vec());
    }

    #[test]
    fn forecast_lead_zero_and_clamping() {
        let truth = season();
        let cfg = ForecastConfig {
            gamma: 0.8,
            max_std_fraction: 0.3,
            cap_lead: 336.0,
        };
        for seed in 0..20 {
            let f = make_forecast(&truth, 100, &cfg, seed).unwrap();
            assert_eq!(f.issued_at, 100);
            assert_eq!(f.samples[0], truth[100]);
            assert_eq!(f.samples.len(), truth.len() - 100);
            for (s, t) in f.samples.iter().zip(&truth[100..]) {
                assert!(s.dni >= 0.0 && s.dhi >= 0.0);
                if t.is_dark() {
                    assert_eq!((s.dni, s.dhi), (0.0, 0.0));
                }
            }
        }
        let a = make_forecast(&truth, 10, &cfg, 5).unwrap();
        let b = make_forecast(&truth, 10, &cfg, 5).unwrap();
        assert_eq!(a, b);
        assert!(make_forecast(&truth, truth.len(), &cfg, 0).is_err());
    }

    #[test]
    fn noise_schedule_grows_then_plateaus() {
        let cfg = ForecastConfig {
            gamma: 0.8,
            max_std_fraction: 0.1,
            cap_lead: 336.0,
        };
        let range = 30.0;
        let sched: Vec<f64> = (0..=700).map(|l| cfg.noise_std(range, l)).collect();
        assert_eq!(sched[0], 0.0);
        assert!(sched.windows(2).all(|w| w[1] >= w[0]));
        assert!((sched[336] - 3.0).abs() < 1e-12);
        assert!(sched[336..].iter().all(|&s| (s - 3.0).abs() < 1e-12));
        // √-growth: a quarter of the cap lead gives half the plateau.
        assert!((sched[84] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn invalid_forecast_config() {
        let bad = [
            ForecastConfig {
                gamma: 1.0,
                max_std_fraction: 0.1,
                cap_lead: 1.0,
            },
            ForecastConfig {
                gamma: 0.5,
                max_std_fraction: -0.1,
                cap_lead: 1.0,
            },
            ForecastConfig {
                gamma: 0.5,
                max_std_fraction: 0.1,
                cap_lead: 0.0,
            },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err());
        }
    }
}
