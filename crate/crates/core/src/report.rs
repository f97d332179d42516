//! CSV writers for fits, season results and sweep tables.
//!
//! Column layouts are versioned by [`SCHEMA_VERSION`]; the unit tests pin
//! every header so a layout change without a version bump fails.

use std::io::Write;

use crate::error::Result;
use crate::mpc_engine::{ParetoRow, SeasonResult};
use crate::shading::ShadingAffineFit;
use crate::weather::{ForecastConfig, ForecastTrajectory, VariableRanges, WeatherSample};

pub const SCHEMA_VERSION: u32 = 1;

pub const FIT_HEADER: [&str; 6] = ["t", "g1", "g2", "r_squared", "max_residual", "points"];
pub const FIT_HOURLY_HEADER: [&str; 4] = ["hour", "steps", "mean_r_squared", "min_r_squared"];
pub const NOISE_HEADER: [&str; 4] = ["lead", "dni_std", "dhi_std", "temperature_std"];
pub const FORECAST_HEADER: [&str; 9] = [
    "t",
    "timestamp",
    "lead",
    "dni_true",
    "dni_forecast",
    "dhi_true",
    "dhi_forecast",
    "temperature_true",
    "temperature_forecast",
];
pub const DECISION_HEADER: [&str; 7] =
    ["t", "x", "y", "exact", "delta_tilt", "tilt", "tilt_clamped"];
pub const POWER_HEADER: [&str; 8] = [
    "t",
    "timestamp",
    "azimuth",
    "tilt",
    "i_db",
    "i_diff",
    "power",
    "delta_power",
];
pub const PAR_HEADER: [&str; 4] = ["t", "timestamp", "shading", "par_field"];
pub const CROP_HEADER: [&str; 6] = ["day", "hui", "reg", "huf", "lai", "biomass"];
pub const SUMMARY_HEADER: [&str; 14] = [
    "mode",
    "omega",
    "seed",
    "ler_crop",
    "ler_pv",
    "ler_total",
    "yield",
    "revenue",
    "predicted_yield",
    "predicted_revenue",
    "yield_pct_error",
    "revenue_pct_error",
    "inexact_fraction",
    "clamped_fraction",
];
pub const PARETO_HEADER: [&str; 15] = [
    "omega",
    "yield",
    "revenue",
    "normalized_yield",
    "normalized_revenue",
    "ler_crop",
    "ler_pv",
    "ler_total",
    "predicted_ler_crop",
    "predicted_ler_pv",
    "yield_pct_error",
    "revenue_pct_error",
    "inexact_fraction",
    "clamped_fraction",
    "is_best",
];

/// Shortest round-trip representation, so reruns are byte-identical.
fn num(v: f64) -> String {
    format!("{v}")
}

fn writer<W: Write>(w: W, header: &[&str]) -> Result<csv::Writer<W>> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    Ok(out)
}

pub fn write_fits<W: Write>(w: W, fits: &[Option<ShadingAffineFit>]) -> Result<()> {
    let mut out = writer(w, &FIT_HEADER)?;
    for f in fits.iter().flatten() {
        out.write_record([
            f.t.to_string(),
            num(f.g1),
            num(f.g2),
            num(f.r_squared),
            num(f.max_residual),
            f.points.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Fit quality by hour of day, aggregated over the season. `timestamps`
/// runs parallel to `fits`.
pub fn write_fit_hourly<W: Write>(
    w: W,
    fits: &[Option<ShadingAffineFit>],
    timestamps: &[WeatherSample],
) -> Result<()> {
    use chrono::Timelike;
    let mut sum = [0.0f64; 24];
    let mut min = [f64::INFINITY; 24];
    let mut count = [0usize; 24];
    for (f, s) in fits.iter().zip(timestamps) {
        if let Some(f) = f {
            let h = s.timestamp.hour() as usize;
            sum[h] += f.r_squared;
            min[h] = min[h].min(f.r_squared);
            count[h] += 1;
        }
    }
    let mut out = writer(w, &FIT_HOURLY_HEADER)?;
    for h in (0..24).filter(|&h| count[h] > 0) {
        out.write_record([
            h.to_string(),
            count[h].to_string(),
            num(sum[h] / count[h] as f64),
            num(min[h]),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Noise standard deviation by lead time for each forecast variable.
pub fn write_noise_schedule<W: Write>(
    w: W,
    cfg: &ForecastConfig,
    ranges: &VariableRanges,
    max_lead: usize,
) -> Result<()> {
    let mut out = writer(w, &NOISE_HEADER)?;
    for lead in 0..=max_lead {
        out.write_record([
            lead.to_string(),
            num(cfg.noise_std(ranges.dni, lead)),
            num(cfg.noise_std(ranges.dhi, lead)),
            num(cfg.noise_std(ranges.temperature, lead)),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// A forecast trajectory next to the truth it was drawn around.
pub fn write_forecast<W: Write>(
    w: W,
    truth: &[WeatherSample],
    forecast: &ForecastTrajectory,
) -> Result<()> {
    let mut out = writer(w, &FORECAST_HEADER)?;
    for (lead, f) in forecast.samples.iter().enumerate() {
        let t = forecast.issued_at + lead;
        let a = &truth[t];
        out.write_record([
            t.to_string(),
            a.timestamp.format("%Y-%m-%dT%H:%M").to_string(),
            lead.to_string(),
            num(a.dni),
            num(f.dni),
            num(a.dhi),
            num(f.dhi),
            num(a.temperature),
            num(f.temperature),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_decisions<W: Write>(w: W, result: &SeasonResult) -> Result<()> {
    let mut out = writer(w, &DECISION_HEADER)?;
    for d in result.records.iter().filter_map(|r| r.decision) {
        out.write_record([
            d.t.to_string(),
            num(d.x),
            num(d.y),
            d.exact.to_string(),
            num(d.delta_tilt),
            num(d.tilt),
            d.tilt_clamped.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_power<W: Write>(w: W, result: &SeasonResult) -> Result<()> {
    let mut out = writer(w, &POWER_HEADER)?;
    for r in &result.records {
        out.write_record([
            r.t.to_string(),
            r.timestamp.format("%Y-%m-%dT%H:%M").to_string(),
            num(r.azimuth),
            num(r.tilt),
            num(r.i_db),
            num(r.i_diff),
            num(r.power),
            num(r.delta_power),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_par<W: Write>(w: W, result: &SeasonResult) -> Result<()> {
    let mut out = writer(w, &PAR_HEADER)?;
    for r in &result.records {
        out.write_record([
            r.t.to_string(),
            r.timestamp.format("%Y-%m-%dT%H:%M").to_string(),
            num(r.shading),
            num(r.par_field),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_crop<W: Write>(w: W, result: &SeasonResult) -> Result<()> {
    let mut out = writer(w, &CROP_HEADER)?;
    for s in &result.daily {
        out.write_record([
            s.day.to_string(),
            num(s.hui),
            num(s.reg),
            num(s.huf),
            num(s.lai),
            num(s.biomass),
        ])?;
    }
    out.flush()?;
    Ok(())
}

fn summary_record(r: &SeasonResult) -> [String; 14] {
    [
        r.mode.as_str().to_string(),
        num(r.omega),
        r.seed.map(|s| s.to_string()).unwrap_or_default(),
        num(r.ler_crop),
        num(r.ler_pv),
        num(r.ler_total),
        num(r.yield_realized),
        num(r.revenue_realized),
        num(r.predicted.yield_),
        num(r.predicted.revenue),
        num(r.yield_pct_error),
        num(r.revenue_pct_error),
        num(r.exactness.inexact_fraction()),
        num(r.exactness.clamped_fraction()),
    ]
}

/// One row per run, mirroring the LER comparison table.
pub fn write_summary<W: Write>(w: W, results: &[&SeasonResult]) -> Result<()> {
    let mut out = writer(w, &SUMMARY_HEADER)?;
    for r in results {
        out.write_record(summary_record(r))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_pareto<W: Write>(w: W, rows: &[ParetoRow]) -> Result<()> {
    let best = crate::mpc_engine::best_row(rows).map(|r| r.omega);
    let mut out = writer(w, &PARETO_HEADER)?;
    for r in rows {
        out.write_record([
            num(r.omega),
            num(r.yield_realized),
            num(r.revenue_realized),
            num(r.normalized_yield),
            num(r.normalized_revenue),
            num(r.ler_crop),
            num(r.ler_pv),
            num(r.ler_total),
            num(r.predicted_ler_crop),
            num(r.predicted_ler_pv),
            num(r.yield_pct_error),
            num(r.revenue_pct_error),
            num(r.inexact_fraction),
            num(r.clamped_fraction),
            (Some(r.omega) == best).to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// One-line LER summary printed by the command line.
pub fn summary_line(r: &SeasonResult) -> String {
    format!(
        "mode={} omega={} LER_crop={:.6} LER_pv={:.6} LER_total={:.6} yield_err={:.4}% revenue_err={:.4}%",
        r.mode.as_str(),
        r.omega,
        r.ler_crop,
        r.ler_pv,
        r.ler_total,
        r.yield_pct_error,
        r.revenue_pct_error
    )
}
