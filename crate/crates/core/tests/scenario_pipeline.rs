mod common;

use std::io::Write;

use agrivolt::mpc_engine::{Scenario, ScenarioConfig, WeatherSource};
use agrivolt::optimizer::Backend;
use agrivolt::weather::synthesize_clear_sky;
use agrivolt::Error;
use chrono::{Datelike, Timelike};
use common::{desk_config, DESK_SEASON};

/// The bundled season, with the weather table swapped for `weather`.
fn with_weather_section(weather: &str) -> String {
    let start = DESK_SEASON.find("[weather]").unwrap();
    let end = DESK_SEASON.find("[layout]").unwrap();
    format!(
        "{}{weather}\n\n{}",
        &DESK_SEASON[..start],
        &DESK_SEASON[end..]
    )
}

#[test]
fn csv_weather_reproduces_synthetic_run() {
    let cfg = desk_config(3);
    let WeatherSource::Synthetic(params) = &cfg.weather else {
        panic!("bundled season is synthetic")
    };
    let weather = synthesize_clear_sky(&cfg.site, cfg.season.start_date, 3, params).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let mut file = std::fs::File::create(dir.path().join("weather.csv")).unwrap();
    writeln!(file, "Source,Location ID\nsynthetic,0").unwrap();
    writeln!(file, "Year,Month,Day,Hour,Minute,DNI,DHI,Temperature").unwrap();
    for w in &weather {
        let t = w.timestamp;
        writeln!(
            file,
            "{},{},{},{},{},{},{},{}",
            t.year(),
            t.month(),
            t.day(),
            t.hour(),
            t.minute(),
            w.dni,
            w.dhi,
            w.temperature
        )
        .unwrap();
    }
    let text = with_weather_section("[weather]\nkind = \"csv\"\npath = \"weather.csv\"")
        .replace("days = 14", "days = 3");
    let cfg_path = dir.path().join("season.toml");
    std::fs::write(&cfg_path, text).unwrap();

    let from_csv = Scenario::prepare(ScenarioConfig::load(&cfg_path).unwrap()).unwrap();
    let synthetic = Scenario::prepare(cfg).unwrap();
    let a = from_csv.run_open_loop(0.5, Backend::Analytic).unwrap();
    let b = synthetic.run_open_loop(0.5, Backend::Analytic).unwrap();
    assert!(a.outcome_eq(&b));
}

#[test]
fn unknown_config_keys_are_config_errors() {
    let text = DESK_SEASON.replace("seed = 20230701", "seed = 20230701\nsede = 1");
    assert!(matches!(
        ScenarioConfig::from_toml_str(&text),
        Err(Error::Config(_))
    ));
}

#[test]
fn missing_csv_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("season.toml");
    std::fs::write(
        &path,
        with_weather_section("[weather]\nkind = \"csv\"\npath = \"absent.csv\""),
    )
    .unwrap();
    let cfg = ScenarioConfig::load(&path).unwrap();
    assert!(matches!(Scenario::prepare(cfg), Err(Error::Io(_))));
}

#[test]
fn mpc_tracks_open_loop_closely_under_noise() {
    let cfg = desk_config(4);
    let scenario = Scenario::prepare(cfg.clone()).unwrap();
    let perfect = scenario.run_open_loop(0.5, Backend::Analytic).unwrap();
    let noisy = scenario
        .run_mpc(0.5, Backend::Analytic, &cfg.forecast, 9)
        .unwrap();
    assert!((noisy.ler_total - perfect.ler_total).abs() < 0.05 * perfect.ler_total);
    assert_eq!(noisy.records.len(), perfect.records.len());
}
