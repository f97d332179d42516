use std::path::{Path, PathBuf};
use std::time::Duration;

use agrivolt::mpc_engine::ScenarioConfig;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// SHA-256 of the parsed configuration as compact JSON with sorted keys, so
/// key order and formatting in the TOML file do not change the hash.
pub fn config_hash(cfg: &ScenarioConfig) -> String {
    let value = serde_json::to_value(cfg).expect("configuration serialises");
    hex::encode(Sha256::digest(canonical(&value).as_bytes()))
}

fn canonical(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            let body: Vec<String> = keys
                .into_iter()
                .map(|k| format!("{}:{}", Value::String(k.clone()), canonical(&map[k])))
                .collect();
            format!("{{{}}}", body.join(","))
        }
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(canonical).collect::<Vec<_>>().join(",")
        ),
        other => other.to_string(),
    }
}

pub struct RunManifest {
    pub command: String,
    pub config_path: PathBuf,
    pub config_hash: String,
    pub seeds: Vec<u64>,
    pub outputs: Vec<PathBuf>,
    pub wall_clock: Duration,
}

impl RunManifest {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "config": self.config_path.display().to_string(),
            "config_sha256": self.config_hash,
            "seeds": self.seeds,
            "version": env!("CARGO_PKG_VERSION"),
            "schema_version": agrivolt::report::SCHEMA_VERSION,
            "outputs": self.outputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "wall_clock_seconds": self.wall_clock.as_secs_f64(),
        })
    }

    pub fn write(&self, dir: &Path) -> std::io::Result<PathBuf> {
        let path = dir.join("manifest.json");
        let text = serde_json::to_string_pretty(&self.to_json()).expect("manifest serialises");
        std::fs::write(&path, text + "\n")?;
        Ok(path)
    }
}
