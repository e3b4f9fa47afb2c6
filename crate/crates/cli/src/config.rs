use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use crate::CliError;

const GLOBAL_KEYS: &[&str] = &["seed", "n", "out", "format", "sequential"];

fn command_keys(command: &str) -> &'static [&'static str] {
    match command {
        "spin" => &[
            "r",
            "check",
            "direction",
            "sweep",
            "resolution",
            "order_extra",
        ],
        "born" => &["a", "b", "angle", "sweep"],
        "chsh" => &["angles", "grid", "log"],
        "medical" => &["rho"],
        "measure" => &["model", "variable", "state", "sweep"],
        "inference" => &["c1", "c2", "theta", "random_pairs", "mse"],
        "groups" => &["spec", "map"],
        _ => &[],
    }
}

/// Key-value defaults read from a TOML or JSON file.
#[derive(Debug, Default)]
pub struct Config {
    values: Map<String, Value>,
}

impl Config {
    pub fn load(path: &Path, command: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let value: Value = if is_json {
            serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?
        } else {
            let table: toml::Table = toml::from_str(&text)
                .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
            serde_json::to_value(table).map_err(|e| CliError::Usage(e.to_string()))?
        };
        let Value::Object(values) = value else {
            return Err(CliError::Usage("config must be a table of keys".into()));
        };
        let allowed: Vec<&str> = GLOBAL_KEYS
            .iter()
            .chain(command_keys(command))
            .copied()
            .collect();
        for key in values.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "unknown config key `{key}` for `{command}`; valid keys: {}",
                    allowed.join(", ")
                )));
            }
        }
        Ok(Config { values })
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => serde_json::from_value(v.clone())
                .map(Some)
                .map_err(|e| CliError::Usage(format!("config key `{key}`: {e}"))),
        }
    }

    /// Flag value if given, otherwise the config value.
    pub fn pick<T: DeserializeOwned>(
        &self,
        flag: Option<T>,
        key: &str,
    ) -> Result<Option<T>, CliError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    /// A set switch wins; otherwise the config value, default off.
    pub fn switch(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        Ok(flag || self.get::<bool>(key)?.unwrap_or(false))
    }
}
