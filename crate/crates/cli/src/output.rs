use std::fmt::Write as _;

use serde_json::Value;

use crate::args::Format;
use crate::CliError;

/// Structured result plus an optional CSV rendering.
pub struct Report {
    pub value: Value,
    pub csv: Option<String>,
}

impl Report {
    pub fn json(value: Value) -> Self {
        Report { value, csv: None }
    }

    pub fn render(&self, format: Format, command: &str) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.value)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Plain => {
                let mut s = String::new();
                flatten(&self.value, "", &mut s);
                Ok(s)
            }
            Format::Csv => self.csv.clone().ok_or_else(|| {
                CliError::Usage(format!("--format csv is not available for `{command}`"))
            }),
        }
    }
}

fn flatten(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(x, &key, out);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{prefix} = {s}");
        }
        other => {
            let _ = writeln!(out, "{prefix} = {other}");
        }
    }
}
