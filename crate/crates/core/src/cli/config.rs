use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Subcommands of the command-line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Generate,
    Components,
    Theta,
    Cvalue,
    Lambdac,
    Lln,
    CoupleCheck,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Generate => "generate",
            Command::Components => "components",
            Command::Theta => "theta",
            Command::Cvalue => "cvalue",
            Command::Lambdac => "lambdac",
            Command::Lln => "lln",
            Command::CoupleCheck => "couple-check",
            Command::Selftest => "selftest",
        }
    }

    /// Parameter keys the command accepts, with defaults (`Null` = required).
    pub fn keys(self) -> Vec<(&'static str, Value)> {
        use serde_json::json;
        let mut keys = match self {
            Command::Generate => vec![
                ("n", Value::Null),
                ("alpha", Value::Null),
                ("nu", Value::Null),
                ("poissonized", json!(false)),
                ("edges_out", json!("")),
            ],
            Command::Components => {
                vec![("n", Value::Null), ("alpha", Value::Null), ("nu", Value::Null), ("poissonized", json!(false))]
            }
            Command::Theta => vec![
                ("alpha", Value::Null),
                ("lambda", Value::Null),
                ("y", json!(0.0)),
                ("h", json!(8.0)),
                ("w", json!(2.0)),
                ("u_size", json!(8.0)),
                ("replicas", json!(500)),
            ],
            Command::Cvalue => vec![
                ("alpha", Value::Null),
                ("nu", Value::Null),
                ("nodes", json!(16)),
                ("budget", json!(0.05)),
                ("h", json!(8.0)),
                ("w", json!(2.0)),
                ("u_size", json!(8.0)),
                ("replicas", json!(200)),
            ],
            Command::Lambdac => {
                vec![("h", json!(4.0)), ("w", json!(2.0)), ("tol", json!(0.05)), ("replicas", json!(200))]
            }
            Command::Lln => vec![
                ("alpha", Value::Null),
                ("nu", Value::Null),
                ("nlist", json!("1000,10000,50000")),
                ("replicas", json!(20)),
            ],
            Command::CoupleCheck => vec![("n", Value::Null), ("alpha", Value::Null), ("nu", Value::Null)],
            Command::Selftest => vec![],
        };
        keys.push(("seed", json!(0)));
        keys
    }

    pub fn default_format(self) -> Format {
        match self {
            Command::Generate | Command::Lln => Format::Csv,
            Command::Selftest => Format::Csv,
            _ => Format::Json,
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(Error::Usage(format!("unknown format '{other}' (expected csv, json or svg)"))),
        }
    }
}

/// A fully resolved run: every accepted key has a value.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub parameters: BTreeMap<String, Value>,
    pub seed: u64,
    pub output_path: Option<String>,
    pub format: Format,
}

impl RunConfig {
    /// Merges a JSON config file (if any) with flag values; flags win.
    /// Unknown keys and missing required keys are usage errors.
    pub fn resolve(
        command: Command,
        file: Option<&Path>,
        flags: BTreeMap<String, Value>,
        output_path: Option<String>,
        format: Option<Format>,
    ) -> Result<Self> {
        let mut given: Map<String, Value> = match file {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
                match serde_json::from_str(&text) {
                    Ok(Value::Object(map)) => map,
                    Ok(_) => return Err(Error::Usage("config file must hold a JSON object".into())),
                    Err(e) => return Err(Error::Usage(format!("config file is not valid JSON: {e}"))),
                }
            }
            None => Map::new(),
        };
        // output settings may come from the file too
        let file_out = given.remove("out");
        let file_format = given.remove("format");
        given.remove("command");
        given.extend(flags);

        let accepted = command.keys();
        if let Some(unknown) = given.keys().find(|k| !accepted.iter().any(|(a, _)| a == k)) {
            return Err(Error::Usage(format!("unknown key '{unknown}' for command {command}")));
        }
        let mut parameters = BTreeMap::new();
        for (key, default) in accepted {
            match given.remove(key).unwrap_or(default) {
                Value::Null => return Err(Error::Usage(format!("missing required key '{key}' for command {command}"))),
                v => {
                    parameters.insert(key.to_string(), v);
                }
            }
        }
        let seed = parameters
            .remove("seed")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Usage("seed must be a non-negative integer".into()))?;
        let output_path = match (output_path, file_out) {
            (Some(p), _) => Some(p),
            (None, Some(Value::String(p))) => Some(p),
            (None, Some(_)) => return Err(Error::Usage("'out' must be a string".into())),
            (None, None) => None,
        };
        let format = match (format, file_format) {
            (Some(f), _) => f,
            (None, Some(Value::String(s))) => Format::parse(&s)?,
            (None, Some(_)) => return Err(Error::Usage("'format' must be a string".into())),
            (None, None) => command.default_format(),
        };
        Ok(RunConfig { command, parameters, seed, output_path, format })
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        self.parameters
            .get(key)
            .and_then(Value::as_f64)
            .ok_or_else(|| Error::Usage(format!("'{key}' must be a number")))
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        self.parameters
            .get(key)
            .and_then(Value::as_u64)
            .map(|v| v as usize)
            .ok_or_else(|| Error::Usage(format!("'{key}' must be a non-negative integer")))
    }

    pub fn bool(&self, key: &str) -> Result<bool> {
        self.parameters.get(key).and_then(Value::as_bool).ok_or_else(|| Error::Usage(format!("'{key}' must be a boolean")))
    }

    pub fn str(&self, key: &str) -> Result<&str> {
        self.parameters.get(key).and_then(Value::as_str).ok_or_else(|| Error::Usage(format!("'{key}' must be a string")))
    }

    /// `nlist` as integers, from either a JSON array or a comma list.
    pub fn usize_list(&self, key: &str) -> Result<Vec<usize>> {
        let bad = || Error::Usage(format!("'{key}' must be a list of integers"));
        match self.parameters.get(key) {
            Some(Value::Array(items)) => items.iter().map(|v| v.as_u64().map(|x| x as usize).ok_or_else(bad)).collect(),
            Some(Value::String(s)) => s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| bad())).collect(),
            _ => Err(bad()),
        }
    }

    /// The resolved configuration as embedded in every output.
    pub fn to_json(&self) -> Value {
        let mut m: Map<String, Value> = self.parameters.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        m.insert("command".into(), self.command.name().into());
        m.insert("seed".into(), self.seed.into());
        m.insert("format".into(), serde_json::to_value(self.format).expect("format serialises"));
        Value::Object(m)
    }
}
