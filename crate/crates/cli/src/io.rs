use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::ModeArg;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: unreadable file, schema violation, infeasible request.
    #[error("{0}")]
    Validation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<bcoh::Error> for CliError {
    fn from(e: bcoh::Error) -> Self {
        match e {
            bcoh::Error::DifferentialBug(_) => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub mode: Option<ModeArg>,
    pub samples: Option<usize>,
    /// Default characteristic for `search preunital`.
    pub prime: Option<u64>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> CliResult<Config> {
        match path {
            Some(p) => read_json(p),
            None => Ok(Config::default()),
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

/// What every verdict records about the conventions in force.
pub fn conventions() -> Value {
    json!({
        "basis_order": "row-major, first leg most significant",
        "word_order": "rightmost letter acts first",
        "reversed_placement": "descending positions mean conjugation by the leg permutation sorting them (flip conjugation)",
        "flip": "standard vector-space interchange, t^2 = 1",
        "degree1_differential": "d(p)(x,y) = p(x) - p(xy) + p(y), with p(xy) read as p at the product xy",
    })
}

/// Output sink: stdout or the `--out` file. Keys are sorted because
/// `serde_json::Map` is ordered.
pub struct Sink {
    out: Option<PathBuf>,
    buf: Vec<u8>,
}

impl Sink {
    pub fn new(out: Option<PathBuf>) -> Self {
        Sink { out, buf: Vec::new() }
    }

    /// A single pretty-printed document.
    pub fn document(&mut self, v: &Value) -> CliResult<()> {
        let text = serde_json::to_string_pretty(v).map_err(|e| CliError::Internal(e.to_string()))?;
        self.buf.extend_from_slice(text.as_bytes());
        self.buf.push(b'\n');
        Ok(())
    }

    /// One compact JSON object on its own line.
    pub fn line(&mut self, v: &Value) -> CliResult<()> {
        let text = serde_json::to_string(v).map_err(|e| CliError::Internal(e.to_string()))?;
        self.buf.extend_from_slice(text.as_bytes());
        self.buf.push(b'\n');
        Ok(())
    }

    pub fn finish(self) -> CliResult<()> {
        match self.out {
            Some(p) => fs::write(&p, &self.buf)
                .map_err(|e| CliError::Validation(format!("{}: {e}", p.display()))),
            None => std::io::stdout()
                .write_all(&self.buf)
                .map_err(|e| CliError::Internal(e.to_string())),
        }
    }
}

pub fn to_value<T: serde::Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}
