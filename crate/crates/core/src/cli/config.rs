use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::growth::{EnumConfig, DEFAULT_CAP};
use crate::hp::DEFAULT_DIGITS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutFormat {
    Csv,
    Json,
    Dot,
}

/// Settings shared by every command, after merging flags, the environment,
/// an optional TOML file and defaults (in that order of precedence).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub cap: usize,
    pub workers: usize,
    pub precision: u32,
    pub format: Option<OutFormat>,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { cap: DEFAULT_CAP, workers: 1, precision: DEFAULT_DIGITS, format: None, output: None }
    }
}

/// Keys accepted in a config file; same names as the long flags.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub cap: Option<usize>,
    pub workers: Option<usize>,
    pub precision: Option<u32>,
    pub out: Option<OutFormat>,
    pub output: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))
    }
}

/// Values given on the command line (the cap may also come from
/// `GROWTHLAB_CAP`, which clap folds into the flag).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub cap: Option<usize>,
    pub workers: Option<usize>,
    pub precision: Option<u32>,
    pub format: Option<OutFormat>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(flags: Overrides, file: Option<ConfigFile>) -> Result<RunConfig> {
        let file = file.unwrap_or_default();
        let d = RunConfig::default();
        let cfg = RunConfig {
            cap: flags.cap.or(file.cap).unwrap_or(d.cap),
            workers: flags.workers.or(file.workers).unwrap_or(d.workers),
            precision: flags.precision.or(file.precision).unwrap_or(d.precision),
            format: flags.format.or(file.out),
            output: flags.output.or(file.output),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cap == 0 {
            return Err(Error::InvalidParameters("cap must be positive".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidParameters("workers must be positive".into()));
        }
        if self.precision < 12 {
            return Err(Error::InvalidParameters(format!("precision must be >= 12, got {}", self.precision)));
        }
        Ok(())
    }

    pub fn enumeration(&self) -> EnumConfig {
        EnumConfig { cap: self.cap, workers: self.workers }
    }
}
