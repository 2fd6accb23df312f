//! Run configuration: a JSON file, overridden field by field by command-line flags.
//!
//! The seed falls back to the `WIENER_SEED` environment variable and then to
//! [`DEFAULT_SEED`] when neither the flags nor the file set it.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use wiener_core::chaos::FamilyKind;

pub const SEED_ENV: &str = "WIENER_SEED";
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_N_GRID: [usize; 3] = [4, 16, 64];
pub const MIN_MC_SAMPLES: usize = 100;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {message}")]
    Read { path: PathBuf, message: String },
    #[error("invalid config file: {0}")]
    Parse(String),
    #[error("config file is for `{file}`, but the command is `{command}`")]
    CommandMismatch { file: String, command: Command },
    #[error("n_grid must be non-empty, positive and strictly increasing, got {0:?}")]
    NGrid(Vec<usize>),
    #[error("samples must be at least {MIN_MC_SAMPLES} for `{command}`, got {samples}")]
    Samples { command: Command, samples: usize },
    #[error("{SEED_ENV} is not an unsigned 64-bit integer: `{0}`")]
    Seed(String),
    #[error(transparent)]
    Family(#[from] wiener_core::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Counterexample,
    LemmaSuite,
    BoundsSuite,
    Clt,
    Positivity,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Counterexample => "counterexample",
            Self::LemmaSuite => "lemma-suite",
            Self::BoundsSuite => "bounds-suite",
            Self::Clt => "clt",
            Self::Positivity => "positivity",
        }
    }

    /// Whether the command draws Monte Carlo samples.
    pub fn samples(self) -> bool {
        matches!(self, Self::Counterexample | Self::Clt)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

/// Optional settings, as read from a config file or from flags.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub command: Option<Command>,
    pub seed: Option<u64>,
    pub n_grid: Option<Vec<usize>>,
    pub samples: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub family: Option<String>,
}

impl Settings {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Read { path: path.into(), message: e.to_string() })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    /// Fields set in `self` win over those in `base`.
    pub fn over(self, base: Settings) -> Settings {
        Settings {
            command: self.command.or(base.command),
            seed: self.seed.or(base.seed),
            n_grid: self.n_grid.or(base.n_grid),
            samples: self.samples.or(base.samples),
            output_path: self.output_path.or(base.output_path),
            format: self.format.or(base.format),
            family: self.family.or(base.family),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub n_grid: Vec<usize>,
    pub samples: usize,
    pub output_path: PathBuf,
    pub format: Format,
    pub family: FamilyKind,
}

impl RunConfig {
    /// Resolves `flags` over `file` for `command`; `env_seed` is the raw value of [`SEED_ENV`].
    pub fn resolve(
        command: Command,
        flags: Settings,
        file: Settings,
        env_seed: Option<&str>,
    ) -> Result<Self, ConfigError> {
        if let Some(c) = file.command {
            if c != command {
                return Err(ConfigError::CommandMismatch { file: c.name().into(), command });
            }
        }
        let s = flags.over(file);
        let seed = match (s.seed, env_seed) {
            (Some(seed), _) => seed,
            (None, Some(raw)) => raw.trim().parse().map_err(|_| ConfigError::Seed(raw.into()))?,
            (None, None) => DEFAULT_SEED,
        };
        let n_grid = s.n_grid.unwrap_or_else(|| DEFAULT_N_GRID.to_vec());
        if n_grid.is_empty() || n_grid[0] == 0 || n_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(ConfigError::NGrid(n_grid));
        }
        let samples = s.samples.unwrap_or(DEFAULT_SAMPLES);
        if command.samples() && samples < MIN_MC_SAMPLES {
            return Err(ConfigError::Samples { command, samples });
        }
        let family = match s.family {
            Some(name) => FamilyKind::from_str(&name)?,
            None => FamilyKind::DyadicP2,
        };
        let format = s.format.unwrap_or_default();
        let output_path =
            s.output_path.unwrap_or_else(|| format!("wiener-{command}.{}", format.extension()).into());
        Ok(Self { command, seed, n_grid, samples, output_path, format, family })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags() -> Settings {
        Settings::default()
    }

    #[test]
    fn defaults() {
        let c = RunConfig::resolve(Command::Clt, flags(), flags(), None).unwrap();
        assert_eq!(c.seed, DEFAULT_SEED);
        assert_eq!(c.n_grid, vec![4, 16, 64]);
        assert_eq!(c.samples, 100_000);
        assert_eq!(c.format, Format::Csv);
        assert_eq!(c.output_path, PathBuf::from("wiener-clt.csv"));
        assert_eq!(c.family, FamilyKind::DyadicP2);
    }

    #[test]
    fn seed_precedence() {
        let file = Settings { seed: Some(7), ..flags() };
        let flag = Settings { seed: Some(9), ..flags() };
        let run = |f: Settings, file: Settings, env| RunConfig::resolve(Command::LemmaSuite, f, file, env).unwrap().seed;
        assert_eq!(run(flag, file.clone(), Some("11")), 9);
        assert_eq!(run(flags(), file, Some("11")), 7);
        assert_eq!(run(flags(), flags(), Some("11")), 11);
        assert!(RunConfig::resolve(Command::LemmaSuite, flags(), flags(), Some("x")).is_err());
    }

    #[test]
    fn file_parsing_and_override() {
        let file = Settings::from_json(
            r#"{"command": "clt", "n_grid": [1, 2], "samples": 500, "format": "json", "family": "mixed_p2_q3"}"#,
        )
        .unwrap();
        let c = RunConfig::resolve(Command::Clt, Settings { samples: Some(1000), ..flags() }, file, None).unwrap();
        assert_eq!((c.samples, c.n_grid, c.format), (1000, vec![1, 2], Format::Json));
        assert_eq!(c.family, FamilyKind::MixedP2Q3);
        assert_eq!(c.output_path, PathBuf::from("wiener-clt.json"));
        assert!(Settings::from_json(r#"{"sample": 3}"#).is_err());
    }

    #[test]
    fn invalid_configs() {
        let bad = |command, s: Settings| RunConfig::resolve(command, s, flags(), None).is_err();
        assert!(bad(Command::Clt, Settings { n_grid: Some(vec![4, 4]), ..flags() }));
        assert!(bad(Command::Clt, Settings { n_grid: Some(vec![0, 4]), ..flags() }));
        assert!(bad(Command::Clt, Settings { n_grid: Some(vec![]), ..flags() }));
        assert!(bad(Command::Clt, Settings { samples: Some(99), ..flags() }));
        assert!(!bad(Command::Positivity, Settings { samples: Some(1), ..flags() }));
        assert!(bad(Command::Clt, Settings { family: Some("nope".into()), ..flags() }));
        let file = Settings { command: Some(Command::Positivity), ..flags() };
        assert!(RunConfig::resolve(Command::Clt, flags(), file, None).is_err());
    }
}
