//! Run configuration: defaults, `key=value` files and flag overrides.

use std::fmt;
use std::str::FromStr;

use crate::error::CliError;

pub const DEFAULT_CAL_V0: f64 = 1.0 / 32.0;
pub const DEFAULT_A: [f64; 3] = [1.0, 2.0, 4.0];
pub const DEFAULT_LEVELS: [u32; 3] = [0, 1, 2];
pub const DEFAULT_GRID: usize = 4096;
pub const DEFAULT_SAMPLES: usize = 200;

/// Relative tolerance of the moment integrals behind `table`.
pub const DEFAULT_TABLE_TOL: f64 = 1e-9;
/// Relative Richardson error accepted by `spectrum`.
pub const DEFAULT_SPECTRUM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Usage(format!(
                "unknown format `{other}` (table|csv|json)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Table => "table",
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Dimensionless depth `𝒱₀`.
    pub v0_dimensionless: f64,
    pub a_values: Vec<f64>,
    pub m0: f64,
    pub levels: Vec<u32>,
    pub format: Format,
    /// `None` selects the per-command default.
    pub tolerance: Option<f64>,
    pub grid_points: usize,
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            v0_dimensionless: DEFAULT_CAL_V0,
            a_values: DEFAULT_A.to_vec(),
            m0: 1.0,
            levels: DEFAULT_LEVELS.to_vec(),
            format: Format::Table,
            tolerance: None,
            grid_points: DEFAULT_GRID,
            samples: DEFAULT_SAMPLES,
        }
    }
}

/// A partial configuration; unset fields leave the layer below untouched.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub v0: Option<f64>,
    pub a: Option<Vec<f64>>,
    pub m0: Option<f64>,
    pub n: Option<Vec<u32>>,
    pub format: Option<Format>,
    pub tol: Option<f64>,
    pub grid: Option<usize>,
    pub samples: Option<usize>,
}

fn parse_value<T: FromStr>(key: &str, raw: &str) -> Result<T, CliError> {
    raw.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("config key `{key}`: cannot parse `{}`", raw.trim())))
}

fn parse_list<T: FromStr>(key: &str, raw: &str) -> Result<Vec<T>, CliError> {
    raw.split(',').map(|item| parse_value(key, item)).collect()
}

impl Overrides {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped.
    pub fn parse_file(text: &str) -> Result<Self, CliError> {
        let mut out = Overrides::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let key = key.trim();
            match key {
                "v0" => out.v0 = Some(parse_value(key, value)?),
                "a" => out.a = Some(parse_list(key, value)?),
                "m0" => out.m0 = Some(parse_value(key, value)?),
                "n" => out.n = Some(parse_list(key, value)?),
                "format" => out.format = Some(value.parse()?),
                "tol" => out.tol = Some(parse_value(key, value)?),
                "grid" => out.grid = Some(parse_value(key, value)?),
                "samples" => out.samples = Some(parse_value(key, value)?),
                other => {
                    return Err(CliError::Usage(format!(
                        "config line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, mut base: RunConfig) -> RunConfig {
        if let Some(v) = self.v0 {
            base.v0_dimensionless = v;
        }
        if let Some(a) = &self.a {
            base.a_values = a.clone();
        }
        if let Some(m0) = self.m0 {
            base.m0 = m0;
        }
        if let Some(n) = &self.n {
            base.levels = n.clone();
        }
        if let Some(f) = self.format {
            base.format = f;
        }
        if let Some(t) = self.tol {
            base.tolerance = Some(t);
        }
        if let Some(g) = self.grid {
            base.grid_points = g;
        }
        if let Some(s) = self.samples {
            base.samples = s;
        }
        base
    }
}

impl RunConfig {
    /// Defaults, then the config file, then flags.
    pub fn resolve(file: Option<&Overrides>, flags: &Overrides) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(file) = file {
            cfg = file.apply(cfg);
        }
        cfg = flags.apply(cfg);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Usage(msg));
        if !(self.v0_dimensionless >= 0.0) || !self.v0_dimensionless.is_finite() {
            return bad(format!("--v0 must be >= 0, got {}", self.v0_dimensionless));
        }
        if self.a_values.is_empty() || self.a_values.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
            return bad("--a needs one or more positive values".into());
        }
        if !(self.m0 > 0.0) || !self.m0.is_finite() {
            return bad(format!("--m0 must be > 0, got {}", self.m0));
        }
        if self.levels.is_empty() {
            return bad("--n needs at least one level".into());
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0 && t < 1.0) {
                return bad(format!("--tol must lie in (0, 1), got {t}"));
            }
        }
        if self.grid_points < pdm_core::oracle::MIN_GRID_POINTS {
            return bad(format!(
                "--grid must be at least {}, got {}",
                pdm_core::oracle::MIN_GRID_POINTS,
                self.grid_points
            ));
        }
        if self.samples < 2 {
            return bad(format!(
                "--samples must be at least 2, got {}",
                self.samples
            ));
        }
        Ok(())
    }

    /// `(n, a)` pairs in output order.
    pub fn pairs(&self) -> Vec<(u32, f64)> {
        let mut levels = self.levels.clone();
        levels.sort_unstable();
        levels.dedup();
        levels
            .iter()
            .flat_map(|&n| self.a_values.iter().map(move |&a| (n, a)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_reference_grid() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.v0_dimensionless, 1.0 / 32.0);
        assert_eq!(cfg.pairs().len(), 9);
        assert_eq!(cfg.pairs()[3], (1, 1.0));
    }

    #[test]
    fn file_then_flags() {
        let file = Overrides::parse_file(
            "# run\nv0 = 0.1\na = 0.5, 3\nformat=csv\n\ngrid = 512 # coarse\n",
        )
        .unwrap();
        let flags = Overrides {
            v0: Some(0.2),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(Some(&file), &flags).unwrap();
        assert_eq!(cfg.v0_dimensionless, 0.2);
        assert_eq!(cfg.a_values, vec![0.5, 3.0]);
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.grid_points, 512);
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(Overrides::parse_file("v0 0.1").is_err());
        assert!(Overrides::parse_file("speed = 3").is_err());
        assert!(Overrides::parse_file("a = 1, x").is_err());
        assert!(Overrides::parse_file("format = xml").is_err());
    }

    #[test]
    fn validation() {
        let flags = Overrides {
            a: Some(vec![1.0, -2.0]),
            ..Default::default()
        };
        assert!(RunConfig::resolve(None, &flags).is_err());
        let flags = Overrides {
            grid: Some(10),
            ..Default::default()
        };
        assert!(RunConfig::resolve(None, &flags).is_err());
    }
}
