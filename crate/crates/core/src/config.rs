use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::krawtchouk::DEFAULT_MAX_N;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub max_n: usize,
    /// Largest `n` for which vertex enumeration runs.
    pub vertex_budget: usize,
    pub float_slack: f64,
    pub entropy_slack: f64,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_n: DEFAULT_MAX_N, vertex_budget: 12, float_slack: 1e-9, entropy_slack: 1e-6, format: Format::Json }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.max_n == 0 || self.vertex_budget == 0 {
            return Err(Error::Invalid("budgets must be positive".into()));
        }
        for (name, v) in [("float_slack", self.float_slack), ("entropy_slack", self.entropy_slack)] {
            if !(v > 0.0 && v <= 1e-3) {
                return Err(Error::Invalid(format!("{name} must lie in (0, 1e-3]; got {v}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let c = Config::default();
        assert!(c.validate().is_ok());
        assert_eq!(c.max_n, 256);
        let bad = Config { float_slack: 0.0, ..Config::default() };
        assert!(bad.validate().is_err());
        let bad = Config { entropy_slack: 0.01, ..Config::default() };
        assert!(bad.validate().is_err());
        let bad = Config { vertex_budget: 0, ..Config::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn format_names() {
        for f in [Format::Json, Format::Csv, Format::Text] {
            assert_eq!(f.to_string().parse::<Format>().unwrap(), f);
        }
        assert!("xml".parse::<Format>().is_err());
    }
}
