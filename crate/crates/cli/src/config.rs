use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::CliError;

/// `count` evenly spaced values from `min` to `max`, written `min:max:count`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Range {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self, CliError> {
        if !min.is_finite() || !max.is_finite() {
            return Err(CliError::Validation(format!("range bounds must be finite: {min}:{max}")));
        }
        if count < 2 {
            return Err(CliError::Validation(format!("range needs at least 2 points, got {count}")));
        }
        if max <= min {
            return Err(CliError::Validation(format!("empty range {min}:{max}")));
        }
        Ok(Range { min, max, count })
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.max } else { self.min + step * i as f64 })
            .collect()
    }
}

impl FromStr for Range {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CliError::Validation(format!("expected min:max:count, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, count] = parts[..] else {
            return Err(bad());
        };
        Range::new(
            min.trim().parse().map_err(|_| bad())?,
            max.trim().parse().map_err(|_| bad())?,
            count.trim().parse().map_err(|_| bad())?,
        )
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Validation(format!("unknown format {s:?} (csv or json)"))),
        }
    }
}

pub const DEFAULT_PHI: Range = Range {
    min: 0.05,
    max: 0.7,
    count: 101,
};
pub const DEFAULT_KAPPA: Range = Range {
    min: 0.5,
    max: 10.0,
    count: 101,
};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub phi_range: Range,
    pub kappa_range: Range,
    pub n_max: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// `None` uses every available core.
    pub threads: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            phi_range: DEFAULT_PHI,
            kappa_range: DEFAULT_KAPPA,
            n_max: phasecov::strategy::DEFAULT_N_MAX,
            out: None,
            format: Format::Csv,
            threads: None,
        }
    }
}

/// Contents of a `--config` file; every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub phi_range: Option<String>,
    pub kappa_range: Option<String>,
    pub n_max: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }
}

/// Values given on the command line; `None` means "not given".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub phi_range: Option<Range>,
    pub kappa_range: Option<Range>,
    pub n_max: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
}

impl SweepConfig {
    /// Defaults, then the config file, then command-line flags.
    pub fn resolve(file: Option<FileConfig>, flags: Overrides) -> Result<Self, CliError> {
        let file = file.unwrap_or_default();
        let mut cfg = SweepConfig::default();
        if let Some(r) = file.phi_range {
            cfg.phi_range = r.parse()?;
        }
        if let Some(r) = file.kappa_range {
            cfg.kappa_range = r.parse()?;
        }
        cfg.n_max = flags.n_max.or(file.n_max).unwrap_or(cfg.n_max);
        cfg.out = flags.out.or(file.out);
        cfg.format = flags.format.or(file.format).unwrap_or(cfg.format);
        cfg.threads = flags.threads.or(file.threads);
        if let Some(r) = flags.phi_range {
            cfg.phi_range = r;
        }
        if let Some(r) = flags.kappa_range {
            cfg.kappa_range = r;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.kappa_range.min <= 0.0 {
            return Err(CliError::Validation(format!(
                "kappa must be positive, range starts at {}",
                self.kappa_range.min
            )));
        }
        if self.n_max < 1 {
            return Err(CliError::Validation("n-max must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(CliError::Validation("threads must be at least 1".into()));
        }
        Ok(())
    }

    /// Grid points in row-major order, `phi` outermost.
    pub fn grid(&self) -> Vec<(f64, f64)> {
        let kappas = self.kappa_range.values();
        self.phi_range
            .values()
            .into_iter()
            .flat_map(|p| kappas.iter().map(move |&k| (p, k)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges() {
        let r: Range = "0.1:0.5:5".parse().unwrap();
        assert_eq!(r.values(), vec![0.1, 0.2, 0.30000000000000004, 0.4, 0.5]);
        assert!("0.1:0.5".parse::<Range>().is_err());
        assert!("0.5:0.1:3".parse::<Range>().is_err());
        assert!("0.1:0.5:1".parse::<Range>().is_err());
        assert!("a:b:c".parse::<Range>().is_err());
    }

    #[test]
    fn flags_override_the_file() {
        let file = FileConfig {
            phi_range: Some("0.1:0.2:3".into()),
            n_max: Some(50),
            format: Some(Format::Json),
            ..Default::default()
        };
        let flags = Overrides {
            n_max: Some(80),
            ..Default::default()
        };
        let cfg = SweepConfig::resolve(Some(file), flags).unwrap();
        assert_eq!(cfg.n_max, 80);
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.phi_range, Range::new(0.1, 0.2, 3).unwrap());
        assert_eq!(cfg.kappa_range, DEFAULT_KAPPA);
    }

    #[test]
    fn rejects_nonpositive_kappa() {
        let flags = Overrides {
            kappa_range: Some("-1:2:3".parse().unwrap()),
            ..Default::default()
        };
        assert!(matches!(
            SweepConfig::resolve(None, flags),
            Err(CliError::Validation(_))
        ));
    }

    #[test]
    fn grid_is_phi_major() {
        let cfg = SweepConfig {
            phi_range: Range::new(0.1, 0.2, 2).unwrap(),
            kappa_range: Range::new(1.0, 3.0, 3).unwrap(),
            ..Default::default()
        };
        assert_eq!(
            cfg.grid(),
            vec![(0.1, 1.0), (0.1, 2.0), (0.1, 3.0), (0.2, 1.0), (0.2, 2.0), (0.2, 3.0)]
        );
    }

    #[test]
    fn file_config_rejects_unknown_keys() {
        let parsed: Result<FileConfig, _> = serde_json::from_str(r#"{"phi": 1}"#);
        assert!(parsed.is_err());
        let parsed: FileConfig = serde_json::from_str(r#"{"format": "json", "threads": 2}"#).unwrap();
        assert_eq!(parsed.format, Some(Format::Json));
    }
}
