//! Run configuration. Read from a TOML file only; unknown keys are errors.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::scalar::{FieldTag, QSpec, Sampler, Scalar, DEFAULT_GUARD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Ybe,
    Frt,
    Duality,
    Slqhat,
    Aff,
}

impl SuiteName {
    pub const ALL: [SuiteName; 5] = [SuiteName::Ybe, SuiteName::Frt, SuiteName::Duality, SuiteName::Slqhat, SuiteName::Aff];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Ybe => "ybe",
            SuiteName::Frt => "frt",
            SuiteName::Duality => "duality",
            SuiteName::Slqhat => "slqhat",
            SuiteName::Aff => "aff",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Field the scalars live in; "gaussian" admits q such as "i".
    pub field: FieldTag,
    /// Exact deformation parameter; drawn from the seed when absent.
    pub q: Option<String>,
    pub seed: u64,
    pub degree_cap: usize,
    pub suites: Vec<SuiteName>,
    /// Random parameter pairs per YBE family.
    pub ybe_samples: usize,
    /// Random Γ elements for the group-law checks.
    pub gamma_samples: usize,
    /// Longest U-word used as a pairing probe.
    pub probe_degree: usize,
    /// Per-letter cap on probe words for the well-definedness sweep.
    pub letter_cap: usize,
    pub max_r: usize,
    /// Generic ratios added to each reducibility scan.
    pub reducibility_controls: usize,
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: FieldTag::Rational,
            q: None,
            seed: 1,
            degree_cap: 4,
            suites: SuiteName::ALL.to_vec(),
            ybe_samples: 50,
            gamma_samples: 100,
            probe_degree: 3,
            letter_cap: 2,
            max_r: 3,
            reducibility_controls: 5,
            out: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("config key `{key}`: {message}")]
    Invalid { key: String, message: String },
    #[error("cannot read config {path}: {message}")]
    Io { path: String, message: String },
}

fn invalid(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { key: key.to_string(), message: message.into() }
}

/// A validated configuration with q fixed.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub config: RunConfig,
    pub q: QSpec,
}

impl Resolved {
    /// The configuration as echoed into reports, with q filled in.
    pub fn echo(&self) -> Value {
        let mut v = serde_json::to_value(&self.config).expect("config serializes");
        v["q"] = Value::String(self.q.q().to_string());
        v
    }
}

impl RunConfig {
    pub fn from_toml_str(s: &str) -> Result<RunConfig, ConfigError> {
        toml::from_str(s).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|sp| {
                    let before = &s[..sp.start.min(s.len())];
                    let line = before.matches('\n').count() + 1;
                    let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
                    (line, column)
                })
                .unwrap_or((0, 0));
            ConfigError::Parse { line, column, message: e.message().to_string() }
        })
    }

    pub fn from_file(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io { path: path.display().to_string(), message: e.to_string() })?;
        RunConfig::from_toml_str(&text)
    }

    pub fn resolve(&self) -> Result<Resolved, ConfigError> {
        if self.suites.is_empty() {
            return Err(invalid("suites", "at least one suite"));
        }
        if !(1..=4).contains(&self.degree_cap) {
            return Err(invalid("degree_cap", "must be between 1 and 4"));
        }
        if self.probe_degree == 0 || self.probe_degree > 4 {
            return Err(invalid("probe_degree", "must be between 1 and 4"));
        }
        if self.max_r > 3 {
            return Err(invalid("max_r", "at most 3"));
        }
        if self.ybe_samples == 0 || self.gamma_samples == 0 {
            return Err(invalid("ybe_samples", "sample counts must be positive"));
        }
        let q = match &self.q {
            Some(text) => {
                let v = Scalar::parse_in(text, self.field).map_err(|e| invalid("q", e.to_string()))?;
                if self.field == FieldTag::Rational && v.to_string() != text.trim() {
                    return Err(invalid("q", format!("write {text:?} in lowest terms as {v}")));
                }
                let q = match self.field {
                    FieldTag::Rational => QSpec::generic(v, DEFAULT_GUARD),
                    FieldTag::GaussianRational => QSpec::new(v),
                };
                q.map_err(|e| invalid("q", e.to_string()))?
            }
            None => Sampler::new(crate::suite::sub_seed(self.seed, "q")).generic_q(),
        };
        Ok(Resolved { config: self.clone(), q })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let c = RunConfig::from_toml_str("seed = 7\nq = \"3/2\"\nsuites = [\"ybe\", \"aff\"]\n").unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.suites, vec![SuiteName::Ybe, SuiteName::Aff]);
        assert_eq!(c.ybe_samples, 50);
        let r = c.resolve().unwrap();
        assert_eq!(r.q.q().to_string(), "3/2");
    }

    #[test]
    fn unknown_key_is_rejected_with_position() {
        let e = RunConfig::from_toml_str("seed = 1\nsede = 2\n").unwrap_err();
        match e {
            ConfigError::Parse { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("sede"), "{message}");
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn q_must_be_reduced_and_nondegenerate() {
        let c = RunConfig { q: Some("4/6".into()), ..RunConfig::default() };
        assert!(matches!(c.resolve(), Err(ConfigError::Invalid { .. })));
        let c = RunConfig { q: Some("-1".into()), ..RunConfig::default() };
        assert!(c.resolve().is_err());
        let c = RunConfig { q: Some("i".into()), ..RunConfig::default() };
        assert!(c.resolve().is_err());
        let c = RunConfig { q: Some("i".into()), field: FieldTag::GaussianRational, ..RunConfig::default() };
        assert!(c.resolve().is_ok());
    }

    #[test]
    fn q_is_drawn_from_the_seed() {
        let a = RunConfig::default().resolve().unwrap();
        let b = RunConfig::default().resolve().unwrap();
        assert_eq!(a.q, b.q);
    }
}
