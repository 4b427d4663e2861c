use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::action::CyclicAction;
use crate::analysis::Witness;
use crate::embed::{Pipeline, Reducer, ReducerKind, TargetDim};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ActionSpec {
    Diagonal { m: usize, weights: Vec<i64> },
    Translation { n: usize },
}

impl ActionSpec {
    pub fn build(&self) -> Result<CyclicAction> {
        match self {
            ActionSpec::Diagonal { m, weights } => CyclicAction::diagonal(*m, weights),
            ActionSpec::Translation { n } => CyclicAction::translation(*n),
        }
    }
}

/// `"auto"` or an explicit dimension.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TargetDimSpec {
    #[default]
    Auto,
    Fixed(usize),
}

impl Serialize for TargetDimSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TargetDimSpec::Auto => s.serialize_str("auto"),
            TargetDimSpec::Fixed(k) => s.serialize_u64(*k as u64),
        }
    }
}

impl<'de> Deserialize<'de> for TargetDimSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(TargetDimVisitor)
    }
}

struct TargetDimVisitor;

impl serde::de::Visitor<'_> for TargetDimVisitor {
    type Value = TargetDimSpec;

    fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        f.write_str("\"auto\" or a positive integer")
    }

    fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
        if v == "auto" {
            Ok(TargetDimSpec::Auto)
        } else {
            Err(E::invalid_value(serde::de::Unexpected::Str(v), &self))
        }
    }

    fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
        usize::try_from(v)
            .map(TargetDimSpec::Fixed)
            .map_err(|_| E::invalid_value(serde::de::Unexpected::Unsigned(v), &self))
    }

    fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
        match u64::try_from(v) {
            Ok(u) => self.visit_u64(u),
            Err(_) => Err(E::invalid_value(serde::de::Unexpected::Signed(v), &self)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReducerConfig {
    #[serde(default = "default_kind")]
    pub kind: ReducerKind,
    #[serde(default)]
    pub seed: u64,
}

fn default_kind() -> ReducerKind {
    ReducerKind::Gaussian
}

impl Default for ReducerConfig {
    fn default() -> Self {
        ReducerConfig {
            kind: ReducerKind::Gaussian,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplesSpec {
    pub samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarginSpec {
    pub samples: usize,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub epsilons: Vec<f64>,
    #[serde(default)]
    pub witness: Option<Witness>,
}

pub const DEFAULT_EPSILONS: [f64; 5] = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3];

/// Suites to run; `null` disables one, a missing key takes the default.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub invariance: Option<SamplesSpec>,
    pub separation: Option<MarginSpec>,
    pub lipschitz: Option<SamplesSpec>,
    pub nonparallel: Option<MarginSpec>,
    pub sup_norm: Option<SamplesSpec>,
    pub sweep: Option<SweepSpec>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            invariance: Some(SamplesSpec { samples: 1000 }),
            separation: Some(MarginSpec {
                samples: 1000,
                delta: 0.1,
            }),
            lipschitz: Some(SamplesSpec { samples: 10_000 }),
            nonparallel: Some(MarginSpec {
                samples: 1000,
                delta: 0.1,
            }),
            sup_norm: Some(SamplesSpec { samples: 10_000 }),
            sweep: Some(SweepSpec {
                epsilons: DEFAULT_EPSILONS.to_vec(),
                witness: None,
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignalFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalSource {
    /// Relative paths resolve against the config file's directory.
    pub path: PathBuf,
    #[serde(default)]
    pub format: Option<SignalFormat>,
}

impl SignalSource {
    pub fn resolved_format(&self) -> Result<SignalFormat> {
        if let Some(f) = self.format {
            return Ok(f);
        }
        match self.path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Ok(SignalFormat::Csv),
            Some("json") => Ok(SignalFormat::Json),
            _ => Err(Error::Usage(format!(
                "cannot infer signal format of {}; set \"format\"",
                self.path.display()
            ))),
        }
    }
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub action: ActionSpec,
    #[serde(default)]
    pub target_dim: TargetDimSpec,
    #[serde(default)]
    pub reducer: ReducerConfig,
    #[serde(default)]
    pub suites: SuiteConfig,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    /// Master seed for every sampling suite.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub signals: Option<SignalSource>,
}

impl RunConfig {
    /// Parses JSON, reporting the failing field path and position.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            // serde_json's message already ends with "at line L column C".
            Error::Usage(format!("config field `{path}`: {}", e.into_inner()))
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg = Self::from_json(&text).map_err(|e| match e {
            Error::Usage(msg) => Error::Usage(format!("{}: {msg}", path.display())),
            other => other,
        })?;
        if let Some(src) = cfg.signals.as_mut() {
            if src.path.is_relative() {
                if let Some(dir) = path.parent() {
                    src.path = dir.join(&src.path);
                }
            }
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn pipeline(&self) -> Result<Pipeline> {
        let action = self.action.build()?;
        let n = action.n();
        let big_n = n * (n + 1) / 2;
        match (self.reducer.kind, self.target_dim) {
            (ReducerKind::Identity, TargetDimSpec::Auto) => {
                Pipeline::with_reducer(action, Reducer::identity(big_n)?)
            }
            (ReducerKind::Identity, TargetDimSpec::Fixed(k)) => {
                Pipeline::with_reducer(action, Reducer::new(big_n, k, 0, ReducerKind::Identity)?)
            }
            (ReducerKind::Gaussian, TargetDimSpec::Auto) => {
                Pipeline::new(action, TargetDim::Auto, self.reducer.seed)
            }
            (ReducerKind::Gaussian, TargetDimSpec::Fixed(k)) => {
                Pipeline::new(action, TargetDim::Fixed(k), self.reducer.seed)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z12: &str = r#"{
        "action": {"type": "diagonal", "m": 12, "weights": [6, 3, 4, 2, 2]},
        "target_dim": "auto",
        "reducer": {"kind": "gaussian", "seed": 42},
        "seed": 7
    }"#;

    #[test]
    fn parses_minimal_config() {
        let cfg = RunConfig::from_json(Z12).unwrap();
        assert_eq!(cfg.target_dim, TargetDimSpec::Auto);
        assert_eq!(cfg.suites, SuiteConfig::default());
        assert_eq!(cfg.output_dir, PathBuf::from("out"));
        assert_eq!(cfg.pipeline().unwrap().target_dim(), 11);
    }

    #[test]
    fn round_trips() {
        let mut cfg = RunConfig::from_json(Z12).unwrap();
        cfg.target_dim = TargetDimSpec::Fixed(12);
        cfg.suites.lipschitz = None;
        cfg.signals = Some(SignalSource {
            path: "x.csv".into(),
            format: None,
        });
        let back = RunConfig::from_json(&cfg.to_json().unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn null_disables_suite() {
        let cfg = RunConfig::from_json(
            r#"{"action": {"type": "translation", "n": 8}, "suites": {"sweep": null}}"#,
        )
        .unwrap();
        assert!(cfg.suites.sweep.is_none());
        assert!(cfg.suites.invariance.is_some());
    }

    #[test]
    fn errors_name_field_and_line() {
        let bad = "{\n  \"action\": {\"type\": \"diagonal\", \"m\": 12, \"weights\": [1]},\n  \"target_dim\": \"big\"\n}";
        let msg = RunConfig::from_json(bad).unwrap_err().to_string();
        assert!(msg.contains("target_dim"), "{msg}");
        assert!(msg.contains("line 3"), "{msg}");

        let bad = r#"{"action": {"type": "diagonal", "m": 3, "weights": [1]}, "suites": {"separation": {"samples": 5}}}"#;
        let msg = RunConfig::from_json(bad).unwrap_err().to_string();
        assert!(msg.contains("suites.separation"), "{msg}");
    }

    #[test]
    fn identity_reducer_config() {
        let cfg = RunConfig::from_json(
            r#"{"action": {"type": "diagonal", "m": 2, "weights": [1, 1]}, "reducer": {"kind": "identity"}}"#,
        )
        .unwrap();
        let p = cfg.pipeline().unwrap();
        assert_eq!(p.reducer().kind(), ReducerKind::Identity);
        assert_eq!(p.target_dim(), 3);
    }
}
