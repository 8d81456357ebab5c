//! Run configuration files and output manifests.
//!
//! Configs are TOML. Unknown keys are rejected, defaults are filled in at
//! load time and the resolved config is echoed into every manifest.
//!
//! ```toml
//! seed = 7
//! replicates = 32
//!
//! [levy]
//! kind = "pareto"
//! gamma = 1.0
//!
//! [pi]
//! kind = "gamma"
//! shape = 2.0
//!
//! [window]
//! B = "auto"
//! T = 1e6
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::growth::{classify_growth, GrowthOptions, Normalizer, NormalizerFamily, DEFAULT_J0, TREND_TOL};
use crate::measures::{LevyMeasureSpec, MixingMeasureSpec, Moment, MomentOrder};
use crate::pathsim::{default_eps, DEFAULT_BURN_IN_CAP, DEFAULT_PRUNE_TOL};

pub const MANIFEST_FILE: &str = "manifest.toml";
pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_REPLICATES: usize = 32;
pub const DEFAULT_OUTPUT_DIR: &str = "supou-out";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("invalid config: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
    #[error("process does not exist: {0}")]
    Existence(String),
}

/// Burn-in length `B`, or `"auto"` for the bisection rule.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum BurnInSetting {
    #[default]
    Auto,
    Value(f64),
}

/// Worker count, or `"auto"` for the rayon default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Threads {
    #[default]
    Auto,
    Count(usize),
}

impl Threads {
    /// `SUPOU_THREADS` takes precedence over the configured value.
    pub fn resolve(self) -> Option<usize> {
        if let Some(n) = std::env::var("SUPOU_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            if n > 0 {
                return Some(n);
            }
        }
        match self {
            Threads::Auto => None,
            Threads::Count(n) => Some(n),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AutoOr<T> {
    Keyword(String),
    Value(T),
}

fn keyword<E: de::Error>(s: String, expected: &str) -> Result<(), E> {
    if s == "auto" {
        Ok(())
    } else {
        Err(E::custom(format!("expected {expected}, got \"{s}\"")))
    }
}

impl Serialize for BurnInSetting {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            BurnInSetting::Auto => s.serialize_str("auto"),
            BurnInSetting::Value(v) => s.serialize_f64(v),
        }
    }
}

impl<'de> Deserialize<'de> for BurnInSetting {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match AutoOr::<f64>::deserialize(d).map_err(|_| de::Error::custom("expected \"auto\" or a number"))? {
            AutoOr::Keyword(s) => keyword(s, "\"auto\" or a number").map(|_| BurnInSetting::Auto),
            AutoOr::Value(v) => Ok(BurnInSetting::Value(v)),
        }
    }
}

impl Serialize for Threads {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Threads::Auto => s.serialize_str("auto"),
            Threads::Count(n) => s.serialize_u64(n as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Threads {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        const EXPECTED: &str = "\"auto\" or a positive integer";
        match AutoOr::<u64>::deserialize(d).map_err(|_| de::Error::custom(EXPECTED))? {
            AutoOr::Keyword(s) => keyword(s, EXPECTED).map(|_| Threads::Auto),
            AutoOr::Value(0) => Err(de::Error::custom(EXPECTED)),
            AutoOr::Value(n) => Ok(Threads::Count(n as usize)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    #[serde(rename = "B", default)]
    pub burn_in: BurnInSetting,
    #[serde(rename = "T")]
    pub horizon: f64,
}

fn default_prune_tol() -> f64 {
    DEFAULT_PRUNE_TOL
}
fn default_seed() -> u64 {
    DEFAULT_SEED
}
fn default_replicates() -> usize {
    DEFAULT_REPLICATES
}
fn default_output_dir() -> PathBuf {
    PathBuf::from(DEFAULT_OUTPUT_DIR)
}
fn default_j0() -> u32 {
    DEFAULT_J0
}
fn default_burn_in_cap() -> f64 {
    DEFAULT_BURN_IN_CAP
}
fn default_trend_tol() -> f64 {
    TREND_TOL
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    /// Small-jump truncation; filled with the measure default when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default = "default_prune_tol")]
    pub prune_tol: f64,
    #[serde(default = "default_j0")]
    pub j0: u32,
    #[serde(default = "default_burn_in_cap")]
    pub burn_in_cap: f64,
    #[serde(default = "default_trend_tol")]
    pub trend_tol: f64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub threads: Threads,
    pub levy: LevyMeasureSpec,
    pub pi: MixingMeasureSpec,
    pub window: WindowConfig,
    /// Growth normalizer; defaults to the natural one for `levy`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalizer: Option<Normalizer>,
}

/// Natural normalizer with unit constant for the growth regime of `levy`.
pub fn natural_normalizer(levy: &LevyMeasureSpec) -> Normalizer {
    match classify_growth(levy) {
        Ok(class) => match class.normalizer {
            NormalizerFamily::Power => Normalizer::Power {
                a: class.critical_exponent.filter(|a| a.is_finite()).unwrap_or(1.0),
            },
            NormalizerFamily::Log => Normalizer::Log { kappa: 1.0 },
            NormalizerFamily::LogOverLogLog => Normalizer::LogOverLogLog { kappa: 1.0 },
        },
        Err(_) => Normalizer::Power { a: 1.0 },
    }
}

impl RunConfig {
    /// Minimal config with every optional field at its default.
    pub fn new(levy: LevyMeasureSpec, pi: MixingMeasureSpec, horizon: f64) -> Self {
        Self {
            seed: DEFAULT_SEED,
            replicates: DEFAULT_REPLICATES,
            eps: None,
            prune_tol: DEFAULT_PRUNE_TOL,
            j0: DEFAULT_J0,
            burn_in_cap: DEFAULT_BURN_IN_CAP,
            trend_tol: TREND_TOL,
            output_dir: default_output_dir(),
            threads: Threads::Auto,
            levy,
            pi,
            window: WindowConfig { burn_in: BurnInSetting::Auto, horizon },
            normalizer: None,
        }
    }

    /// Fills measure-dependent defaults.
    pub fn resolve(mut self) -> Self {
        self.eps.get_or_insert_with(|| default_eps(&self.levy));
        self.normalizer.get_or_insert_with(|| natural_normalizer(&self.levy));
        self
    }

    pub fn eps(&self) -> f64 {
        self.eps.unwrap_or_else(|| default_eps(&self.levy))
    }

    pub fn normalizer(&self) -> Normalizer {
        self.normalizer.unwrap_or_else(|| natural_normalizer(&self.levy))
    }

    /// Configured burn-in, `None` for `"auto"`.
    pub fn fixed_burn_in(&self) -> Option<f64> {
        match self.window.burn_in {
            BurnInSetting::Auto => None,
            BurnInSetting::Value(b) => Some(b),
        }
    }

    pub fn growth_options(&self) -> GrowthOptions {
        GrowthOptions {
            j0: self.j0,
            eps: Some(self.eps()),
            burn_in: self.fixed_burn_in(),
            burn_in_cap: self.burn_in_cap,
            prune_tol: self.prune_tol,
            trend_tol: self.trend_tol,
        }
    }

    /// Parameter constraints, each message naming its key.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        if let Some(eps) = self.eps {
            if !(eps >= 0.0 && eps.is_finite()) {
                return bad(format!("eps must be ≥ 0 (got {eps})"));
            }
        }
        if !(self.prune_tol >= 0.0 && self.prune_tol.is_finite()) {
            return bad(format!("prune_tol must be ≥ 0 (got {})", self.prune_tol));
        }
        if self.seed > i64::MAX as u64 {
            return bad(format!("seed must be at most 2^63 - 1 (TOML integers are signed), got {}", self.seed));
        }
        if self.replicates == 0 {
            return bad("replicates must be ≥ 1".into());
        }
        if !(self.burn_in_cap > 1.0 && self.burn_in_cap.is_finite()) {
            return bad(format!("burn_in_cap must be > 1 (got {})", self.burn_in_cap));
        }
        if !(self.trend_tol > 0.0 && self.trend_tol.is_finite()) {
            return bad(format!("trend_tol must be > 0 (got {})", self.trend_tol));
        }
        if !(self.window.horizon > 0.0 && self.window.horizon.is_finite()) {
            return bad(format!("window.T must be > 0 (got {})", self.window.horizon));
        }
        if let BurnInSetting::Value(b) = self.window.burn_in {
            if !(b >= 0.0 && b.is_finite()) {
                return bad(format!("window.B must be ≥ 0 or \"auto\" (got {b})"));
            }
        }
        self.levy.validate().map_err(|e| ConfigError::Invalid(format!("levy: {e}")))?;
        self.pi.validate().map_err(|e| ConfigError::Invalid(format!("pi: {e}")))?;
        if let Some(f) = &self.normalizer {
            f.validate().map_err(|e| ConfigError::Invalid(format!("normalizer: {e}")))?;
        }
        if let Some(eps) = self.eps {
            if eps == 0.0 && self.levy.mass_above(0.0).is_infinite() {
                return bad(format!("eps must be > 0 for {} (infinite total mass)", self.levy.description()));
            }
        }
        Ok(())
    }

    /// Existence of the stationary process: `∫ log(1+z) λ(dz) < ∞` and
    /// `m_{-1}(π) < ∞`.
    pub fn check_existence(&self) -> Result<(), ConfigError> {
        match self.levy.log_moment() {
            Ok(Moment::Finite(_)) => {}
            Ok(Moment::Infinite) => {
                return Err(ConfigError::Existence(format!(
                    "lambda log moment ∫ log(1+z) λ(dz) = ∞ for {}",
                    self.levy.description()
                )))
            }
            Err(e) => return Err(ConfigError::Invalid(format!("levy: {e}"))),
        }
        if let Moment::Infinite = self.pi.moment(MomentOrder::Inverse) {
            return Err(ConfigError::Existence(format!("m_{{-1}}(pi) = ∞ for {}", self.pi.description())));
        }
        Ok(())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Parses, applies defaults and validates, existence included.
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| ConfigError::Parse(e.to_string()))?;
        Self::from_table(table)
    }

    /// Accepts a bare config or a manifest (its `[config]` table is used).
    pub fn from_table(mut table: toml::Table) -> Result<Self, ConfigError> {
        if table.contains_key("command") {
            match table.remove("config") {
                Some(toml::Value::Table(inner)) => table = inner,
                _ => return Err(ConfigError::Parse("manifest has no [config] table".into())),
            }
        }
        let cfg: RunConfig = serde_path_to_error::deserialize(toml::Value::Table(table)).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner().to_string();
            let inner = inner.trim_end();
            if path == "." || path.is_empty() {
                ConfigError::Parse(inner.to_string())
            } else {
                ConfigError::Parse(format!("{path}: {inner}"))
            }
        })?;
        cfg.validate()?;
        cfg.check_existence()?;
        Ok(cfg.resolve())
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        Self::from_toml(&text)
    }
}

/// Record written next to every set of artifacts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub version: String,
    /// Arguments after the subcommand name, `--out` excluded.
    pub args: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<RunConfig>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, toml::Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagnostics: BTreeMap<String, toml::Value>,
    pub artifacts: Vec<String>,
}

impl Manifest {
    pub fn new(command: &str, args: Vec<String>) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            args,
            config: None,
            params: BTreeMap::new(),
            diagnostics: BTreeMap::new(),
            artifacts: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<toml::Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn diagnostic(&mut self, key: &str, value: impl Into<toml::Value>) {
        self.diagnostics.insert(key.to_string(), value.into());
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[levy]
kind = "pareto"
gamma = 1.5

[pi]
kind = "gamma"
shape = 2.0

[window]
T = 100.0
"#;

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = RunConfig::from_toml(MINIMAL).unwrap();
        assert_eq!(cfg.eps, Some(0.0));
        assert_eq!(cfg.prune_tol, DEFAULT_PRUNE_TOL);
        assert_eq!(cfg.seed, DEFAULT_SEED);
        assert_eq!(cfg.window.burn_in, BurnInSetting::Auto);
        assert_eq!(cfg.normalizer, Some(Normalizer::Power { a: 1.0 / 1.5 }));
        let echoed = cfg.to_toml();
        assert!(echoed.contains("eps = 0.0"));
        assert!(echoed.contains("prune_tol"));
        assert!(echoed.contains("B = \"auto\""));
    }

    #[test]
    fn round_trip() {
        let mut cfg = RunConfig::from_toml(MINIMAL).unwrap();
        cfg.window.burn_in = BurnInSetting::Value(12.5);
        cfg.threads = Threads::Count(8);
        cfg.eps = Some(1e-7);
        assert_eq!(RunConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
        let auto = RunConfig::from_toml(MINIMAL).unwrap();
        assert_eq!(RunConfig::from_toml(&auto.to_toml()).unwrap(), auto);
    }

    #[test]
    fn negative_eps_rejected() {
        let text = format!("eps = -1\n{MINIMAL}");
        let err = RunConfig::from_toml(&text).unwrap_err();
        assert!(err.to_string().contains("eps must be ≥ 0"), "{err}");
    }

    #[test]
    fn unknown_keys_name_their_path() {
        let text = MINIMAL.replace("gamma = 1.5", "gamma = 1.5\ngama = 2.0");
        let err = RunConfig::from_toml(&text).unwrap_err().to_string();
        assert!(err.contains("levy") && err.contains("gama"), "{err}");
        let text = MINIMAL.replace("T = 100.0", "T = 100.0\nB = \"soon\"");
        let err = RunConfig::from_toml(&text).unwrap_err().to_string();
        assert!(err.contains("window.B"), "{err}");
        let text = format!("seeed = 3\n{MINIMAL}");
        assert!(RunConfig::from_toml(&text).unwrap_err().to_string().contains("seeed"));
    }

    #[test]
    fn missing_and_mistyped_keys() {
        let err = RunConfig::from_toml(&MINIMAL.replace("T = 100.0", "")).unwrap_err().to_string();
        assert!(err.contains("window") && err.contains("T"), "{err}");
        let err = RunConfig::from_toml(&format!("replicates = \"many\"\n{MINIMAL}")).unwrap_err().to_string();
        assert!(err.contains("replicates"), "{err}");
    }

    #[test]
    fn nonexistent_process_rejected() {
        let text = MINIMAL.replace("shape = 2.0", "shape = 0.5");
        match RunConfig::from_toml(&text) {
            Err(ConfigError::Existence(msg)) => assert!(msg.contains("m_{-1}(pi) = ∞"), "{msg}"),
            other => panic!("expected existence failure, got {other:?}"),
        }
    }

    #[test]
    fn manifest_reloads_as_config() {
        let cfg = RunConfig::from_toml(MINIMAL).unwrap();
        let mut m = Manifest::new("growth", vec!["--config".into(), "x.toml".into()]);
        m.config = Some(cfg.clone());
        m.diagnostic("burn_in", 12.0);
        assert_eq!(RunConfig::from_toml(&m.to_toml()).unwrap(), cfg);
    }

    #[test]
    fn oversized_seed_rejected() {
        let err = RunConfig::from_toml(&format!("seed = \"x\"\n{MINIMAL}")).unwrap_err().to_string();
        assert!(err.contains("seed"), "{err}");
        let mut cfg = RunConfig::from_toml(MINIMAL).unwrap();
        cfg.seed = u64::MAX;
        assert!(cfg.validate().unwrap_err().to_string().contains("seed must be at most"));
    }

    #[test]
    fn threads_accepts_auto_or_count() {
        let t: Threads = toml::from_str::<toml::Table>("t = 8").unwrap()["t"].clone().try_into().unwrap();
        assert_eq!(t, Threads::Count(8));
        let t: Threads = toml::Value::String("auto".into()).try_into().unwrap();
        assert_eq!(t, Threads::Auto);
        assert!(toml::Value::Integer(0).try_into::<Threads>().is_err());
    }
}
