//! JSON batch configuration.
//!
//! ```json
//! {
//!   "cases": [{ "name": "c1", "family": "B", "theta1": {...}, "theta": {...} }],
//!   "alphas": [0.5, "kl", 2.0],
//!   "mc": { "n": 2000, "reps": 100, "burn_in": 100, "seed": 1 },
//!   "grid": { "N": 16, "a": 15.0, "quad_points": 201 }
//! }
//! ```
//!
//! `alphas`, `mc` and `grid` are optional and fall back to [`default_alphas`],
//! [`McConfig::default`] and [`GridSpec::default`].

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use hmmdiv::fredholm::GridSpec;
use hmmdiv::model::{validate_model, Model, ModelAParams, ModelBParams};
use hmmdiv::montecarlo::McConfig;
use hmmdiv::Order;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
}

/// One comparison: data from `theta1`, reference model `theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseSpec {
    pub name: String,
    pub theta1: Model,
    pub theta: Model,
    pub alphas: Vec<Order>,
    pub mc: McConfig,
    pub grid: GridSpec,
}

impl CaseSpec {
    pub fn family(&self) -> Family {
        family_of(&self.theta1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() {
            bail!("{}: alphas must not be empty", self.name);
        }
        for a in &self.alphas {
            if let Order::Renyi(v) = a {
                if !(*v > 0.0 && v.is_finite()) {
                    bail!("{}: every alpha must be positive, got {v}", self.name);
                }
            }
        }
        if family_of(&self.theta1) != family_of(&self.theta) {
            bail!("{}: theta1 and theta belong to different families", self.name);
        }
        for (key, m) in [("theta1", &self.theta1), ("theta", &self.theta)] {
            let report = validate_model(m);
            if !report.is_ok() {
                bail!("{}.{key}: {}", self.name, report.violations.join("; "));
            }
        }
        self.mc.validate().map_err(|e| anyhow!("{}.mc: {e}", self.name))?;
        self.grid.validate().map_err(|e| anyhow!("{}.grid: {e}", self.name))?;
        Ok(())
    }
}

fn family_of(m: &Model) -> Family {
    match m {
        Model::A(_) => Family::A,
        Model::B(_) => Family::B,
    }
}

pub fn default_alphas() -> Vec<Order> {
    [0.5, 0.8, 0.99, 0.999]
        .into_iter()
        .map(Order::Renyi)
        .chain([Order::Kl])
        .chain([1.001, 1.01, 1.5, 2.0].into_iter().map(Order::Renyi))
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCase {
    name: String,
    family: Family,
    theta1: Value,
    theta: Value,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    cases: Vec<RawCase>,
    #[serde(default = "default_alphas")]
    alphas: Vec<Order>,
    #[serde(default)]
    mc: McConfig,
    #[serde(default)]
    grid: GridSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub cases: Vec<CaseSpec>,
}

fn parse_model(family: Family, v: Value, key: &str) -> Result<Model> {
    let m = match family {
        Family::A => serde_json::from_value::<ModelAParams>(v).map(Model::A),
        Family::B => serde_json::from_value::<ModelBParams>(v).map(Model::B),
    };
    m.map_err(|e| anyhow!("{key}: {e}"))
}

fn model_value(m: &Model) -> Value {
    match m {
        Model::A(p) => serde_json::to_value(p),
        Model::B(p) => serde_json::to_value(p),
    }
    .expect("parameter structs serialize")
}

impl Config {
    pub fn from_json(text: &str) -> Result<Config> {
        let raw: RawConfig = serde_json::from_str(text).context("malformed config")?;
        if raw.cases.is_empty() {
            bail!("cases: at least one case is required");
        }
        let cases = raw
            .cases
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let spec = CaseSpec {
                    theta1: parse_model(c.family, c.theta1, &format!("cases[{i}].theta1"))?,
                    theta: parse_model(c.family, c.theta, &format!("cases[{i}].theta"))?,
                    name: c.name,
                    alphas: raw.alphas.clone(),
                    mc: raw.mc,
                    grid: raw.grid,
                };
                spec.validate().with_context(|| format!("cases[{i}]"))?;
                Ok(spec)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Config { cases })
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        Config::from_json(&text).with_context(|| format!("in {}", path.display()))
    }

    /// Serializes back to the input schema. Settings are taken from the first case.
    pub fn to_json(&self) -> Result<String> {
        let first = self.cases.first().ok_or_else(|| anyhow!("empty config"))?;
        let raw = RawConfig {
            cases: self
                .cases
                .iter()
                .map(|c| RawCase {
                    name: c.name.clone(),
                    family: c.family(),
                    theta1: model_value(&c.theta1),
                    theta: model_value(&c.theta),
                })
                .collect(),
            alphas: first.alphas.clone(),
            mc: first.mc,
            grid: first.grid,
        };
        Ok(serde_json::to_string_pretty(&raw)?)
    }
}

/// The run settings used when a config omits them.
pub fn defaults_json() -> String {
    serde_json::to_string_pretty(&serde_json::json!({
        "alphas": default_alphas(),
        "mc": McConfig::default(),
        "grid": GridSpec::default(),
    }))
    .expect("defaults serialize")
}
