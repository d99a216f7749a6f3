//! Scenario configuration files.
//!
//! A config is a JSON document naming the scenario and its parameters:
//!
//! ```json
//! {
//!   "scenario": "binary",
//!   "parameters": {
//!     "payoffs": [3.0, -1.0, 1.0, 4.0],
//!     "rho": 1.0,
//!     "mu0": 0.2,
//!     "sweep": { "parameter": "rho", "from": 0.01, "to": 2.5, "steps": 250 }
//!   }
//! }
//! ```
//!
//! Unknown keys are rejected at every level. Overrides address top-level
//! parameter keys and are applied to the JSON form before validation.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scenario", content = "parameters", rename_all = "lowercase", deny_unknown_fields)]
pub enum ScenarioConfig {
    Binary(BinaryConfig),
    Health(HealthConfig),
    Voting(VotingConfig),
    Finite(FiniteConfig),
    Investor(InvestorConfig),
}

/// A one-dimensional grid over a numeric parameter, optionally repeated for
/// each value of a second parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub parameter: String,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<Series>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Series {
    pub parameter: String,
    pub values: Vec<f64>,
}

impl Sweep {
    pub fn grid(&self) -> Vec<f64> {
        match self.steps {
            0 => Vec::new(),
            1 => vec![self.from],
            n => (0..n)
                .map(|i| self.from + (self.to - self.from) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

/// Payoffs `(u(0,θ̲), u(0,θ̄), u(1,θ̲), u(1,θ̄))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinaryConfig {
    pub payoffs: [f64; 4],
    pub rho: f64,
    pub mu0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HealthConfig {
    pub sigma: f64,
    pub c: f64,
    pub alpha: f64,
    pub theta_low: f64,
    pub theta_high: f64,
    pub rho: f64,
    pub mu0: f64,
    /// Number of posterior grid points in the belief curve.
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VotingConfig {
    pub betas: Vec<f64>,
    pub rho: f64,
    pub mu0: f64,
    /// Public posterior at which individual beliefs and votes are reported.
    pub mu_eval: f64,
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteConfig {
    /// Two rows, one per action, of payoffs per state.
    pub payoffs: Vec<Vec<f64>>,
    pub rho: f64,
    pub prior: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_resolution: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum PriorSpec {
    Uniform { low: f64, high: f64 },
    TruncatedNormal { mean: f64, sd: f64, low: f64, high: f64 },
    PiecewiseLinear { knots: Vec<[f64; 2]> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvestorConfig {
    pub prior: PriorSpec,
    pub rho: f64,
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
}

impl ScenarioConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioConfig::Binary(_) => "binary",
            ScenarioConfig::Health(_) => "health",
            ScenarioConfig::Voting(_) => "voting",
            ScenarioConfig::Finite(_) => "finite",
            ScenarioConfig::Investor(_) => "investor",
        }
    }

    pub fn sweep(&self) -> Option<&Sweep> {
        match self {
            ScenarioConfig::Binary(c) => c.sweep.as_ref(),
            ScenarioConfig::Health(c) => c.sweep.as_ref(),
            ScenarioConfig::Voting(c) => c.sweep.as_ref(),
            ScenarioConfig::Finite(c) => c.sweep.as_ref(),
            ScenarioConfig::Investor(c) => c.sweep.as_ref(),
        }
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Default configuration for a scenario name.
    pub fn default_for(scenario: &str) -> CliResult<Self> {
        let preset = match scenario {
            "binary" => "binary-fig6a",
            "health" => "health-fig3",
            "voting" => "voting-fig7",
            "finite" => "ternary",
            "investor" => "investor-demo",
            other => return Err(CliError::Config(format!("unknown scenario `{other}`"))),
        };
        let mut config = crate::presets::preset(preset)?;
        config.set_json("sweep", Value::Null)?;
        Ok(config)
    }

    fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }

    fn from_value(v: Value) -> CliResult<Self> {
        Ok(serde_json::from_value(v)?)
    }

    /// Replaces (or, with `null`, removes) the top-level parameter `key`.
    pub fn set_json(&mut self, key: &str, value: Value) -> CliResult<()> {
        let mut v = self.to_value();
        let params = parameters_mut(&mut v);
        if value.is_null() {
            params.remove(key);
        } else {
            params.insert(key.to_string(), value);
        }
        *self = ScenarioConfig::from_value(v)?;
        Ok(())
    }

    /// Sets a numeric top-level parameter, as used by sweeps.
    pub fn set_number(&mut self, key: &str, x: f64) -> CliResult<()> {
        let v = self.to_value();
        match v["parameters"].get(key) {
            Some(Value::Number(_)) => {}
            Some(_) => {
                return Err(CliError::Config(format!("parameter `{key}` is not a number and cannot be swept")))
            }
            None => {
                return Err(CliError::Config(format!(
                    "scenario `{}` has no parameter `{key}`",
                    self.name()
                )))
            }
        }
        let number = serde_json::Number::from_f64(x)
            .ok_or_else(|| CliError::Config(format!("sweep value {x} is not finite")))?;
        self.set_json(key, Value::Number(number))
    }

    /// Applies a `key=value` override; the value is parsed as JSON, falling
    /// back to a plain string.
    pub fn apply_override(&mut self, assignment: &str) -> CliResult<()> {
        let (key, raw) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("override `{assignment}` is not key=value")))?;
        let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
        let key = key.trim();
        if !parameters_mut(&mut self.to_value()).contains_key(key) && !self.optional_key(key) {
            return Err(CliError::Config(format!(
                "scenario `{}` has no parameter `{key}`",
                self.name()
            )));
        }
        self.set_json(key, value)
    }

    fn optional_key(&self, key: &str) -> bool {
        key == "sweep" || (matches!(self, ScenarioConfig::Finite(_)) && key == "oracle_resolution")
    }

    /// Same scenario with the sweep removed.
    pub fn without_sweep(&self) -> Self {
        let mut c = self.clone();
        match &mut c {
            ScenarioConfig::Binary(p) => p.sweep = None,
            ScenarioConfig::Health(p) => p.sweep = None,
            ScenarioConfig::Voting(p) => p.sweep = None,
            ScenarioConfig::Finite(p) => p.sweep = None,
            ScenarioConfig::Investor(p) => p.sweep = None,
        }
        c
    }
}

fn parameters_mut(v: &mut Value) -> &mut Map<String, Value> {
    v.get_mut("parameters")
        .and_then(Value::as_object_mut)
        .expect("every scenario serializes a parameter object")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_idempotent() {
        for name in crate::presets::PRESETS {
            let c = crate::presets::preset(name).unwrap();
            let text = c.to_json();
            let back = ScenarioConfig::from_json(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"scenario":"binary","parameters":{"payoffs":[3,-1,1,4],"rho":1,"mu0":0.2,"bogus":1}}"#;
        assert!(matches!(ScenarioConfig::from_json(text), Err(CliError::Config(_))));
        let text = r#"{"scenario":"binary","parameters":{"payoffs":[3,-1,1,4],"rho":1,"mu0":0.2},"extra":0}"#;
        assert!(ScenarioConfig::from_json(text).is_err());
        let text = r#"{"scenario":"poker","parameters":{}}"#;
        assert!(ScenarioConfig::from_json(text).is_err());
    }

    #[test]
    fn overrides() {
        let mut c = ScenarioConfig::default_for("binary").unwrap();
        c.apply_override("rho=2.5").unwrap();
        c.apply_override("payoffs=[4,1,-1,3]").unwrap();
        match &c {
            ScenarioConfig::Binary(b) => {
                assert_eq!(b.rho, 2.5);
                assert_eq!(b.payoffs, [4.0, 1.0, -1.0, 3.0]);
            }
            other => panic!("{other:?}"),
        }
        assert!(c.apply_override("sigma=2").is_err());
        assert!(c.apply_override("rho").is_err());
        assert!(c.apply_override("rho=\"fast\"").is_err());
        assert!(c.set_number("payoffs", 1.0).is_err());
        assert!(c.set_number("nothing", 1.0).is_err());
    }

    #[test]
    fn sweep_grid() {
        let s = Sweep { parameter: "rho".into(), from: 1.0, to: 2.0, steps: 5, series: None };
        assert_eq!(s.grid(), vec![1.0, 1.25, 1.5, 1.75, 2.0]);
        let one = Sweep { steps: 1, ..s.clone() };
        assert_eq!(one.grid(), vec![1.0]);
    }
}
