//! Scenarios, parameter schemas and parent resolution.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Deserialize;
use serde_json::Value;

use crate::RunError;

/// Known experiment ids.
pub const EXPERIMENTS: &[&str] = &[
    "axioms",
    "semigroup",
    "kazhdan",
    "v_matrices",
    "theorem69",
    "lemma74",
    "action_suite",
    "fock_suite",
    "dense_image",
];

/// A single run description.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    /// Built-in preset, a document found in `QGWB_PRESET_DIR`, or a window
    /// such as `free(2)`.
    #[serde(default)]
    pub preset: Option<String>,
    /// Path to a structure-constant document.
    #[serde(default)]
    pub document: Option<PathBuf>,
    pub experiment: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub tol_scale: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Float,
    Int,
    FloatList,
    IntList,
    Text,
}

/// Allowed parameters of an experiment.
pub fn schema(experiment: &str) -> Option<&'static [(&'static str, Kind)]> {
    use Kind::*;
    Some(match experiment {
        "axioms" => &[],
        "semigroup" => &[("scale", Float), ("times", FloatList), ("h", Float), ("state_seed", Int)],
        "kazhdan" => &[("corep", Text), ("q", Text)],
        "v_matrices" => &[("weights", FloatList), ("radius", Int), ("l_max", Int)],
        "theorem69" => &[("radius", Int), ("terms", Int), ("eps", Float), ("cap", Int)],
        "lemma74" => &[("radius", Int), ("t", Float), ("l_max", Int)],
        "action_suite" => &[],
        "fock_suite" => &[("depth", Int), ("base_dim", Int), ("cyclic_order", Int)],
        "dense_image" => &[],
        _ => return None,
    })
}

fn kind_matches(kind: Kind, v: &Value) -> bool {
    match kind {
        Kind::Float => v.is_number(),
        Kind::Int => v.is_u64(),
        Kind::Text => v.is_string(),
        Kind::FloatList => v.as_array().is_some_and(|a| a.iter().all(Value::is_number)),
        Kind::IntList => v.as_array().is_some_and(|a| a.iter().all(Value::is_u64)),
    }
}

/// Validated parameters with typed accessors.
#[derive(Debug, Clone, PartialEq)]
pub struct Params(pub BTreeMap<String, Value>);

impl Params {
    pub fn float(&self, key: &str, default: f64) -> f64 {
        self.0.get(key).and_then(Value::as_f64).unwrap_or(default)
    }

    pub fn int(&self, key: &str, default: usize) -> usize {
        self.0.get(key).and_then(Value::as_u64).map(|x| x as usize).unwrap_or(default)
    }

    pub fn floats(&self, key: &str, default: &[f64]) -> Vec<f64> {
        self.0
            .get(key)
            .and_then(Value::as_array)
            .map(|a| a.iter().filter_map(Value::as_f64).collect())
            .unwrap_or_else(|| default.to_vec())
    }

    pub fn text<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.0.get(key).and_then(Value::as_str).unwrap_or(default)
    }
}

impl Scenario {
    /// Checks the experiment id, the parent fields and the parameters
    /// before any computation.
    pub fn validate(&self) -> Result<Params, RunError> {
        let allowed = schema(&self.experiment).ok_or_else(|| {
            RunError::Schema(format!("unknown experiment {:?}; known: {}", self.experiment, EXPERIMENTS.join(", ")))
        })?;
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(RunError::Schema(format!("scenario name {:?} is not a plain file stem", self.name)));
        }
        if self.preset.is_some() && self.document.is_some() {
            return Err(RunError::Schema("give either preset or document, not both".into()));
        }
        for (k, v) in &self.params {
            let kind =
                allowed.iter().find(|(name, _)| name == k).map(|(_, kind)| *kind).ok_or_else(|| {
                    RunError::Schema(format!("experiment {} has no parameter {k:?}", self.experiment))
                })?;
            if !kind_matches(kind, v) {
                return Err(RunError::Schema(format!("parameter {k} must be {kind:?}, got {v}")));
            }
        }
        if let Some(s) = self.tol_scale {
            if !(s > 0.0 && s.is_finite()) {
                return Err(RunError::Schema(format!("tol_scale must be positive, got {s}")));
            }
        }
        Ok(Params(self.params.clone()))
    }

    /// Name of the parent for reports.
    pub fn parent_label(&self, default: &str) -> String {
        match (&self.preset, &self.document) {
            (Some(p), _) => p.clone(),
            (None, Some(d)) => d.display().to_string(),
            (None, None) => default.to_string(),
        }
    }
}

/// Directories from `QGWB_PRESET_DIR`.
pub fn preset_dirs() -> Vec<PathBuf> {
    std::env::var_os("QGWB_PRESET_DIR").map(|v| std::env::split_paths(&v).collect()).unwrap_or_default()
}

/// Parses `k=v`; `v` is read as JSON when possible and as text otherwise.
pub fn parse_param(kv: &str) -> Result<(String, Value), RunError> {
    let (k, v) = kv.split_once('=').ok_or_else(|| RunError::Schema(format!("--param expects k=v, got {kv:?}")))?;
    let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
    Ok((k.trim().to_string(), value))
}

/// Reads a scenario file holding one scenario or an array of them.
pub fn load_batch(text: &str) -> Result<Vec<Scenario>, RunError> {
    let v: Value = serde_json::from_str(text).map_err(|e| RunError::Schema(e.to_string()))?;
    let items = match v {
        Value::Array(a) => a,
        other => vec![other],
    };
    items.into_iter().map(|i| serde_json::from_value(i).map_err(|e| RunError::Schema(e.to_string()))).collect()
}
