//! Experiment reports as JSON and CSV.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// One stage (or row) of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageRow {
    pub l: usize,
    pub gamma: String,
    pub value: f64,
    pub bound: f64,
    pub residuals: BTreeMap<String, f64>,
}

/// `{experiment, parent_id, parameters, per_stage}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub parent_id: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub per_stage: Vec<StageRow>,
}

impl ExperimentReport {
    pub fn new(experiment: &str, parent_id: &str) -> Self {
        Self {
            experiment: experiment.into(),
            parent_id: parent_id.into(),
            parameters: BTreeMap::new(),
            per_stage: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(key.into(), serde_json::to_value(value).unwrap_or(serde_json::Value::Null));
        self
    }

    pub fn push(&mut self, l: usize, gamma: impl Into<String>, value: f64, bound: f64, residuals: &[(&str, f64)]) {
        self.per_stage.push(StageRow {
            l,
            gamma: gamma.into(),
            value,
            bound,
            residuals: residuals.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    /// Columns `l, gamma, value, bound` followed by every residual name.
    pub fn to_csv(&self) -> String {
        let mut names: Vec<&String> = self.per_stage.iter().flat_map(|r| r.residuals.keys()).collect();
        names.sort();
        names.dedup();
        let mut out = String::from("l,gamma,value,bound");
        for n in &names {
            out.push(',');
            out.push_str(n);
        }
        out.push('\n');
        for r in &self.per_stage {
            out.push_str(&format!("{},{},{:e},{:e}", r.l, csv_field(&r.gamma), r.value, r.bound));
            for n in &names {
                out.push(',');
                if let Some(v) = r.residuals.get(*n) {
                    out.push_str(&format!("{v:e}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_csv_round_trip() {
        let mut r = ExperimentReport::new("lemma74", "free(2) r=6").param("t", 1.0);
        r.push(1, "b", 0.5, 0.25, &[("hermitian", 1e-12)]);
        r.push(2, "a,b", 0.75, 0.5, &[]);
        let back: ExperimentReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "l,gamma,value,bound,hermitian");
        assert!(lines[2].starts_with("2,\"a,b\","));
        assert!(lines[2].ends_with(','));
    }
}
