//! Reports: every number is a check carrying its tolerance and verdict.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

/// How a check compares its value with the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `|value| ≤ tolerance`.
    Residual,
    /// `|value − target| ≤ tolerance`.
    Near,
    /// `value ≥ target − tolerance`.
    AtLeast,
    /// `value ≤ target + tolerance`.
    AtMost,
    /// `value > target + tolerance`.
    Above,
}

fn number<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else if x.is_nan() {
        s.serialize_str("nan")
    } else if *x > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

fn text(x: f64) -> String {
    if x.is_finite() {
        format!("{x:e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub section: String,
    pub name: String,
    #[serde(serialize_with = "number")]
    pub value: f64,
    pub relation: Relation,
    #[serde(serialize_with = "number")]
    pub target: f64,
    #[serde(serialize_with = "number")]
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(section: &str, name: &str, value: f64, relation: Relation, target: f64, tolerance: f64) -> Self {
        let pass = match relation {
            Relation::Residual => value.abs() <= tolerance,
            Relation::Near => (value - target).abs() <= tolerance || value == target,
            Relation::AtLeast => value >= target - tolerance,
            Relation::AtMost => value <= target + tolerance,
            Relation::Above => value > target + tolerance,
        };
        Self { section: section.into(), name: name.into(), value, relation, target, tolerance, pass }
    }
}

/// Collects checks with tolerances scaled by `--tol-scale`.
#[derive(Debug, Clone)]
pub struct Checks {
    scale: f64,
    section: String,
    pub items: Vec<Check>,
}

impl Checks {
    pub fn new(scale: f64) -> Self {
        Self { scale, section: String::new(), items: Vec::new() }
    }

    pub fn section(&mut self, name: impl Into<String>) {
        self.section = name.into();
    }

    fn push(&mut self, name: &str, value: f64, relation: Relation, target: f64, tol: f64) -> bool {
        let c = Check::new(&self.section, name, value, relation, target, tol * self.scale);
        let pass = c.pass;
        self.items.push(c);
        pass
    }

    /// `|value| ≤ tol`.
    pub fn residual(&mut self, name: &str, value: f64, tol: f64) -> bool {
        self.push(name, value, Relation::Residual, 0.0, tol)
    }

    /// `|value − target| ≤ tol`.
    pub fn near(&mut self, name: &str, value: f64, target: f64, tol: f64) -> bool {
        self.push(name, value, Relation::Near, target, tol)
    }

    /// `value ≥ bound − tol`.
    pub fn at_least(&mut self, name: &str, value: f64, bound: f64, tol: f64) -> bool {
        self.push(name, value, Relation::AtLeast, bound, tol)
    }

    /// `value ≤ bound + tol`.
    pub fn at_most(&mut self, name: &str, value: f64, bound: f64, tol: f64) -> bool {
        self.push(name, value, Relation::AtMost, bound, tol)
    }

    /// `value > bound + tol`.
    pub fn above(&mut self, name: &str, value: f64, bound: f64, tol: f64) -> bool {
        self.push(name, value, Relation::Above, bound, tol)
    }

    /// A boolean verdict, recorded as `1`/`0` against its expected value.
    pub fn flag(&mut self, name: &str, value: bool, expected: bool) -> bool {
        let to = |b: bool| if b { 1.0 } else { 0.0 };
        self.items.push(Check::new(&self.section, name, to(value), Relation::Near, to(expected), 0.0));
        value == expected
    }

    /// An exact count against its expected value.
    pub fn count(&mut self, name: &str, value: usize, expected: usize) -> bool {
        self.items.push(Check::new(&self.section, name, value as f64, Relation::Near, expected as f64, 0.0));
        value == expected
    }
}

/// The primary report; contains no wall-clock data.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub name: String,
    pub experiment: String,
    pub parent: String,
    pub seed: u64,
    #[serde(serialize_with = "number")]
    pub tol_scale: f64,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub error: Option<String>,
    pub exit_code: i32,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }

    /// One row per check.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("section,name,value,relation,target,tolerance,pass\n");
        for c in &self.checks {
            let rel =
                serde_json::to_value(c.relation).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                field(&c.section),
                field(&c.name),
                text(c.value),
                rel,
                text(c.target),
                text(c.tolerance),
                c.pass
            ));
        }
        out
    }
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Sidecar with versions and timings.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub name: String,
    pub tool: &'static str,
    pub version: &'static str,
    pub started_unix_ms: u128,
    pub elapsed_ms: f64,
    pub exit_code: i32,
    pub checks: usize,
    pub failed: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        assert!(Check::new("", "", 1e-10, Relation::Residual, 0.0, 1e-9).pass);
        assert!(!Check::new("", "", -1e-8, Relation::Residual, 0.0, 1e-9).pass);
        assert!(Check::new("", "", 2.0, Relation::Near, 2.0, 0.0).pass);
        assert!(Check::new("", "", f64::INFINITY, Relation::Above, 0.0, 1e-8).pass);
        assert!(!Check::new("", "", f64::NAN, Relation::AtLeast, 0.0, 1.0).pass);
    }

    #[test]
    fn tolerance_is_scaled() {
        let mut c = Checks::new(10.0);
        assert!(c.residual("r", 5e-9, 1e-9));
        assert_eq!(c.items[0].tolerance, 1e-8);
    }

    #[test]
    fn non_finite_values_serialise_as_text() {
        let c = Check::new("s", "gap", f64::INFINITY, Relation::Above, 0.0, 0.0);
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["value"], "inf");
        assert!(Report {
            name: "x".into(),
            experiment: "axioms".into(),
            parent: "p".into(),
            seed: 0,
            tol_scale: 1.0,
            parameters: BTreeMap::new(),
            checks: vec![c],
            passed: true,
            error: None,
            exit_code: 0
        }
        .to_csv()
        .contains("s,gap,inf,above,0e0,0e0,true"));
    }
}
