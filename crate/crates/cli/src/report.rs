//! Verification reports and the JSON rendering of witness values.

use gla_core::derivation::GrassmannDerivation;
use gla_core::multilinear::{MultiMap, SkewMap};
use gla_core::schouten::{PolyMultivector, Polynomial};
use gla_core::{ExteriorElement, GlaError, Rational, Scalar};
use serde_json::{json, Value};

/// JSON form of a value appearing in a witness.
pub trait Render {
    fn render(&self) -> Value;
}

impl Render for ExteriorElement {
    fn render(&self) -> Value {
        self.to_json()
    }
}

impl Render for SkewMap {
    fn render(&self) -> Value {
        self.to_json()
    }
}

impl Render for MultiMap {
    /// Keys `"i,j->r"` over 1-based ordered input tuples.
    fn render(&self) -> Value {
        let terms: serde_json::Map<String, Value> = self
            .terms()
            .iter()
            .map(|((inputs, o), c)| {
                let idx: Vec<String> = inputs.iter().map(|i| (i + 1).to_string()).collect();
                (format!("{}->{}", idx.join(","), o + 1), Value::String(c.to_string()))
            })
            .collect();
        json!({ "arity": self.arity(), "terms": terms })
    }
}

impl Render for GrassmannDerivation {
    fn render(&self) -> Value {
        self.to_json()
    }
}

impl Render for PolyMultivector {
    fn render(&self) -> Value {
        self.to_json()
    }
}

impl Render for Polynomial {
    fn render(&self) -> Value {
        self.to_json()
    }
}

impl Render for Scalar {
    fn render(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl Render for Rational {
    fn render(&self) -> Value {
        Value::String(Scalar::Rat(self.clone()).to_string())
    }
}

impl<T: Render> Render for [T] {
    fn render(&self) -> Value {
        Value::Array(self.iter().map(Render::render).collect())
    }
}

impl<T: Render> Render for Vec<T> {
    fn render(&self) -> Value {
        self.as_slice().render()
    }
}

impl<T: Render> Render for Option<T> {
    fn render(&self) -> Value {
        self.as_ref().map_or(Value::Null, Render::render)
    }
}

impl Render for bool {
    fn render(&self) -> Value {
        Value::Bool(*self)
    }
}

impl Render for usize {
    fn render(&self) -> Value {
        json!(self)
    }
}

/// A concrete counterexample: the offending inputs and both sides of the identity.
#[derive(Clone, Debug)]
pub struct Witness {
    pub inputs: Value,
    pub lhs: Value,
    pub rhs: Value,
}

impl From<GlaError> for Witness {
    fn from(e: GlaError) -> Self {
        Witness { inputs: Value::Null, lhs: json!({ "error": e.to_string() }), rhs: Value::Null }
    }
}

pub type Outcome = Result<Status, Witness>;

#[derive(Clone, Debug)]
pub enum Status {
    Pass { instances: usize },
    Skip { reason: String },
}

pub fn pass(instances: usize) -> Outcome {
    Ok(Status::Pass { instances })
}

pub fn skip(reason: impl Into<String>) -> Outcome {
    Ok(Status::Skip { reason: reason.into() })
}

/// Fails with a witness unless `lhs == rhs`.
pub fn expect_eq<T: PartialEq + Render + ?Sized>(inputs: impl FnOnce() -> Value, lhs: &T, rhs: &T) -> Result<(), Witness> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Witness { inputs: inputs(), lhs: lhs.render(), rhs: rhs.render() })
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: String,
    pub reference: String,
    pub outcome: Outcome,
}

impl CheckResult {
    pub fn failed(&self) -> bool {
        self.outcome.is_err()
    }

    fn to_json(&self) -> Value {
        let mut v = json!({ "id": self.id, "reference": self.reference });
        let obj = v.as_object_mut().expect("object");
        match &self.outcome {
            Ok(Status::Pass { instances }) => {
                obj.insert("status".into(), json!("pass"));
                obj.insert("instances".into(), json!(instances));
            }
            Ok(Status::Skip { reason }) => {
                obj.insert("status".into(), json!("skip"));
                obj.insert("reason".into(), json!(reason));
            }
            Err(w) => {
                obj.insert("status".into(), json!("fail"));
                obj.insert("witness".into(), json!({ "inputs": w.inputs, "lhs": w.lhs, "rhs": w.rhs }));
            }
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub suite: String,
    pub algebra: Option<String>,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub duration_ms: Option<u128>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.failed())
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "suite": self.suite,
            "algebra": self.algebra,
            "seed": self.seed,
            "passed": self.passed(),
            "checks": self.checks.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
        });
        if let Some(ms) = self.duration_ms {
            v["duration_ms"] = json!(ms);
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {}", self.suite);
        if let Some(a) = &self.algebra {
            s.push_str(&format!(" on {a}"));
        }
        s.push_str(&format!(" (seed {})\n", self.seed));
        for c in &self.checks {
            match &c.outcome {
                Ok(Status::Pass { instances }) => {
                    s.push_str(&format!("PASS {} [{}] {} instances\n", c.id, c.reference, instances))
                }
                Ok(Status::Skip { reason }) => s.push_str(&format!("SKIP {} [{}] {}\n", c.id, c.reference, reason)),
                Err(w) => {
                    s.push_str(&format!("FAIL {} [{}]\n", c.id, c.reference));
                    s.push_str(&format!("  inputs: {}\n  lhs: {}\n  rhs: {}\n", w.inputs, w.lhs, w.rhs));
                }
            }
        }
        let failed = self.checks.iter().filter(|c| c.failed()).count();
        s.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        if let Some(ms) = self.duration_ms {
            s.push_str(&format!("duration {ms} ms\n"));
        }
        s
    }
}
