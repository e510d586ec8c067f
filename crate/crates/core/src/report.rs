//! Machine-readable outcome of a verification run.

use serde_json::{json, Map, Value};

/// One failed instance of an identity check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Failure {
    /// Human-readable description of the inputs (state, tableau, event, ...).
    pub inputs: String,
    /// Canonical rendering of the left-hand side.
    pub lhs: String,
    /// Canonical rendering of the right-hand side.
    pub rhs: String,
}

/// Outcome of checking one identity over a family of instances.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Report {
    /// Which identity was checked.
    pub identity: String,
    /// How many instances were checked.
    pub instances: u64,
    /// Instances where the two sides differed (empty on success).
    pub failures: Vec<Failure>,
    /// Free-form remarks (observations that are reported, not asserted).
    pub notes: Vec<String>,
    /// Optional structured extras, merged into the JSON object.
    pub extra: Option<Value>,
}

impl Report {
    pub fn new(identity: impl Into<String>) -> Report {
        Report {
            identity: identity.into(),
            instances: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            extra: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one checked instance; a `None` means the sides agreed.
    pub fn record(&mut self, failure: Option<Failure>) {
        self.instances += 1;
        if let Some(f) = failure {
            self.failures.push(f);
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("identity".into(), json!(self.identity));
        obj.insert("instances".into(), json!(self.instances));
        obj.insert(
            "failures".into(),
            Value::Array(
                self.failures
                    .iter()
                    .map(|f| {
                        json!({
                            "inputs": f.inputs,
                            "lhs": f.lhs,
                            "rhs": f.rhs,
                        })
                    })
                    .collect(),
            ),
        );
        if !self.notes.is_empty() {
            obj.insert("notes".into(), json!(self.notes));
        }
        if let Some(Value::Object(extra)) = &self.extra {
            for (k, v) in extra {
                obj.insert(k.clone(), v.clone());
            }
        }
        Value::Object(obj)
    }
}
