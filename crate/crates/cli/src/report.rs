use serde_json::{json, Value};
use tworank::Error;

pub type Outcome = Result<Value, Error>;

/// The JSON document every command emits.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub seed: u64,
    pub trials: Option<u64>,
    pub guards_hit: Vec<String>,
    pub error: Option<Value>,
    pub summary: String,
}

impl Report {
    pub fn new(seed: u64) -> Self {
        Self {
            command: String::new(),
            inputs: json!({}),
            result: Value::Null,
            seed,
            trials: None,
            guards_hit: Vec::new(),
            error: None,
            summary: String::new(),
        }
    }

    /// Records the outcome and returns the process exit code.
    pub fn finish(&mut self, outcome: Outcome) -> u8 {
        match outcome {
            Ok(v) => {
                self.result = v;
                if self.guards_hit.is_empty() {
                    0
                } else {
                    3
                }
            }
            Err(e) => {
                if let Error::GuardExceeded { guard, .. } = &e {
                    self.guards_hit.push(guard.to_string());
                }
                self.summary = format!("{}: {e}", self.command);
                let code = exit_code(&e);
                self.error = Some(error_object(&e));
                code
            }
        }
    }

    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "provenance": {
                "seed": self.seed,
                "trials": self.trials,
                "guards_hit": self.guards_hit,
            },
            "version": env!("CARGO_PKG_VERSION"),
        });
        if let Some(e) = &self.error {
            v["error"] = e.clone();
        }
        v
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> &str {
        &self.summary
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::GuardExceeded { .. } => 3,
        Error::MalformedJson(_) => 65,
        Error::Io(_) => 66,
        _ => 2,
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::LengthMismatch { .. } => "length_mismatch",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::GuardExceeded { .. } => "guard_exceeded",
        Error::InvalidForm(_) => "invalid_form",
        Error::InvalidTable(_) => "invalid_table",
        Error::InvalidElement(_) => "invalid_element",
        Error::InconsistentCharacter(_) => "inconsistent_character",
        Error::NotElementaryAbelian(_) => "not_elementary_abelian",
        Error::NonSquareSystem { .. } => "non_square_system",
        Error::DependentVectors(_) => "dependent_vectors",
        Error::NotInvertible(_) => "not_invertible",
        Error::InvalidPolynomial(_) => "invalid_polynomial",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::MalformedJson(_) => "malformed_json",
        Error::Io(_) => "io",
        Error::Schema(_) => "schema",
        Error::Internal(_) => "internal",
    }
}

pub fn error_object(e: &Error) -> Value {
    let mut v = json!({ "kind": kind(e), "message": e.to_string() });
    match e {
        Error::Schema(fields) => v["fields"] = json!(fields),
        Error::GuardExceeded {
            guard,
            limit,
            value,
        } => v["guard"] = json!({ "name": guard, "limit": limit, "value": value }),
        _ => {}
    }
    v
}
