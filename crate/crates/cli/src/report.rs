//! JSON report shapes. Field order is the serialization order, so output is
//! stable for equal inputs.

use euclid_kernel::dsl::{AssertionRecord, DynEnv, ParseError, RuntimeFailure};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub command: String,
    pub model: String,
    pub results: Vec<T>,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &str, model: &str, results: Vec<T>) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            model: model.to_string(),
            results,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssertionResult {
    pub line: usize,
    pub column: usize,
    pub kind: String,
    pub statement: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl From<&AssertionRecord> for AssertionResult {
    fn from(r: &AssertionRecord) -> Self {
        AssertionResult {
            line: r.pos.line,
            column: r.pos.column,
            kind: r.kind.to_string(),
            statement: r.text.clone(),
            passed: r.passed,
            detail: r.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureReport {
    pub line: usize,
    pub column: usize,
    /// `ParseError`, or the runtime failure kind such as
    /// `NotConstructibleInModel`.
    pub kind: String,
    pub statement: Option<String>,
    pub message: String,
}

impl From<&ParseError> for FailureReport {
    fn from(e: &ParseError) -> Self {
        FailureReport {
            line: e.line,
            column: e.column,
            kind: "ParseError".into(),
            statement: None,
            message: format!("expected {}, found {}", e.expected, e.found),
        }
    }
}

impl From<&RuntimeFailure> for FailureReport {
    fn from(f: &RuntimeFailure) -> Self {
        FailureReport {
            line: f.pos.line,
            column: f.pos.column,
            kind: f.kind.name().into(),
            statement: Some(f.text.clone()),
            message: f.kind.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObjectReport {
    pub name: String,
    pub kind: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub script: String,
    pub model: String,
    /// True iff the script ran to the end and every assertion held.
    pub passed: bool,
    pub assertions: Vec<AssertionResult>,
    pub failure: Option<FailureReport>,
    pub objects: Vec<ObjectReport>,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn from_env(
        script: &str,
        env: &DynEnv,
        failure: Option<&RuntimeFailure>,
        wall_time_ms: u64,
    ) -> Self {
        RunReport {
            script: script.to_string(),
            model: env.model().name().to_string(),
            passed: failure.is_none() && env.all_passed(),
            assertions: env.log().iter().map(AssertionResult::from).collect(),
            failure: failure.map(FailureReport::from),
            objects: env
                .describe()
                .into_iter()
                .map(|(name, kind, value)| ObjectReport {
                    name,
                    kind: kind.to_string(),
                    value,
                })
                .collect(),
            wall_time_ms,
        }
    }
}
