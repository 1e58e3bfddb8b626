//! Claim records and reports, shared by the CLI and the C interface.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::ApproxComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: String,
    pub im: String,
    pub err: String,
}

/// A computed or expected value. Floating-point quantities travel as
/// decimal strings so that JSON round-trips exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
// Untagged variants are tried in order, and a derived struct also accepts a
// sequence, so `List` must precede `Complex`.
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Text(String),
    List(Vec<Value>),
    Complex(ComplexValue),
}

impl Value {
    pub fn complex(z: &ApproxComplex, digits: usize) -> Value {
        let (re, im, err) = z.format(digits);
        Value::Complex(ComplexValue { re, im, err })
    }

    pub fn float(x: f64) -> Value {
        Value::Text(format!("{x:e}"))
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Int(n)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as i64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(v: Vec<T>) -> Self {
        Value::List(v.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Complex(c) => write!(f, "({}) + ({})i ± {}", c.re, c.im, c.err),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::Text(s) => f.write_str(s),
            Value::List(v) => {
                f.write_str("[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    /// Short name of the mathematical statement checked.
    pub anchor: String,
    pub status: Status,
    pub computed: Value,
    pub expected: Value,
    pub tol: Option<String>,
    pub ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Claim {
    /// Passes iff `computed == expected`.
    pub fn exact(id: &str, anchor: &str, computed: impl Into<Value>, expected: impl Into<Value>, start: Instant) -> Claim {
        let (computed, expected) = (computed.into(), expected.into());
        let status = if computed == expected { Status::Pass } else { Status::Fail };
        Claim::new(id, anchor, status, computed, expected, None, start)
    }

    pub fn judged(
        id: &str,
        anchor: &str,
        pass: bool,
        computed: impl Into<Value>,
        expected: impl Into<Value>,
        tol: Option<String>,
        start: Instant,
    ) -> Claim {
        let status = if pass { Status::Pass } else { Status::Fail };
        Claim::new(id, anchor, status, computed.into(), expected.into(), tol, start)
    }

    pub fn new(
        id: &str,
        anchor: &str,
        status: Status,
        computed: Value,
        expected: Value,
        tol: Option<String>,
        start: Instant,
    ) -> Claim {
        Claim {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status,
            computed,
            expected,
            tol,
            ms: start.elapsed().as_millis() as u64,
            note: None,
        }
    }

    pub fn inconclusive(id: &str, anchor: &str, why: String, expected: impl Into<Value>, start: Instant) -> Claim {
        Claim::new(id, anchor, Status::Inconclusive, Value::Text(why), expected.into(), None, start)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Claim {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            params: BTreeMap::new(),
            claims: Vec::new(),
        }
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Report {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    /// 1 if any claim failed, else 3 if any is inconclusive, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.claims.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.claims.iter().any(|c| c.status == Status::Inconclusive) {
            3
        } else {
            0
        }
    }

    pub fn count(&self, s: Status) -> usize {
        self.claims.iter().filter(|c| c.status == s).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.command)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        writeln!(f)?;
        for c in &self.claims {
            writeln!(f, "[{}] {} ({} ms)", c.status, c.id, c.ms)?;
            writeln!(f, "    computed: {}", c.computed)?;
            writeln!(f, "    expected: {}", c.expected)?;
            if let Some(t) = &c.tol {
                writeln!(f, "    tol: {t}")?;
            }
            if let Some(n) = &c.note {
                writeln!(f, "    note: {n}")?;
            }
        }
        write!(
            f,
            "{} pass, {} fail, {} inconclusive",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive)
        )
    }
}
