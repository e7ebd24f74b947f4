//! Report envelope shared by every front-end command: an operation name,
//! the echoed inputs, a per-item table, summary fields, and the tolerances
//! in force. Field order is insertion order everywhere so that serialized
//! output is deterministic byte-for-byte.

use std::fmt;

use num_complex::Complex64;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::Error;

/// One cell of a report: scalar kinds only, so every renderer (JSON, CSV,
/// aligned text) can handle every cell. Non-finite reals serialize as the
/// strings `"NaN"` / `"Infinity"` / `"-Infinity"` since JSON has no tokens
/// for them.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Real(f64),
    Complex(Complex64),
    Text(String),
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Null => s.serialize_unit(),
            Value::Bool(b) => s.serialize_bool(*b),
            Value::Int(i) => s.serialize_i64(*i),
            Value::Real(x) if x.is_nan() => s.serialize_str("NaN"),
            Value::Real(x) if x.is_infinite() => {
                s.serialize_str(if *x > 0.0 { "Infinity" } else { "-Infinity" })
            }
            Value::Real(x) => s.serialize_f64(*x),
            Value::Complex(z) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("re", &Value::Real(z.re))?;
                m.serialize_entry("im", &Value::Real(z.im))?;
                m.end()
            }
            Value::Text(t) => s.serialize_str(t),
        }
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}
impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}
impl From<usize> for Value {
    fn from(i: usize) -> Self {
        Value::Int(i as i64)
    }
}
impl From<u32> for Value {
    fn from(i: u32) -> Self {
        Value::Int(i as i64)
    }
}
impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}
impl From<Complex64> for Value {
    fn from(z: Complex64) -> Self {
        Value::Complex(z)
    }
}
impl From<&str> for Value {
    fn from(t: &str) -> Self {
        Value::Text(t.to_string())
    }
}
impl From<String> for Value {
    fn from(t: String) -> Self {
        Value::Text(t)
    }
}
impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(o: Option<T>) -> Self {
        o.map_or(Value::Null, Into::into)
    }
}

/// Named fields serialized as a JSON object in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Fields(pub Vec<(String, Value)>);

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

/// The per-item table: a fixed column list and rows of cells in column
/// order. Serializes as an array of objects so each JSON row is
/// self-describing; CSV and text renderers use `columns` for the header.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows.len()))?;
        for row in &self.rows {
            seq.serialize_element(&Fields(
                self.columns.iter().cloned().zip(row.iter().cloned()).collect(),
            ))?;
        }
        seq.end()
    }
}

/// Envelope for every command result.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub op: String,
    pub inputs: Fields,
    pub per_item: Table,
    pub summary: Fields,
    pub tolerances: Fields,
}

impl Report {
    pub fn new(op: &str) -> Self {
        Report {
            op: op.to_string(),
            inputs: Fields::default(),
            per_item: Table::default(),
            summary: Fields::default(),
            tolerances: Fields::default(),
        }
    }

    pub fn input(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.inputs.0.push((name.to_string(), value.into()));
        self
    }

    pub fn tolerance(mut self, name: &str, value: f64) -> Self {
        self.tolerances.0.push((name.to_string(), Value::Real(value)));
        self
    }

    pub fn summarize(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.summary.0.push((name.to_string(), value.into()));
        self
    }

    pub fn columns(mut self, names: &[&str]) -> Self {
        self.per_item.columns = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn row(mut self, cells: Vec<Value>) -> Self {
        assert_eq!(
            cells.len(),
            self.per_item.columns.len(),
            "row width must match the declared columns"
        );
        self.per_item.rows.push(cells);
        self
    }
}

/// Structured error record emitted (with a nonzero exit) when a command
/// fails inside one of the modules.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ErrorRecord {
    pub op: String,
    pub error: ErrorDetail,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ErrorDetail {
    /// Stable variant name, e.g. `"OrderCap"`.
    pub kind: String,
    pub message: String,
}

impl ErrorRecord {
    pub fn new(op: &str, err: &Error) -> Self {
        ErrorRecord {
            op: op.to_string(),
            error: ErrorDetail {
                kind: err.kind().to_string(),
                message: err.to_string(),
            },
        }
    }
}

impl fmt::Display for ErrorRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}] in {}: {}", self.error.kind, self.op, self.error.message)
    }
}
