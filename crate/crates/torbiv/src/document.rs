//! JSON documents for fans and bivector fields.
//!
//! Serialization is canonical: keys sorted, one top-level key per line,
//! values compact, rationals as lowest-terms strings, entries sorted by `(i, j)`.
//! Parsing then re-emitting a canonical document reproduces it byte for byte.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use torbiv_core::{BaseChart, BigRational, Covector, EquivariantBivector, Fan};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub dim: usize,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rays: Vec<Vec<i64>>,
}

/// Entry values may be written as JSON integers or as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawValue {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEntry {
    pub i: usize,
    pub j: usize,
    pub value: RawValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BivectorDocument {
    pub alpha: Vec<i64>,
    /// Maximal cone whose chart the coefficients are written in; the
    /// standard orthant when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_chart: Option<usize>,
    pub entries: Vec<RawEntry>,
}

fn canonical_object(fields: &[(&str, Value)]) -> String {
    let mut out = String::from("{\n");
    for (k, (key, value)) in fields.iter().enumerate() {
        let sep = if k + 1 == fields.len() { "" } else { "," };
        writeln!(out, "  {}: {}{sep}", Value::from(*key), value).expect("write to string");
    }
    out.push_str("}\n");
    out
}

fn json_error(what: &str, e: serde_json::Error) -> CliError {
    CliError::Parse(format!("{what}: line {}, column {}: {e}", e.line(), e.column()))
}

pub fn rational_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl FanDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| json_error("fan document", e))
    }

    pub fn from_fan(f: &Fan, name: Option<String>) -> Self {
        FanDocument {
            dim: f.dim(),
            max_cones: f.max_cones().to_vec(),
            name,
            rays: f.rays().iter().map(|r| r.0.clone()).collect(),
        }
    }

    /// Structural problems (lengths, indices, zero rays) are parse errors;
    /// geometric ones are left to validation.
    pub fn to_fan(&self) -> Result<Fan, CliError> {
        Fan::new(self.dim, self.rays.clone(), self.max_cones.clone())
            .map_err(|e| CliError::Parse(format!("fan document: {e}")))
    }

    pub fn to_canonical_string(&self) -> String {
        let mut fields = vec![
            ("dim", Value::from(self.dim)),
            ("max_cones", serde_json::to_value(&self.max_cones).expect("plain data")),
        ];
        if let Some(name) = &self.name {
            fields.push(("name", Value::from(name.as_str())));
        }
        fields.push(("rays", serde_json::to_value(&self.rays).expect("plain data")));
        canonical_object(&fields)
    }
}

impl BivectorDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| json_error("bivector document", e))
    }

    pub fn from_bivector(bv: &EquivariantBivector, base_chart: Option<usize>) -> Self {
        let n = bv.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let x = &bv.a()[(i, j)];
                if !x.is_zero() {
                    entries.push(RawEntry {
                        i,
                        j,
                        value: RawValue::Text(rational_string(x)),
                    });
                }
            }
        }
        BivectorDocument {
            alpha: bv.alpha().0.clone(),
            base_chart,
            entries,
        }
    }

    pub fn base(&self) -> BaseChart {
        self.base_chart.map_or(BaseChart::Standard, BaseChart::MaxCone)
    }

    pub fn to_bivector(&self) -> Result<EquivariantBivector, CliError> {
        let n = self.alpha.len();
        let mut seen = BTreeSet::new();
        let mut entries = Vec::with_capacity(self.entries.len());
        for (k, e) in self.entries.iter().enumerate() {
            let at = |msg: String| CliError::Parse(format!("bivector document: entries[{k}]: {msg}"));
            if e.i >= e.j {
                return Err(at(format!("need i < j, got ({}, {})", e.i, e.j)));
            }
            if e.j >= n {
                return Err(at(format!("index {} out of range for dimension {n}", e.j)));
            }
            if !seen.insert((e.i, e.j)) {
                return Err(at(format!("duplicate entry ({}, {})", e.i, e.j)));
            }
            let value = match &e.value {
                RawValue::Int(v) => BigRational::from_integer((*v).into()),
                RawValue::Text(s) => parse_rational(s).map_err(at)?,
            };
            entries.push((e.i, e.j, value));
        }
        EquivariantBivector::from_entries(Covector(self.alpha.clone()), &entries)
            .map_err(|e| CliError::Parse(format!("bivector document: {e}")))
    }

    /// Canonical form: the same field with sorted, lowest-terms, nonzero entries.
    pub fn to_canonical_string(&self) -> Result<String, CliError> {
        let canon = BivectorDocument::from_bivector(&self.to_bivector()?, self.base_chart);
        let mut fields = vec![("alpha", serde_json::to_value(&canon.alpha).expect("plain data"))];
        if let Some(k) = canon.base_chart {
            fields.push(("base_chart", Value::from(k)));
        }
        fields.push(("entries", serde_json::to_value(&canon.entries).expect("plain data")));
        Ok(canonical_object(&fields))
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    let bad = || format!("value {s:?} is not an integer or p/q rational");
    if t.is_empty() || t.contains(char::is_whitespace) {
        return Err(bad());
    }
    if let Some((_, d)) = t.split_once('/') {
        if d.trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return Err(format!("value {s:?} has a zero denominator"));
        }
    }
    BigRational::from_str(t).map_err(|_| bad())
}
