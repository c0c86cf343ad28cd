//! Structured verification reports and their JSON form.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, parse_rational, to_f64, Q};

/// A report value: exact rational (serialized as "p/q") or float.
#[derive(Clone, Debug, PartialEq)]
pub enum Num {
    Exact(Q),
    Float(f64),
}

impl Num {
    pub fn to_f64(&self) -> f64 {
        match self {
            Num::Exact(v) => to_f64(v),
            Num::Float(v) => *v,
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Num::Exact(v) if v.is_zero())
    }
}

impl From<Q> for Num {
    fn from(v: Q) -> Self {
        Num::Exact(v)
    }
}

impl From<f64> for Num {
    fn from(v: f64) -> Self {
        Num::Float(v)
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Exact(v) => f.write_str(&format_rational(v)),
            Num::Float(v) => write!(f, "{v:e}"),
        }
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Num::Exact(v) => s.serialize_str(&format_rational(v)),
            Num::Float(v) if v.is_finite() => s.serialize_f64(*v),
            Num::Float(v) => s.serialize_str(&v.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string or a number")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Num, E> {
                if let Ok(q) = parse_rational(v) {
                    return Ok(Num::Exact(q));
                }
                v.parse::<f64>().map(Num::Float).map_err(E::custom)
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Num, E> {
                Ok(Num::Float(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Num, E> {
                Ok(Num::Float(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Num, E> {
                Ok(Num::Float(v as f64))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Case {
    /// Sub-check name, used when reports are merged.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub lhs: Option<Num>,
    pub rhs: Option<Num>,
    pub residual: Option<Num>,
    /// Residuals at each truncation level, for truncated checks.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub levels: Vec<f64>,
    pub pass: bool,
}

impl Case {
    /// An exact comparison: passes iff lhs − rhs is the rational zero.
    pub fn exact(lhs: Q, rhs: Q) -> Self {
        let residual = &lhs - &rhs;
        Case {
            pass: residual.is_zero(),
            lhs: Some(Num::Exact(lhs)),
            rhs: Some(Num::Exact(rhs)),
            residual: Some(Num::Exact(residual)),
            ..Case::default()
        }
    }

    pub fn with_m(mut self, m: impl ToString) -> Self {
        self.m = Some(m.to_string());
        self
    }

    pub fn with_n(mut self, n: impl ToString) -> Self {
        self.n = Some(n.to_string());
        self
    }

    pub fn with_x(mut self, x: impl ToString) -> Self {
        self.x = Some(x.to_string());
        self
    }

    pub fn with_detail(mut self, d: impl ToString) -> Self {
        self.detail = Some(d.to_string());
        self
    }

    fn residual_abs(&self) -> f64 {
        self.residual.as_ref().map(Num::abs_f64).unwrap_or(0.0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_estimate: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub max_residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub truncation: Truncation,
    pub cases: Vec<Case>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign_convention: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical: Option<bool>,
}

impl VerificationReport {
    pub fn new(identity: &str) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            ..Default::default()
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn push(&mut self, case: Case) {
        self.cases.push(case);
    }

    /// Recomputes the summary from the cases.
    pub fn finish(mut self) -> Self {
        self.summary = Summary {
            total: self.cases.len(),
            passed: self.cases.iter().filter(|c| c.pass).count(),
            max_residual: self
                .cases
                .iter()
                .map(Case::residual_abs)
                .fold(0.0, f64::max),
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    /// Appends another report's cases, tagging each with its identity.
    pub fn absorb(&mut self, other: VerificationReport) {
        for mut c in other.cases {
            if c.check.is_none() {
                c.check = Some(other.identity.clone());
            }
            self.cases.push(c);
        }
        if let Some(t) = other.truncation.tail_estimate {
            let cur = self.truncation.tail_estimate.unwrap_or(0.0);
            self.truncation.tail_estimate = Some(cur.max(t));
        }
        if other.sign_convention.is_some() {
            self.sign_convention = other.sign_convention;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

/// |a − b|, relative to |b| when b is nonzero.
pub fn relative_gap(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        (a - b).abs()
    } else {
        ((a - b) / b).abs()
    }
}
