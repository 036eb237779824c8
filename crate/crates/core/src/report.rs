//! Verification reports and the substitution/normalization conventions they
//! record.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::series::SeriesMismatch;

/// Convention constants that the identities depend on.
///
/// `link_qpow` and `unlink_qpow` are the `t`-exponents attached to the
/// monomial `x_a x_b` substituted for the new vertex's variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Conventions {
    pub link_qpow: i64,
    pub unlink_qpow: i64,
    pub dt_normalization: String,
}

pub const DT_NORMALIZATION: &str = "Omega = -(q^{1/2} - q^{-1/2}) * Log(A), u = -q^{1/2}";

impl Default for Conventions {
    fn default() -> Self {
        Conventions { link_qpow: 1, unlink_qpow: 0, dt_normalization: DT_NORMALIZATION.to_string() }
    }
}

impl Conventions {
    /// The constants as printed for the source identities: `x_⋄ = x_a x_b`
    /// and `x_★ = q^{-1/2} x_a x_b`. They do not match the series conventions
    /// used here and make the identities fail.
    pub fn printed() -> Self {
        Conventions { link_qpow: 0, unlink_qpow: -1, ..Default::default() }
    }
}

/// Where a mismatch occurred.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Location {
    Degree { degree: Vec<u32>, exponent: Option<i64> },
    Graded { d: Vec<u32>, h: i64, c: Option<u32> },
    Note { what: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub at: Location,
    pub lhs: Value,
    pub rhs: Value,
}

impl Mismatch {
    pub fn dims(d: &[u32], h: i64, c: Option<u32>, lhs: impl Serialize, rhs: impl Serialize) -> Self {
        Mismatch {
            at: Location::Graded { d: d.to_vec(), h, c },
            lhs: serde_json::to_value(lhs).unwrap_or(Value::Null),
            rhs: serde_json::to_value(rhs).unwrap_or(Value::Null),
        }
    }

    pub fn note(what: impl Into<String>, lhs: impl Serialize, rhs: impl Serialize) -> Self {
        Mismatch {
            at: Location::Note { what: what.into() },
            lhs: serde_json::to_value(lhs).unwrap_or(Value::Null),
            rhs: serde_json::to_value(rhs).unwrap_or(Value::Null),
        }
    }
}

impl From<SeriesMismatch> for Mismatch {
    fn from(m: SeriesMismatch) -> Self {
        Mismatch {
            at: Location::Degree { degree: m.degree.0.clone(), exponent: m.exponent },
            lhs: serde_json::to_value(&m.lhs).unwrap_or(Value::Null),
            rhs: serde_json::to_value(&m.rhs).unwrap_or(Value::Null),
        }
    }
}

/// Outcome of one identity check. `pass` holds exactly when `mismatches`
/// is empty; [`VerificationReport::finish`] maintains that.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub parameters: BTreeMap<String, Value>,
    pub pass: bool,
    pub mismatches: Vec<Mismatch>,
    pub conventions: Conventions,
    /// Free-form findings such as calibration outcomes.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
    /// Wall-clock time; left out of JSON unless requested so that output is
    /// reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, conventions: &Conventions) -> Self {
        VerificationReport {
            name: name.into(),
            parameters: BTreeMap::new(),
            pass: true,
            mismatches: Vec::new(),
            conventions: conventions.clone(),
            details: BTreeMap::new(),
            timing_ms: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    pub fn push(&mut self, m: impl Into<Mismatch>) {
        self.mismatches.push(m.into());
        self.pass = false;
    }

    pub fn finish(mut self) -> Self {
        self.pass = self.mismatches.is_empty();
        self
    }
}
