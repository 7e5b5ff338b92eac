use std::collections::BTreeMap;
use std::fmt::Display;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

/// Outcome of one identity at one parameter binding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub note: Option<String>,
    #[serde(skip)]
    pub alternative: Option<AlternativeOutcome>,
}

/// Result of re-checking a diagnostic binding under a second reading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternativeOutcome {
    pub reading: String,
    pub pass: bool,
}

/// Per-identity tally inside a [`Summary`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityTally {
    pub id: String,
    pub title: String,
    pub diagnostic: bool,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub profile: String,
    pub identities: Vec<IdentityTally>,
    pub total_checks: usize,
    pub strict_failures: usize,
    pub diagnostic_failures: usize,
    /// Every failing binding, strict and diagnostic.
    pub failures: Vec<CheckReport>,
}

impl Summary {
    /// True when no non-diagnostic check failed.
    pub fn ok(&self) -> bool {
        self.strict_failures == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

pub fn reports_to_json(reports: &[CheckReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

/// One line per report: `id,params,lhs,rhs,pass,note` with params as
/// `key=value` pairs joined by `;`.
pub fn reports_to_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from("id,params,lhs,rhs,pass,note\n");
    for r in reports {
        let params: Vec<String> = r
            .params
            .iter()
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect();
        let note = r.note.as_deref().unwrap_or("");
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.id,
            csv_field(&params.join(";")),
            csv_field(&r.lhs),
            csv_field(&r.rhs),
            r.pass,
            csv_field(note)
        ));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub(crate) fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}
