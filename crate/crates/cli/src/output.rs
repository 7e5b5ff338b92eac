use std::fmt;
use std::str::FromStr;

use rbpa_core::{BigInteger, BigRational, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    /// OEIS b-file: `n value` per line, integers only.
    Bfile,
}

/// One sequence term, integral or not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Int(BigInteger),
    Rational(BigRational),
}

impl From<BigInteger> for Term {
    fn from(v: BigInteger) -> Self {
        Term::Int(v)
    }
}

impl From<BigRational> for Term {
    fn from(v: BigRational) -> Self {
        if v.is_integer() {
            Term::Int(v.to_integer())
        } else {
            Term::Rational(v)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Int(v) => write!(f, "{v}"),
            Term::Rational(v) => write!(f, "{v}"),
        }
    }
}

/// Renders terms `0..` in the chosen format. Rational terms are refused by
/// the b-file format.
pub fn render(terms: &[Term], format: OutputFormat) -> Result<String, Error> {
    match format {
        OutputFormat::Bfile => {
            let mut out = String::new();
            for (n, t) in terms.iter().enumerate() {
                match t {
                    Term::Int(v) => out.push_str(&format!("{n} {v}\n")),
                    Term::Rational(v) => return Err(Error::NotAnInteger { index: n, value: v.to_string() }),
                }
            }
            Ok(out)
        }
        OutputFormat::Csv => Ok(terms.iter().enumerate().map(|(n, t)| format!("{n},{t}\n")).collect()),
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = terms
                .iter()
                .enumerate()
                .map(|(n, t)| serde_json::json!({ "n": n, "value": t.to_string() }))
                .collect();
            Ok(serde_json::to_string_pretty(&rows).expect("json") + "\n")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfileError(pub String);

impl fmt::Display for BfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed b-file: {}", self.0)
    }
}

impl std::error::Error for BfileError {}

/// Parses b-file text back into values, checking indices run `0, 1, 2, …`.
pub fn parse_bfile(text: &str) -> Result<Vec<BigInteger>, BfileError> {
    let mut values = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(BfileError(format!("line `{line}`")));
        };
        let idx: usize = idx.parse().map_err(|_| BfileError(format!("index `{idx}`")))?;
        if idx != values.len() {
            return Err(BfileError(format!("expected index {}, found {idx}", values.len())));
        }
        values.push(BigInteger::from_str(val).map_err(|_| BfileError(format!("value `{val}`")))?);
    }
    Ok(values)
}
