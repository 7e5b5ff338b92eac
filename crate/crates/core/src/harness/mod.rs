//! Executable registry of identities. Each entry pairs two independent
//! computations of the same quantity over a finite parameter domain and
//! reports, per binding, both sides and whether they agree exactly.

mod identities;
pub mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly_bernoulli::MultiIndex;
pub use report::{AlternativeOutcome, CheckReport, IdentityTally, Summary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    /// Small domains: `n ≤ 8`, indices up to 2.
    Quick,
    /// Wider domains: `n ≤ 15`, indices up to 4.
    Full,
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        })
    }
}

impl std::str::FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(format!("unknown profile `{other}`")),
        }
    }
}

/// An exact value on one side of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(BigInt),
    Rational(BigRational),
    /// Last decimal digits of a run of sequence terms.
    Digits(Vec<u8>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Rational(v) => write!(f, "{v}"),
            Value::Digits(d) => {
                let s: Vec<String> = d.iter().map(u8::to_string).collect();
                f.write_str(&s.join(""))
            }
        }
    }
}

impl From<BigInt> for Value {
    fn from(v: BigInt) -> Self {
        Value::Int(v)
    }
}

impl From<BigRational> for Value {
    fn from(v: BigRational) -> Self {
        if v.is_integer() {
            Value::Int(v.to_integer())
        } else {
            Value::Rational(v)
        }
    }
}

/// Both sides of one binding, plus optional context for the report.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub lhs: Value,
    pub rhs: Value,
    pub note: Option<String>,
    /// For diagnostic identities: a second reading and whether it holds.
    pub alternative: Option<(String, bool)>,
}

impl Evaluation {
    pub fn new(lhs: impl Into<Value>, rhs: impl Into<Value>) -> Self {
        Self { lhs: lhs.into(), rhs: rhs.into(), note: None, alternative: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_alternative(mut self, reading: impl Into<String>, holds: bool) -> Self {
        self.alternative = Some((reading.into(), holds));
        self
    }
}

/// A declared integer parameter with its default range per profile.
#[derive(Debug, Clone)]
pub struct ParamDecl {
    pub name: &'static str,
    pub quick: RangeInclusive<i64>,
    pub full: RangeInclusive<i64>,
}

/// Domain of a multi-index parameter: every index with depth and entries in
/// the given ranges. Overridable through the `depth` and `entry` keys.
#[derive(Debug, Clone)]
pub struct IndexDecl {
    pub depth_quick: RangeInclusive<i64>,
    pub depth_full: RangeInclusive<i64>,
    pub entry_quick: i64,
    pub entry_full: i64,
}

/// One concrete parameter assignment.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Binding {
    ints: Vec<(&'static str, i64)>,
    index: Option<MultiIndex>,
}

impl Binding {
    pub fn new(ints: Vec<(&'static str, i64)>, index: Option<MultiIndex>) -> Self {
        Self { ints, index }
    }

    /// Value of an integer parameter. Panics when the identity did not
    /// declare it, which is a registry bug.
    pub fn int(&self, name: &str) -> i64 {
        self.ints
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| panic!("parameter `{name}` not bound"))
    }

    pub fn u32(&self, name: &str) -> u32 {
        u32::try_from(self.int(name)).expect("non-negative parameter")
    }

    pub fn usize(&self, name: &str) -> usize {
        usize::try_from(self.int(name)).expect("non-negative parameter")
    }

    pub fn index(&self) -> &MultiIndex {
        self.index.as_ref().expect("identity declares a multi-index")
    }

    fn to_params(&self) -> BTreeMap<String, serde_json::Value> {
        let mut m: BTreeMap<String, serde_json::Value> =
            self.ints.iter().map(|(k, v)| (k.to_string(), serde_json::Value::from(*v))).collect();
        if let Some(idx) = &self.index {
            m.insert("index".into(), serde_json::Value::from(idx.to_string()));
        }
        m
    }
}

/// An identity: its statement, the two methods computing each side, its
/// default domain and evaluator.
#[derive(Clone)]
pub struct IdentitySpec {
    pub id: &'static str,
    pub title: &'static str,
    /// The relation being checked, written out as a formula.
    pub statement: &'static str,
    pub lhs_by: &'static str,
    pub rhs_by: &'static str,
    /// Diagnostic identities are reported but never fail the suite.
    pub diagnostic: bool,
    pub params: Vec<ParamDecl>,
    pub index: Option<IndexDecl>,
    pub valid: fn(&Binding) -> bool,
    pub eval: fn(&Binding) -> Result<Evaluation>,
}

impl fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentitySpec").field("id", &self.id).field("diagnostic", &self.diagnostic).finish()
    }
}

/// Range overrides keyed by parameter name (`depth`/`entry` for the
/// multi-index domain).
pub type Overrides = BTreeMap<String, RangeInclusive<i64>>;

impl IdentitySpec {
    fn accepts(&self, key: &str) -> bool {
        self.params.iter().any(|p| p.name == key) || (self.index.is_some() && (key == "depth" || key == "entry"))
    }

    /// All bindings of the domain, sorted.
    pub fn bindings(&self, profile: Profile, overrides: &Overrides) -> Result<Vec<Binding>> {
        for key in overrides.keys() {
            if !self.accepts(key) {
                return Err(Error::UnknownParameter { id: self.id.into(), param: key.clone() });
            }
        }
        let pick = |name: &str, quick: &RangeInclusive<i64>, full: &RangeInclusive<i64>| {
            overrides.get(name).cloned().unwrap_or_else(|| match profile {
                Profile::Quick => quick.clone(),
                Profile::Full => full.clone(),
            })
        };
        let mut combos: Vec<Vec<(&'static str, i64)>> = vec![Vec::new()];
        for p in &self.params {
            let range = pick(p.name, &p.quick, &p.full);
            combos = combos
                .into_iter()
                .flat_map(|prefix| {
                    range.clone().map(move |v| {
                        let mut next = prefix.clone();
                        next.push((p.name, v));
                        next
                    })
                })
                .collect();
        }
        let indices: Vec<Option<MultiIndex>> = match &self.index {
            None => vec![None],
            Some(decl) => {
                let depth = pick("depth", &decl.depth_quick, &decl.depth_full);
                let entry = pick("entry", &(0..=decl.entry_quick), &(0..=decl.entry_full));
                let (lo, hi) = (*depth.start().max(&1) as usize, (*depth.end()).max(0) as usize);
                MultiIndex::all_in(lo..=hi, (*entry.end()).max(0) as u32)
                    .into_iter()
                    .filter(|i| i.entries().iter().all(|&e| i64::from(e) >= *entry.start()))
                    .map(Some)
                    .collect()
            }
        };
        let mut out: Vec<Binding> = combos
            .into_iter()
            .flat_map(|ints| indices.iter().map(move |idx| Binding::new(ints.clone(), idx.clone())))
            .filter(|b| (self.valid)(b))
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn check(&self, binding: &Binding) -> Result<CheckReport> {
        let ev = (self.eval)(binding)?;
        let pass = ev.lhs == ev.rhs;
        let mut notes: Vec<String> = Vec::new();
        if self.diagnostic {
            notes.push("diagnostic".into());
        }
        if let Some(n) = &ev.note {
            notes.push(n.clone());
        }
        let alternative = ev.alternative.map(|(reading, holds)| {
            notes.push(format!("alternative reading {reading}: {}", if holds { "holds" } else { "fails" }));
            AlternativeOutcome { reading, pass: holds }
        });
        Ok(CheckReport {
            id: self.id.to_string(),
            params: binding.to_params(),
            lhs: ev.lhs.to_string(),
            rhs: ev.rhs.to_string(),
            pass,
            note: if notes.is_empty() { None } else { Some(notes.join("; ")) },
            alternative,
        })
    }

    pub fn run(&self, profile: Profile, overrides: &Overrides) -> Result<Vec<CheckReport>> {
        self.bindings(profile, overrides)?.iter().map(|b| self.check(b)).collect()
    }
}

/// A validated collection of identities.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    specs: Vec<IdentitySpec>,
}

impl Registry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Every identity shipped with the crate.
    pub fn standard() -> Self {
        Self::from_specs(identities::all()).expect("built-in registry is well formed")
    }

    /// Rejects specs whose two sides name the same method, and duplicate ids.
    pub fn from_specs(mut specs: Vec<IdentitySpec>) -> Result<Self> {
        for s in &specs {
            if s.lhs_by == s.rhs_by {
                return Err(Error::SelfReferential(s.id.to_string()));
            }
        }
        specs.sort_by(|a, b| a.id.cmp(b.id));
        if let Some(w) = specs.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::Precondition(format!("duplicate identity id `{}`", w[0].id)));
        }
        Ok(Self { specs })
    }

    pub fn specs(&self) -> &[IdentitySpec] {
        &self.specs
    }

    pub fn get(&self, id: &str) -> Result<&IdentitySpec> {
        self.specs.iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
    }

    pub fn run_identity(&self, id: &str, profile: Profile, overrides: &Overrides) -> Result<Vec<CheckReport>> {
        self.get(id)?.run(profile, overrides)
    }

    /// Runs every identity on its default domain. Identities run on separate
    /// threads; the result is ordered by identity id, then parameters.
    pub fn run_all(&self, profile: Profile) -> Result<Summary> {
        let none = Overrides::new();
        let results: Vec<Result<Vec<CheckReport>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = self
                .specs
                .iter()
                .map(|spec| scope.spawn(|| spec.run(profile, &none)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("identity check panicked")).collect()
        });

        let mut summary = Summary {
            profile: profile.to_string(),
            identities: Vec::new(),
            total_checks: 0,
            strict_failures: 0,
            diagnostic_failures: 0,
            failures: Vec::new(),
        };
        for (spec, reports) in self.specs.iter().zip(results) {
            let reports = reports?;
            let passed = reports.iter().filter(|r| r.pass).count();
            let failed = reports.len() - passed;
            let verdict = spec.diagnostic.then(|| diagnostic_verdict(&reports));
            summary.total_checks += reports.len();
            if spec.diagnostic {
                summary.diagnostic_failures += failed;
            } else {
                summary.strict_failures += failed;
            }
            summary.failures.extend(reports.iter().filter(|r| !r.pass).cloned());
            summary.identities.push(IdentityTally {
                id: spec.id.to_string(),
                title: spec.title.to_string(),
                diagnostic: spec.diagnostic,
                checks: reports.len(),
                passed,
                failed,
                verdict,
            });
        }
        Ok(summary)
    }
}

fn diagnostic_verdict(reports: &[CheckReport]) -> String {
    let total = reports.len();
    let stated = reports.iter().filter(|r| r.pass).count();
    let mut verdict = format!("stated reading holds on {stated}/{total}");
    let alts: Vec<&AlternativeOutcome> = reports.iter().filter_map(|r| r.alternative.as_ref()).collect();
    if let Some(first) = alts.first() {
        let held = alts.iter().filter(|a| a.pass).count();
        verdict.push_str(&format!("; alternative reading {} holds on {held}/{}", first.reading, alts.len()));
    }
    verdict
}

/// [`Registry::run_identity`] on the standard registry.
pub fn run_identity(id: &str, profile: Profile, overrides: &Overrides) -> Result<Vec<CheckReport>> {
    Registry::standard().run_identity(id, profile, overrides)
}

/// [`Registry::run_all`] on the standard registry.
pub fn run_all(profile: Profile) -> Result<Summary> {
    Registry::standard().run_all(profile)
}
