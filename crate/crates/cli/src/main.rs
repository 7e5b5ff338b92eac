use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rbpa_cli::family::{parse_exponents, Family};
use rbpa_cli::output::{render, OutputFormat, Term};
use rbpa_core::harness::report::{reports_to_csv, reports_to_json};
use rbpa_core::harness::Overrides;
use rbpa_core::oracle::{enumerate_rbpa, MAX_N};
use rbpa_core::poly_bernoulli::MultiIndex;
use rbpa_core::rbpa::{last_digit, last_digit_cycle_check, p_egf, rbpa_egf};
use rbpa_core::{Error, Profile, Registry};

#[derive(Parser)]
#[command(name = "rbpa", version, about = "Barred preferential arrangements and poly-Bernoulli numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print terms 0..=n-max of a sequence.
    Seq {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Bfile)]
        format: OutputFormat,
    },
    /// Dump the coefficients of e^{rm}/(2-e^m)^j, or of its reciprocal.
    Egf {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        j: u32,
        /// Truncation order.
        #[arg(long)]
        order: usize,
        #[arg(long)]
        reciprocal: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Run identity checks.
    Verify {
        /// `all` for a summary over the whole registry.
        target: Option<String>,
        /// Comma-separated identity ids.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
        #[arg(long, default_value = "quick")]
        profile: Profile,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        /// Restrict a parameter, e.g. `--param n=3` or `--param n=0..5`.
        #[arg(long = "param", value_parser = parse_override)]
        params: Vec<(String, RangeInclusive<i64>)>,
    },
    /// Compare p^r_j(n) with brute-force enumeration.
    Oracle {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        n_max: usize,
    },
    /// Check that the last digit repeats with period four.
    Cycle {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n_max: usize,
    },
    /// List the registered identities.
    Registry,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    P,
    #[value(name = "B")]
    B,
    #[value(name = "U")]
    U,
    #[value(name = "W")]
    W,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(value_enum)]
    family: FamilyName,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
    /// Negative index entries `j1,j2,...` (B and U).
    #[arg(long)]
    index: Option<String>,
    /// Signed polylogarithm exponents `k1,k2,...` (B takes one, U any number).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "index")]
    li: Option<String>,
    /// Base of the W family.
    #[arg(long)]
    base: Option<u32>,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_override(s: &str) -> Result<(String, RangeInclusive<i64>), String> {
    let (name, range) = s.split_once('=').ok_or_else(|| format!("expected NAME=LO..HI, got `{s}`"))?;
    let bad = || format!("bad range `{range}`");
    let range = match range.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            lo.trim().parse().map_err(|_| bad())?..=hi.trim().parse().map_err(|_| bad())?
        }
        None => {
            let v: i64 = range.trim().parse().map_err(|_| bad())?;
            v..=v
        }
    };
    Ok((name.trim().to_string(), range))
}

fn require<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("family {family} requires --{flag}")))
}

impl FamilyArgs {
    fn resolve(&self) -> Result<Family, Failure> {
        Ok(match self.family {
            FamilyName::P => Family::P { r: require(self.r, "r", "p")?, j: require(self.j, "j", "p")? },
            FamilyName::B => match (&self.index, &self.li) {
                (Some(idx), _) => Family::B(MultiIndex::from_str(idx)?),
                (None, Some(li)) => match parse_exponents(li)?.as_slice() {
                    [k] => Family::BLi(*k),
                    _ => return Err(Failure::Usage("family B takes a single --li exponent".into())),
                },
                (None, None) => return Err(Failure::Usage("family B requires --index or --li".into())),
            },
            FamilyName::U => match (&self.index, &self.li) {
                (Some(idx), _) => Family::U(MultiIndex::from_str(idx)?),
                (None, Some(li)) => Family::ULi(parse_exponents(li)?),
                (None, None) => return Err(Failure::Usage("family U requires --index or --li".into())),
            },
            FamilyName::W => Family::W(require(self.base, "base", "W")?),
        })
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Seq { family, n_max, format } => {
            let terms = family.resolve()?.terms(n_max)?;
            print!("{}", render(&terms, format)?);
        }
        Command::Egf { r, j, order, reciprocal, format } => {
            let mut egf = rbpa_egf(r, j, order);
            if reciprocal {
                egf = egf.reciprocal()?;
            }
            let terms: Vec<Term> = egf.coeffs().iter().cloned().map(Term::from).collect();
            print!("{}", render(&terms, format)?);
        }
        Command::Verify { target, ids, profile, format, params } => {
            let registry = Registry::standard();
            let overrides: Overrides = params.into_iter().collect::<BTreeMap<_, _>>();
            match (target.as_deref(), ids.is_empty()) {
                (Some("all"), true) => {
                    if !overrides.is_empty() {
                        return Err(Failure::Usage("--param needs --ids".into()));
                    }
                    let summary = registry.run_all(profile)?;
                    println!("{}", summary.to_json());
                    if !summary.ok() {
                        return Err(Failure::Verification);
                    }
                }
                (None, false) => {
                    let mut reports = Vec::new();
                    let mut strict_failure = false;
                    for id in &ids {
                        let spec = registry.get(id)?;
                        let batch = spec.run(profile, &overrides)?;
                        strict_failure |= !spec.diagnostic && batch.iter().any(|r| !r.pass);
                        reports.extend(batch);
                    }
                    match format {
                        ReportFormat::Json => println!("{}", reports_to_json(&reports)),
                        ReportFormat::Csv => print!("{}", reports_to_csv(&reports)),
                    }
                    if strict_failure {
                        return Err(Failure::Verification);
                    }
                }
                _ => return Err(Failure::Usage("give either `all` or --ids".into())),
            }
        }
        Command::Oracle { r, j, n_max } => {
            if n_max > MAX_N {
                return Err(Error::SizeLimit { n: n_max, limit: MAX_N }.into());
            }
            let expected = p_egf(r, j, n_max);
            let mut all_match = true;
            let mut rows = vec!["n,p_egf,enumerated,match".to_string()];
            for (n, v) in expected.values.iter().enumerate() {
                let count = enumerate_rbpa(n, r as usize, j as usize)?;
                let ok = &count == v;
                all_match &= ok;
                rows.push(format!("{n},{v},{count},{ok}"));
            }
            println!("{}", rows.join("\n"));
            if !all_match {
                return Err(Failure::Verification);
            }
        }
        Command::Cycle { family, n_max } => {
            if n_max < 9 {
                return Err(Failure::Usage("cycle needs --n-max of at least 9".into()));
            }
            let family = family.resolve()?;
            let values = family
                .terms(n_max)?
                .into_iter()
                .map(|t| match t {
                    Term::Int(v) => Ok(v),
                    Term::Rational(v) => Err(Failure::Usage(format!("{} has non-integer term {v}", family.describe()))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let digits: Vec<String> = values[1..].iter().map(|v| last_digit(v).to_string()).collect();
            let holds = last_digit_cycle_check(&values, 1);
            println!("{}", family.describe());
            println!("last digits n=1..{n_max}: {}", digits.join(","));
            let pattern = digits[..4].join(",");
            if holds {
                if digits[..4].iter().all(|d| d == &digits[0]) {
                    println!("PASS constant {}", digits[0]);
                } else {
                    println!("PASS pattern {pattern}");
                }
            } else {
                println!("FAIL no period-four pattern");
                return Err(Failure::Verification);
            }
        }
        Command::Registry => {
            println!("id,diagnostic,lhs,rhs,title,statement");
            for spec in Registry::standard().specs() {
                println!(
                    "{},{},{},{},\"{}\",\"{}\"",
                    spec.id, spec.diagnostic, spec.lhs_by, spec.rhs_by, spec.title, spec.statement
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
