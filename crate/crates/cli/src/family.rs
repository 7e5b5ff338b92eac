use rbpa_core::poly_bernoulli::{
    multi_poly_bernoulli, poly_bernoulli, u_number, u_number_exponents, w_family, MultiIndex,
};
use rbpa_core::rbpa::p_egf;
use rbpa_core::{Error, Result};

use crate::output::Term;

/// A sequence the CLI can emit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `p^r_j(n)`.
    P { r: u32, j: u32 },
    /// Negative-index `B^{(-j_1,…,-j_b)}_n`.
    B(MultiIndex),
    /// `B^k_n` for an arbitrary integer exponent (depth one).
    BLi(i64),
    /// Negative-index `U^{(-j_1,…,-j_b)}_n`.
    U(MultiIndex),
    /// `U^{(k_1,…,k_b)}_n` for arbitrary integer exponents.
    ULi(Vec<i64>),
    /// `W_r(n) = 2r^n - (r-1)^n`.
    W(u32),
}

impl Family {
    pub fn terms(&self, n_max: usize) -> Result<Vec<Term>> {
        Ok(match self {
            Family::P { r, j } => p_egf(*r, *j, n_max).values.into_iter().map(Term::from).collect(),
            Family::B(idx) => (0..=n_max).map(|n| multi_poly_bernoulli(idx, n).into()).collect(),
            Family::BLi(k) => (0..=n_max).map(|n| poly_bernoulli(*k, n).into()).collect(),
            Family::U(idx) => (0..=n_max).map(|n| u_number(idx, n).into()).collect(),
            Family::ULi(ks) => (0..=n_max)
                .map(|n| u_number_exponents(ks, n).map(Term::from))
                .collect::<Result<_>>()?,
            Family::W(base) => (0..=n_max).map(|n| w_family(*base, n).map(Term::from)).collect::<Result<_>>()?,
        })
    }

    pub fn describe(&self) -> String {
        match self {
            Family::P { r, j } => format!("p r={r} j={j}"),
            Family::B(idx) => format!("B index=({idx})"),
            Family::BLi(k) => format!("B li={k}"),
            Family::U(idx) => format!("U index=({idx})"),
            Family::ULi(ks) => {
                let ks: Vec<String> = ks.iter().map(i64::to_string).collect();
                format!("U li=({})", ks.join(","))
            }
            Family::W(b) => format!("W base={b}"),
        }
    }
}

/// Parses `k1,k2,…` as signed Li exponents.
pub fn parse_exponents(s: &str) -> Result<Vec<i64>> {
    let ks = s
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::MalformedIndex(s.to_string()))?;
    if ks.is_empty() {
        return Err(Error::MalformedIndex(s.to_string()));
    }
    Ok(ks)
}
