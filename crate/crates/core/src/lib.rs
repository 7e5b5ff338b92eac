//! Exact computation of restricted barred preferential arrangement counts
//! `p^r_j(n)`, negative-index (multi-)poly-Bernoulli numbers and the related
//! U-numbers, together with a brute-force enumeration oracle and a harness
//! that checks the identities linking them.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod egf;
mod error;
pub mod harness;
pub mod oracle;
pub mod poly_bernoulli;
pub mod rbpa;

pub use arith::{BigInteger, BigRational};
pub use egf::TruncatedEgf;
pub use error::{Error, Result};
pub use harness::{CheckReport, Profile, Registry, Summary};
pub use oracle::RbpaStructure;
pub use poly_bernoulli::{MuTable, MultiIndex, WFamily};
pub use rbpa::{SequenceTable, TailCertificate};
