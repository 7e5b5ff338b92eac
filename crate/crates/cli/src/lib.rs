//! Sequence families and output formats behind the `rbpa` binary.

pub mod family;
pub mod output;
