//! Criterion benchmarks for `rbpa-core`; see `benches/`.
